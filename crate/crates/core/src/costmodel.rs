//! Broadcast-size accounting for a full election.
//!
//! The analytic mode prices every message with fixed constants: 64-byte group
//! elements and a flat 256-byte proof per message. The measured mode sums the
//! actual payloads found on a board.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{BroadcastBoard, ROUND_BALLOT, ROUND_DEAL, ROUND_PARTIAL_DECRYPT, ROUND_REVEAL, ROUND_TALLY_SHARES};

pub const PROOF_BYTES: u64 = 256;
pub const FDKG_BASE_BYTES: u64 = 64;
/// One encrypted share with its commitment slot.
pub const FDKG_PER_GUARDIAN_BYTES: u64 = 160;
pub const BALLOT_BASE_BYTES: u64 = 128;
pub const PDECRYPT_BASE_BYTES: u64 = 64;
pub const PDECRYPT_SHARE_BASE_BYTES: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MessageKind {
    Fdkg,
    Ballot,
    PartialDecrypt,
    PartialDecryptShare,
}

impl MessageKind {
    pub const ALL: [MessageKind; 4] =
        [MessageKind::Fdkg, MessageKind::Ballot, MessageKind::PartialDecrypt, MessageKind::PartialDecryptShare];

    /// Total size including the proof; `k` only matters for deals.
    pub fn size(self, k: u64) -> u64 {
        let base = match self {
            MessageKind::Fdkg => FDKG_BASE_BYTES + k * FDKG_PER_GUARDIAN_BYTES,
            MessageKind::Ballot => BALLOT_BASE_BYTES,
            MessageKind::PartialDecrypt => PDECRYPT_BASE_BYTES,
            MessageKind::PartialDecryptShare => PDECRYPT_SHARE_BASE_BYTES,
        };
        base + PROOF_BYTES
    }
}

impl fmt::Display for MessageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MessageKind::Fdkg => "fdkg",
            MessageKind::Ballot => "ballot",
            MessageKind::PartialDecrypt => "pdecrypt",
            MessageKind::PartialDecryptShare => "pdecrypt-share",
        })
    }
}

impl FromStr for MessageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

pub fn size_table_lookup(kind: &str, k: u64) -> Result<u64> {
    Ok(kind.parse::<MessageKind>()?.size(k))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub n: u64,
    pub dealers: u64,
    pub k: u64,
    pub voters: u64,
    /// Dealers that decrypt with their own partial secret.
    pub direct_revealers: u64,
    pub shares_revealed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dealers > self.n {
            return Err(Error::InvalidParams(format!("{} dealers exceed {} parties", self.dealers, self.n)));
        }
        if self.direct_revealers > self.dealers {
            return Err(Error::InvalidParams(format!(
                "{} direct revealers exceed {} dealers",
                self.direct_revealers, self.dealers
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostBreakdown {
    pub fdkg_bytes: u64,
    pub voting_bytes: u64,
    pub tally_secret_bytes: u64,
    pub tally_share_bytes: u64,
    pub total_bytes: u64,
}

impl CostBreakdown {
    fn from_parts(fdkg_bytes: u64, voting_bytes: u64, tally_secret_bytes: u64, tally_share_bytes: u64) -> Self {
        CostBreakdown {
            fdkg_bytes,
            voting_bytes,
            tally_secret_bytes,
            tally_share_bytes,
            total_bytes: fdkg_bytes + voting_bytes + tally_secret_bytes + tally_share_bytes,
        }
    }

    /// Labelled rows in reporting order, total last.
    pub fn rows(&self) -> [(&'static str, u64); 5] {
        [
            ("fdkg", self.fdkg_bytes),
            ("voting", self.voting_bytes),
            ("tally-secrets", self.tally_secret_bytes),
            ("tally-shares", self.tally_share_bytes),
            ("total", self.total_bytes),
        ]
    }
}

pub fn estimate(spec: &ScenarioSpec) -> Result<CostBreakdown> {
    spec.validate()?;
    Ok(CostBreakdown::from_parts(
        spec.dealers * MessageKind::Fdkg.size(spec.k),
        spec.voters * MessageKind::Ballot.size(spec.k),
        spec.direct_revealers * MessageKind::PartialDecrypt.size(spec.k),
        spec.shares_revealed * MessageKind::PartialDecryptShare.size(spec.k),
    ))
}

/// Payload bytes actually broadcast, bucketed like [`estimate`].
///
/// Key registrations are not counted. In ceremony boards the reveal round is
/// split by message tag: revealed secrets count as tally secrets, shares and
/// complaints as tally shares.
pub fn measured(board: &BroadcastBoard) -> CostBreakdown {
    let (mut fdkg, mut voting, mut secrets, mut shares) = (0u64, 0u64, 0u64, 0u64);
    for e in board.entries() {
        let len = e.payload.len() as u64;
        match e.round {
            ROUND_DEAL => fdkg += len,
            ROUND_BALLOT => voting += len,
            ROUND_PARTIAL_DECRYPT => secrets += len,
            ROUND_TALLY_SHARES => shares += len,
            ROUND_REVEAL if e.payload.first() == Some(&0) => secrets += len,
            ROUND_REVEAL => shares += len,
            _ => {}
        }
    }
    CostBreakdown::from_parts(fdkg, voting, secrets, shares)
}
