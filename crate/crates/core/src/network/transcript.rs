//! Transcript files: the full board plus the public ceremony parameters.
//!
//! Binary form: magic, header, then `(sender u32, round u8, payload)` records
//! with u32 length prefixes. Text form: one header line per field, then one
//! line per record with the payload in hex.

use std::collections::{BTreeMap, BTreeSet};

use super::board::{BoardEntry, BroadcastBoard, ROUND_DEAL, ROUND_KEYS, ROUND_REVEAL};
use super::ceremony::LogEntry;
use crate::algebra::{Group, GroupElement, ScalarOf};
use crate::codec::{put_bytes, put_u32, Decode, Reader};
use crate::error::{Error, Result};
use crate::fdkg::{offline_reconstruct, process_round1, DealMessage, Params, Pki, PublicState, ReconstructionOutcome, RevealMessage};
use crate::fdkg::{collect_reveals, share_consistent, verify_decryption, verify_secret};
use crate::PartyIndex;

const MAGIC: &[u8; 8] = b"FDKGTR01";
const TEXT_HEADER: &str = "fdkg-transcript v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub group: String,
    pub params: Params,
    pub context: Vec<u8>,
    pub board: BroadcastBoard,
}

impl Transcript {
    pub fn new<G: Group>(params: Params, context: Vec<u8>, board: BroadcastBoard) -> Self {
        Transcript { group: G::NAME.to_string(), params, context, board }
    }

    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = MAGIC.to_vec();
        put_bytes(&mut out, self.group.as_bytes());
        put_u32(&mut out, self.params.n);
        put_u32(&mut out, self.params.t as u32);
        put_u32(&mut out, self.params.k as u32);
        put_bytes(&mut out, &self.context);
        put_u32(&mut out, self.board.len() as u32);
        for e in self.board.entries() {
            put_u32(&mut out, e.sender);
            out.push(e.round);
            put_bytes(&mut out, &e.payload);
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        if r.take(MAGIC.len())? != MAGIC {
            return Err(Error::Decode("not a transcript file".into()));
        }
        let group = String::from_utf8(r.bytes()?.to_vec()).map_err(|_| Error::Decode("group name is not utf-8".into()))?;
        let (n, t, k) = (r.u32()?, r.u32()? as usize, r.u32()? as usize);
        let params = Params::new(n, t, k)?;
        let context = r.bytes()?.to_vec();
        let count = r.u32()?;
        let mut entries = Vec::new();
        for _ in 0..count {
            let sender = r.u32()?;
            let round = r.u8()?;
            entries.push(BoardEntry { sender, round, payload: r.bytes()?.to_vec() });
        }
        r.finish()?;
        Ok(Transcript { group, params, context, board: entries.into() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{TEXT_HEADER}\ngroup {}\nparams {} {} {}\ncontext {}\n",
            self.group,
            self.params.n,
            self.params.t,
            self.params.k,
            hex::encode(&self.context)
        );
        for e in self.board.entries() {
            out.push_str(&format!("{} {} {}\n", e.round, e.sender, hex::encode(&e.payload)));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Decode(format!("transcript text: {what}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next() != Some(TEXT_HEADER) {
            return Err(bad("missing header"));
        }
        let mut field = |name: &str| {
            lines
                .next()
                .and_then(|l| l.strip_prefix(name))
                .and_then(|l| l.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| bad(name))
        };
        let group = field("group")?;
        let params: Vec<usize> = field("params")?
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| bad("params")))
            .collect::<Result<_>>()?;
        let [n, t, k] = params[..] else { return Err(bad("params")) };
        let params = Params::new(n as u32, t, k)?;
        let context = hex::decode(field("context")?).map_err(|_| bad("context"))?;
        let mut entries = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let round = parts.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad("round"))?;
            let sender = parts.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad("sender"))?;
            let payload = hex::decode(parts.next().unwrap_or("")).map_err(|_| bad("payload"))?;
            entries.push(BoardEntry { sender, round, payload });
        }
        Ok(Transcript { group, params, context, board: entries.into() })
    }
}

/// Round-1 messages whose claimed dealer matches the authenticated sender.
pub(crate) fn decode_deals<G: Group>(board: &BroadcastBoard) -> Vec<DealMessage<G>> {
    board
        .round(ROUND_DEAL)
        .filter_map(|e| DealMessage::<G>::from_canonical_bytes(&e.payload).ok().filter(|m| m.dealer == e.sender))
        .collect()
}

pub(crate) fn decode_pki<G: Group>(board: &BroadcastBoard) -> Pki<G> {
    let mut pki = Pki::<G>::new();
    for e in board.round(ROUND_KEYS) {
        if let Some(pk) = G::Element::from_bytes(&e.payload) {
            pki.entry(e.sender).or_insert(pk);
        }
    }
    pki
}

#[derive(Clone, Debug)]
pub struct ReplayResult<G: Group> {
    pub pki: Pki<G>,
    pub state: PublicState<G>,
    pub reveals: Vec<RevealMessage<G>>,
    pub outcome: Result<ReconstructionOutcome<G>>,
    pub log: Vec<LogEntry>,
    pub revealed_shares: BTreeMap<(PartyIndex, PartyIndex), ScalarOf<G>>,
}

/// Recomputes round-1 state and the offline reconstruction from a transcript.
pub fn replay<G: Group>(transcript: &Transcript) -> Result<ReplayResult<G>> {
    if transcript.group != G::NAME {
        return Err(Error::InvalidParams(format!("transcript uses group {}, not {}", transcript.group, G::NAME)));
    }
    let board = &transcript.board;
    let pki = decode_pki::<G>(board);
    let state = process_round1(&decode_deals::<G>(board), &transcript.params, &pki, &transcript.context);

    let mut log = Vec::new();
    let mut accepted_dealers = BTreeSet::new();
    let mut reveals = Vec::new();
    for (position, e) in board.entries().iter().enumerate() {
        let mut entry = |kind: &'static str, accepted: bool, note: String| {
            log.push(LogEntry { position, sender: e.sender, round: e.round, kind, accepted, note })
        };
        match e.round {
            ROUND_KEYS => entry("key", G::Element::from_bytes(&e.payload).is_some(), String::new()),
            ROUND_DEAL => match DealMessage::<G>::from_canonical_bytes(&e.payload) {
                Err(err) => entry("deal", false, err.to_string()),
                Ok(m) if m.dealer != e.sender => entry("deal", false, "dealer differs from sender".into()),
                Ok(m) => {
                    let stored = state.records.get(&m.dealer).is_some_and(|r| {
                        r.partial_pk == m.partial_pk && r.ciphertexts == m.ciphertexts && r.commitments == m.commitments
                    });
                    if stored && accepted_dealers.insert(m.dealer) {
                        entry("deal", true, String::new());
                    } else {
                        let reason = state
                            .rejected
                            .iter()
                            .find(|(d, _)| *d == m.dealer)
                            .map_or_else(|| "duplicate deal".to_string(), |(_, r)| r.clone());
                        entry("deal", false, reason);
                    }
                }
            },
            ROUND_REVEAL => match RevealMessage::<G>::from_canonical_bytes(&e.payload) {
                Err(err) => entry("reveal", false, err.to_string()),
                Ok(m) if m.sender() != e.sender => entry("reveal", false, "sender mismatch".into()),
                Ok(m) => {
                    let (kind, ok) = match &m {
                        RevealMessage::Secret { sender, partial_sk, proof } => ("secret", verify_secret(&state, *sender, partial_sk, proof)),
                        RevealMessage::Share { sender, dealer, share, proof } => (
                            "share",
                            verify_decryption(&state, *sender, *dealer, share, proof) && share_consistent(&state, *sender, *dealer, share),
                        ),
                        RevealMessage::Complaint { sender, dealer, share, proof } => (
                            "complaint",
                            verify_decryption(&state, *sender, *dealer, share, proof) && !share_consistent(&state, *sender, *dealer, share),
                        ),
                    };
                    entry(kind, ok, String::new());
                    reveals.push(m);
                }
            },
            _ => entry("other", true, "not part of the key generation".into()),
        }
    }
    let outcome = offline_reconstruct(&state, &reveals);
    let revealed_shares = collect_reveals(&state, &reveals)
        .shares
        .into_iter()
        .flat_map(|(dealer, m)| m.into_iter().map(move |(g, s)| ((dealer, g), s)))
        .collect();
    Ok(ReplayResult { pki, state, reveals, outcome, log, revealed_shares })
}
