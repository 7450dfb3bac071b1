use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{ElementOf, Group, Polynomial, ScalarOf};
use crate::codec::{
    put_element, put_index_set, put_map, put_scalar, put_u32, read_index_set, read_map, Decode, Encode, Reader,
};
use crate::error::{Error, Result};
use crate::nizk::{DealProofBundle, DlProof, FeldmanCommitments, ShareDecryptionProof};
use crate::pke::PkeCiphertext;
use crate::PartyIndex;

/// Party count `n`, local threshold `t` and guardian-set size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: u32,
    pub t: usize,
    pub k: usize,
}

impl Params {
    /// Requires `1 <= t <= k <= n - 1`.
    pub fn new(n: u32, t: usize, k: usize) -> Result<Self> {
        if t == 0 || t > k || k + 1 > n as usize {
            return Err(Error::InvalidParams(format!("need 1 <= t <= k <= n-1, got n={n} t={t} k={k}")));
        }
        Ok(Params { n, t, k })
    }

    pub fn parties(&self) -> impl Iterator<Item = PartyIndex> {
        1..=self.n
    }

    pub fn contains(&self, party: PartyIndex) -> bool {
        (1..=self.n).contains(&party)
    }
}

/// The `k` parties trusted with one owner's partial secret.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GuardianSet {
    owner: PartyIndex,
    members: BTreeSet<PartyIndex>,
}

impl GuardianSet {
    pub fn new(owner: PartyIndex, members: impl IntoIterator<Item = PartyIndex>, params: &Params) -> Result<Self> {
        let mut set = BTreeSet::new();
        let bad = |reason: String| Error::InvalidGuardianSet { owner, reason };
        for m in members {
            if !set.insert(m) {
                return Err(bad(format!("duplicate member {m}")));
            }
        }
        if !params.contains(owner) {
            return Err(bad("owner out of range".into()));
        }
        if set.contains(&owner) {
            return Err(bad("owner guards itself".into()));
        }
        if let Some(m) = set.iter().find(|&&m| !params.contains(m)) {
            return Err(bad(format!("member {m} out of range")));
        }
        if set.len() != params.k {
            return Err(bad(format!("size {} != k={}", set.len(), params.k)));
        }
        Ok(GuardianSet { owner, members: set })
    }

    pub fn owner(&self) -> PartyIndex {
        self.owner
    }

    pub fn members(&self) -> &BTreeSet<PartyIndex> {
        &self.members
    }

    pub fn contains(&self, party: PartyIndex) -> bool {
        self.members.contains(&party)
    }
}

/// Long-term encryption keys of all parties.
pub type Pki<G> = BTreeMap<PartyIndex, ElementOf<G>>;

/// A dealer's round-1 broadcast.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealMessage<G: Group> {
    pub dealer: PartyIndex,
    pub partial_pk: ElementOf<G>,
    pub guardians: BTreeSet<PartyIndex>,
    pub ciphertexts: BTreeMap<PartyIndex, PkeCiphertext<G>>,
    pub commitments: FeldmanCommitments<G>,
    pub proofs: DealProofBundle<G>,
}

/// What a dealer keeps after round 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealerSecret<G: Group> {
    pub dealer: PartyIndex,
    pub partial_sk: ScalarOf<G>,
    pub polynomial: Polynomial<ScalarOf<G>>,
}

/// A verified deal as stored in the public state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealerRecord<G: Group> {
    pub partial_pk: ElementOf<G>,
    pub guardians: BTreeSet<PartyIndex>,
    pub ciphertexts: BTreeMap<PartyIndex, PkeCiphertext<G>>,
    pub commitments: FeldmanCommitments<G>,
    /// Encryption keys of the guardians at deal time.
    pub guardian_pks: BTreeMap<PartyIndex, ElementOf<G>>,
}

/// The world after round 1, as every observer computes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicState<G: Group> {
    pub params: Params,
    pub context: Vec<u8>,
    pub participants: BTreeSet<PartyIndex>,
    /// `None` when no deal verified.
    pub global_pk: Option<ElementOf<G>>,
    pub records: BTreeMap<PartyIndex, DealerRecord<G>>,
    /// Rejected round-1 messages with the reason, in board order.
    pub rejected: Vec<(PartyIndex, String)>,
    /// Dealers removed after a verified complaint.
    pub disqualified: BTreeSet<PartyIndex>,
}

impl<G: Group> PublicState<G> {
    pub fn global_pk(&self) -> Result<ElementOf<G>> {
        self.global_pk.ok_or(Error::EmptyParticipantSet)
    }

    pub fn record(&self, dealer: PartyIndex) -> Result<&DealerRecord<G>> {
        self.records.get(&dealer).ok_or(Error::NotParticipant(dealer))
    }

    pub fn guardian_sets(&self) -> BTreeMap<PartyIndex, BTreeSet<PartyIndex>> {
        self.records.iter().map(|(&i, r)| (i, r.guardians.clone())).collect()
    }
}

/// Round-2 broadcasts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevealMessage<G: Group> {
    Secret {
        sender: PartyIndex,
        partial_sk: ScalarOf<G>,
        proof: DlProof<G>,
    },
    Share {
        sender: PartyIndex,
        dealer: PartyIndex,
        share: ScalarOf<G>,
        proof: ShareDecryptionProof<G>,
    },
    /// A decrypted share that contradicts the dealer's commitments.
    Complaint {
        sender: PartyIndex,
        dealer: PartyIndex,
        share: ScalarOf<G>,
        proof: ShareDecryptionProof<G>,
    },
}

impl<G: Group> RevealMessage<G> {
    pub fn sender(&self) -> PartyIndex {
        match self {
            RevealMessage::Secret { sender, .. }
            | RevealMessage::Share { sender, .. }
            | RevealMessage::Complaint { sender, .. } => *sender,
        }
    }
}

impl<G: Group> Encode for DealMessage<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.dealer);
        put_element(out, &self.partial_pk);
        put_index_set(out, &self.guardians);
        put_map(out, &self.ciphertexts, |o, c| c.encode(o));
        self.commitments.encode(out);
        self.proofs.encode(out);
    }
}

impl<G: Group> Decode for DealMessage<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(DealMessage {
            dealer: r.u32()?,
            partial_pk: r.element()?,
            guardians: read_index_set(r)?,
            ciphertexts: read_map(r, PkeCiphertext::decode)?,
            commitments: FeldmanCommitments::decode(r)?,
            proofs: DealProofBundle::decode(r)?,
        })
    }
}

const TAG_SECRET: u8 = 0;
const TAG_SHARE: u8 = 1;
const TAG_COMPLAINT: u8 = 2;

impl<G: Group> Encode for RevealMessage<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            RevealMessage::Secret { sender, partial_sk, proof } => {
                out.push(TAG_SECRET);
                put_u32(out, *sender);
                put_scalar(out, partial_sk);
                proof.encode(out);
            }
            RevealMessage::Share { sender, dealer, share, proof } | RevealMessage::Complaint { sender, dealer, share, proof } => {
                out.push(if matches!(self, RevealMessage::Share { .. }) { TAG_SHARE } else { TAG_COMPLAINT });
                put_u32(out, *sender);
                put_u32(out, *dealer);
                put_scalar(out, share);
                proof.encode(out);
            }
        }
    }
}

impl<G: Group> Decode for RevealMessage<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.u8()? {
            TAG_SECRET => Ok(RevealMessage::Secret {
                sender: r.u32()?,
                partial_sk: r.scalar()?,
                proof: DlProof::decode(r)?,
            }),
            tag @ (TAG_SHARE | TAG_COMPLAINT) => {
                let (sender, dealer, share) = (r.u32()?, r.u32()?, r.scalar()?);
                let proof = ShareDecryptionProof::decode(r)?;
                Ok(if tag == TAG_SHARE {
                    RevealMessage::Share { sender, dealer, share, proof }
                } else {
                    RevealMessage::Complaint { sender, dealer, share, proof }
                })
            }
            other => Err(Error::Decode(format!("unknown reveal tag {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_bounds() {
        assert!(Params::new(10, 2, 3).is_ok());
        assert!(Params::new(4, 3, 3).is_ok());
        assert!(Params::new(3, 1, 3).is_err());
        assert!(Params::new(10, 0, 3).is_err());
        assert!(Params::new(10, 4, 3).is_err());
    }

    #[test]
    fn guardian_set_rules() {
        let p = Params::new(5, 1, 2).unwrap();
        assert!(GuardianSet::new(1, [2, 3], &p).is_ok());
        assert!(GuardianSet::new(1, [1, 3], &p).is_err());
        assert!(GuardianSet::new(1, [2, 2], &p).is_err());
        assert!(GuardianSet::new(1, [2, 6], &p).is_err());
        assert!(GuardianSet::new(1, [2], &p).is_err());
        assert!(GuardianSet::new(0, [2, 3], &p).is_err());
    }
}
