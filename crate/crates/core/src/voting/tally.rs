use std::collections::{BTreeMap, BTreeSet};

use rand::{CryptoRng, RngCore};

use super::ballot::AggregatedCiphertext;
use super::bsgs::bsgs_dlog;
use super::encoding::VoteEncoding;
use crate::algebra::{product, reconstruct_in_exponent, ElementOf, Group, GroupElement, ScalarOf};
use crate::codec::{put_element, put_u32, Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::fdkg::{collect_reveals, proof_context, reveal_shares_where, PublicState, Recovery, RevealMessage};
use crate::nizk::{prove_dleq, verify_dleq, DleqProof, DleqStatement};
use crate::PartyIndex;

/// `C1^{d_i}` published by dealer `i`, with a proof that it used the same
/// exponent as its partial key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialDecryption<G: Group> {
    pub dealer: PartyIndex,
    pub value: ElementOf<G>,
    pub proof: DleqProof<G>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TallyResult {
    /// Count per candidate, candidate 1 first.
    pub counts: Vec<u64>,
    pub total: u64,
    /// Packed exponent recovered from the aggregate.
    pub exponent: u64,
}

pub fn partial_decrypt_context(election: &[u8], dealer: PartyIndex) -> Vec<u8> {
    proof_context(election, "partial-decrypt", &[dealer])
}

fn statement<G: Group>(partial_pk: &ElementOf<G>, c1: &ElementOf<G>, value: &ElementOf<G>) -> DleqStatement<G> {
    DleqStatement { base1: G::generator(), out1: *partial_pk, base2: *c1, out2: *value }
}

pub fn tally_partial_decrypt<G: Group, R: RngCore + CryptoRng + ?Sized>(
    dealer: PartyIndex,
    partial_sk: &ScalarOf<G>,
    c1: &ElementOf<G>,
    election: &[u8],
    rng: &mut R,
) -> PartialDecryption<G> {
    let value = c1.pow(partial_sk);
    let st = statement::<G>(&G::base_pow(partial_sk), c1, &value);
    PartialDecryption { dealer, value, proof: prove_dleq(partial_sk, &st, &partial_decrypt_context(election, dealer), rng) }
}

pub fn verify_partial_decryption<G: Group>(
    state: &PublicState<G>,
    pd: &PartialDecryption<G>,
    c1: &ElementOf<G>,
    election: &[u8],
) -> bool {
    let Some(rec) = state.records.get(&pd.dealer).filter(|_| state.participants.contains(&pd.dealer)) else {
        return false;
    };
    verify_dleq(&statement::<G>(&rec.partial_pk, c1, &pd.value), &pd.proof, &partial_decrypt_context(election, pd.dealer))
}

/// Shares held by `guardian` for the listed dealers, decrypted and proven.
/// Observers raise `C1` to each share themselves.
pub fn tally_share_reveal<G: Group, R: RngCore + CryptoRng + ?Sized>(
    guardian: PartyIndex,
    sk: &ScalarOf<G>,
    state: &PublicState<G>,
    dealers: &BTreeSet<PartyIndex>,
    rng: &mut R,
) -> Vec<RevealMessage<G>> {
    reveal_shares_where(guardian, sk, state, |d| dealers.contains(&d), rng)
}

/// `C1^{d_i}` for every dealer, from its own partial decryption when one
/// verifies, else interpolated in the exponent from the `t` lowest-indexed
/// guardians with valid shares. Fails naming every dealer left uncovered.
pub fn decryption_factors<G: Group>(
    state: &PublicState<G>,
    c1: &ElementOf<G>,
    partials: &[PartialDecryption<G>],
    reveals: &[RevealMessage<G>],
    election: &[u8],
) -> Result<BTreeMap<PartyIndex, (ElementOf<G>, Recovery)>> {
    let mut out = BTreeMap::new();
    for pd in partials {
        if !out.contains_key(&pd.dealer) && verify_partial_decryption(state, pd, c1, election) {
            out.insert(pd.dealer, (pd.value, Recovery::Direct));
        }
    }
    let valid = collect_reveals(state, reveals);
    let t = state.params.t;
    let mut missing = Vec::new();
    for &i in &state.participants {
        if out.contains_key(&i) {
            continue;
        }
        let Some(held) = valid.shares.get(&i).filter(|m| m.len() >= t) else {
            missing.push(i);
            continue;
        };
        let points: BTreeMap<u64, ElementOf<G>> = held.iter().take(t).map(|(&j, s)| (u64::from(j), c1.pow(s))).collect();
        let value = reconstruct_in_exponent(&points)?;
        out.insert(i, (value, Recovery::ViaGuardians(held.keys().take(t).copied().collect())));
    }
    if missing.is_empty() {
        Ok(out)
    } else {
        Err(Error::TallyFailed(missing))
    }
}

/// Strips the decryption factors off `C2` and unpacks the counts.
pub fn tally_finalize<G: Group>(
    aggregate: &AggregatedCiphertext<G>,
    factors: &BTreeMap<PartyIndex, ElementOf<G>>,
    participants: &BTreeSet<PartyIndex>,
    voters: u64,
    encoding: &VoteEncoding,
) -> Result<TallyResult> {
    if voters == 0 {
        return Ok(TallyResult { counts: vec![0; encoding.candidates as usize], total: 0, exponent: 0 });
    }
    let missing: Vec<_> = participants.iter().filter(|i| !factors.contains_key(i)).copied().collect();
    if !missing.is_empty() {
        return Err(Error::TallyFailed(missing));
    }
    let z = product(participants.iter().map(|i| factors[i]));
    let m = aggregate.c2.div(&z);
    let bound = encoding
        .max_exponent(voters)
        .ok_or_else(|| Error::Unsupported("packed tally exceeds 64 bits".into()))?;
    let exponent = bsgs_dlog(&m, &G::generator(), bound)?;
    let counts = encoding
        .decompose(exponent)
        .ok_or_else(|| Error::Integrity(format!("exponent {exponent} overflows the candidate slots")))?;
    let total: u64 = counts.iter().sum();
    if total != voters {
        return Err(Error::Integrity(format!("counts sum to {total}, expected {voters}")));
    }
    Ok(TallyResult { counts, total, exponent })
}

impl<G: Group> Encode for PartialDecryption<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.dealer);
        put_element(out, &self.value);
        self.proof.encode(out);
    }
}

impl<G: Group> Decode for PartialDecryption<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(PartialDecryption { dealer: r.u32()?, value: r.element()?, proof: DleqProof::decode(r)? })
    }
}
