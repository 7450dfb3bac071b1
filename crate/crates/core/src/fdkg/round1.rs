use std::collections::{BTreeMap, BTreeSet};

use rand::{CryptoRng, RngCore};

use super::types::{DealMessage, DealerRecord, DealerSecret, GuardianSet, Params, Pki, PublicState};
use super::proof_context;
use crate::algebra::{product, Group, Polynomial};
use crate::error::{Error, Result};
use crate::nizk::{prove_deal, verify_deal};
use crate::pke::{pke_encrypt, EncRandomness};
use crate::PartyIndex;

/// Samples a partial secret and deals it to `guardians`.
///
/// Randomness is drawn in a fixed order: polynomial coefficients (secret
/// first), then encryption randomness per guardian in ascending index order,
/// then proof nonces.
pub fn round1_deal<G: Group, R: RngCore + CryptoRng + ?Sized>(
    me: PartyIndex,
    params: &Params,
    guardians: &GuardianSet,
    pki: &Pki<G>,
    context: &[u8],
    rng: &mut R,
) -> Result<(DealMessage<G>, DealerSecret<G>)> {
    if guardians.owner() != me {
        return Err(Error::InvalidGuardianSet {
            owner: me,
            reason: format!("set belongs to party {}", guardians.owner()),
        });
    }
    // re-validate against these params
    let guardians = GuardianSet::new(me, guardians.members().iter().copied(), params)?;
    let polynomial = Polynomial::random(params.t, rng)?;
    let gpks: Vec<_> = guardians
        .members()
        .iter()
        .map(|&j| pki.get(&j).map(|pk| (j, *pk)).ok_or(Error::UnknownParty(j)))
        .collect::<Result<_>>()?;
    let rands: Vec<EncRandomness<G>> = gpks.iter().map(|_| EncRandomness::sample(rng)).collect();
    let cts: Vec<_> = gpks
        .iter()
        .zip(&rands)
        .map(|((j, pk), r)| pke_encrypt::<G>(pk, &polynomial.evaluate_at(u64::from(*j)), r))
        .collect();
    let ctx = proof_context(context, "deal", &[me]);
    let (commitments, proofs) = prove_deal(&polynomial, &gpks, &rands, &cts, &ctx, rng)?;
    let partial_sk = polynomial.secret();
    let msg = DealMessage {
        dealer: me,
        partial_pk: G::base_pow(&partial_sk),
        guardians: guardians.members().clone(),
        ciphertexts: gpks.iter().map(|(j, _)| *j).zip(cts).collect(),
        commitments,
        proofs,
    };
    Ok((msg, DealerSecret { dealer: me, partial_sk, polynomial }))
}

fn check_deal<G: Group>(msg: &DealMessage<G>, params: &Params, pki: &Pki<G>, context: &[u8]) -> Result<DealerRecord<G>, String> {
    if !params.contains(msg.dealer) {
        return Err("dealer index out of range".into());
    }
    GuardianSet::new(msg.dealer, msg.guardians.iter().copied(), params).map_err(|e| e.to_string())?;
    if !msg.ciphertexts.keys().eq(msg.guardians.iter()) {
        return Err("ciphertexts do not match guardian set".into());
    }
    if msg.commitments.constant_term() != Some(&msg.partial_pk) {
        return Err("first commitment differs from partial public key".into());
    }
    let gpks: Vec<_> = msg
        .guardians
        .iter()
        .map(|&j| pki.get(&j).map(|pk| (j, *pk)).ok_or_else(|| format!("guardian {j} has no key")))
        .collect::<Result<_, _>>()?;
    let cts: Vec<_> = msg.ciphertexts.values().copied().collect();
    let ctx = proof_context(context, "deal", &[msg.dealer]);
    if !verify_deal(&msg.commitments, params.t, &gpks, &cts, &msg.proofs, &ctx) {
        return Err("deal proof rejected".into());
    }
    Ok(DealerRecord {
        partial_pk: msg.partial_pk,
        guardians: msg.guardians.clone(),
        ciphertexts: msg.ciphertexts.clone(),
        commitments: msg.commitments.clone(),
        guardian_pks: gpks.into_iter().collect(),
    })
}

/// Verifies round-1 broadcasts in board order. The first valid message per
/// dealer wins; everything else lands in `rejected`.
pub fn process_round1<G: Group>(messages: &[DealMessage<G>], params: &Params, pki: &Pki<G>, context: &[u8]) -> PublicState<G> {
    let mut records = BTreeMap::new();
    let mut rejected = Vec::new();
    for msg in messages {
        if records.contains_key(&msg.dealer) {
            rejected.push((msg.dealer, "duplicate deal".to_string()));
            continue;
        }
        match check_deal(msg, params, pki, context) {
            Ok(rec) => {
                records.insert(msg.dealer, rec);
            }
            Err(reason) => rejected.push((msg.dealer, reason)),
        }
    }
    let participants: BTreeSet<_> = records.keys().copied().collect();
    let global_pk = (!participants.is_empty()).then(|| product(records.values().map(|r: &DealerRecord<G>| r.partial_pk)));
    PublicState {
        params: *params,
        context: context.to_vec(),
        participants,
        global_pk,
        records,
        rejected,
        disqualified: BTreeSet::new(),
    }
}
