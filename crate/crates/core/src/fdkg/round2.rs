use std::collections::{BTreeMap, BTreeSet};

use rand::{CryptoRng, RngCore};

use super::proof_context;
use super::types::{DealerSecret, PublicState, RevealMessage};
use crate::algebra::{reconstruct, ElementOf, FieldElement, Group, GroupElement, ScalarOf, Share};
use crate::error::{Error, Result};
use crate::nizk::{guardian_check_share, prove_dl, prove_share_decryption, verify_dl, verify_share_decryption, ShareDecryptionProof};
use crate::pke::pke_decrypt;
use crate::PartyIndex;

pub(crate) fn secret_context(ceremony: &[u8], sender: PartyIndex) -> Vec<u8> {
    proof_context(ceremony, "secret", &[sender])
}

pub(crate) fn share_context(ceremony: &[u8], dealer: PartyIndex, guardian: PartyIndex) -> Vec<u8> {
    proof_context(ceremony, "share", &[dealer, guardian])
}

pub fn round2_reveal_secret<G: Group, R: RngCore + CryptoRng + ?Sized>(
    secret: &DealerSecret<G>,
    state: &PublicState<G>,
    rng: &mut R,
) -> Result<RevealMessage<G>> {
    let rec = state.record(secret.dealer)?;
    let ctx = secret_context(&state.context, secret.dealer);
    Ok(RevealMessage::Secret {
        sender: secret.dealer,
        partial_sk: secret.partial_sk,
        proof: prove_dl(&secret.partial_sk, &rec.partial_pk, &ctx, rng),
    })
}

/// Decrypts and proves one share per dealer guarded by `me`, in dealer order.
/// Shares failing the commitment check come out as complaints.
pub fn round2_reveal_shares<G: Group, R: RngCore + CryptoRng + ?Sized>(
    me: PartyIndex,
    sk: &ScalarOf<G>,
    state: &PublicState<G>,
    rng: &mut R,
) -> Vec<RevealMessage<G>> {
    reveal_shares_where(me, sk, state, |_| true, rng)
}

pub(crate) fn reveal_shares_where<G: Group, R: RngCore + CryptoRng + ?Sized>(
    me: PartyIndex,
    sk: &ScalarOf<G>,
    state: &PublicState<G>,
    wanted: impl Fn(PartyIndex) -> bool,
    rng: &mut R,
) -> Vec<RevealMessage<G>> {
    state
        .records
        .iter()
        .filter(|(&dealer, rec)| rec.guardians.contains(&me) && wanted(dealer))
        .map(|(&dealer, rec)| {
            let ct = &rec.ciphertexts[&me];
            let ctx = share_context(&state.context, dealer, me);
            let (share, proof) = prove_share_decryption(sk, &rec.guardian_pks[&me], ct, &ctx, rng);
            if guardian_check_share(&share, u64::from(me), &rec.commitments) {
                RevealMessage::Share { sender: me, dealer, share, proof }
            } else {
                RevealMessage::Complaint { sender: me, dealer, share, proof }
            }
        })
        .collect()
}

pub(crate) fn verify_secret<G: Group>(state: &PublicState<G>, sender: PartyIndex, sk: &ScalarOf<G>, proof: &crate::nizk::DlProof<G>) -> bool {
    let Some(rec) = state.records.get(&sender) else {
        return false;
    };
    G::base_pow(sk) == rec.partial_pk && verify_dl(&rec.partial_pk, proof, &secret_context(&state.context, sender))
}

/// Checks the decryption proof only; the caller decides what the share means.
pub(crate) fn verify_decryption<G: Group>(
    state: &PublicState<G>,
    sender: PartyIndex,
    dealer: PartyIndex,
    share: &ScalarOf<G>,
    proof: &ShareDecryptionProof<G>,
) -> bool {
    let Some(rec) = state.records.get(&dealer) else {
        return false;
    };
    let (Some(ct), Some(pk)) = (rec.ciphertexts.get(&sender), rec.guardian_pks.get(&sender)) else {
        return false;
    };
    verify_share_decryption(pk, ct, share, proof, &share_context(&state.context, dealer, sender))
}

pub(crate) fn share_consistent<G: Group>(state: &PublicState<G>, sender: PartyIndex, dealer: PartyIndex, share: &ScalarOf<G>) -> bool {
    state.records.get(&dealer).is_some_and(|rec| guardian_check_share(share, u64::from(sender), &rec.commitments))
}

/// Removes every dealer named by a verified complaint and divides its partial
/// key out of the global key. Returns the removed dealers.
pub fn apply_complaints<G: Group>(state: &mut PublicState<G>, reveals: &[RevealMessage<G>]) -> BTreeSet<PartyIndex> {
    let mut removed = BTreeSet::new();
    for msg in reveals {
        let RevealMessage::Complaint { sender, dealer, share, proof } = msg else {
            continue;
        };
        if !state.participants.contains(dealer)
            || !verify_decryption(state, *sender, *dealer, share, proof)
            || share_consistent(state, *sender, *dealer, share)
        {
            continue;
        }
        let rec = state.records.remove(dealer).expect("participant has a record");
        state.participants.remove(dealer);
        state.disqualified.insert(*dealer);
        state.global_pk = if state.participants.is_empty() {
            None
        } else {
            state.global_pk.map(|e| e.div(&rec.partial_pk))
        };
        removed.insert(*dealer);
    }
    removed
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReconstructionStatus {
    Success,
    Failure,
}

/// How a partial secret was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Direct,
    ViaGuardians(BTreeSet<PartyIndex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionOutcome<G: Group> {
    pub status: ReconstructionStatus,
    pub global_sk: Option<ScalarOf<G>>,
    /// Global key after complaints.
    pub global_pk: Option<ElementOf<G>>,
    pub participants: BTreeSet<PartyIndex>,
    pub disqualified: BTreeSet<PartyIndex>,
    pub recovered: BTreeMap<PartyIndex, Recovery>,
    pub partial_secrets: BTreeMap<PartyIndex, ScalarOf<G>>,
    pub unrecoverable: BTreeSet<PartyIndex>,
}

impl<G: Group> ReconstructionOutcome<G> {
    pub fn is_success(&self) -> bool {
        self.status == ReconstructionStatus::Success
    }
}

/// Valid round-2 material: direct secrets and commitment-consistent shares.
/// The first valid message per (sender, dealer) wins.
pub(crate) struct ValidReveals<G: Group> {
    pub secrets: BTreeMap<PartyIndex, ScalarOf<G>>,
    pub shares: BTreeMap<PartyIndex, BTreeMap<PartyIndex, ScalarOf<G>>>,
}

pub(crate) fn collect_reveals<G: Group>(state: &PublicState<G>, reveals: &[RevealMessage<G>]) -> ValidReveals<G> {
    let mut secrets = BTreeMap::new();
    let mut shares: BTreeMap<PartyIndex, BTreeMap<PartyIndex, ScalarOf<G>>> = BTreeMap::new();
    for msg in reveals {
        match msg {
            RevealMessage::Secret { sender, partial_sk, proof } => {
                if !secrets.contains_key(sender) && verify_secret(state, *sender, partial_sk, proof) {
                    secrets.insert(*sender, *partial_sk);
                }
            }
            RevealMessage::Share { sender, dealer, share, proof } => {
                let seen = shares.get(dealer).is_some_and(|m| m.contains_key(sender));
                if !seen
                    && verify_decryption(state, *sender, *dealer, share, proof)
                    && share_consistent(state, *sender, *dealer, share)
                {
                    shares.entry(*dealer).or_default().insert(*sender, *share);
                }
            }
            RevealMessage::Complaint { .. } => {}
        }
    }
    ValidReveals { secrets, shares }
}

/// Rebuilds the joint secret from round-2 broadcasts.
///
/// Each dealer is recovered from its own reveal if one verifies, else from the
/// `t` lowest-indexed guardians with valid shares. Errors on an empty
/// participant set or on a recovered secret that contradicts its public key.
pub fn offline_reconstruct<G: Group>(state: &PublicState<G>, reveals: &[RevealMessage<G>]) -> Result<ReconstructionOutcome<G>> {
    let mut state = state.clone();
    apply_complaints(&mut state, reveals);
    if state.participants.is_empty() {
        return Err(Error::EmptyParticipantSet);
    }
    let valid = collect_reveals(&state, reveals);
    let t = state.params.t;
    let mut recovered = BTreeMap::new();
    let mut partial_secrets = BTreeMap::new();
    let mut unrecoverable = BTreeSet::new();
    for &i in &state.participants {
        let rec = &state.records[&i];
        if let Some(d) = valid.secrets.get(&i) {
            recovered.insert(i, Recovery::Direct);
            partial_secrets.insert(i, *d);
            continue;
        }
        let Some(held) = valid.shares.get(&i).filter(|m| m.len() >= t) else {
            unrecoverable.insert(i);
            continue;
        };
        let picked: Vec<Share<ScalarOf<G>>> = held
            .iter()
            .take(t)
            .map(|(&j, &value)| Share { index: u64::from(j), value })
            .collect();
        let d = reconstruct(&picked, t)?;
        if G::base_pow(&d) != rec.partial_pk {
            return Err(Error::Integrity(format!("reconstructed secret of dealer {i} does not match its key")));
        }
        recovered.insert(i, Recovery::ViaGuardians(held.keys().take(t).copied().collect()));
        partial_secrets.insert(i, d);
    }
    let global_pk = state.global_pk;
    let (status, global_sk) = if unrecoverable.is_empty() {
        let d = partial_secrets.values().fold(ScalarOf::<G>::zero(), |acc, x| acc + *x);
        if Some(G::base_pow(&d)) != global_pk {
            return Err(Error::Integrity("joint secret does not match global key".into()));
        }
        (ReconstructionStatus::Success, Some(d))
    } else {
        (ReconstructionStatus::Failure, None)
    };
    Ok(ReconstructionOutcome {
        status,
        global_sk,
        global_pk,
        participants: state.participants,
        disqualified: state.disqualified,
        recovered,
        partial_secrets,
        unrecoverable,
    })
}

/// What a coalition `C` learns on its own: the partial secrets of its dealers
/// and every share encrypted to its members. Returns the joint secret if that
/// suffices.
pub fn adversary_view_reconstruct<G: Group>(
    state: &PublicState<G>,
    own_secrets: &BTreeMap<PartyIndex, ScalarOf<G>>,
    own_keys: &BTreeMap<PartyIndex, ScalarOf<G>>,
) -> Option<ScalarOf<G>> {
    let t = state.params.t;
    let mut total = ScalarOf::<G>::zero();
    for (&i, rec) in &state.records {
        if let Some(d) = own_secrets.get(&i) {
            total += *d;
            continue;
        }
        let shares: Vec<_> = rec
            .ciphertexts
            .iter()
            .filter_map(|(&j, ct)| {
                own_keys.get(&j).map(|sk| Share { index: u64::from(j), value: pke_decrypt::<G>(sk, ct) })
            })
            .collect();
        if shares.len() < t {
            return None;
        }
        total += reconstruct(&shares[..t], t).ok()?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestGroup;
    use crate::codec::{Decode, Encode};
    use crate::fdkg::{process_round1, round1_deal, GuardianSet, Params, Pki};
    use crate::nizk::{prove_deal, FeldmanCommitments};
    use crate::pke::{pke_encrypt, pke_keygen, EncRandomness, PkeKeyPair};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type G = TestGroup;
    type S = ScalarOf<G>;

    struct World {
        params: Params,
        keys: BTreeMap<PartyIndex, PkeKeyPair<G>>,
        pki: Pki<G>,
        rng: ChaCha20Rng,
    }

    fn world(n: u32, t: usize, k: usize, seed: u64) -> World {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let keys: BTreeMap<_, _> = (1..=n).map(|i| (i, pke_keygen::<G, _>(&mut rng))).collect();
        let pki = keys.iter().map(|(&i, kp)| (i, kp.pk)).collect();
        World { params: Params::new(n, t, k).unwrap(), keys, pki, rng }
    }

    const CTX: &[u8] = b"test-ceremony";

    fn worked_example_sets() -> BTreeMap<PartyIndex, Vec<PartyIndex>> {
        [(1, vec![2, 3, 5]), (3, vec![4, 5, 6]), (5, vec![6, 7, 8]), (7, vec![8, 9, 10]), (9, vec![5, 7, 10])]
            .into_iter()
            .collect()
    }

    fn deal_all(
        w: &mut World,
        sets: &BTreeMap<PartyIndex, Vec<PartyIndex>>,
    ) -> (PublicState<G>, BTreeMap<PartyIndex, DealerSecret<G>>) {
        let mut msgs = Vec::new();
        let mut secrets = BTreeMap::new();
        for (&i, g) in sets {
            let gs = GuardianSet::new(i, g.iter().copied(), &w.params).unwrap();
            let (m, s) = round1_deal(i, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap();
            msgs.push(m);
            secrets.insert(i, s);
        }
        (process_round1(&msgs, &w.params, &w.pki, CTX), secrets)
    }

    fn round2(
        w: &mut World,
        state: &PublicState<G>,
        secrets: &BTreeMap<PartyIndex, DealerSecret<G>>,
        present: &[PartyIndex],
    ) -> Vec<RevealMessage<G>> {
        let mut out = Vec::new();
        for &p in present {
            if let Some(s) = secrets.get(&p) {
                out.push(round2_reveal_secret(s, state, &mut w.rng).unwrap());
            }
            out.extend(round2_reveal_shares(p, &w.keys[&p].sk, state, &mut w.rng));
        }
        out
    }

    #[test]
    fn worked_example() {
        let mut w = world(10, 2, 3, 1);
        let (state, secrets) = deal_all(&mut w, &worked_example_sets());
        assert_eq!(state.participants, [1, 3, 5, 7, 9].into_iter().collect());
        let reveals = round2(&mut w, &state, &secrets, &[3, 5, 7]);
        assert!(reveals.iter().any(|m| matches!(m, RevealMessage::Share { sender: 3, dealer: 1, .. })));
        let out = offline_reconstruct(&state, &reveals).unwrap();
        assert!(out.is_success());
        for i in [3, 5, 7] {
            assert_eq!(out.recovered[&i], Recovery::Direct);
        }
        assert_eq!(out.recovered[&1], Recovery::ViaGuardians([3, 5].into_iter().collect()));
        assert_eq!(out.recovered[&9], Recovery::ViaGuardians([5, 7].into_iter().collect()));
        let d = out.global_sk.unwrap();
        assert_eq!(Some(G::base_pow(&d)), state.global_pk);
        let sum = secrets.values().fold(S::zero(), |acc, s| acc + s.partial_sk);
        assert_eq!(d, sum);
        // guardian 3 decrypts f_1(3)
        let ct = &state.records[&1].ciphertexts[&3];
        assert_eq!(pke_decrypt::<G>(&w.keys[&3].sk, ct), secrets[&1].polynomial.evaluate_at(3));
    }

    #[test]
    fn missing_guardian_names_dealer() {
        let mut w = world(10, 2, 3, 2);
        let (state, secrets) = deal_all(&mut w, &worked_example_sets());
        // dealer 1 absent, only guardian 3 of {2,3,5} present
        let reveals = round2(&mut w, &state, &secrets, &[3, 6, 7, 8, 9]);
        let out = offline_reconstruct(&state, &reveals).unwrap();
        assert_eq!(out.status, ReconstructionStatus::Failure);
        assert_eq!(out.unrecoverable, [1].into_iter().collect());
        assert!(out.global_sk.is_none());
    }

    #[test]
    fn all_direct_needs_no_interpolation() {
        let mut w = world(6, 2, 3, 3);
        let sets = (1..=6).map(|i| (i, (1..=6).filter(|&j| j != i).take(3).collect())).collect();
        let (state, secrets) = deal_all(&mut w, &sets);
        let reveals: Vec<_> = secrets.values().map(|s| round2_reveal_secret(s, &state, &mut w.rng).unwrap()).collect();
        let out = offline_reconstruct(&state, &reveals).unwrap();
        assert!(out.is_success());
        assert!(out.recovered.values().all(|r| *r == Recovery::Direct));
    }

    #[test]
    fn honest_deals_verify_and_shares_check() {
        let mut w = world(8, 3, 4, 4);
        for round in 0..100u32 {
            let me = 1 + round % 8;
            let members: Vec<_> = (1..=8).filter(|&j| j != me).skip((round % 4) as usize).take(4).collect();
            let gs = GuardianSet::new(me, members, &w.params).unwrap();
            let (msg, secret) = round1_deal(me, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap();
            assert_eq!(msg.ciphertexts.len(), 4);
            let state = process_round1(std::slice::from_ref(&msg), &w.params, &w.pki, CTX);
            assert_eq!(state.participants.len(), 1, "{:?}", state.rejected);
            for (&j, ct) in &msg.ciphertexts {
                let s = pke_decrypt::<G>(&w.keys[&j].sk, ct);
                assert!(guardian_check_share(&s, u64::from(j), &msg.commitments));
                assert_eq!(s, secret.polynomial.evaluate_at(u64::from(j)));
            }
        }
    }

    #[test]
    fn threshold_one_hands_out_the_secret() {
        let mut w = world(5, 1, 2, 5);
        let gs = GuardianSet::new(2, [4, 5], &w.params).unwrap();
        let (msg, secret) = round1_deal(2, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap();
        for (&j, ct) in &msg.ciphertexts {
            assert_eq!(pke_decrypt::<G>(&w.keys[&j].sk, ct), secret.partial_sk);
        }
    }

    #[test]
    fn round1_filtering() {
        let mut w = world(6, 2, 3, 6);
        let mut msgs = Vec::new();
        for i in 1..=5 {
            let members: Vec<_> = (1..=6).filter(|&j| j != i).take(3).collect();
            let gs = GuardianSet::new(i, members, &w.params).unwrap();
            msgs.push(round1_deal::<G, _>(i, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap().0);
        }
        let state = process_round1(&msgs, &w.params, &w.pki, CTX);
        assert_eq!(state.participants.len(), 5);
        let product = msgs.iter().fold(ElementOf::<G>::identity(), |acc, m| acc * m.partial_pk);
        assert_eq!(state.global_pk, Some(product));

        let mut tampered = msgs.clone();
        let ct = tampered[2].ciphertexts.values_mut().next().unwrap();
        ct.c2 *= G::generator();
        let state = process_round1(&tampered, &w.params, &w.pki, CTX);
        assert!(!state.participants.contains(&3));
        assert_eq!(state.participants.len(), 4);
        let product = msgs.iter().filter(|m| m.dealer != 3).fold(ElementOf::<G>::identity(), |acc, m| acc * m.partial_pk);
        assert_eq!(state.global_pk, Some(product));

        // later duplicate ignored even if valid
        let mut dup = msgs.clone();
        dup.push(msgs[0].clone());
        let state = process_round1(&dup, &w.params, &w.pki, CTX);
        assert_eq!(state.rejected, vec![(1, "duplicate deal".to_string())]);

        let empty = process_round1::<G>(&[], &w.params, &w.pki, CTX);
        assert!(empty.participants.is_empty());
        assert!(empty.global_pk.is_none());
        assert!(matches!(offline_reconstruct(&empty, &[]), Err(Error::EmptyParticipantSet)));
    }

    #[test]
    fn wrong_context_is_rejected() {
        let mut w = world(4, 1, 2, 7);
        let gs = GuardianSet::new(1, [2, 3], &w.params).unwrap();
        let (msg, _) = round1_deal::<G, _>(1, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap();
        let state = process_round1(&[msg], &w.params, &w.pki, b"other");
        assert!(state.participants.is_empty());
    }

    #[test]
    fn secret_reveal_checks() {
        let mut w = world(5, 1, 2, 8);
        let sets = [(1, vec![2, 3]), (2, vec![3, 4])].into_iter().collect();
        let (state, secrets) = deal_all(&mut w, &sets);
        let msg = round2_reveal_secret(&secrets[&1], &state, &mut w.rng).unwrap();
        let RevealMessage::Secret { sender, partial_sk, proof } = msg.clone() else { panic!() };
        assert!(verify_secret(&state, sender, &partial_sk, &proof));
        assert!(!verify_secret(&state, sender, &(partial_sk + S::one()), &proof));
        assert!(!verify_secret(&state, 2, &partial_sk, &proof));
        let outsider = DealerSecret::<G> { dealer: 5, ..secrets[&1].clone() };
        assert!(matches!(round2_reveal_secret(&outsider, &state, &mut w.rng), Err(Error::NotParticipant(5))));
        assert!(round2_reveal_shares(1, &w.keys[&1].sk, &state, &mut w.rng).is_empty());
        let bytes = msg.to_canonical_bytes();
        assert_eq!(RevealMessage::<G>::from_canonical_bytes(&bytes).unwrap(), msg);
    }

    #[test]
    fn forged_reveals_are_ignored() {
        let mut w = world(10, 2, 3, 9);
        let (state, secrets) = deal_all(&mut w, &worked_example_sets());
        let mut reveals = round2(&mut w, &state, &secrets, &[3, 5, 7]);
        // a guardian claims a share it does not hold, with its own honest proof
        for m in reveals.iter_mut() {
            if let RevealMessage::Share { sender: 3, dealer: 1, share, .. } = m {
                *share += S::one();
            }
        }
        let out = offline_reconstruct(&state, &reveals).unwrap();
        assert_eq!(out.unrecoverable, [1].into_iter().collect());
    }

    /// A dealer whose proofs verify but whose ciphertext for guardian `bad`
    /// hides a share off the committed polynomial.
    fn cheating_deal(w: &mut World, me: PartyIndex, guardians: &[PartyIndex], bad: PartyIndex) -> crate::fdkg::DealMessage<G> {
        let poly = crate::algebra::Polynomial::<S>::random(w.params.t, &mut w.rng).unwrap();
        let gpks: Vec<_> = guardians.iter().map(|&j| (j, w.pki[&j])).collect();
        let rands: Vec<_> = gpks.iter().map(|_| EncRandomness::<G>::sample(&mut w.rng)).collect();
        let cts: Vec<_> = gpks
            .iter()
            .zip(&rands)
            .map(|((j, pk), r)| {
                let mut s = poly.evaluate_at(u64::from(*j));
                if *j == bad {
                    s += S::one();
                }
                pke_encrypt::<G>(pk, &s, r)
            })
            .collect();
        let ctx = proof_context(CTX, "deal", &[me]);
        let (commitments, proofs) = prove_deal(&poly, &gpks, &rands, &cts, &ctx, &mut w.rng).unwrap();
        assert_eq!(commitments, FeldmanCommitments::commit(&poly));
        crate::fdkg::DealMessage {
            dealer: me,
            partial_pk: G::base_pow(&poly.secret()),
            guardians: guardians.iter().copied().collect(),
            ciphertexts: guardians.iter().copied().zip(cts).collect(),
            commitments,
            proofs,
        }
    }

    #[test]
    fn complaint_disqualifies_cheating_dealer() {
        let mut w = world(6, 2, 3, 10);
        let mut msgs = vec![cheating_deal(&mut w, 1, &[2, 3, 4], 3)];
        let mut secrets = BTreeMap::new();
        for i in [2, 5] {
            let members: Vec<_> = (1..=6).filter(|&j| j != i).take(3).collect();
            let gs = GuardianSet::new(i, members, &w.params).unwrap();
            let (m, s) = round1_deal(i, &w.params, &gs, &w.pki, CTX, &mut w.rng).unwrap();
            msgs.push(m);
            secrets.insert(i, s);
        }
        let state = process_round1(&msgs, &w.params, &w.pki, CTX);
        assert_eq!(state.participants.len(), 3, "cheating deal passes round 1");
        let from3 = round2_reveal_shares(3, &w.keys[&3].sk, &state, &mut w.rng);
        let complaint = from3.iter().find(|m| matches!(m, RevealMessage::Complaint { dealer: 1, .. })).unwrap();
        let RevealMessage::Complaint { sender, dealer, share, proof } = complaint else { unreachable!() };
        assert!(verify_decryption(&state, *sender, *dealer, share, proof));
        assert!(!share_consistent(&state, *sender, *dealer, share));

        let reveals = round2(&mut w, &state, &secrets, &[2, 3, 4, 5]);
        let out = offline_reconstruct(&state, &reveals).unwrap();
        assert!(out.is_success());
        assert_eq!(out.disqualified, [1].into_iter().collect());
        let expect_pk = msgs[1].partial_pk * msgs[2].partial_pk;
        assert_eq!(out.global_pk, Some(expect_pk));
        assert_eq!(Some(G::base_pow(&out.global_sk.unwrap())), out.global_pk);

        // a complaint against an honest dealer does not verify
        let honest = round2_reveal_shares(3, &w.keys[&3].sk, &state, &mut w.rng);
        let forged: Vec<_> = honest
            .into_iter()
            .filter_map(|m| match m {
                RevealMessage::Share { sender, dealer, share, proof } => Some(RevealMessage::Complaint { sender, dealer, share, proof }),
                _ => None,
            })
            .collect();
        let mut st = state.clone();
        assert!(apply_complaints(&mut st, &forged).is_empty());
    }

    #[test]
    fn selection_is_deterministic() {
        let mut w = world(10, 2, 3, 11);
        let (state, secrets) = deal_all(&mut w, &worked_example_sets());
        let reveals = round2(&mut w, &state, &secrets, &[2, 3, 5, 6, 7, 8, 10]);
        let a = offline_reconstruct(&state, &reveals).unwrap();
        let mut rev = reveals.clone();
        rev.reverse();
        let b = offline_reconstruct(&state, &rev).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.recovered[&1], Recovery::ViaGuardians([2, 3].into_iter().collect()));
    }

    #[test]
    fn adversary_view() {
        let mut w = world(10, 2, 3, 12);
        let (state, secrets) = deal_all(&mut w, &worked_example_sets());
        let view = |c: &[PartyIndex]| {
            let own: BTreeMap<_, _> = c.iter().filter_map(|i| secrets.get(i).map(|s| (*i, s.partial_sk))).collect();
            let keys: BTreeMap<_, _> = c.iter().map(|i| (*i, w.keys[i].sk)).collect();
            adversary_view_reconstruct(&state, &own, &keys)
        };
        let d = secrets.values().fold(S::zero(), |acc, s| acc + s.partial_sk);
        assert_eq!(view(&[3, 5, 7]), Some(d));
        assert_eq!(view(&[3, 5]), None);
        assert_eq!(view(&[]), None);
    }
}
