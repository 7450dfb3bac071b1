use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::board::{BroadcastBoard, ROUND_DEAL, ROUND_KEYS, ROUND_REVEAL};
use super::transcript::{replay, ReplayResult, Transcript};
use crate::algebra::{ElementOf, Group, GroupElement, ScalarOf};
use crate::codec::Encode;
use crate::error::Result;
use crate::fdkg::{
    adversary_view_reconstruct, round1_deal, round2_reveal_secret, round2_reveal_shares, DealerSecret, GuardianSet,
    Params, Pki, PublicState, ReconstructionOutcome, RevealMessage,
};
use crate::pke::{pke_keygen, PkeKeyPair};
use crate::PartyIndex;

/// What a party does in each round.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum Behavior {
    #[default]
    Honest,
    /// Skips round 1, still serves as guardian in round 2.
    AbsentRound1,
    /// Deals, then drops out.
    AbsentRound2,
    /// Absent in both rounds.
    Offline,
    /// Deals and reveals its own secret but keeps back shares of these dealers.
    WithholdShares(BTreeSet<PartyIndex>),
    /// Broadcasts a deal with a corrupted ciphertext.
    MalformDeal,
    /// Deals honestly, then withholds everything.
    ByzantineSilent,
}

impl Behavior {
    /// Absences model churn; everything else counts as corruption.
    pub fn is_corrupt(&self) -> bool {
        matches!(self, Behavior::WithholdShares(_) | Behavior::MalformDeal | Behavior::ByzantineSilent)
    }

    pub(crate) fn deals(&self) -> bool {
        !matches!(self, Behavior::AbsentRound1 | Behavior::Offline)
    }

    pub(crate) fn present_round2(&self) -> bool {
        !matches!(self, Behavior::AbsentRound2 | Behavior::Offline | Behavior::ByzantineSilent)
    }
}

/// Behavior per party; parties not listed are honest.
pub type BehaviorSpec = BTreeMap<PartyIndex, Behavior>;

/// `SHA256(tag ‖ master ‖ party ‖ round)`.
pub fn child_seed(master: u64, party: PartyIndex, round: u8) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"fdkg/v1/child-seed");
    h.update(master.to_be_bytes());
    h.update(party.to_be_bytes());
    h.update([round]);
    h.finalize().into()
}

pub fn child_rng(master: u64, party: PartyIndex, round: u8) -> ChaCha20Rng {
    ChaCha20Rng::from_seed(child_seed(master, party, round))
}

/// Encryption key pairs for parties `1..=n`.
#[derive(Clone, Debug)]
pub struct KeyRing<G: Group> {
    keys: BTreeMap<PartyIndex, PkeKeyPair<G>>,
}

impl<G: Group> KeyRing<G> {
    pub fn generate(n: u32, master: u64) -> Self {
        let keys = (1..=n).map(|i| (i, pke_keygen::<G, _>(&mut child_rng(master, i, ROUND_KEYS)))).collect();
        KeyRing { keys }
    }

    pub fn pki(&self) -> Pki<G> {
        self.keys.iter().map(|(&i, kp)| (i, kp.pk)).collect()
    }

    pub fn secret(&self, party: PartyIndex) -> Option<&ScalarOf<G>> {
        self.keys.get(&party).map(|kp| &kp.sk)
    }

    pub fn public(&self, party: PartyIndex) -> Option<&ElementOf<G>> {
        self.keys.get(&party).map(|kp| &kp.pk)
    }
}

/// One line of the verification log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub position: usize,
    pub sender: PartyIndex,
    pub round: u8,
    pub kind: &'static str,
    pub accepted: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CeremonyResult<G: Group> {
    pub state: PublicState<G>,
    pub outcome: Result<ReconstructionOutcome<G>>,
    pub board: BroadcastBoard,
    pub transcript: Transcript,
    pub log: Vec<LogEntry>,
    /// Every verified guardian share revealed in round 2, keyed by (dealer, guardian).
    pub revealed_shares: BTreeMap<(PartyIndex, PartyIndex), ScalarOf<G>>,
    /// Dealer-side secrets. Known to the harness only, never broadcast.
    pub dealer_secrets: BTreeMap<PartyIndex, DealerSecret<G>>,
}

impl<G: Group> CeremonyResult<G> {
    pub fn succeeded(&self) -> bool {
        self.outcome.as_ref().is_ok_and(|o| o.is_success())
    }
}

pub fn ceremony_context<G: Group>(params: &Params, master: u64) -> Vec<u8> {
    let mut out = format!("fdkg-ceremony/{}", G::NAME).into_bytes();
    out.extend_from_slice(&params.n.to_be_bytes());
    out.extend_from_slice(&(params.t as u32).to_be_bytes());
    out.extend_from_slice(&(params.k as u32).to_be_bytes());
    out.extend_from_slice(&master.to_be_bytes());
    out
}

/// Board, context, secrets and public state after key registration and round 1.
pub(crate) struct Round1<G: Group> {
    pub board: BroadcastBoard,
    pub context: Vec<u8>,
    pub dealer_secrets: BTreeMap<PartyIndex, DealerSecret<G>>,
    pub state: PublicState<G>,
}

pub(crate) fn run_round1<G: Group>(
    params: &Params,
    guardians: &BTreeMap<PartyIndex, GuardianSet>,
    behaviors: &BehaviorSpec,
    keys: &KeyRing<G>,
    seed: u64,
) -> Result<Round1<G>> {
    let context = ceremony_context::<G>(params, seed);
    let pki = keys.pki();
    let behavior = |i: PartyIndex| behaviors.get(&i).cloned().unwrap_or_default();
    let mut board = BroadcastBoard::new();
    for (&i, pk) in &pki {
        board.append(i, ROUND_KEYS, pk.to_bytes());
    }

    let dealers: Vec<PartyIndex> = params
        .parties()
        .filter(|&i| behavior(i).deals() && guardians.contains_key(&i))
        .collect();
    let deals: Vec<_> = dealers
        .par_iter()
        .map(|&i| {
            let mut rng = child_rng(seed, i, ROUND_DEAL);
            let (mut msg, secret) = round1_deal::<G, _>(i, params, &guardians[&i], &pki, &context, &mut rng)?;
            if behavior(i) == Behavior::MalformDeal {
                if let Some(ct) = msg.ciphertexts.values_mut().next() {
                    ct.c2 *= G::generator();
                }
            }
            Ok((msg, secret))
        })
        .collect::<Result<_>>()?;
    for (msg, _) in &deals {
        board.append(msg.dealer, ROUND_DEAL, msg.to_canonical_bytes());
    }
    let dealer_secrets = deals.into_iter().map(|(m, s)| (m.dealer, s)).collect();
    // every party derives the same state from the board
    let state = crate::fdkg::process_round1(&super::transcript::decode_deals::<G>(&board), params, &pki, &context);
    Ok(Round1 { board, context, dealer_secrets, state })
}

/// Runs both rounds and the offline phase on a fresh board.
///
/// Each party's randomness for round `r` comes from `child_rng(seed, party, r)`,
/// so the result does not depend on how party steps are scheduled.
pub fn run_ceremony<G: Group>(
    params: &Params,
    guardians: &BTreeMap<PartyIndex, GuardianSet>,
    behaviors: &BehaviorSpec,
    keys: &KeyRing<G>,
    seed: u64,
) -> Result<CeremonyResult<G>> {
    let behavior = |i: PartyIndex| behaviors.get(&i).cloned().unwrap_or_default();
    let Round1 { mut board, context, dealer_secrets, state } = run_round1(params, guardians, behaviors, keys, seed)?;

    let reveals: Vec<Vec<RevealMessage<G>>> = params
        .parties()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| {
            let b = behavior(i);
            if !b.present_round2() {
                return Ok(Vec::new());
            }
            let mut rng = child_rng(seed, i, ROUND_REVEAL);
            let mut out = Vec::new();
            if let Some(secret) = dealer_secrets.get(&i).filter(|_| state.participants.contains(&i)) {
                out.push(round2_reveal_secret(secret, &state, &mut rng)?);
            }
            let sk = keys.secret(i).ok_or(crate::Error::UnknownParty(i))?;
            let shares = round2_reveal_shares(i, sk, &state, &mut rng);
            out.extend(shares.into_iter().filter(|m| match (&b, m) {
                (Behavior::WithholdShares(targets), RevealMessage::Share { dealer, .. }) => !targets.contains(dealer),
                _ => true,
            }));
            Ok(out)
        })
        .collect::<Result<_>>()?;
    for (i, msgs) in (1..=params.n).zip(&reveals) {
        for m in msgs {
            board.append(i, ROUND_REVEAL, m.to_canonical_bytes());
        }
    }

    let transcript = Transcript::new::<G>(*params, context, board.clone());
    let ReplayResult { state, outcome, log, revealed_shares, .. } = replay::<G>(&transcript)?;
    Ok(CeremonyResult {
        state,
        outcome,
        board,
        transcript,
        log,
        revealed_shares,
        dealer_secrets,
    })
}

/// Joint secret as seen by coalition `corrupted`, if it can compute it.
pub fn adversary_view<G: Group>(result: &CeremonyResult<G>, keys: &KeyRing<G>, corrupted: &BTreeSet<PartyIndex>) -> Option<ScalarOf<G>> {
    let own_secrets = corrupted
        .iter()
        .filter_map(|i| result.dealer_secrets.get(i).map(|s| (*i, s.partial_sk)))
        .collect();
    let own_keys = corrupted.iter().filter_map(|i| keys.secret(*i).map(|sk| (*i, *sk))).collect();
    adversary_view_reconstruct(&result.state, &own_secrets, &own_keys)
}
