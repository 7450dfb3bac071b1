use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::ballot::{aggregate_ballots, cast_ballot, Aggregate, Ballot};
use super::encoding::VoteEncoding;
use super::tally::{
    decryption_factors, tally_finalize, tally_partial_decrypt, tally_share_reveal, verify_partial_decryption,
    PartialDecryption, TallyResult,
};
use crate::algebra::Group;
use crate::codec::{Decode, Encode};
use crate::error::{Error, Result};
use crate::fdkg::{
    apply_complaints, process_round1, round2_reveal_shares, GuardianSet, Params, PublicState, Recovery, RevealMessage,
};
use crate::network::{
    child_rng, decode_deals, decode_pki, run_round1, Behavior, BehaviorSpec, KeyRing, Round1, Transcript, ROUND_BALLOT,
    ROUND_PARTIAL_DECRYPT, ROUND_REVEAL, ROUND_TALLY_SHARES,
};
use crate::PartyIndex;

/// Everything an observer derives from an election board.
#[derive(Clone, Debug)]
pub struct ElectionReplay<G: Group> {
    /// Key-generation state after complaints.
    pub state: PublicState<G>,
    pub aggregate: Option<Aggregate<G>>,
    pub recovered: BTreeMap<PartyIndex, Recovery>,
    pub tally: Result<TallyResult>,
}

#[derive(Clone, Debug)]
pub struct ElectionResult<G: Group> {
    pub transcript: Transcript,
    pub replay: ElectionReplay<G>,
}

impl<G: Group> ElectionResult<G> {
    pub fn succeeded(&self) -> bool {
        self.replay.tally.is_ok()
    }
}

fn on_board<T: Decode>(transcript: &Transcript, round: u8, sender_of: impl Fn(&T) -> PartyIndex) -> Vec<T> {
    transcript
        .board
        .round(round)
        .filter_map(|e| T::from_canonical_bytes(&e.payload).ok().filter(|m| sender_of(m) == e.sender))
        .collect()
}

/// Recomputes the election outcome from its board.
///
/// Round 2 carries only complaints, filed before voting so that ballots are
/// cast under the final key. Partial decryptions and tally shares follow in
/// their own rounds.
pub fn replay_election<G: Group>(transcript: &Transcript, encoding: &VoteEncoding) -> Result<ElectionReplay<G>> {
    if transcript.group != G::NAME {
        return Err(Error::InvalidParams(format!("transcript uses group {}, not {}", transcript.group, G::NAME)));
    }
    let ctx = &transcript.context;
    let pki = decode_pki::<G>(&transcript.board);
    let mut state = process_round1(&decode_deals::<G>(&transcript.board), &transcript.params, &pki, ctx);
    let complaints = on_board::<RevealMessage<G>>(transcript, ROUND_REVEAL, RevealMessage::sender);
    apply_complaints(&mut state, &complaints);
    let Some(global_pk) = state.global_pk else {
        return Ok(ElectionReplay { state, aggregate: None, recovered: BTreeMap::new(), tally: Err(Error::EmptyParticipantSet) });
    };

    let ballots = on_board::<Ballot<G>>(transcript, ROUND_BALLOT, |b| b.voter);
    let aggregate = aggregate_ballots(&ballots, encoding, &global_pk, ctx);
    let c1 = aggregate.ciphertext.c1;
    let partials = on_board::<PartialDecryption<G>>(transcript, ROUND_PARTIAL_DECRYPT, |p| p.dealer);
    let shares = on_board::<RevealMessage<G>>(transcript, ROUND_TALLY_SHARES, RevealMessage::sender);
    let voters = aggregate.accepted.len() as u64;
    let (recovered, tally) = if voters == 0 {
        (BTreeMap::new(), tally_finalize(&aggregate.ciphertext, &BTreeMap::new(), &state.participants, 0, encoding))
    } else {
        match decryption_factors(&state, &c1, &partials, &shares, ctx) {
            Err(e) => (BTreeMap::new(), Err(e)),
            Ok(f) => {
                let values = f.iter().map(|(&i, (v, _))| (i, *v)).collect();
                let recovered = f.into_iter().map(|(i, (_, r))| (i, r)).collect();
                (recovered, tally_finalize(&aggregate.ciphertext, &values, &state.participants, voters, encoding))
            }
        }
    };
    Ok(ElectionReplay { state, aggregate: Some(aggregate), recovered, tally })
}

/// Key generation, ballots from voters `1..=votes.len()`, and the tally.
///
/// `votes[v]` is the candidate of voter `v + 1`. Behaviors apply to key
/// generation as in a ceremony; presence in the second round means presence
/// at tally time. Withholding parties keep back their tally shares for the
/// listed dealers.
pub fn run_election<G: Group>(
    params: &Params,
    guardians: &BTreeMap<PartyIndex, GuardianSet>,
    behaviors: &BehaviorSpec,
    keys: &KeyRing<G>,
    votes: &[u32],
    encoding: &VoteEncoding,
    seed: u64,
) -> Result<ElectionResult<G>> {
    run_election_with(params, guardians, behaviors, keys, votes, encoding, seed, |_| {})
}

/// As [`run_election`], but `adversary` may rewrite the ballot list before it
/// reaches the board.
#[allow(clippy::too_many_arguments)]
pub fn run_election_with<G: Group>(
    params: &Params,
    guardians: &BTreeMap<PartyIndex, GuardianSet>,
    behaviors: &BehaviorSpec,
    keys: &KeyRing<G>,
    votes: &[u32],
    encoding: &VoteEncoding,
    seed: u64,
    adversary: impl FnOnce(&mut Vec<Ballot<G>>),
) -> Result<ElectionResult<G>> {
    let behavior = |i: PartyIndex| behaviors.get(&i).cloned().unwrap_or_default();
    let Round1 { mut board, context, dealer_secrets, mut state } = run_round1(params, guardians, behaviors, keys, seed)?;
    let parties: Vec<PartyIndex> = params.parties().collect();

    let complaints: Vec<RevealMessage<G>> = parties
        .par_iter()
        .filter(|&&i| !matches!(behavior(i), Behavior::Offline | Behavior::ByzantineSilent))
        .flat_map_iter(|&i| {
            let sk = keys.secret(i).expect("key ring covers every party");
            let mut rng = child_rng(seed, i, ROUND_REVEAL);
            round2_reveal_shares(i, sk, &state, &mut rng)
                .into_iter()
                .filter(|m| matches!(m, RevealMessage::Complaint { .. }))
        })
        .collect();
    for m in &complaints {
        board.append(m.sender(), ROUND_REVEAL, m.to_canonical_bytes());
    }
    apply_complaints(&mut state, &complaints);
    let global_pk = state.global_pk.ok_or(Error::EmptyParticipantSet)?;

    let voter_ids: Vec<u32> = (1..=votes.len() as u32).collect();
    let mut ballots: Vec<Ballot<G>> = voter_ids
        .par_iter()
        .map(|&v| {
            let mut rng = child_rng(seed, v, ROUND_BALLOT);
            cast_ballot::<G, _>(encoding, &global_pk, v, votes[v as usize - 1], &context, &mut rng)
        })
        .collect::<Result<_>>()?;
    adversary(&mut ballots);
    for b in &ballots {
        board.append(b.voter, ROUND_BALLOT, b.to_canonical_bytes());
    }
    let c1 = aggregate_ballots(&ballots, encoding, &global_pk, &context).ciphertext.c1;

    let present = |i: PartyIndex| behavior(i).present_round2();
    let partials: Vec<PartialDecryption<G>> = state
        .participants
        .iter()
        .filter(|&&i| present(i))
        .filter_map(|i| dealer_secrets.get(i))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|s| {
            let mut rng = child_rng(seed, s.dealer, ROUND_PARTIAL_DECRYPT);
            tally_partial_decrypt::<G, _>(s.dealer, &s.partial_sk, &c1, &context, &mut rng)
        })
        .collect();
    for p in &partials {
        board.append(p.dealer, ROUND_PARTIAL_DECRYPT, p.to_canonical_bytes());
    }

    // guardians step in for dealers without a valid partial decryption
    let covered: BTreeSet<PartyIndex> = partials
        .iter()
        .filter(|p| verify_partial_decryption(&state, p, &c1, &context))
        .map(|p| p.dealer)
        .collect();
    let missing: BTreeSet<PartyIndex> = state.participants.difference(&covered).copied().collect();
    let reveals: Vec<Vec<RevealMessage<G>>> = parties
        .par_iter()
        .map(|&i| {
            let b = behavior(i);
            if !b.present_round2() || missing.is_empty() {
                return Vec::new();
            }
            let sk = keys.secret(i).expect("key ring covers every party");
            let mut rng = child_rng(seed, i, ROUND_TALLY_SHARES);
            let mut msgs = tally_share_reveal(i, sk, &state, &missing, &mut rng);
            if let Behavior::WithholdShares(targets) = &b {
                msgs.retain(|m| !matches!(m, RevealMessage::Share { dealer, .. } if targets.contains(dealer)));
            }
            msgs
        })
        .collect();
    for (i, msgs) in parties.iter().zip(&reveals) {
        for m in msgs {
            board.append(*i, ROUND_TALLY_SHARES, m.to_canonical_bytes());
        }
    }

    let transcript = Transcript::new::<G>(*params, context, board);
    let replay = replay_election::<G>(&transcript, encoding)?;
    Ok(ElectionResult { transcript, replay })
}
