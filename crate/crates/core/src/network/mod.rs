//! In-memory broadcast board, a synchronous two-round scheduler with fault
//! injection, transcript files, and a trusted-party oracle for the key
//! generation.

mod board;
mod ceremony;
mod ideal;
mod transcript;

pub use board::{
    BoardEntry, BroadcastBoard, ROUND_BALLOT, ROUND_DEAL, ROUND_KEYS, ROUND_PARTIAL_DECRYPT, ROUND_REVEAL, ROUND_TALLY_SHARES,
};
pub use ceremony::{
    adversary_view, ceremony_context, child_rng, child_seed, run_ceremony, Behavior, BehaviorSpec, CeremonyResult, KeyRing, LogEntry,
};
pub use ideal::{ideal_functionality_run, Activation, IdealOutput};
pub use transcript::{replay, ReplayResult, Transcript};
pub(crate) use ceremony::{run_round1, Round1};
pub(crate) use transcript::{decode_deals, decode_pki};
