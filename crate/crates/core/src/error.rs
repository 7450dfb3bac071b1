use thiserror::Error;

use crate::PartyIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid share index {0}")]
    InvalidIndex(u64),
    #[error("duplicate share index {0}")]
    DuplicateIndex(u64),
    #[error("invalid threshold t={t} for {available} indices")]
    InvalidThreshold { t: usize, available: usize },
    #[error("insufficient shares: need {needed}, got {got}")]
    InsufficientShares { needed: usize, got: usize },
    #[error("no points to interpolate")]
    EmptyInterpolation,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid guardian set for party {owner}: {reason}")]
    InvalidGuardianSet { owner: PartyIndex, reason: String },
    #[error("party {0} has no public key")]
    UnknownParty(PartyIndex),
    #[error("party {0} is not a round-1 participant")]
    NotParticipant(PartyIndex),
    #[error("no round-1 participants")]
    EmptyParticipantSet,
    #[error("value not in allowed set")]
    NotAllowed,
    #[error("candidate {candidate} out of range 1..={candidates}")]
    CandidateOutOfRange { candidate: u32, candidates: u32 },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("tally failed; unrecoverable dealers {0:?}")]
    TallyFailed(Vec<PartyIndex>),
    #[error("discrete log not found within bound {0}")]
    DlogNotFound(u64),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("unknown message kind {0:?}")]
    UnknownKind(String),
}
