//! Fiat-Shamir sigma proofs for every relation the protocol needs.

mod ballot;
mod deal;
mod dlog;
mod share;
mod transcript;

pub use ballot::{prove_ballot, verify_ballot, BallotBranch, BallotProof};
pub use deal::{guardian_check_share, prove_deal, verify_deal, DealProofBundle, FeldmanCommitments, RepresentationProof};
pub use dlog::{prove_dl, prove_dleq, verify_dl, verify_dleq, DleqProof, DleqStatement, DlProof};
pub use share::{prove_share_decryption, verify_share_decryption, ShareDecryptionProof};
pub use transcript::FsTranscript;

/// Relation name held back for a hidden-share decryption proof; no backend implements it.
pub const RESERVED_HIDDEN_SHARE_RELATION: &str = "partial-decryption-share";
