//! Threshold-ElGamal election over an FDKG key.
//!
//! Votes are packed as `G^{2^{(c-1)m}}` so the product of all ballots carries
//! every candidate's count in its own `m`-bit slot. The tally is decrypted by
//! the dealers themselves or, for absent dealers, by their guardians revealing
//! shares, and the packed exponent is recovered with baby-step giant-step.

mod ballot;
mod bsgs;
mod election;
mod encoding;
mod tally;

pub use ballot::{aggregate_ballots, ballot_context, cast_ballot, Aggregate, AggregatedCiphertext, Ballot};
pub use bsgs::{bsgs_dlog, BsgsTable};
pub use election::{replay_election, run_election, run_election_with, ElectionReplay, ElectionResult};
pub use encoding::{derive_encoding, VoteEncoding};
pub use tally::{
    decryption_factors, partial_decrypt_context, tally_finalize, tally_partial_decrypt, tally_share_reveal,
    verify_partial_decryption, PartialDecryption, TallyResult,
};
