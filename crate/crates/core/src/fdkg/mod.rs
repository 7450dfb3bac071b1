//! The two-round FDKG protocol and its reconstruction predicates.
//!
//! Round 1: every participant deals a random partial secret to its own guardian
//! set. Round 2: participants reveal their partial secrets directly, and
//! guardians reveal the shares they hold. Any observer can then rebuild the
//! joint secret offline from the broadcast board alone.

mod predicates;
mod round1;
mod round2;
mod types;

pub use predicates::{liveness_holds, privacy_breached, reconstruction_capable, GuardianMap};
pub use round1::{process_round1, round1_deal};
pub use round2::{
    adversary_view_reconstruct, apply_complaints, offline_reconstruct, round2_reveal_secret, round2_reveal_shares,
    ReconstructionOutcome, ReconstructionStatus, Recovery,
};
pub(crate) use round2::{collect_reveals, reveal_shares_where, share_consistent, verify_decryption, verify_secret};
pub use types::{DealMessage, DealerRecord, DealerSecret, GuardianSet, Params, Pki, PublicState, RevealMessage};

use crate::PartyIndex;

/// Binds a proof to the ceremony, the message kind and the parties involved.
pub(crate) fn proof_context(ceremony: &[u8], label: &str, parties: &[PartyIndex]) -> Vec<u8> {
    let mut out = Vec::with_capacity(ceremony.len() + label.len() + 8 + 4 * parties.len());
    out.extend_from_slice(&(ceremony.len() as u32).to_be_bytes());
    out.extend_from_slice(ceremony);
    out.extend_from_slice(&(label.len() as u32).to_be_bytes());
    out.extend_from_slice(label.as_bytes());
    for p in parties {
        out.extend_from_slice(&p.to_be_bytes());
    }
    out
}
