//! Federated distributed key generation.
//!
//! Each participant deals its partial secret to a self-chosen guardian set with a
//! local threshold, so the joint key survives participants that go offline after
//! the first round. The crate also carries a broadcast harness with fault
//! injection, a Monte-Carlo liveness simulator, a threshold-ElGamal election
//! pipeline and a message-size cost model.

pub mod algebra;
pub mod codec;
pub mod costmodel;
pub mod error;
pub mod fdkg;
pub mod network;
pub mod nizk;
pub mod pke;
pub mod simulator;
pub mod voting;

pub use error::{Error, Result};

/// Party identifier, `1..=n`. Doubles as the Shamir evaluation point.
pub type PartyIndex = u32;
