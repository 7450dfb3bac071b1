use sha2::{Digest, Sha256};

use crate::algebra::{FieldElement, GroupElement};

/// Fiat-Shamir transcript: SHA-256 over a domain tag followed by
/// length-prefixed items, reduced mod `q`.
#[derive(Clone)]
pub struct FsTranscript {
    hasher: Sha256,
}

impl FsTranscript {
    /// Starts a transcript with domain tag `fdkg/v1/<relation>`.
    pub fn new(relation: &str) -> Self {
        let mut t = FsTranscript { hasher: Sha256::new() };
        t.absorb(format!("fdkg/v1/{relation}").as_bytes());
        t
    }

    pub fn absorb(&mut self, item: &[u8]) {
        self.hasher.update((item.len() as u32).to_be_bytes());
        self.hasher.update(item);
    }

    pub fn absorb_u64(&mut self, v: u64) {
        self.absorb(&v.to_be_bytes());
    }

    pub fn absorb_scalar<S: FieldElement>(&mut self, s: &S) {
        self.absorb(&s.to_bytes());
    }

    pub fn absorb_element<E: GroupElement>(&mut self, e: &E) {
        self.absorb(&e.to_bytes());
    }

    pub fn challenge<S: FieldElement>(self) -> S {
        S::from_be_bytes_reduced(&self.hasher.finalize())
    }
}
