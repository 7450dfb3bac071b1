use sha2::{Digest, Sha256};

use crate::PartyIndex;

/// Key registration.
pub const ROUND_KEYS: u8 = 0;
pub const ROUND_DEAL: u8 = 1;
pub const ROUND_REVEAL: u8 = 2;
pub const ROUND_BALLOT: u8 = 3;
pub const ROUND_PARTIAL_DECRYPT: u8 = 4;
pub const ROUND_TALLY_SHARES: u8 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardEntry {
    pub sender: PartyIndex,
    pub round: u8,
    pub payload: Vec<u8>,
}

/// Append-only, totally ordered log. Senders are authenticated by
/// construction: only the scheduler appends, on a party's behalf.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BroadcastBoard {
    entries: Vec<BoardEntry>,
}

impl BroadcastBoard {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the position of the new entry.
    pub fn append(&mut self, sender: PartyIndex, round: u8, payload: Vec<u8>) -> usize {
        self.entries.push(BoardEntry { sender, round, payload });
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BoardEntry] {
        &self.entries
    }

    pub fn round(&self, round: u8) -> impl Iterator<Item = &BoardEntry> {
        self.entries.iter().filter(move |e| e.round == round)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Hash over the whole log; a prefix of the board keeps its digest
    /// reachable only by appending.
    pub fn digest(&self) -> [u8; 32] {
        self.digest_prefix(self.entries.len())
    }

    pub fn digest_prefix(&self, len: usize) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"fdkg/v1/board");
        for e in &self.entries[..len] {
            h.update(e.sender.to_be_bytes());
            h.update([e.round]);
            h.update((e.payload.len() as u32).to_be_bytes());
            h.update(&e.payload);
        }
        h.finalize().into()
    }

    pub fn total_bytes(&self) -> usize {
        self.entries.iter().map(|e| e.payload.len()).sum()
    }
}

impl From<Vec<BoardEntry>> for BroadcastBoard {
    fn from(entries: Vec<BoardEntry>) -> Self {
        BroadcastBoard { entries }
    }
}
