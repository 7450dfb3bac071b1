//! Canonical binary encoding shared by proof transcripts, board payloads and
//! transcript files.
//!
//! Scalars and group elements use their fixed-width canonical encodings.
//! Variable-length collections carry a `u32` big-endian length prefix.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{FieldElement, GroupElement};
use crate::error::{Error, Result};

pub trait Encode {
    fn encode(&self, out: &mut Vec<u8>);

    fn to_canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode(&mut out);
        out
    }
}

pub trait Decode: Sized {
    fn decode(reader: &mut Reader<'_>) -> Result<Self>;

    /// Decodes and requires that every byte is consumed.
    fn from_canonical_bytes(bytes: &[u8]) -> Result<Self> {
        let mut reader = Reader::new(bytes);
        let value = Self::decode(&mut reader)?;
        reader.finish()?;
        Ok(value)
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Decode(format!("truncated at byte {}", self.pos)))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    pub fn u64(&mut self) -> Result<u64> {
        let b = self.take(8)?;
        let mut a = [0u8; 8];
        a.copy_from_slice(b);
        Ok(u64::from_be_bytes(a))
    }

    pub fn bytes(&mut self) -> Result<&'a [u8]> {
        let n = self.u32()? as usize;
        self.take(n)
    }

    pub fn scalar<S: FieldElement>(&mut self) -> Result<S> {
        S::from_bytes(self.take(S::ENCODED_LEN)?).ok_or_else(|| Error::Decode("non-canonical scalar".into()))
    }

    pub fn element<E: GroupElement>(&mut self) -> Result<E> {
        E::from_bytes(self.take(E::ENCODED_LEN)?).ok_or_else(|| Error::Decode("invalid group element".into()))
    }

    pub fn is_empty(&self) -> bool {
        self.pos == self.buf.len()
    }

    pub fn finish(&self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::Decode(format!("{} trailing bytes", self.buf.len() - self.pos)))
        }
    }
}

pub fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_be_bytes());
}

pub fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_be_bytes());
}

pub fn put_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    put_u32(out, bytes.len() as u32);
    out.extend_from_slice(bytes);
}

pub fn put_scalar<S: FieldElement>(out: &mut Vec<u8>, s: &S) {
    out.extend(s.to_bytes());
}

pub fn put_element<E: GroupElement>(out: &mut Vec<u8>, e: &E) {
    out.extend(e.to_bytes());
}

pub fn put_index_set(out: &mut Vec<u8>, set: &BTreeSet<u32>) {
    put_u32(out, set.len() as u32);
    for &i in set {
        put_u32(out, i);
    }
}

/// Reads a strictly increasing list of indices.
pub fn read_index_set(r: &mut Reader<'_>) -> Result<BTreeSet<u32>> {
    let n = r.u32()?;
    let mut out = BTreeSet::new();
    let mut last = None;
    for _ in 0..n {
        let i = r.u32()?;
        if last.is_some_and(|l| i <= l) {
            return Err(Error::Decode("index set not strictly increasing".into()));
        }
        last = Some(i);
        out.insert(i);
    }
    Ok(out)
}

pub fn put_map<V>(out: &mut Vec<u8>, map: &BTreeMap<u32, V>, mut put: impl FnMut(&mut Vec<u8>, &V)) {
    put_u32(out, map.len() as u32);
    for (&k, v) in map {
        put_u32(out, k);
        put(out, v);
    }
}

pub fn read_map<V>(
    r: &mut Reader<'_>,
    mut read: impl FnMut(&mut Reader<'_>) -> Result<V>,
) -> Result<BTreeMap<u32, V>> {
    let n = r.u32()?;
    let mut out = BTreeMap::new();
    let mut last = None;
    for _ in 0..n {
        let k = r.u32()?;
        if last.is_some_and(|l| k <= l) {
            return Err(Error::Decode("map keys not strictly increasing".into()));
        }
        last = Some(k);
        out.insert(k, read(r)?);
    }
    Ok(out)
}
