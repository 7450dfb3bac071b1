use crate::algebra::{FieldElement, Group, ScalarOf};
use crate::error::{Error, Result};

/// Slot layout of a packed vote.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VoteEncoding {
    pub candidates: u32,
    /// Bits per candidate slot.
    pub slot_bits: u32,
    pub n_bound: u64,
}

/// Picks the smallest `m` with `2^m > n_bound` and checks that `c` slots fit
/// below the group order.
pub fn derive_encoding<G: Group>(n_bound: u64, candidates: u32) -> Result<VoteEncoding> {
    if candidates < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 candidates, got {candidates}")));
    }
    if n_bound == 0 {
        return Err(Error::InvalidParams("voter bound must be at least 1".into()));
    }
    let slot_bits = 64 - n_bound.leading_zeros();
    let used = u64::from(candidates) * u64::from(slot_bits);
    let available = u64::from(ScalarOf::<G>::modulus_bits());
    if used >= available {
        return Err(Error::Unsupported(format!(
            "{candidates} candidates of {slot_bits} bits need {used} bits, group order has {available}"
        )));
    }
    Ok(VoteEncoding { candidates, slot_bits, n_bound })
}

impl VoteEncoding {
    /// `2^{(candidate-1) m}` as a scalar.
    pub fn exponent<S: FieldElement>(&self, candidate: u32) -> Result<S> {
        if candidate == 0 || candidate > self.candidates {
            return Err(Error::CandidateOutOfRange { candidate, candidates: self.candidates });
        }
        Ok(S::from_u64(2).pow_u64(u64::from((candidate - 1) * self.slot_bits)))
    }

    /// Every valid vote exponent, candidate 1 first.
    pub fn allowed<S: FieldElement>(&self) -> Vec<S> {
        (1..=self.candidates).map(|c| self.exponent(c).expect("in range")).collect()
    }

    /// Largest packed exponent `voters * 2^{(c-1) m}`, if it fits in 64 bits.
    pub fn max_exponent(&self, voters: u64) -> Option<u64> {
        let shift = (self.candidates - 1) * self.slot_bits;
        1u64.checked_shl(shift).filter(|_| shift < 64)?.checked_mul(voters)
    }

    /// Splits a packed exponent into per-candidate counts.
    pub fn decompose(&self, exponent: u64) -> Option<Vec<u64>> {
        let m = self.slot_bits;
        let mask = (1u64 << m) - 1;
        let mut rest = exponent;
        let mut counts = Vec::with_capacity(self.candidates as usize);
        for _ in 0..self.candidates {
            counts.push(rest & mask);
            rest = rest.checked_shr(m).unwrap_or(0);
        }
        (rest == 0).then_some(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BabyJub, ModScalar, Test61, TestGroup};

    #[test]
    fn slot_widths() {
        for (bound, m) in [(1u64, 1u32), (100, 7), (127, 7), (128, 8), (1023, 10), (1024, 11)] {
            assert_eq!(derive_encoding::<TestGroup>(bound, 2).unwrap().slot_bits, m);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(derive_encoding::<TestGroup>(10, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(derive_encoding::<TestGroup>(0, 2), Err(Error::InvalidParams(_))));
        // 61-bit order: 6 slots of 10 bits fit, 7 do not
        assert!(derive_encoding::<TestGroup>(1000, 6).is_ok());
        assert!(matches!(derive_encoding::<TestGroup>(1000, 7), Err(Error::Unsupported(_))));
        assert!(derive_encoding::<BabyJub>(1000, 20).is_ok());
    }

    #[test]
    fn exponents() {
        let enc = derive_encoding::<TestGroup>(100, 3).unwrap();
        let e = |c| enc.exponent::<ModScalar<Test61>>(c);
        assert_eq!(e(1).unwrap().value(), 1);
        assert_eq!(e(2).unwrap().value(), 128);
        assert_eq!(e(3).unwrap().value(), 1 << 14);
        assert!(matches!(e(0), Err(Error::CandidateOutOfRange { .. })));
        assert!(e(4).is_err());
        assert_eq!(enc.max_exponent(50), Some(50 << 14));
    }

    #[test]
    fn decompose_slots() {
        let enc = derive_encoding::<TestGroup>(100, 2).unwrap();
        assert_eq!(enc.decompose(2 + 128), Some(vec![2, 1]));
        assert_eq!(enc.decompose(0), Some(vec![0, 0]));
        assert_eq!(enc.decompose(1 << 14), None);
    }
}
