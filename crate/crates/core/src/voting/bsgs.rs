use std::collections::HashMap;

use crate::algebra::GroupElement;
use crate::error::{Error, Result};

/// Baby steps for one `(base, bound)` pair, reusable across targets.
#[derive(Clone, Debug)]
pub struct BsgsTable<E: GroupElement> {
    bound: u64,
    step: u64,
    baby: HashMap<E, u64>,
    /// `base^{-step}`
    giant: E,
}

impl<E: GroupElement> BsgsTable<E> {
    pub fn new(base: &E, bound: u64) -> Self {
        let step = ((bound as f64 + 1.0).sqrt().ceil() as u64).max(1);
        let mut baby = HashMap::with_capacity(step as usize);
        let mut acc = E::identity();
        for j in 0..step {
            baby.entry(acc).or_insert(j);
            acc *= *base;
        }
        // acc is now base^step
        Self { bound, step, baby, giant: acc.inverse() }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Smallest `e <= bound` with `base^e = target`.
    pub fn solve(&self, target: &E) -> Result<u64> {
        let mut gamma = *target;
        let mut i = 0u64;
        while i * self.step <= self.bound {
            if let Some(&j) = self.baby.get(&gamma) {
                let e = i * self.step + j;
                return if e <= self.bound { Ok(e) } else { Err(Error::DlogNotFound(self.bound)) };
            }
            gamma *= self.giant;
            i += 1;
        }
        Err(Error::DlogNotFound(self.bound))
    }
}

/// Discrete log of `target` to `base` within `[0, bound]`.
pub fn bsgs_dlog<E: GroupElement>(target: &E, base: &E, bound: u64) -> Result<u64> {
    BsgsTable::new(base, bound).solve(target)
}

/// `base^e` for a plain integer exponent.
#[cfg(test)]
pub(crate) fn pow_int<E: GroupElement>(base: &E, e: u64) -> E {
    use crate::algebra::FieldElement;
    base.pow(&E::Scalar::from_u64(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BabyJub, Group, TestGroup, TinyGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn trivial_targets() {
        let g = TestGroup::generator();
        assert_eq!(bsgs_dlog(&GroupElement::identity(), &g, 0), Ok(0));
        assert_eq!(bsgs_dlog(&pow_int(&g, 7), &g, 7), Ok(7));
        assert_eq!(bsgs_dlog(&pow_int(&g, 7), &g, 1000), Ok(7));
        assert_eq!(bsgs_dlog(&pow_int(&g, 8), &g, 7), Err(Error::DlogNotFound(7)));
    }

    #[test]
    fn random_exponents_recovered() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let g = TestGroup::generator();
        let table = BsgsTable::new(&g, 1 << 20);
        for _ in 0..1000 {
            let e = rng.gen_range(0..=1u64 << 20);
            assert_eq!(table.solve(&pow_int(&g, e)), Ok(e));
        }
        let h = BabyJub::generator();
        assert_eq!(bsgs_dlog(&pow_int(&h, 123_456), &h, 1 << 17), Ok(123_456));
    }

    #[test]
    fn smallest_solution_when_range_wraps() {
        // order 97: 3 and 100 collide
        let g = TinyGroup::generator();
        assert_eq!(bsgs_dlog(&pow_int(&g, 100), &g, 200), Ok(3));
    }

    #[test]
    fn every_exponent_in_small_range() {
        let g = TestGroup::generator();
        for bound in [0u64, 1, 2, 3, 15, 16, 17] {
            let table = BsgsTable::new(&g, bound);
            for e in 0..=bound {
                assert_eq!(table.solve(&pow_int(&g, e)), Ok(e));
            }
            assert!(table.solve(&pow_int(&g, bound + 1)).is_err());
        }
    }
}
