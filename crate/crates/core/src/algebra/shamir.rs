//! Shamir secret sharing over the scalar field, with Lagrange reconstruction
//! both on scalars and in the exponent.

use std::collections::{BTreeMap, BTreeSet};

use rand::RngCore;

use super::group::{FieldElement, GroupElement};
use crate::error::{Error, Result};

/// `f(X) = a_0 + a_1 X + ... + a_{t-1} X^{t-1}`; `a_0` is the shared secret.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<S> {
    coefficients: Vec<S>,
}

impl<S: FieldElement> Polynomial<S> {
    pub fn from_coefficients(coefficients: Vec<S>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidThreshold { t: 0, available: 0 });
        }
        Ok(Polynomial { coefficients })
    }

    /// Samples `a_0` first, then `a_1..a_{t-1}`, all uniform.
    pub fn random<R: RngCore + ?Sized>(t: usize, rng: &mut R) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidThreshold { t, available: 0 });
        }
        Ok(Polynomial {
            coefficients: (0..t).map(|_| S::random(rng)).collect(),
        })
    }

    /// Random polynomial of degree `t-1` with a fixed constant term.
    pub fn random_with_secret<R: RngCore + ?Sized>(secret: S, t: usize, rng: &mut R) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidThreshold { t, available: 0 });
        }
        let mut coefficients = Vec::with_capacity(t);
        coefficients.push(secret);
        coefficients.extend((1..t).map(|_| S::random(rng)));
        Ok(Polynomial { coefficients })
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn secret(&self) -> S {
        self.coefficients[0]
    }

    /// Number of coefficients, i.e. the reconstruction threshold.
    pub fn threshold(&self) -> usize {
        self.coefficients.len()
    }

    pub fn evaluate(&self, x: S) -> S {
        self.coefficients
            .iter()
            .rev()
            .fold(S::zero(), |acc, &c| acc * x + c)
    }

    pub fn evaluate_at(&self, index: u64) -> S {
        self.evaluate(S::from_u64(index))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Share<S> {
    pub index: u64,
    pub value: S,
}

fn check_indices(indices: impl IntoIterator<Item = u64>, allow_zero: bool) -> Result<BTreeSet<u64>> {
    let mut seen = BTreeSet::new();
    for j in indices {
        if j == 0 && !allow_zero {
            return Err(Error::InvalidIndex(j));
        }
        if !seen.insert(j) {
            return Err(Error::DuplicateIndex(j));
        }
    }
    Ok(seen)
}

/// Evaluates an existing polynomial at each index.
pub fn deal_shares<S: FieldElement>(poly: &Polynomial<S>, indices: &[u64]) -> Result<Vec<Share<S>>> {
    check_indices(indices.iter().copied(), false)?;
    if indices.len() < poly.threshold() {
        return Err(Error::InvalidThreshold {
            t: poly.threshold(),
            available: indices.len(),
        });
    }
    Ok(indices
        .iter()
        .map(|&index| Share {
            index,
            value: poly.evaluate_at(index),
        })
        .collect())
}

/// Shares `secret` with threshold `t` among `indices`.
pub fn share_secret<S: FieldElement, R: RngCore + ?Sized>(
    secret: S,
    t: usize,
    indices: &[u64],
    rng: &mut R,
) -> Result<(Vec<Share<S>>, Polynomial<S>)> {
    if t == 0 || indices.len() < t {
        return Err(Error::InvalidThreshold {
            t,
            available: indices.len(),
        });
    }
    check_indices(indices.iter().copied(), false)?;
    let poly = Polynomial::random_with_secret(secret, t, rng)?;
    let shares = deal_shares(&poly, indices)?;
    Ok((shares, poly))
}

/// `λ_j = ∏_{m ≠ j} (x - m) / (j - m)` for every `j` in `indices`.
pub fn lagrange_coefficients<S: FieldElement>(indices: &[u64], eval_at: u64) -> Result<BTreeMap<u64, S>> {
    let set = check_indices(indices.iter().copied(), eval_at != 0)?;
    if set.is_empty() {
        return Err(Error::EmptyInterpolation);
    }
    let x = S::from_u64(eval_at);
    let mut out = BTreeMap::new();
    for &j in &set {
        let xj = S::from_u64(j);
        let mut num = S::one();
        let mut den = S::one();
        for &m in set.iter().filter(|&&m| m != j) {
            let xm = S::from_u64(m);
            num *= x - xm;
            den *= xj - xm;
        }
        // a zero denominator means two indices collide mod q
        let inv = den.invert().ok_or(Error::DuplicateIndex(j))?;
        out.insert(j, num * inv);
    }
    Ok(out)
}

/// Interpolates `f(0)` through all given shares.
pub fn reconstruct<S: FieldElement>(shares: &[Share<S>], t: usize) -> Result<S> {
    if shares.len() < t || shares.is_empty() {
        return Err(Error::InsufficientShares {
            needed: t.max(1),
            got: shares.len(),
        });
    }
    let indices: Vec<u64> = shares.iter().map(|s| s.index).collect();
    let lambdas = lagrange_coefficients::<S>(&indices, 0)?;
    Ok(shares
        .iter()
        .fold(S::zero(), |acc, s| acc + lambdas[&s.index] * s.value))
}

/// `∏_j points[j]^{λ_j}`, i.e. `B^{f(0)}` when `points[j] = B^{f(j)}`.
pub fn reconstruct_in_exponent<E: GroupElement>(points: &BTreeMap<u64, E>) -> Result<E> {
    if points.is_empty() {
        return Err(Error::EmptyInterpolation);
    }
    let indices: Vec<u64> = points.keys().copied().collect();
    let lambdas = lagrange_coefficients::<E::Scalar>(&indices, 0)?;
    Ok(points
        .iter()
        .fold(E::identity(), |acc, (j, p)| acc * p.pow(&lambdas[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::modp::{ModScalar, Tiny97, TinyGroup};
    use crate::algebra::Group;
    use proptest::prelude::*;
    use rand::RngCore;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type S = ModScalar<Tiny97>;

    fn s(v: u64) -> S {
        S::from_u64(v)
    }

    /// Independent oracle: evaluate by summing a_k * x^k with plain integers mod 97.
    fn naive_eval(coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        let mut pow = 1u64;
        for &c in coeffs {
            acc = (acc + c * pow) % 97;
            pow = pow * x % 97;
        }
        acc
    }

    fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }

    #[test]
    fn fixed_linear_polynomial() {
        let poly = Polynomial::from_coefficients(vec![s(5), s(3)]).unwrap();
        let shares = deal_shares(&poly, &[1, 2]).unwrap();
        assert_eq!(shares, vec![Share { index: 1, value: s(8) }, Share { index: 2, value: s(11) }]);
        assert_eq!(reconstruct(&shares, 2).unwrap(), s(5));
    }

    #[test]
    fn constant_polynomial_gives_secret_everywhere() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (shares, _) = share_secret(s(42), 1, &[1, 4, 9], &mut rng).unwrap();
        assert!(shares.iter().all(|sh| sh.value == s(42)));
        assert_eq!(reconstruct(&[Share { index: 4, value: s(42) }], 1).unwrap(), s(42));
    }

    #[test]
    fn shares_match_naive_evaluation() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..50 {
            let secret = S::random(&mut rng);
            let (shares, poly) = share_secret(secret, 3, &[1, 2, 3, 4, 5], &mut rng).unwrap();
            let coeffs: Vec<u64> = poly.coefficients().iter().map(|c| c.value()).collect();
            assert_eq!(coeffs[0], secret.value());
            for sh in shares {
                assert_eq!(sh.value.value(), naive_eval(&coeffs, sh.index));
            }
        }
    }

    #[test]
    fn sharing_errors() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        assert!(matches!(share_secret(s(1), 0, &[1, 2], &mut rng), Err(Error::InvalidThreshold { .. })));
        assert!(matches!(share_secret(s(1), 2, &[1, 1], &mut rng), Err(Error::DuplicateIndex(1))));
        assert!(matches!(share_secret(s(1), 1, &[0, 1], &mut rng), Err(Error::InvalidIndex(0))));
        assert!(matches!(share_secret(s(1), 3, &[1, 2], &mut rng), Err(Error::InvalidThreshold { .. })));
    }

    #[test]
    fn two_point_coefficients() {
        let l = lagrange_coefficients::<S>(&[1, 2], 0).unwrap();
        assert_eq!(l[&1], s(2));
        assert_eq!(l[&2], s(96));
        let single = lagrange_coefficients::<S>(&[7], 0).unwrap();
        assert_eq!(single[&7], S::one());
        assert!(matches!(lagrange_coefficients::<S>(&[1, 1], 0), Err(Error::DuplicateIndex(1))));
        assert!(matches!(lagrange_coefficients::<S>(&[0, 1], 0), Err(Error::InvalidIndex(0))));
    }

    #[test]
    fn coefficients_interpolate_random_quadratics() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..50 {
            let coeffs: Vec<u64> = (0..3).map(|_| rng.next_u64() % 97).collect();
            let l = lagrange_coefficients::<S>(&[1, 2, 3], 0).unwrap();
            let sum = [1u64, 2, 3]
                .iter()
                .fold(S::zero(), |acc, &j| acc + l[&j] * s(naive_eval(&coeffs, j)));
            assert_eq!(sum, s(coeffs[0]));
        }
    }

    #[test]
    fn coefficients_at_nonzero_point() {
        let coeffs = [4u64, 9, 13];
        let l = lagrange_coefficients::<S>(&[0, 2, 5], 3).unwrap();
        let value = [0u64, 2, 5]
            .iter()
            .fold(S::zero(), |acc, &j| acc + l[&j] * s(naive_eval(&coeffs, j)));
        assert_eq!(value, s(naive_eval(&coeffs, 3)));
    }

    #[test]
    fn insufficient_shares() {
        let shares = [Share { index: 1, value: s(3) }];
        assert!(matches!(reconstruct(&shares, 2), Err(Error::InsufficientShares { needed: 2, got: 1 })));
        assert!(matches!(reconstruct::<S>(&[], 1), Err(Error::InsufficientShares { .. })));
    }

    #[test]
    fn every_subset_reconstructs_exhaustively() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for n in 1..=6usize {
            let indices: Vec<u64> = (1..=n as u64).collect();
            for t in 1..=n {
                let secret = S::random(&mut rng);
                let (shares, _) = share_secret(secret, t, &indices, &mut rng).unwrap();
                for size in t..=n {
                    for subset in subsets(n, size) {
                        let picked: Vec<_> = subset.iter().map(|&i| shares[i]).collect();
                        assert_eq!(reconstruct(&picked, t).unwrap(), secret, "n={n} t={t} {subset:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn fewer_than_t_shares_fit_every_secret() {
        // Exhaustive over Z_97: t-1 shares are consistent with every candidate secret.
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        for t in 2..=3usize {
            let (shares, _) = share_secret(S::random(&mut rng), t, &[1, 2, 3], &mut rng).unwrap();
            let seen = &shares[..t - 1];
            for candidate in 0..97u64 {
                // the t-1 shares plus (0, candidate) determine a unique degree t-1 polynomial
                let mut pts: Vec<Share<S>> = seen.to_vec();
                pts.push(Share { index: 0, value: s(candidate) });
                // naive Lagrange form; index 0 is a legitimate node here
                let interpolate_at = |x: u64| {
                    pts.iter().fold(S::zero(), |acc, pj| {
                        let basis = pts.iter().filter(|pm| pm.index != pj.index).fold(S::one(), |b, pm| {
                            b * (s(x) - s(pm.index)) * (s(pj.index) - s(pm.index)).invert().unwrap()
                        });
                        acc + basis * pj.value
                    })
                };
                assert_eq!(interpolate_at(0), s(candidate));
                for sh in seen {
                    assert_eq!(interpolate_at(sh.index), sh.value);
                }
            }
        }
    }

    #[test]
    fn exponent_reconstruction() {
        let mut rng = ChaCha20Rng::seed_from_u64(29);
        let g = TinyGroup::generator();
        for t in 1..=4usize {
            let secret = S::random(&mut rng);
            let (shares, _) = share_secret(secret, t, &[1, 2, 3, 4, 5], &mut rng).unwrap();
            let base = g.pow(&S::random_nonzero(&mut rng));
            let points: BTreeMap<u64, _> = shares[..t].iter().map(|sh| (sh.index, base.pow(&sh.value))).collect();
            let expected = base.pow(&reconstruct(&shares[..t], t).unwrap());
            assert_eq!(reconstruct_in_exponent(&points).unwrap(), expected);
            assert_eq!(expected, base.pow(&secret));
        }
        let single: BTreeMap<u64, _> = [(4u64, g)].into_iter().collect();
        assert_eq!(reconstruct_in_exponent(&single).unwrap(), g);
        assert!(matches!(
            reconstruct_in_exponent::<<TinyGroup as Group>::Element>(&BTreeMap::new()),
            Err(Error::EmptyInterpolation)
        ));
    }

    proptest! {
        #[test]
        fn roundtrip_random_subsets(seed in any::<u64>(), n in 2usize..12, t_frac in 0.0f64..1.0) {
            use crate::algebra::modp::{ModScalar, Test61};
            type L = ModScalar<Test61>;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let t = 1 + ((n - 1) as f64 * t_frac) as usize;
            let indices: Vec<u64> = (1..=n as u64).collect();
            let secret = L::random(&mut rng);
            let (mut shares, _) = share_secret(secret, t, &indices, &mut rng).unwrap();
            // random t-subset via partial shuffle
            for i in 0..t {
                let j = i + (rng.next_u64() as usize) % (n - i);
                shares.swap(i, j);
            }
            prop_assert_eq!(reconstruct(&shares[..t], t).unwrap(), secret);
        }
    }
}
