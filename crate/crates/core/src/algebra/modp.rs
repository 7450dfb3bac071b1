//! Prime-order subgroups of `Z_p^*` with word-sized moduli.
//!
//! These groups are small enough for exhaustive oracles in tests while still
//! exercising every code path of the protocol. They offer no security.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use rand::RngCore;

use super::group::{FieldElement, Group, GroupElement};

/// Parameters of a Schnorr group: `q | p - 1`, `g` of order `q` in `Z_p^*`.
pub trait SchnorrParams: Copy + fmt::Debug + Eq + std::hash::Hash + Send + Sync + 'static {
    const NAME: &'static str;
    const P: u64;
    const Q: u64;
    const G: u64;
}

const fn byte_len(v: u64) -> usize {
    (64 - v.leading_zeros()).div_ceil(8) as usize
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn be_to_u64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0u64, |acc, &b| (acc << 8) | u64::from(b))
}

fn u64_to_be(v: u64, width: usize) -> Vec<u8> {
    v.to_be_bytes()[8 - width..].to_vec()
}

/// Scalar modulo `P::Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModScalar<P>(u64, PhantomData<P>);

impl<P: SchnorrParams> ModScalar<P> {
    pub fn new(v: u64) -> Self {
        ModScalar(v % P::Q, PhantomData)
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<P> fmt::Debug for ModScalar<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl<P: SchnorrParams> Add for ModScalar<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        ModScalar((s % P::Q as u128) as u64, PhantomData)
    }
}

impl<P: SchnorrParams> Sub for ModScalar<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<P: SchnorrParams> Neg for ModScalar<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            ModScalar(P::Q - self.0, PhantomData)
        }
    }
}

impl<P: SchnorrParams> Mul for ModScalar<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ModScalar(mul_mod(self.0, rhs.0, P::Q), PhantomData)
    }
}

impl<P: SchnorrParams> AddAssign for ModScalar<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<P: SchnorrParams> MulAssign for ModScalar<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<P: SchnorrParams> FieldElement for ModScalar<P> {
    const ENCODED_LEN: usize = byte_len(P::Q);

    fn zero() -> Self {
        ModScalar(0, PhantomData)
    }

    fn one() -> Self {
        ModScalar(1 % P::Q, PhantomData)
    }

    fn from_u64(value: u64) -> Self {
        Self::new(value)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn invert(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(ModScalar(pow_mod(self.0, P::Q - 2, P::Q), PhantomData))
        }
    }

    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        let bits = 64 - P::Q.leading_zeros();
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let v = rng.next_u64() & mask;
            if v < P::Q {
                return ModScalar(v, PhantomData);
            }
        }
    }

    fn to_bytes(&self) -> Vec<u8> {
        u64_to_be(self.0, Self::ENCODED_LEN)
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != Self::ENCODED_LEN {
            return None;
        }
        let v = be_to_u64(bytes);
        (v < P::Q).then_some(ModScalar(v, PhantomData))
    }

    fn from_be_bytes_reduced(bytes: &[u8]) -> Self {
        let q = P::Q as u128;
        let v = bytes.iter().fold(0u128, |acc, &b| ((acc << 8) | b as u128) % q);
        ModScalar(v as u64, PhantomData)
    }

    fn modulus_be_bytes() -> Vec<u8> {
        u64_to_be(P::Q, byte_len(P::Q))
    }

    fn modulus_bits() -> u32 {
        64 - P::Q.leading_zeros()
    }
}

/// Element of the order-`q` subgroup of `Z_p^*`, stored as its canonical residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModElement<P>(u64, PhantomData<P>);

impl<P: SchnorrParams> ModElement<P> {
    pub fn value(&self) -> u64 {
        self.0
    }

    /// Accepts only residues of order dividing `q`.
    pub fn from_residue(v: u64) -> Option<Self> {
        (v >= 1 && v < P::P && pow_mod(v, P::Q, P::P) == 1).then_some(ModElement(v, PhantomData))
    }
}

impl<P> fmt::Debug for ModElement<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl<P: SchnorrParams> Mul for ModElement<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ModElement(mul_mod(self.0, rhs.0, P::P), PhantomData)
    }
}

impl<P: SchnorrParams> MulAssign for ModElement<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<P: SchnorrParams> GroupElement for ModElement<P> {
    type Scalar = ModScalar<P>;

    const ENCODED_LEN: usize = byte_len(P::P);

    fn identity() -> Self {
        ModElement(1, PhantomData)
    }

    fn inverse(&self) -> Self {
        // x^(q-1) = x^-1 inside the order-q subgroup
        ModElement(pow_mod(self.0, P::Q - 1, P::P), PhantomData)
    }

    fn pow(&self, exp: &ModScalar<P>) -> Self {
        ModElement(pow_mod(self.0, exp.0, P::P), PhantomData)
    }

    fn to_bytes(&self) -> Vec<u8> {
        u64_to_be(self.0, Self::ENCODED_LEN)
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != Self::ENCODED_LEN {
            return None;
        }
        Self::from_residue(be_to_u64(bytes))
    }

    fn chi(&self) -> ModScalar<P> {
        ModScalar::new(self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchnorrGroup<P>(PhantomData<P>);

impl<P: SchnorrParams> Group for SchnorrGroup<P> {
    type Scalar = ModScalar<P>;
    type Element = ModElement<P>;

    const NAME: &'static str = P::NAME;

    fn generator() -> ModElement<P> {
        ModElement(P::G, PhantomData)
    }
}

/// `q = 97` inside `Z_389^*`; every scalar is enumerable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tiny97;

impl SchnorrParams for Tiny97 {
    const NAME: &'static str = "tiny97";
    const P: u64 = 389;
    const Q: u64 = 97;
    const G: u64 = 16;
}

/// Safe-prime group with a 61-bit order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Test61;

impl SchnorrParams for Test61 {
    const NAME: &'static str = "test61";
    const P: u64 = 4_611_686_018_427_377_339;
    const Q: u64 = 2_305_843_009_213_688_669;
    const G: u64 = 4;
}

pub type TinyGroup = SchnorrGroup<Tiny97>;
pub type TestGroup = SchnorrGroup<Test61>;
