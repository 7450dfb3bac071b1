use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use rand::RngCore;

/// Element of the scalar field `Z_q` of a prime-order group.
pub trait FieldElement:
    Copy
    + Debug
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + MulAssign
{
    /// Width of the fixed big-endian encoding.
    const ENCODED_LEN: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(value: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn invert(&self) -> Option<Self>;

    /// Uniform in `[0, q)`.
    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self;

    /// Uniform in `[1, q)`.
    fn random_nonzero<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        loop {
            let s = Self::random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn to_bytes(&self) -> Vec<u8>;
    /// Strict decoding: exact width and value below `q`.
    fn from_bytes(bytes: &[u8]) -> Option<Self>;
    /// Interprets arbitrary big-endian bytes as an integer and reduces it mod `q`.
    fn from_be_bytes_reduced(bytes: &[u8]) -> Self;

    /// Big-endian encoding of the modulus `q`.
    fn modulus_be_bytes() -> Vec<u8>;
    fn modulus_bits() -> u32;

    /// Value as `u64` when it fits.
    fn to_u64(&self) -> Option<u64> {
        let bytes = self.to_bytes();
        let split = bytes.len().saturating_sub(8);
        if bytes[..split].iter().any(|&b| b != 0) {
            return None;
        }
        Some(bytes[split..].iter().fold(0u64, |acc, &b| (acc << 8) | u64::from(b)))
    }

    fn pow_u64(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }
}

/// Element of a prime-order group, written multiplicatively.
pub trait GroupElement:
    Copy + Debug + Eq + Hash + Send + Sync + 'static + Mul<Output = Self> + MulAssign
{
    type Scalar: FieldElement;

    const ENCODED_LEN: usize;

    fn identity() -> Self;
    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
    fn inverse(&self) -> Self;
    fn pow(&self, exp: &Self::Scalar) -> Self;

    fn to_bytes(&self) -> Vec<u8>;
    /// Strict decoding; rejects non-canonical encodings and elements outside the group.
    fn from_bytes(bytes: &[u8]) -> Option<Self>;

    /// Deterministic map of an element to a scalar (the "x-coordinate" map).
    fn chi(&self) -> Self::Scalar;

    fn div(&self, other: &Self) -> Self {
        *self * other.inverse()
    }
}

/// A prime-order group with a fixed generator.
pub trait Group: Copy + Debug + Eq + Hash + Send + Sync + 'static {
    type Scalar: FieldElement;
    type Element: GroupElement<Scalar = Self::Scalar>;

    const NAME: &'static str;

    fn generator() -> Self::Element;

    /// `G^exp`.
    fn base_pow(exp: &Self::Scalar) -> Self::Element {
        Self::generator().pow(exp)
    }

    fn spec() -> GroupSpec {
        GroupSpec {
            name: Self::NAME,
            order: Self::Scalar::modulus_be_bytes(),
            generator: Self::generator().to_bytes(),
        }
    }
}

/// Description of a group instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: &'static str,
    /// Big-endian group order `q`.
    pub order: Vec<u8>,
    /// Canonical encoding of the generator.
    pub generator: Vec<u8>,
}

pub type ScalarOf<G> = <G as Group>::Scalar;
pub type ElementOf<G> = <G as Group>::Element;

/// Product of a sequence of group elements.
pub fn product<E: GroupElement>(items: impl IntoIterator<Item = E>) -> E {
    items.into_iter().fold(E::identity(), |acc, x| acc * x)
}
