//! The prime-order subgroup of Baby Jubjub (twisted Edwards curve over the BN254 scalar field).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use ark_ec::{AffineRepr, CurveGroup, PrimeGroup};
use ark_ed_on_bn254::{EdwardsAffine, EdwardsProjective, Fr};
use ark_ff::{BigInteger, Field, PrimeField, UniformRand};
use ark_serialize::{CanonicalDeserialize, Compress, Validate};
use rand::RngCore;

use super::group::{FieldElement, Group, GroupElement};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct JubScalar(pub(crate) Fr);

impl fmt::Debug for JubScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JubScalar({})", self.0)
    }
}

impl Add for JubScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        JubScalar(self.0 + rhs.0)
    }
}

impl Sub for JubScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        JubScalar(self.0 - rhs.0)
    }
}

impl Neg for JubScalar {
    type Output = Self;
    fn neg(self) -> Self {
        JubScalar(-self.0)
    }
}

impl Mul for JubScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        JubScalar(self.0 * rhs.0)
    }
}

impl AddAssign for JubScalar {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl MulAssign for JubScalar {
    fn mul_assign(&mut self, rhs: Self) {
        self.0 *= rhs.0;
    }
}

impl FieldElement for JubScalar {
    const ENCODED_LEN: usize = 32;

    fn zero() -> Self {
        JubScalar(Fr::from(0u64))
    }

    fn one() -> Self {
        JubScalar(Fr::from(1u64))
    }

    fn from_u64(value: u64) -> Self {
        JubScalar(Fr::from(value))
    }

    fn is_zero(&self) -> bool {
        self.0 == Fr::from(0u64)
    }

    fn invert(&self) -> Option<Self> {
        self.0.inverse().map(JubScalar)
    }

    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        JubScalar(Fr::rand(&mut RngAdapter(rng)))
    }

    fn to_bytes(&self) -> Vec<u8> {
        self.0.into_bigint().to_bytes_be()
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != Self::ENCODED_LEN {
            return None;
        }
        let reduced = Fr::from_be_bytes_mod_order(bytes);
        // canonical iff reduction was a no-op
        (reduced.into_bigint().to_bytes_be() == bytes).then_some(JubScalar(reduced))
    }

    fn from_be_bytes_reduced(bytes: &[u8]) -> Self {
        JubScalar(Fr::from_be_bytes_mod_order(bytes))
    }

    fn modulus_be_bytes() -> Vec<u8> {
        Fr::MODULUS.to_bytes_be()
    }

    fn modulus_bits() -> u32 {
        Fr::MODULUS_BIT_SIZE
    }
}

/// Point of the prime-order subgroup. Encoded uncompressed as `x ‖ y`, 64 bytes.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct JubPoint(pub(crate) EdwardsProjective);

impl JubPoint {
    fn affine(&self) -> EdwardsAffine {
        self.0.into_affine()
    }
}

impl Hash for JubPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_bytes().hash(state);
    }
}

impl fmt::Debug for JubPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.affine();
        write!(f, "JubPoint({}, {})", a.x, a.y)
    }
}

impl Mul for JubPoint {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        JubPoint(self.0 + rhs.0)
    }
}

impl MulAssign for JubPoint {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn mul_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl GroupElement for JubPoint {
    type Scalar = JubScalar;

    const ENCODED_LEN: usize = 64;

    fn identity() -> Self {
        JubPoint(EdwardsAffine::zero().into_group())
    }

    fn inverse(&self) -> Self {
        JubPoint(-self.0)
    }

    fn pow(&self, exp: &JubScalar) -> Self {
        JubPoint(self.0 * exp.0)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let a = self.affine();
        let mut out = Vec::with_capacity(64);
        out.extend(a.x.into_bigint().to_bytes_be());
        out.extend(a.y.into_bigint().to_bytes_be());
        out
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != Self::ENCODED_LEN {
            return None;
        }
        // arkworks serializes little-endian field elements
        let mut le = Vec::with_capacity(64);
        le.extend(bytes[..32].iter().rev());
        le.extend(bytes[32..].iter().rev());
        let a = EdwardsAffine::deserialize_with_mode(&le[..], Compress::No, Validate::Yes).ok()?;
        let p = JubPoint(a.into_group());
        // reject non-canonical coordinates that deserialization may have reduced
        (p.to_bytes() == bytes).then_some(p)
    }

    fn chi(&self) -> JubScalar {
        let x = self.affine().x.into_bigint().to_bytes_be();
        JubScalar(Fr::from_be_bytes_mod_order(&x))
    }
}

/// Baby Jubjub prime-order subgroup with the standard base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BabyJub;

impl Group for BabyJub {
    type Scalar = JubScalar;
    type Element = JubPoint;

    const NAME: &'static str = "babyjub";

    fn generator() -> JubPoint {
        JubPoint(EdwardsProjective::generator())
    }
}

/// Bridges an unsized `RngCore` into arkworks' sampling API.
struct RngAdapter<'a, R: ?Sized>(&'a mut R);

impl<R: RngCore + ?Sized> RngCore for RngAdapter<'_, R> {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}
