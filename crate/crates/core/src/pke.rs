//! ElGamal-variant encryption of scalars.
//!
//! A random mask point `M = G^r` is ElGamal-encrypted and the plaintext scalar
//! is carried as an offset from the mask's coordinate: `delta = χ(M) - m`.

use rand::{CryptoRng, RngCore};

use crate::algebra::{ElementOf, FieldElement, Group, GroupElement, ScalarOf};
use crate::codec::{put_element, put_scalar, Decode, Encode, Reader};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PkeKeyPair<G: Group> {
    pub sk: ScalarOf<G>,
    pub pk: ElementOf<G>,
}

impl<G: Group> PkeKeyPair<G> {
    pub fn from_secret(sk: ScalarOf<G>) -> Self {
        PkeKeyPair { sk, pk: G::base_pow(&sk) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PkeCiphertext<G: Group> {
    pub c1: ElementOf<G>,
    pub c2: ElementOf<G>,
    pub delta: ScalarOf<G>,
}

/// Per-ciphertext randomness `(k, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncRandomness<G: Group> {
    pub k: ScalarOf<G>,
    pub r: ScalarOf<G>,
}

impl<G: Group> EncRandomness<G> {
    /// Both components nonzero.
    pub fn sample<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        let k = ScalarOf::<G>::random_nonzero(rng);
        let r = ScalarOf::<G>::random_nonzero(rng);
        EncRandomness { k, r }
    }
}

pub fn pke_keygen<G: Group, R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> PkeKeyPair<G> {
    PkeKeyPair::from_secret(ScalarOf::<G>::random_nonzero(rng))
}

pub fn pke_encrypt<G: Group>(pk: &ElementOf<G>, m: &ScalarOf<G>, rand: &EncRandomness<G>) -> PkeCiphertext<G> {
    let c1 = G::base_pow(&rand.k);
    let mask = G::base_pow(&rand.r);
    let c2 = pk.pow(&rand.k) * mask;
    PkeCiphertext {
        c1,
        c2,
        delta: mask.chi() - *m,
    }
}

/// Recovers the mask point `M = c2 / c1^sk`.
pub fn pke_recover_mask<G: Group>(sk: &ScalarOf<G>, ct: &PkeCiphertext<G>) -> ElementOf<G> {
    ct.c2.div(&ct.c1.pow(sk))
}

pub fn pke_decrypt<G: Group>(sk: &ScalarOf<G>, ct: &PkeCiphertext<G>) -> ScalarOf<G> {
    pke_recover_mask(sk, ct).chi() - ct.delta
}

impl<G: Group> Encode for PkeCiphertext<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_element(out, &self.c1);
        put_element(out, &self.c2);
        put_scalar(out, &self.delta);
    }
}

impl<G: Group> Decode for PkeCiphertext<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(PkeCiphertext {
            c1: r.element()?,
            c2: r.element()?,
            delta: r.scalar()?,
        })
    }
}
