//! Dealer-side proofs: Feldman commitments to the sharing polynomial and a
//! well-formedness proof for each encrypted share.

use rand::{CryptoRng, RngCore};

use super::transcript::FsTranscript;
use crate::algebra::{product, ElementOf, FieldElement, Group, GroupElement, Polynomial, ScalarOf};
use crate::codec::{put_element, put_scalar, put_u32, Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::pke::{EncRandomness, PkeCiphertext};

/// `A_l = G^{a_l}` for every coefficient of the sharing polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeldmanCommitments<G: Group>(pub Vec<ElementOf<G>>);

impl<G: Group> FeldmanCommitments<G> {
    pub fn commit(poly: &Polynomial<ScalarOf<G>>) -> Self {
        FeldmanCommitments(poly.coefficients().iter().map(G::base_pow).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `A_0`, the committed secret.
    pub fn constant_term(&self) -> Option<&ElementOf<G>> {
        self.0.first()
    }

    /// `∏_l A_l^{index^l}` = `G^{f(index)}`.
    pub fn evaluate(&self, index: u64) -> ElementOf<G> {
        let x = ScalarOf::<G>::from_u64(index);
        let mut power = ScalarOf::<G>::one();
        product(self.0.iter().map(|a| {
            let term = a.pow(&power);
            power *= x;
            term
        }))
    }
}

/// Checks a decrypted share against the dealer's commitments.
pub fn guardian_check_share<G: Group>(share: &ScalarOf<G>, index: u64, commitments: &FeldmanCommitments<G>) -> bool {
    !commitments.is_empty() && G::base_pow(share) == commitments.evaluate(index)
}

/// Knowledge of `(k, r)` with `c1 = G^k` and `c2 = pk^k G^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepresentationProof<G: Group> {
    pub commitment_1: ElementOf<G>,
    pub commitment_2: ElementOf<G>,
    pub response_k: ScalarOf<G>,
    pub response_r: ScalarOf<G>,
}

fn representation_challenge<G: Group>(
    prefix: &FsTranscript,
    pk: &ElementOf<G>,
    ct: &PkeCiphertext<G>,
    t1: &ElementOf<G>,
    t2: &ElementOf<G>,
) -> ScalarOf<G> {
    let mut t = prefix.clone();
    t.absorb_element(pk);
    t.absorb(&ct.to_canonical_bytes());
    t.absorb_element(t1);
    t.absorb_element(t2);
    t.challenge()
}

impl<G: Group> RepresentationProof<G> {
    fn prove<R: RngCore + CryptoRng + ?Sized>(
        prefix: &FsTranscript,
        pk: &ElementOf<G>,
        ct: &PkeCiphertext<G>,
        rand: &EncRandomness<G>,
        rng: &mut R,
    ) -> Self {
        let wk = ScalarOf::<G>::random(rng);
        let wr = ScalarOf::<G>::random(rng);
        let commitment_1 = G::base_pow(&wk);
        let commitment_2 = pk.pow(&wk) * G::base_pow(&wr);
        let c = representation_challenge(prefix, pk, ct, &commitment_1, &commitment_2);
        RepresentationProof {
            commitment_1,
            commitment_2,
            response_k: wk + c * rand.k,
            response_r: wr + c * rand.r,
        }
    }

    fn verify(&self, prefix: &FsTranscript, pk: &ElementOf<G>, ct: &PkeCiphertext<G>) -> bool {
        let c = representation_challenge(prefix, pk, ct, &self.commitment_1, &self.commitment_2);
        G::base_pow(&self.response_k) == self.commitment_1 * ct.c1.pow(&c)
            && pk.pow(&self.response_k) * G::base_pow(&self.response_r) == self.commitment_2 * ct.c2.pow(&c)
    }
}

/// One representation proof per ciphertext, in guardian order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealProofBundle<G: Group> {
    pub representations: Vec<RepresentationProof<G>>,
}

fn deal_prefix<G: Group>(commitments: &FeldmanCommitments<G>, guardian: u32, context: &[u8]) -> FsTranscript {
    let mut t = FsTranscript::new("deal-encryption");
    t.absorb(context);
    t.absorb(&commitments.to_canonical_bytes());
    t.absorb_u64(u64::from(guardian));
    t
}

/// Commits to `polynomial` and proves every ciphertext well formed.
///
/// `guardians`, `enc_randomness` and `ciphertexts` are aligned by position.
pub fn prove_deal<G: Group, R: RngCore + CryptoRng + ?Sized>(
    polynomial: &Polynomial<ScalarOf<G>>,
    guardians: &[(u32, ElementOf<G>)],
    enc_randomness: &[EncRandomness<G>],
    ciphertexts: &[PkeCiphertext<G>],
    context: &[u8],
    rng: &mut R,
) -> Result<(FeldmanCommitments<G>, DealProofBundle<G>)> {
    if guardians.len() != enc_randomness.len() || guardians.len() != ciphertexts.len() {
        return Err(Error::InvalidParams("guardian, randomness and ciphertext counts differ".into()));
    }
    let commitments = FeldmanCommitments::commit(polynomial);
    let representations = guardians
        .iter()
        .zip(enc_randomness)
        .zip(ciphertexts)
        .map(|(((j, pk), rand), ct)| {
            RepresentationProof::prove(&deal_prefix(&commitments, *j, context), pk, ct, rand, rng)
        })
        .collect();
    Ok((commitments, DealProofBundle { representations }))
}

pub fn verify_deal<G: Group>(
    commitments: &FeldmanCommitments<G>,
    t: usize,
    guardians: &[(u32, ElementOf<G>)],
    ciphertexts: &[PkeCiphertext<G>],
    bundle: &DealProofBundle<G>,
    context: &[u8],
) -> bool {
    if commitments.len() != t || guardians.len() != ciphertexts.len() || guardians.len() != bundle.representations.len() {
        return false;
    }
    guardians
        .iter()
        .zip(ciphertexts)
        .zip(&bundle.representations)
        .all(|(((j, pk), ct), proof)| proof.verify(&deal_prefix(commitments, *j, context), pk, ct))
}

impl<G: Group> Encode for FeldmanCommitments<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.0.len() as u32);
        for a in &self.0 {
            put_element(out, a);
        }
    }
}

impl<G: Group> Decode for FeldmanCommitments<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u32()?;
        (0..n).map(|_| r.element()).collect::<Result<_>>().map(FeldmanCommitments)
    }
}

impl<G: Group> Encode for RepresentationProof<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_element(out, &self.commitment_1);
        put_element(out, &self.commitment_2);
        put_scalar(out, &self.response_k);
        put_scalar(out, &self.response_r);
    }
}

impl<G: Group> Decode for RepresentationProof<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(RepresentationProof {
            commitment_1: r.element()?,
            commitment_2: r.element()?,
            response_k: r.scalar()?,
            response_r: r.scalar()?,
        })
    }
}

impl<G: Group> Encode for DealProofBundle<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.representations.len() as u32);
        for p in &self.representations {
            p.encode(out);
        }
    }
}

impl<G: Group> Decode for DealProofBundle<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u32()?;
        let representations = (0..n).map(|_| RepresentationProof::decode(r)).collect::<Result<_>>()?;
        Ok(DealProofBundle { representations })
    }
}
