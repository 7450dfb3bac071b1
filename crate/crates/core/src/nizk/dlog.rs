use rand::{CryptoRng, RngCore};

use super::transcript::FsTranscript;
use crate::algebra::{ElementOf, FieldElement, Group, GroupElement, ScalarOf};
use crate::codec::{put_element, put_scalar, Decode, Encode, Reader};
use crate::error::Result;

/// Schnorr proof of knowledge of `x` with `X = G^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DlProof<G: Group> {
    pub commitment: ElementOf<G>,
    pub response: ScalarOf<G>,
}

fn dl_challenge<G: Group>(statement: &ElementOf<G>, commitment: &ElementOf<G>, context: &[u8]) -> ScalarOf<G> {
    let mut t = FsTranscript::new("dl");
    t.absorb(context);
    t.absorb_element(&G::generator());
    t.absorb_element(statement);
    t.absorb_element(commitment);
    t.challenge()
}

pub fn prove_dl<G: Group, R: RngCore + CryptoRng + ?Sized>(
    witness: &ScalarOf<G>,
    statement: &ElementOf<G>,
    context: &[u8],
    rng: &mut R,
) -> DlProof<G> {
    let nonce = ScalarOf::<G>::random(rng);
    let commitment = G::base_pow(&nonce);
    let c = dl_challenge::<G>(statement, &commitment, context);
    DlProof {
        commitment,
        response: nonce + c * *witness,
    }
}

pub fn verify_dl<G: Group>(statement: &ElementOf<G>, proof: &DlProof<G>, context: &[u8]) -> bool {
    let c = dl_challenge::<G>(statement, &proof.commitment, context);
    G::base_pow(&proof.response) == proof.commitment * statement.pow(&c)
}

/// Chaum-Pedersen proof that `log_{base1}(out1) = log_{base2}(out2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DleqProof<G: Group> {
    pub commitment_1: ElementOf<G>,
    pub commitment_2: ElementOf<G>,
    pub response: ScalarOf<G>,
}

/// Statement of a DLEQ relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DleqStatement<G: Group> {
    pub base1: ElementOf<G>,
    pub out1: ElementOf<G>,
    pub base2: ElementOf<G>,
    pub out2: ElementOf<G>,
}

impl<G: Group> DleqStatement<G> {
    fn challenge(&self, mut t: FsTranscript, c1: &ElementOf<G>, c2: &ElementOf<G>) -> ScalarOf<G> {
        for e in [&self.base1, &self.out1, &self.base2, &self.out2, c1, c2] {
            t.absorb_element(e);
        }
        t.challenge()
    }

    /// Proves under a caller-prepared transcript prefix.
    pub(crate) fn prove_with<R: RngCore + CryptoRng + ?Sized>(
        &self,
        prefix: FsTranscript,
        witness: &ScalarOf<G>,
        rng: &mut R,
    ) -> DleqProof<G> {
        let nonce = ScalarOf::<G>::random(rng);
        let commitment_1 = self.base1.pow(&nonce);
        let commitment_2 = self.base2.pow(&nonce);
        let c = self.challenge(prefix, &commitment_1, &commitment_2);
        DleqProof {
            commitment_1,
            commitment_2,
            response: nonce + c * *witness,
        }
    }

    pub(crate) fn verify_with(&self, prefix: FsTranscript, proof: &DleqProof<G>) -> bool {
        let c = self.challenge(prefix, &proof.commitment_1, &proof.commitment_2);
        self.base1.pow(&proof.response) == proof.commitment_1 * self.out1.pow(&c)
            && self.base2.pow(&proof.response) == proof.commitment_2 * self.out2.pow(&c)
    }
}

fn dleq_prefix(context: &[u8]) -> FsTranscript {
    let mut t = FsTranscript::new("dleq");
    t.absorb(context);
    t
}

pub fn prove_dleq<G: Group, R: RngCore + CryptoRng + ?Sized>(
    witness: &ScalarOf<G>,
    statement: &DleqStatement<G>,
    context: &[u8],
    rng: &mut R,
) -> DleqProof<G> {
    statement.prove_with(dleq_prefix(context), witness, rng)
}

pub fn verify_dleq<G: Group>(statement: &DleqStatement<G>, proof: &DleqProof<G>, context: &[u8]) -> bool {
    statement.verify_with(dleq_prefix(context), proof)
}

impl<G: Group> Encode for DlProof<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_element(out, &self.commitment);
        put_scalar(out, &self.response);
    }
}

impl<G: Group> Decode for DlProof<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(DlProof {
            commitment: r.element()?,
            response: r.scalar()?,
        })
    }
}

impl<G: Group> Encode for DleqProof<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_element(out, &self.commitment_1);
        put_element(out, &self.commitment_2);
        put_scalar(out, &self.response);
    }
}

impl<G: Group> Decode for DleqProof<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(DleqProof {
            commitment_1: r.element()?,
            commitment_2: r.element()?,
            response: r.scalar()?,
        })
    }
}

impl<G: Group> Encode for DleqStatement<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        for e in [&self.base1, &self.out1, &self.base2, &self.out2] {
            put_element(out, e);
        }
    }
}

impl<G: Group> Decode for DleqStatement<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(DleqStatement {
            base1: r.element()?,
            out1: r.element()?,
            base2: r.element()?,
            out2: r.element()?,
        })
    }
}
