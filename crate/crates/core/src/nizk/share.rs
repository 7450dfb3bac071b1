use rand::{CryptoRng, RngCore};

use super::dlog::{DleqProof, DleqStatement};
use super::transcript::FsTranscript;
use crate::algebra::{ElementOf, GroupElement, Group, ScalarOf};
use crate::codec::{put_element, Decode, Encode, Reader};
use crate::error::Result;
use crate::pke::{pke_recover_mask, PkeCiphertext};

/// Proof that a ciphertext decrypts to a claimed scalar under the key behind `pk`.
///
/// Carries the recovered mask `M`; the verifier checks `χ(M) - delta = share`
/// and `log_G(pk) = log_{c1}(c2 / M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShareDecryptionProof<G: Group> {
    pub mask: ElementOf<G>,
    pub dleq: DleqProof<G>,
}

fn prefix<G: Group>(ct: &PkeCiphertext<G>, share: &ScalarOf<G>, mask: &ElementOf<G>, context: &[u8]) -> FsTranscript {
    let mut t = FsTranscript::new("share-decryption");
    t.absorb(context);
    t.absorb(&ct.to_canonical_bytes());
    t.absorb_scalar(share);
    t.absorb_element(mask);
    t
}

fn statement<G: Group>(pk: &ElementOf<G>, ct: &PkeCiphertext<G>, mask: &ElementOf<G>) -> DleqStatement<G> {
    DleqStatement {
        base1: G::generator(),
        out1: *pk,
        base2: ct.c1,
        out2: ct.c2.div(mask),
    }
}

pub fn prove_share_decryption<G: Group, R: RngCore + CryptoRng + ?Sized>(
    sk: &ScalarOf<G>,
    pk: &ElementOf<G>,
    ct: &PkeCiphertext<G>,
    context: &[u8],
    rng: &mut R,
) -> (ScalarOf<G>, ShareDecryptionProof<G>) {
    let mask = pke_recover_mask(sk, ct);
    let share = mask.chi() - ct.delta;
    let dleq = statement(pk, ct, &mask).prove_with(prefix(ct, &share, &mask, context), sk, rng);
    (share, ShareDecryptionProof { mask, dleq })
}

pub fn verify_share_decryption<G: Group>(
    pk: &ElementOf<G>,
    ct: &PkeCiphertext<G>,
    share: &ScalarOf<G>,
    proof: &ShareDecryptionProof<G>,
    context: &[u8],
) -> bool {
    if proof.mask.chi() - ct.delta != *share {
        return false;
    }
    statement(pk, ct, &proof.mask).verify_with(prefix(ct, share, &proof.mask, context), &proof.dleq)
}

impl<G: Group> Encode for ShareDecryptionProof<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_element(out, &self.mask);
        self.dleq.encode(out);
    }
}

impl<G: Group> Decode for ShareDecryptionProof<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(ShareDecryptionProof {
            mask: r.element()?,
            dleq: DleqProof::decode(r)?,
        })
    }
}
