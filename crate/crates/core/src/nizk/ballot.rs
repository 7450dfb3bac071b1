//! Disjunctive proof that an ElGamal ballot `(A, B) = (G^r, E^r G^v)` encrypts
//! one of a fixed list of exponents `v`.

use rand::{CryptoRng, RngCore};

use super::transcript::FsTranscript;
use crate::algebra::{ElementOf, FieldElement, Group, GroupElement, ScalarOf};
use crate::codec::{put_element, put_scalar, put_u32, Decode, Encode, Reader};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallotBranch<G: Group> {
    pub challenge: ScalarOf<G>,
    pub response: ScalarOf<G>,
    pub commitment_1: ElementOf<G>,
    pub commitment_2: ElementOf<G>,
}

/// One branch per allowed exponent, in the order of the allowed list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotProof<G: Group> {
    pub branches: Vec<BallotBranch<G>>,
}

/// `B / G^v` for branch exponent `v`; equals `E^r` on the real branch.
fn shifted<G: Group>(b: &ElementOf<G>, v: &ScalarOf<G>) -> ElementOf<G> {
    b.div(&G::base_pow(v))
}

fn master_challenge<G: Group>(
    global_pk: &ElementOf<G>,
    ballot: (&ElementOf<G>, &ElementOf<G>),
    allowed: &[ScalarOf<G>],
    branches: &[(ElementOf<G>, ElementOf<G>)],
    context: &[u8],
) -> ScalarOf<G> {
    let mut t = FsTranscript::new("ballot");
    t.absorb(context);
    t.absorb_element(&G::generator());
    t.absorb_element(global_pk);
    t.absorb_element(ballot.0);
    t.absorb_element(ballot.1);
    t.absorb_u64(allowed.len() as u64);
    for v in allowed {
        t.absorb_scalar(v);
    }
    for (t1, t2) in branches {
        t.absorb_element(t1);
        t.absorb_element(t2);
    }
    t.challenge()
}

pub fn prove_ballot<G: Group, R: RngCore + CryptoRng + ?Sized>(
    global_pk: &ElementOf<G>,
    ballot: (&ElementOf<G>, &ElementOf<G>),
    blinding: &ScalarOf<G>,
    vote_exponent: &ScalarOf<G>,
    allowed: &[ScalarOf<G>],
    context: &[u8],
    rng: &mut R,
) -> Result<BallotProof<G>> {
    let real = allowed.iter().position(|v| v == vote_exponent).ok_or(Error::NotAllowed)?;
    let (a, b) = ballot;
    let nonce = ScalarOf::<G>::random(rng);
    let mut partial = Vec::with_capacity(allowed.len());
    for (j, v) in allowed.iter().enumerate() {
        if j == real {
            partial.push((ScalarOf::<G>::zero(), ScalarOf::<G>::zero(), G::base_pow(&nonce), global_pk.pow(&nonce)));
        } else {
            // simulated branch
            let c = ScalarOf::<G>::random(rng);
            let z = ScalarOf::<G>::random(rng);
            let t1 = G::base_pow(&z).div(&a.pow(&c));
            let t2 = global_pk.pow(&z).div(&shifted::<G>(b, v).pow(&c));
            partial.push((c, z, t1, t2));
        }
    }
    let commitments: Vec<_> = partial.iter().map(|p| (p.2, p.3)).collect();
    let master = master_challenge::<G>(global_pk, ballot, allowed, &commitments, context);
    let others = partial
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != real)
        .fold(ScalarOf::<G>::zero(), |acc, (_, p)| acc + p.0);
    let c_real = master - others;
    partial[real].0 = c_real;
    partial[real].1 = nonce + c_real * *blinding;
    let branches = partial
        .into_iter()
        .map(|(challenge, response, commitment_1, commitment_2)| BallotBranch {
            challenge,
            response,
            commitment_1,
            commitment_2,
        })
        .collect();
    Ok(BallotProof { branches })
}

pub fn verify_ballot<G: Group>(
    global_pk: &ElementOf<G>,
    ballot: (&ElementOf<G>, &ElementOf<G>),
    allowed: &[ScalarOf<G>],
    proof: &BallotProof<G>,
    context: &[u8],
) -> bool {
    if allowed.is_empty() || proof.branches.len() != allowed.len() {
        return false;
    }
    let (a, b) = ballot;
    let commitments: Vec<_> = proof.branches.iter().map(|br| (br.commitment_1, br.commitment_2)).collect();
    let master = master_challenge::<G>(global_pk, ballot, allowed, &commitments, context);
    let sum = proof.branches.iter().fold(ScalarOf::<G>::zero(), |acc, br| acc + br.challenge);
    if sum != master {
        return false;
    }
    proof.branches.iter().zip(allowed).all(|(br, v)| {
        G::base_pow(&br.response) == br.commitment_1 * a.pow(&br.challenge)
            && global_pk.pow(&br.response) == br.commitment_2 * shifted::<G>(b, v).pow(&br.challenge)
    })
}

impl<G: Group> Encode for BallotProof<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.branches.len() as u32);
        for br in &self.branches {
            put_scalar(out, &br.challenge);
            put_scalar(out, &br.response);
            put_element(out, &br.commitment_1);
            put_element(out, &br.commitment_2);
        }
    }
}

impl<G: Group> Decode for BallotProof<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u32()?;
        let branches = (0..n)
            .map(|_| {
                Ok(BallotBranch {
                    challenge: r.scalar()?,
                    response: r.scalar()?,
                    commitment_1: r.element()?,
                    commitment_2: r.element()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BallotProof { branches })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type G = TestGroup;
    type S = ScalarOf<G>;

    fn allowed(c: u32, m: u32) -> Vec<S> {
        (0..c).map(|j| S::from_u64(1u64 << (j * m))).collect()
    }

    fn ballot(pk: &ElementOf<G>, r: &S, v: &S) -> (ElementOf<G>, ElementOf<G>) {
        (G::base_pow(r), pk.pow(r) * G::base_pow(v))
    }

    #[test]
    fn every_candidate_verifies() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let pk = G::base_pow(&S::random(&mut rng));
        let al = allowed(3, 4);
        for v in &al {
            let r = S::random(&mut rng);
            let (a, b) = ballot(&pk, &r, v);
            let proof = prove_ballot::<G, _>(&pk, (&a, &b), &r, v, &al, b"e", &mut rng).unwrap();
            assert!(verify_ballot::<G>(&pk, (&a, &b), &al, &proof, b"e"));
            assert!(!verify_ballot::<G>(&pk, (&a, &b), &al, &proof, b"f"));
        }
    }

    #[test]
    fn prover_refuses_disallowed_exponent() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let pk = G::base_pow(&S::random(&mut rng));
        let r = S::random(&mut rng);
        let v = S::from_u64(3);
        let (a, b) = ballot(&pk, &r, &v);
        let err = prove_ballot::<G, _>(&pk, (&a, &b), &r, &v, &allowed(2, 2), b"", &mut rng);
        assert!(matches!(err, Err(Error::NotAllowed)));
    }

    #[test]
    fn rebalanced_challenges_fail() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let pk = G::base_pow(&S::random(&mut rng));
        let al = allowed(2, 3);
        let r = S::random(&mut rng);
        let (a, b) = ballot(&pk, &r, &al[0]);
        let proof = prove_ballot::<G, _>(&pk, (&a, &b), &r, &al[0], &al, b"", &mut rng).unwrap();
        let mut bad = proof.clone();
        bad.branches[1].challenge += S::one();
        assert!(!verify_ballot::<G>(&pk, (&a, &b), &al, &bad, b""));
        // keep the sum but shift weight between branches
        let mut bad = proof.clone();
        bad.branches[0].challenge += S::one();
        bad.branches[1].challenge = bad.branches[1].challenge - S::one();
        assert!(!verify_ballot::<G>(&pk, (&a, &b), &al, &bad, b""));
    }

    #[test]
    fn forged_out_of_set_ballot_fails() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let pk = G::base_pow(&S::random(&mut rng));
        let al = allowed(2, 3);
        let r = S::random(&mut rng);
        let (a, b) = ballot(&pk, &r, &al[1]);
        let proof = prove_ballot::<G, _>(&pk, (&a, &b), &r, &al[1], &al, b"", &mut rng).unwrap();
        // double the vote while reusing the proof
        let forged_b = b * G::base_pow(&al[1]);
        assert!(!verify_ballot::<G>(&pk, (&a, &forged_b), &al, &proof, b""));
    }
}
