use std::collections::BTreeSet;

use rand::{CryptoRng, RngCore};

use super::encoding::VoteEncoding;
use crate::algebra::{ElementOf, FieldElement, Group, GroupElement, ScalarOf};
use crate::codec::{put_element, put_u32, Decode, Encode, Reader};
use crate::error::Result;
use crate::fdkg::proof_context;
use crate::nizk::{prove_ballot, verify_ballot, BallotProof};

/// Encrypted vote `(A, B) = (G^r, E^r G^v)` with its validity proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ballot<G: Group> {
    pub voter: u32,
    pub a: ElementOf<G>,
    pub b: ElementOf<G>,
    pub proof: BallotProof<G>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AggregatedCiphertext<G: Group> {
    pub c1: ElementOf<G>,
    pub c2: ElementOf<G>,
}

/// Product of the accepted ballots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aggregate<G: Group> {
    pub ciphertext: AggregatedCiphertext<G>,
    pub accepted: BTreeSet<u32>,
    pub rejected: BTreeSet<u32>,
}

impl<G: Group> Aggregate<G> {
    /// No ballot survived verification.
    pub fn is_empty(&self) -> bool {
        self.accepted.is_empty()
    }
}

pub fn ballot_context(election: &[u8], voter: u32) -> Vec<u8> {
    proof_context(election, "ballot", &[voter])
}

pub fn cast_ballot<G: Group, R: RngCore + CryptoRng + ?Sized>(
    encoding: &VoteEncoding,
    global_pk: &ElementOf<G>,
    voter: u32,
    candidate: u32,
    election: &[u8],
    rng: &mut R,
) -> Result<Ballot<G>> {
    let v: ScalarOf<G> = encoding.exponent(candidate)?;
    let r = ScalarOf::<G>::random(rng);
    let a = G::base_pow(&r);
    let b = global_pk.pow(&r) * G::base_pow(&v);
    let proof = prove_ballot::<G, R>(global_pk, (&a, &b), &r, &v, &encoding.allowed(), &ballot_context(election, voter), rng)?;
    Ok(Ballot { voter, a, b, proof })
}

impl<G: Group> Ballot<G> {
    pub fn verify(&self, encoding: &VoteEncoding, global_pk: &ElementOf<G>, election: &[u8]) -> bool {
        verify_ballot::<G>(
            global_pk,
            (&self.a, &self.b),
            &encoding.allowed(),
            &self.proof,
            &ballot_context(election, self.voter),
        )
    }
}

/// Keeps the first valid ballot of each voter and multiplies them componentwise.
pub fn aggregate_ballots<G: Group>(
    ballots: &[Ballot<G>],
    encoding: &VoteEncoding,
    global_pk: &ElementOf<G>,
    election: &[u8],
) -> Aggregate<G> {
    let mut c1 = ElementOf::<G>::identity();
    let mut c2 = ElementOf::<G>::identity();
    let mut accepted = BTreeSet::new();
    let mut rejected = BTreeSet::new();
    for ballot in ballots {
        if accepted.contains(&ballot.voter) {
            continue;
        }
        if ballot.verify(encoding, global_pk, election) {
            accepted.insert(ballot.voter);
            rejected.remove(&ballot.voter);
            c1 *= ballot.a;
            c2 *= ballot.b;
        } else {
            rejected.insert(ballot.voter);
        }
    }
    Aggregate { ciphertext: AggregatedCiphertext { c1, c2 }, accepted, rejected }
}

impl<G: Group> Encode for Ballot<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u32(out, self.voter);
        put_element(out, &self.a);
        put_element(out, &self.b);
        self.proof.encode(out);
    }
}

impl<G: Group> Decode for Ballot<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Ballot {
            voter: r.u32()?,
            a: r.element()?,
            b: r.element()?,
            proof: BallotProof::decode(r)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestGroup;
    use crate::voting::derive_encoding;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type S = ScalarOf<TestGroup>;

    fn setup() -> (VoteEncoding, S, ElementOf<TestGroup>, ChaCha20Rng) {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let sk = S::random_nonzero(&mut rng);
        (derive_encoding::<TestGroup>(100, 3).unwrap(), sk, TestGroup::base_pow(&sk), rng)
    }

    fn decrypt(agg: &AggregatedCiphertext<TestGroup>, sk: &S) -> ElementOf<TestGroup> {
        agg.c2.div(&agg.c1.pow(sk))
    }

    #[test]
    fn single_ballot_aggregate_is_itself() {
        let (enc, _, pk, mut rng) = setup();
        let b = cast_ballot::<TestGroup, _>(&enc, &pk, 1, 2, b"e", &mut rng).unwrap();
        let agg = aggregate_ballots(std::slice::from_ref(&b), &enc, &pk, b"e");
        assert_eq!((agg.ciphertext.c1, agg.ciphertext.c2), (b.a, b.b));
        assert_eq!(Ballot::<TestGroup>::from_canonical_bytes(&b.to_canonical_bytes()).unwrap(), b);
    }

    #[test]
    fn two_ballots_add_exponents() {
        let (enc, sk, pk, mut rng) = setup();
        let ballots: Vec<_> = [(1, 1), (2, 2)]
            .iter()
            .map(|&(v, c)| cast_ballot::<TestGroup, _>(&enc, &pk, v, c, b"e", &mut rng).unwrap())
            .collect();
        let agg = aggregate_ballots(&ballots, &enc, &pk, b"e");
        assert_eq!(decrypt(&agg.ciphertext, &sk), TestGroup::base_pow(&S::from_u64(1 + 128)));
    }

    #[test]
    fn invalid_ballots_are_dropped() {
        let (enc, sk, pk, mut rng) = setup();
        let mut ballots: Vec<_> = (1..=5)
            .map(|v| cast_ballot::<TestGroup, _>(&enc, &pk, v, 1, b"e", &mut rng).unwrap())
            .collect();
        ballots[2].b *= TestGroup::generator();
        // a replayed ballot under another voter id fails the context binding
        let mut stolen = ballots[0].clone();
        stolen.voter = 9;
        ballots.push(stolen);
        let agg = aggregate_ballots(&ballots, &enc, &pk, b"e");
        assert_eq!(agg.accepted, [1, 2, 4, 5].into_iter().collect());
        assert_eq!(agg.rejected, [3, 9].into_iter().collect());
        assert_eq!(decrypt(&agg.ciphertext, &sk), TestGroup::base_pow(&S::from_u64(4)));
        assert!(aggregate_ballots::<TestGroup>(&[], &enc, &pk, b"e").is_empty());
    }

    #[test]
    fn out_of_range_candidate() {
        let (enc, _, pk, mut rng) = setup();
        assert!(cast_ballot::<TestGroup, _>(&enc, &pk, 1, 4, b"e", &mut rng).is_err());
    }

    #[test]
    fn forged_exponent_fails() {
        // a prover run with a widened allowed list still cannot pass the real one
        let (enc, _, pk, mut rng) = setup();
        let r = S::random(&mut rng);
        let v = S::from_u64(3);
        let (a, b) = (TestGroup::base_pow(&r), pk.pow(&r) * TestGroup::base_pow(&v));
        let mut wide = enc.allowed::<S>();
        wide[0] = v;
        let proof = prove_ballot::<TestGroup, _>(&pk, (&a, &b), &r, &v, &wide, &ballot_context(b"e", 1), &mut rng).unwrap();
        let ballot = Ballot { voter: 1, a, b, proof };
        assert!(!ballot.verify(&enc, &pk, b"e"));
    }
}
