//! Trusted-party key generation: the functionality the real protocol should
//! be indistinguishable from. Used as a test oracle.

use std::collections::{BTreeMap, BTreeSet};

use super::board::ROUND_DEAL;
use super::ceremony::child_rng;
use crate::algebra::{ElementOf, FieldElement, Group, Polynomial, ScalarOf};
use crate::fdkg::{GuardianSet, Params};
use crate::PartyIndex;

#[derive(Clone, Debug)]
pub enum Activation<G: Group> {
    /// The functionality samples the polynomial itself.
    Honest { party: PartyIndex, guardians: BTreeSet<PartyIndex> },
    /// The adversary supplies the polynomial.
    Corrupt {
        party: PartyIndex,
        guardians: BTreeSet<PartyIndex>,
        polynomial: Polynomial<ScalarOf<G>>,
    },
}

impl<G: Group> Activation<G> {
    pub fn party(&self) -> PartyIndex {
        match self {
            Activation::Honest { party, .. } | Activation::Corrupt { party, .. } => *party,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealOutput<G: Group> {
    /// `None` for an empty participant set.
    pub global_pk: Option<ElementOf<G>>,
    pub global_sk: Option<ScalarOf<G>>,
    pub participants: BTreeSet<PartyIndex>,
    pub partial_pks: BTreeMap<PartyIndex, ElementOf<G>>,
    pub partial_secrets: BTreeMap<PartyIndex, ScalarOf<G>>,
    /// `f_i(j)` keyed by (dealer i, guardian j).
    pub shares: BTreeMap<(PartyIndex, PartyIndex), ScalarOf<G>>,
    pub rejected: Vec<(PartyIndex, String)>,
}

/// Processes activations in order, then computes keys and shares.
///
/// An honest party's polynomial is drawn from the same child RNG a real dealer
/// uses in round 1, so outputs line up with `run_ceremony` under one seed.
pub fn ideal_functionality_run<G: Group>(params: &Params, activations: &[Activation<G>], seed: u64) -> IdealOutput<G> {
    let mut stored: BTreeMap<PartyIndex, (Polynomial<ScalarOf<G>>, BTreeSet<PartyIndex>)> = BTreeMap::new();
    let mut rejected = Vec::new();
    for act in activations {
        let party = act.party();
        if stored.contains_key(&party) {
            rejected.push((party, "already activated".to_string()));
            continue;
        }
        let guardians = match act {
            Activation::Honest { guardians, .. } | Activation::Corrupt { guardians, .. } => guardians,
        };
        if let Err(e) = GuardianSet::new(party, guardians.iter().copied(), params) {
            rejected.push((party, e.to_string()));
            continue;
        }
        let poly = match act {
            Activation::Honest { .. } => {
                Polynomial::random(params.t, &mut child_rng(seed, party, ROUND_DEAL)).expect("t >= 1")
            }
            Activation::Corrupt { polynomial, .. } => {
                if polynomial.coefficients().len() != params.t {
                    rejected.push((party, format!("polynomial has {} coefficients, need {}", polynomial.coefficients().len(), params.t)));
                    continue;
                }
                polynomial.clone()
            }
        };
        stored.insert(party, (poly, guardians.clone()));
    }

    let participants: BTreeSet<_> = stored.keys().copied().collect();
    let partial_secrets: BTreeMap<_, _> = stored.iter().map(|(&i, (f, _))| (i, f.secret())).collect();
    let partial_pks = partial_secrets.iter().map(|(&i, d)| (i, G::base_pow(d))).collect();
    let shares = stored
        .iter()
        .flat_map(|(&i, (f, g))| g.iter().map(move |&j| ((i, j), f.evaluate_at(u64::from(j)))))
        .collect();
    let global_sk = (!participants.is_empty()).then(|| partial_secrets.values().fold(ScalarOf::<G>::zero(), |a, d| a + *d));
    IdealOutput {
        global_pk: global_sk.map(|d| G::base_pow(&d)),
        global_sk,
        participants,
        partial_pks,
        partial_secrets,
        shares,
        rejected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestGroup;

    type G = TestGroup;

    #[test]
    fn empty_activation_gives_null_key() {
        let p = Params::new(4, 1, 2).unwrap();
        let out = ideal_functionality_run::<G>(&p, &[], 1);
        assert!(out.global_pk.is_none());
        assert!(out.participants.is_empty());
    }

    #[test]
    fn wrong_degree_and_bad_sets_are_rejected() {
        let p = Params::new(5, 2, 2).unwrap();
        let poly = Polynomial::from_coefficients(vec![ScalarOf::<G>::one(); 3]).unwrap();
        let acts = vec![
            Activation::Corrupt { party: 1, guardians: [2, 3].into_iter().collect(), polynomial: poly },
            Activation::Honest { party: 2, guardians: [2, 3].into_iter().collect() },
            Activation::Honest { party: 3, guardians: [1, 2, 4].into_iter().collect() },
            Activation::Honest { party: 4, guardians: [1, 2].into_iter().collect() },
        ];
        let out = ideal_functionality_run::<G>(&p, &acts, 1);
        assert_eq!(out.participants, [4].into_iter().collect());
        assert_eq!(out.rejected.len(), 3);
        assert_eq!(out.shares.len(), 2);
    }

    #[test]
    fn corrupt_polynomial_is_used_verbatim() {
        let p = Params::new(4, 2, 2).unwrap();
        let s = |v| ScalarOf::<G>::from_u64(v);
        let poly = Polynomial::from_coefficients(vec![s(5), s(3)]).unwrap();
        let acts = vec![Activation::Corrupt { party: 1, guardians: [2, 3].into_iter().collect(), polynomial: poly }];
        let out = ideal_functionality_run::<G>(&p, &acts, 1);
        assert_eq!(out.partial_secrets[&1], s(5));
        assert_eq!(out.shares[&(1, 2)], s(11));
        assert_eq!(out.shares[&(1, 3)], s(14));
        assert_eq!(out.global_pk, Some(G::base_pow(&s(5))));
    }
}
