use std::collections::{BTreeMap, BTreeSet};

use super::types::Params;
use crate::PartyIndex;

/// Guardian set of every dealer.
pub type GuardianMap = BTreeMap<PartyIndex, BTreeSet<PartyIndex>>;

fn overlap(a: &BTreeSet<PartyIndex>, b: Option<&BTreeSet<PartyIndex>>) -> usize {
    b.map_or(0, |b| a.intersection(b).count())
}

/// `S` can recover every partial secret: each dealer is in `S` or has `t` guardians in `S`.
pub fn reconstruction_capable(s: &BTreeSet<PartyIndex>, d: &BTreeSet<PartyIndex>, guardians: &GuardianMap, t: usize) -> bool {
    d.iter().all(|i| s.contains(i) || overlap(s, guardians.get(i)) >= t)
}

/// The corrupted set `C` cannot block reconstruction by withholding.
pub fn liveness_holds(c: &BTreeSet<PartyIndex>, d: &BTreeSet<PartyIndex>, guardians: &GuardianMap, params: &Params) -> bool {
    d.iter()
        .all(|i| !c.contains(i) || overlap(c, guardians.get(i)) + params.t <= params.k)
}

/// `C` on its own can recover the joint secret.
pub fn privacy_breached(c: &BTreeSet<PartyIndex>, d: &BTreeSet<PartyIndex>, guardians: &GuardianMap, t: usize) -> bool {
    reconstruction_capable(c, d, guardians, t)
}
