//! Fixtures shared by the benchmarks.

use std::collections::BTreeMap;

use fdkg::fdkg::{GuardianSet, Params};
use fdkg::PartyIndex;

/// Party `i` picks the next `k` parties around the ring.
pub fn ring_guardians(params: &Params) -> BTreeMap<PartyIndex, GuardianSet> {
    let n = params.n;
    params
        .parties()
        .map(|i| {
            let members = (1..=params.k as u32).map(|d| (i - 1 + d) % n + 1);
            (i, GuardianSet::new(i, members, params).expect("ring fits"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_is_valid() {
        let params = Params::new(7, 2, 3).unwrap();
        let g = ring_guardians(&params);
        assert_eq!(g[&7].members().iter().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
