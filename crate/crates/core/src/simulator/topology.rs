use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fdkg::GuardianMap;
use crate::PartyIndex;

/// How owners pick their guardians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    /// Uniform k-subsets.
    Er,
    /// Preferential attachment on in-degree.
    Ba,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Er => "ER",
            Topology::Ba => "BA",
        })
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Topology::Er),
            "ba" => Ok(Topology::Ba),
            other => Err(Error::InvalidParams(format!("unknown topology {other:?}"))),
        }
    }
}

fn check(n: u32, k: usize) -> Result<()> {
    if k + 1 > n as usize {
        return Err(Error::InvalidParams(format!("k={k} needs at least {} parties, have {n}", k + 1)));
    }
    Ok(())
}

/// Uniform `k`-subset of `{1..n} \ {owner}`.
pub fn select_guardians_er<R: Rng + ?Sized>(n: u32, k: usize, owner: PartyIndex, rng: &mut R) -> Result<Vec<PartyIndex>> {
    check(n, k)?;
    let mut out: Vec<PartyIndex> = index::sample(rng, n as usize - 1, k)
        .into_iter()
        .map(|i| {
            // skip over the owner
            let p = i as PartyIndex + 1;
            if p >= owner {
                p + 1
            } else {
                p
            }
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Owners in index order each pick `k` distinct guardians, weighting
/// candidate `g` by `1 + (times g was picked by earlier owners)`.
pub fn select_guardians_ba<R: Rng + ?Sized>(n: u32, k: usize, rng: &mut R) -> Result<GuardianMap> {
    check(n, k)?;
    let mut indeg = vec![0u32; n as usize + 1];
    let mut out = GuardianMap::new();
    for owner in 1..=n {
        let candidates: Vec<PartyIndex> = (1..=n).filter(|&g| g != owner).collect();
        let picked = index::sample_weighted(rng, candidates.len(), |i| 1.0 + f64::from(indeg[candidates[i] as usize]), k)
            .map_err(|e| Error::InvalidParams(e.to_string()))?;
        let set: std::collections::BTreeSet<_> = picked.into_iter().map(|i| candidates[i]).collect();
        for &g in &set {
            indeg[g as usize] += 1;
        }
        out.insert(owner, set);
    }
    Ok(out)
}

/// In-degree of each party `1..=n`, at position `party - 1`.
pub fn in_degrees(guardians: &GuardianMap, n: u32) -> Vec<u32> {
    let mut deg = vec![0u32; n as usize];
    for set in guardians.values() {
        for &g in set {
            deg[g as usize - 1] += 1;
        }
    }
    deg
}

/// Max over median in-degree.
pub fn skew_ratio(guardians: &GuardianMap, n: u32) -> f64 {
    let mut deg = in_degrees(guardians, n);
    deg.sort_unstable();
    let mid = deg.len() / 2;
    let median = if deg.len() & 1 == 0 {
        (f64::from(deg[mid - 1]) + f64::from(deg[mid])) / 2.0
    } else {
        f64::from(deg[mid])
    };
    f64::from(*deg.last().unwrap_or(&0)) / median.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn er_forced_and_never_self() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(select_guardians_er(3, 2, 1, &mut rng).unwrap(), vec![2, 3]);
        }
        for _ in 0..2000 {
            let owner = rng.gen_range(1..=10);
            let g = select_guardians_er(10, 3, owner, &mut rng).unwrap();
            assert!(!g.contains(&owner));
            assert_eq!(g.len(), 3);
            assert!(g.iter().all(|&x| (1..=10).contains(&x)));
        }
        assert!(select_guardians_er(3, 3, 1, &mut rng).is_err());
    }

    #[test]
    fn er_marginals_are_uniform() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let draws = 10_000;
        let mut counts = [0u32; 11];
        for _ in 0..draws {
            for g in select_guardians_er(10, 3, 4, &mut rng).unwrap() {
                counts[g as usize] += 1;
            }
        }
        let p = 3.0 / 9.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for g in (1..=10).filter(|&g| g != 4) {
            let dev = (f64::from(counts[g]) - draws as f64 * p).abs();
            assert!(dev <= 3.0 * sigma, "party {g}: {} vs {}", counts[g], draws as f64 * p);
        }
        assert_eq!(counts[4], 0);
    }

    #[test]
    fn ba_small_is_forced() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let g = select_guardians_ba(3, 2, &mut rng).unwrap();
        assert_eq!(g[&1], [2, 3].into_iter().collect());
        assert_eq!(g[&2], [1, 3].into_iter().collect());
        assert_eq!(g[&3], [1, 2].into_iter().collect());
    }

    #[test]
    fn ba_weights_follow_in_degree() {
        // n=4, k=1: owner 1 picks g; owner 2 then sees weight 2 on g (if g != 2)
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let (mut hits, mut trials) = (0u32, 0u32);
        for _ in 0..20_000 {
            let g = select_guardians_ba(4, 1, &mut rng).unwrap();
            let first = *g[&1].iter().next().unwrap();
            if first == 2 {
                continue;
            }
            trials += 1;
            if g[&2].contains(&first) {
                hits += 1;
            }
        }
        let p = 2.0 / 4.0;
        let sigma = (f64::from(trials) * p * (1.0 - p)).sqrt();
        assert!((f64::from(hits) - f64::from(trials) * p).abs() <= 3.0 * sigma, "{hits}/{trials}");
    }

    #[test]
    fn skew_of_regular_graph_is_one() {
        let ring: GuardianMap = (1..=5u32).map(|i| (i, [i % 5 + 1].into_iter().collect())).collect();
        assert_eq!(in_degrees(&ring, 5), vec![1; 5]);
        assert_eq!(skew_ratio(&ring, 5), 1.0);
    }
}
