use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{self, Write};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::topology::{select_guardians_ba, select_guardians_er, Topology};
use crate::error::{Error, Result};
use crate::fdkg::{reconstruction_capable, GuardianMap};
use crate::PartyIndex;

pub const CSV_HEADER: &str = "n,p,r,k,t,topology,trials,successes,rate";

/// Whether a BA topology is redrawn every trial or shared by a whole cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaScope {
    #[default]
    PerTrial,
    PerCell,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThresholdRule {
    Absolute(Vec<usize>),
    /// `t = round(ratio * k)`, at least 1.
    RatioOfK(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n: Vec<u32>,
    pub p: Vec<f64>,
    pub r: Vec<f64>,
    pub k: Vec<usize>,
    pub t: ThresholdRule,
    pub trials: u32,
    pub topology: Topology,
    pub ba_scope: BaScope,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n: vec![100],
            p: vec![0.8],
            r: vec![0.9],
            k: vec![20],
            t: ThresholdRule::RatioOfK(vec![0.5]),
            trials: 100,
            topology: Topology::Er,
            ba_scope: BaScope::PerTrial,
            seed: 0,
        }
    }
}

/// One grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub n: u32,
    pub p: f64,
    pub r: f64,
    pub k: usize,
    pub t: usize,
    pub topology: Topology,
}

impl Cell {
    fn id(&self) -> String {
        format!("n={};p={};r={};k={};t={};topology={}", self.n, self.p, self.r, self.k, self.t, self.topology)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOutcome {
    pub cell: Cell,
    pub d_size: usize,
    pub t_size: usize,
    pub success: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuccessRate {
    pub cell: Cell,
    pub trials: u32,
    pub successes: u32,
}

impl SuccessRate {
    pub fn rate(&self) -> f64 {
        f64::from(self.successes) / f64::from(self.trials)
    }

    pub fn csv_row(&self) -> String {
        let c = &self.cell;
        format!("{},{},{},{},{},{},{},{},{:.4}", c.n, c.p, c.r, c.k, c.t, c.topology, self.trials, self.successes, self.rate())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SuccessRate>,
    /// Cells left out, with the reason.
    pub skipped: Vec<String>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.csv_row());
        }
        out
    }
}

pub fn write_csv<W: Write>(report: &SweepReport, mut out: W) -> io::Result<()> {
    out.write_all(report.to_csv().as_bytes())
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor().max(0.0) as usize
}

/// Fixed-size uniform sets: `|D| = round(p n)`, `|T| = round(r n)`, drawn independently.
pub fn sample_round_sets<R: Rng + ?Sized>(n: u32, p: f64, r: f64, rng: &mut R) -> (BTreeSet<PartyIndex>, BTreeSet<PartyIndex>) {
    let mut draw = |frac: f64| -> BTreeSet<PartyIndex> {
        let size = round_half_up(frac.clamp(0.0, 1.0) * f64::from(n)).min(n as usize);
        index::sample(rng, n as usize, size).into_iter().map(|i| i as PartyIndex + 1).collect()
    };
    let d = draw(p);
    let t = draw(r);
    (d, t)
}

/// Every dealer in `D` is present in `T` or has `t` guardians there.
pub fn trial_success(d: &BTreeSet<PartyIndex>, t_set: &BTreeSet<PartyIndex>, guardians: &GuardianMap, t: usize) -> bool {
    reconstruction_capable(t_set, d, guardians, t)
}

/// `SHA256(tag ‖ master ‖ cell-id ‖ trial)`.
pub fn trial_seed(master: u64, cell_id: &str, trial: u64) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"fdkg/v1/trial");
    h.update(master.to_be_bytes());
    h.update((cell_id.len() as u32).to_be_bytes());
    h.update(cell_id.as_bytes());
    h.update(trial.to_be_bytes());
    h.finalize().into()
}

/// Trial index reserved for the shared per-cell topology.
const CELL_TOPOLOGY: u64 = u64::MAX;

fn ba_topology(cell: &Cell, master: u64) -> GuardianMap {
    let mut rng = ChaCha20Rng::from_seed(trial_seed(master, &cell.id(), CELL_TOPOLOGY));
    select_guardians_ba(cell.n, cell.k, &mut rng).expect("cell validated")
}

fn run_trial(cell: &Cell, master: u64, trial: u64, shared: Option<&GuardianMap>) -> TrialOutcome {
    let mut rng = ChaCha20Rng::from_seed(trial_seed(master, &cell.id(), trial));
    let (d, t_set) = sample_round_sets(cell.n, cell.p, cell.r, &mut rng);
    let owned;
    let guardians = match (cell.topology, shared) {
        (Topology::Ba, Some(g)) => g,
        (Topology::Ba, None) => {
            owned = select_guardians_ba(cell.n, cell.k, &mut rng).expect("cell validated");
            &owned
        }
        (Topology::Er, _) => {
            // only dealers need guardians
            owned = d
                .iter()
                .map(|&i| {
                    let g = select_guardians_er(cell.n, cell.k, i, &mut rng).expect("cell validated");
                    (i, g.into_iter().collect())
                })
                .collect();
            &owned
        }
    };
    TrialOutcome {
        cell: *cell,
        d_size: d.len(),
        t_size: t_set.len(),
        success: trial_success(&d, &t_set, guardians, cell.t),
    }
}

impl SweepConfig {
    /// The full grid in (n, p, r, k, t) order, with invalid cells reported.
    pub fn cells(&self) -> (Vec<Cell>, Vec<String>) {
        let mut cells = Vec::new();
        let mut skipped = Vec::new();
        for &n in &self.n {
            for &p in &self.p {
                for &r in &self.r {
                    for &k in &self.k {
                        let ts: Vec<usize> = match &self.t {
                            ThresholdRule::Absolute(v) => v.clone(),
                            ThresholdRule::RatioOfK(v) => v.iter().map(|x| round_half_up(x * k as f64).max(1)).collect(),
                        };
                        for t in ts {
                            let cell = Cell { n, p, r, k, t, topology: self.topology };
                            if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&r) {
                                skipped.push(format!("{}: rates must lie in [0,1]", cell.id()));
                            } else if t == 0 || t > k || k + 1 > n as usize {
                                skipped.push(format!("{}: need 1 <= t <= k <= n-1", cell.id()));
                            } else {
                                cells.push(cell);
                            }
                        }
                    }
                }
            }
        }
        (cells, skipped)
    }
}

/// Runs every trial of every valid cell. Output order and content depend
/// only on the config.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let (cells, skipped) = config.cells();
    let shared: Vec<Option<GuardianMap>> = cells
        .par_iter()
        .map(|c| (c.topology == Topology::Ba && config.ba_scope == BaScope::PerCell).then(|| ba_topology(c, config.seed)))
        .collect();
    let rows = cells
        .par_iter()
        .zip(&shared)
        .map(|(cell, topo)| {
            let successes = (0..u64::from(config.trials))
                .into_par_iter()
                .filter(|&trial| run_trial(cell, config.seed, trial, topo.as_ref()).success)
                .count() as u32;
            SuccessRate { cell: *cell, trials: config.trials, successes }
        })
        .collect();
    Ok(SweepReport { rows, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(n: u32, p: f64, r: f64, k: usize, t: usize, trials: u32, seed: u64) -> SweepConfig {
        SweepConfig {
            n: vec![n],
            p: vec![p],
            r: vec![r],
            k: vec![k],
            t: ThresholdRule::Absolute(vec![t]),
            trials,
            seed,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn round_set_sizes() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let (d, t) = sample_round_sets(10, 1.0, 0.0, &mut rng);
        assert_eq!(d, (1..=10).collect());
        assert!(t.is_empty());
        for _ in 0..20 {
            assert_eq!(sample_round_sets(100, 0.3, 0.5, &mut rng).0.len(), 30);
        }
        // half-up rounding
        assert_eq!(sample_round_sets(3, 0.5, 0.5, &mut rng).0.len(), 2);
    }

    #[test]
    fn full_retention_always_succeeds() {
        let rep = run_sweep(&single(30, 0.7, 1.0, 5, 5, 50, 1)).unwrap();
        assert_eq!(rep.rows[0].rate(), 1.0);
    }

    #[test]
    fn sweep_is_reproducible_and_skips_bad_cells() {
        let mut cfg = single(20, 0.5, 0.6, 4, 2, 40, 7);
        cfg.k = vec![4, 25];
        cfg.topology = Topology::Ba;
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 1);
        assert_eq!(a.skipped.len(), 1);
        assert!(a.to_csv().starts_with(CSV_HEADER));
        cfg.ba_scope = BaScope::PerCell;
        assert_eq!(run_sweep(&cfg).unwrap().to_csv(), run_sweep(&cfg).unwrap().to_csv());
    }

    #[test]
    fn csv_format() {
        let row = SuccessRate {
            cell: Cell { n: 100, p: 0.8, r: 0.9, k: 20, t: 14, topology: Topology::Er },
            trials: 3,
            successes: 2,
        };
        assert_eq!(row.csv_row(), "100,0.8,0.9,20,14,ER,3,2,0.6667");
    }

    #[test]
    fn ratio_rule_rounds_half_up() {
        let cfg = SweepConfig { k: vec![5], t: ThresholdRule::RatioOfK(vec![0.1, 0.5, 1.0]), ..SweepConfig::default() };
        let ts: Vec<_> = cfg.cells().0.iter().map(|c| c.t).collect();
        assert_eq!(ts, vec![1, 3, 5]);
    }

    #[test]
    fn monotone_in_threshold_and_presence() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = 12;
            let k = 4;
            let (d, t_set) = sample_round_sets(n, 0.7, 0.5, &mut rng);
            let g: GuardianMap = d
                .iter()
                .map(|&i| (i, select_guardians_er(n, k, i, &mut rng).unwrap().into_iter().collect()))
                .collect();
            for t in 2..=k {
                if trial_success(&d, &t_set, &g, t) {
                    assert!(trial_success(&d, &t_set, &g, t - 1));
                }
            }
            let mut bigger = t_set.clone();
            bigger.insert(rng.gen_range(1..=n));
            for t in 1..=k {
                if trial_success(&d, &t_set, &g, t) {
                    assert!(trial_success(&d, &bigger, &g, t));
                }
            }
        }
    }

    #[test]
    fn matches_enumeration_at_n4() {
        // every (D, T, topology) with k <= 2 agrees with a direct check of the condition
        let subsets = |n: u32| (0u32..1 << n).map(move |m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect::<BTreeSet<u32>>());
        let n = 4;
        for k in 1..=2usize {
            let choices: Vec<Vec<BTreeSet<u32>>> =
                (1..=n).map(|i| subsets(n).filter(|s| s.len() == k && !s.contains(&i)).collect()).collect();
            for d in subsets(n) {
                for t_set in subsets(n) {
                    for combo in 0..choices[0].len().pow(n) {
                        let mut c = combo;
                        let g: GuardianMap = (1..=n)
                            .map(|i| {
                                let opts = &choices[i as usize - 1];
                                let pick = opts[c % opts.len()].clone();
                                c /= opts.len();
                                (i, pick)
                            })
                            .collect();
                        for t in 1..=k {
                            let brute = d.iter().all(|i| t_set.contains(i) || g[i].iter().filter(|j| t_set.contains(j)).count() >= t);
                            assert_eq!(trial_success(&d, &t_set, &g, t), brute);
                        }
                    }
                }
            }
        }
    }
}
