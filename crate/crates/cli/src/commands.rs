use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use fdkg::algebra::{BabyJub, Group, GroupElement, TestGroup};
use fdkg::costmodel::{estimate, measured, CostBreakdown, ScenarioSpec};
use fdkg::fdkg::{GuardianSet, Params, Recovery};
use fdkg::network::{child_rng, run_ceremony, BehaviorSpec, KeyRing, Transcript};
use fdkg::simulator::{run_sweep, select_guardians_er, write_csv, SweepConfig, ThresholdRule};
use fdkg::voting::{derive_encoding, run_election};
use fdkg::PartyIndex;

use crate::config::{
    behaviors, parse_ba_scope, parse_party, parse_topology, render, BehaviorValue, ElectionSection, FileConfig, GroupName,
    ParamsSection, ScenarioSection, SweepSection,
};
use crate::{CliError, CostArgs, ElectionArgs, KeygenArgs, SimulateArgs};

/// Child-rng stream for guardian sets the scenario leaves open.
const GUARDIAN_STREAM: u8 = 0xf0;

fn config_err(e: fdkg::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| io_err(&path, e))
}

fn echo_config(text: &str) {
    eprintln!("# resolved config");
    eprint!("{text}");
    eprintln!("# end config");
}

fn join(items: impl IntoIterator<Item = PartyIndex>) -> String {
    let s: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    if s.is_empty() {
        "-".into()
    } else {
        s.join(",")
    }
}

#[derive(Debug, Serialize)]
struct ResolvedKeygen {
    seed: u64,
    group: GroupName,
    params: ParamsSection,
    guardians: BTreeMap<String, Vec<PartyIndex>>,
    behavior: BTreeMap<String, BehaviorValue>,
}

struct Keygen {
    resolved: ResolvedKeygen,
    params: Params,
    guardians: BTreeMap<PartyIndex, GuardianSet>,
    behaviors: BehaviorSpec,
}

fn resolve_keygen(args: &KeygenArgs, file: &FileConfig) -> Result<Keygen, CliError> {
    let seed = args.common.seed.or(file.seed).unwrap_or(0);
    let group = args.group.or(file.group).unwrap_or_default();
    let fp = file.params.unwrap_or_default();
    let n = args.n.or(fp.n).unwrap_or(10);
    let t = args.t.or(fp.t).unwrap_or(2);
    let k = args.k.or(fp.k).unwrap_or(3);
    let params = Params::new(n, t, k).map_err(config_err)?;

    let mut listed = BTreeMap::new();
    for (owner, members) in &file.guardians {
        listed.insert(parse_party(owner)?, members.clone());
    }
    let mut guardians = BTreeMap::new();
    let mut shown = BTreeMap::new();
    for owner in params.parties() {
        let members = match listed.remove(&owner) {
            Some(m) => m,
            None => select_guardians_er(n, k, owner, &mut child_rng(seed, owner, GUARDIAN_STREAM)).map_err(config_err)?,
        };
        guardians.insert(owner, GuardianSet::new(owner, members.iter().copied(), &params).map_err(config_err)?);
        shown.insert(owner.to_string(), members);
    }
    if let Some(owner) = listed.keys().next() {
        return Err(CliError::Config(format!("guardian set given for party {owner} outside 1..={n}")));
    }
    let behaviors = behaviors(&file.behavior)?;
    if let Some(p) = behaviors.keys().find(|p| !params.contains(**p)) {
        return Err(CliError::Config(format!("behavior given for party {p} outside 1..={n}")));
    }
    Ok(Keygen {
        resolved: ResolvedKeygen {
            seed,
            group,
            params: ParamsSection { n: Some(n), t: Some(t), k: Some(k) },
            guardians: shown,
            behavior: file.behavior.clone(),
        },
        params,
        guardians,
        behaviors,
    })
}

fn recovery_lines<'a>(out: &mut String, recovered: impl IntoIterator<Item = (&'a PartyIndex, &'a Recovery)>) {
    for (dealer, how) in recovered {
        match how {
            Recovery::Direct => writeln!(out, "  dealer {dealer}: direct"),
            Recovery::ViaGuardians(set) => writeln!(out, "  dealer {dealer}: guardians {}", join(set.iter().copied())),
        }
        .expect("string write");
    }
}

pub fn ceremony(args: &KeygenArgs) -> Result<bool, CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let kg = resolve_keygen(args, &file)?;
    let rendered = render(&kg.resolved);
    echo_config(&rendered);
    let (ok, summary, transcript) = match kg.resolved.group {
        GroupName::Babyjub => ceremony_in::<BabyJub>(&kg)?,
        GroupName::Test61 => ceremony_in::<TestGroup>(&kg)?,
    };
    print!("{summary}");
    if let Some(dir) = &args.common.out {
        write_file(dir, "config.toml", rendered.as_bytes())?;
        write_file(dir, "summary.txt", summary.as_bytes())?;
        write_file(dir, "transcript.txt", transcript.to_text().as_bytes())?;
    }
    Ok(ok)
}

fn ceremony_in<G: Group>(kg: &Keygen) -> Result<(bool, String, Transcript), CliError> {
    let seed = kg.resolved.seed;
    let keys = KeyRing::<G>::generate(kg.params.n, seed);
    let res = run_ceremony(&kg.params, &kg.guardians, &kg.behaviors, &keys, seed)?;
    let mut s = String::new();
    let _ = writeln!(s, "participants: {}", join(res.state.participants.iter().copied()));
    let _ = writeln!(s, "rejected: {}", join(res.state.rejected.iter().map(|(d, _)| *d)));
    let _ = writeln!(s, "board-digest: {}", hex::encode(res.board.digest()));
    let ok = match &res.outcome {
        Err(e) => {
            let _ = writeln!(s, "status: error\nerror: {e}");
            false
        }
        Ok(o) => {
            let _ = writeln!(s, "disqualified: {}", join(o.disqualified.iter().copied()));
            if let Some(pk) = &o.global_pk {
                let _ = writeln!(s, "global-pk: {}", hex::encode(pk.to_bytes()));
            }
            let _ = writeln!(s, "recovery:");
            recovery_lines(&mut s, &o.recovered);
            if o.is_success() {
                let _ = writeln!(s, "status: success");
            } else {
                let _ = writeln!(s, "unrecoverable: {}", join(o.unrecoverable.iter().copied()));
                let _ = writeln!(s, "status: failure");
                eprintln!("error: reconstruction failed for dealers {}", join(o.unrecoverable.iter().copied()));
            }
            o.is_success()
        }
    };
    Ok((ok, s, res.transcript))
}

#[derive(Debug, Serialize)]
struct ResolvedElection {
    #[serde(flatten)]
    keygen: ResolvedKeygen,
    election: ElectionSection,
}

pub fn election(args: &ElectionArgs) -> Result<bool, CliError> {
    let file = FileConfig::load(args.keygen.common.config.as_deref())?;
    let kg = resolve_keygen(&args.keygen, &file)?;
    let fe = file.election.clone().unwrap_or_default();
    let candidates = args.candidates.or(fe.candidates).unwrap_or(2);
    let n_bound = args.n_bound.or(fe.n_bound).unwrap_or(u64::from(kg.params.n));
    let votes = args
        .votes
        .clone()
        .or(fe.votes)
        .ok_or_else(|| CliError::Config("no votes given; use --votes or [election] votes".into()))?;
    if let Some(v) = votes.iter().find(|&&v| v == 0 || v > candidates) {
        return Err(CliError::Config(format!("vote {v} outside 1..={candidates}")));
    }
    let election = ElectionSection { candidates: Some(candidates), n_bound: Some(n_bound), votes: Some(votes) };
    let resolved = ResolvedElection { keygen: kg.resolved, election };
    let rendered = render(&resolved);
    echo_config(&rendered);
    let kg = Keygen { resolved: resolved.keygen, ..kg };
    let election = resolved.election;
    let (ok, summary, csv, transcript) = match kg.resolved.group {
        GroupName::Babyjub => election_in::<BabyJub>(&kg, &election)?,
        GroupName::Test61 => election_in::<TestGroup>(&kg, &election)?,
    };
    print!("{summary}");
    if let Some(dir) = &args.keygen.common.out {
        write_file(dir, "config.toml", rendered.as_bytes())?;
        write_file(dir, "summary.txt", summary.as_bytes())?;
        write_file(dir, "tally.csv", csv.as_bytes())?;
        write_file(dir, "transcript.txt", transcript.to_text().as_bytes())?;
    }
    Ok(ok)
}

fn election_in<G: Group>(kg: &Keygen, e: &ElectionSection) -> Result<(bool, String, String, Transcript), CliError> {
    let seed = kg.resolved.seed;
    let (candidates, n_bound, votes) = (e.candidates.unwrap_or(2), e.n_bound.unwrap_or(1), e.votes.clone().unwrap_or_default());
    let encoding = derive_encoding::<G>(n_bound, candidates).map_err(config_err)?;
    let keys = KeyRing::<G>::generate(kg.params.n, seed);
    let res = run_election(&kg.params, &kg.guardians, &kg.behaviors, &keys, &votes, &encoding, seed)?;
    let r = &res.replay;
    let mut s = String::new();
    let _ = writeln!(s, "participants: {}", join(r.state.participants.iter().copied()));
    let _ = writeln!(s, "disqualified: {}", join(r.state.disqualified.iter().copied()));
    if let Some(agg) = &r.aggregate {
        let _ = writeln!(s, "ballots accepted: {}", agg.accepted.len());
        let _ = writeln!(s, "ballots rejected: {}", join(agg.rejected.iter().copied()));
    }
    let _ = writeln!(s, "board-digest: {}", hex::encode(res.transcript.board.digest()));
    if !r.recovered.is_empty() {
        let _ = writeln!(s, "decryption:");
        recovery_lines(&mut s, &r.recovered);
    }
    let mut csv = String::from("candidate,count\n");
    let ok = match &r.tally {
        Ok(tally) => {
            let _ = writeln!(s, "{:<10} {:>8}", "candidate", "votes");
            for (i, c) in tally.counts.iter().enumerate() {
                let _ = writeln!(s, "{:<10} {:>8}", i + 1, c);
                let _ = writeln!(csv, "{},{}", i + 1, c);
            }
            let _ = writeln!(s, "{:<10} {:>8}", "total", tally.total);
            let _ = writeln!(s, "status: success");
            true
        }
        Err(err) => {
            if let fdkg::Error::TallyFailed(dealers) = err {
                let _ = writeln!(s, "unrecoverable: {}", join(dealers.iter().copied()));
            }
            let _ = writeln!(s, "status: failure");
            eprintln!("error: {err}");
            false
        }
    };
    Ok((ok, s, csv, res.transcript))
}

fn pick<T: Clone>(flag: &Option<T>, from_file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| from_file.clone())
}

#[derive(Debug, Serialize)]
struct ResolvedSweep {
    seed: u64,
    sweep: SweepSection,
}

pub fn simulate(args: &SimulateArgs) -> Result<bool, CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let fs = file.sweep.clone().unwrap_or_default();
    let defaults = SweepConfig::default();
    let seed = args.common.seed.or(file.seed).unwrap_or(0);
    let (t, t_ratio) = if args.t.is_some() || args.t_ratio.is_some() {
        (args.t.clone(), args.t_ratio.clone())
    } else {
        (fs.t.clone(), fs.t_ratio.clone())
    };
    let t_rule = match (t, t_ratio) {
        (Some(_), Some(_)) => return Err(CliError::Config("give either t or t_ratio, not both".into())),
        (Some(t), None) => ThresholdRule::Absolute(t),
        (None, Some(r)) => ThresholdRule::RatioOfK(r),
        (None, None) => defaults.t.clone(),
    };
    let topology_name = pick(&args.topology, &fs.topology).unwrap_or_else(|| defaults.topology.to_string());
    let scope_name = pick(&args.ba_scope, &fs.ba_scope).unwrap_or_else(|| "per-trial".into());
    let config = SweepConfig {
        n: pick(&args.n, &fs.n).unwrap_or(defaults.n),
        p: pick(&args.p, &fs.p).unwrap_or(defaults.p),
        r: pick(&args.r, &fs.r).unwrap_or(defaults.r),
        k: pick(&args.k, &fs.k).unwrap_or(defaults.k),
        t: t_rule,
        trials: args.trials.or(fs.trials).unwrap_or(defaults.trials),
        topology: parse_topology(&topology_name)?,
        ba_scope: parse_ba_scope(&scope_name)?,
        seed,
    };
    let (t_abs, t_ratio) = match &config.t {
        ThresholdRule::Absolute(v) => (Some(v.clone()), None),
        ThresholdRule::RatioOfK(v) => (None, Some(v.clone())),
    };
    echo_config(&render(&ResolvedSweep {
        seed,
        sweep: SweepSection {
            n: Some(config.n.clone()),
            p: Some(config.p.clone()),
            r: Some(config.r.clone()),
            k: Some(config.k.clone()),
            t: t_abs,
            t_ratio,
            trials: Some(config.trials),
            topology: Some(config.topology.to_string()),
            ba_scope: Some(scope_name),
        },
    }));
    let report = run_sweep(&config).map_err(config_err)?;
    for reason in &report.skipped {
        eprintln!("skipped {reason}");
    }
    if report.rows.is_empty() {
        return Err(CliError::Config("no valid cell in the grid".into()));
    }
    match &args.common.out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| io_err(path, e))?;
            write_csv(&report, std::io::BufWriter::new(f)).map_err(|e| io_err(path, e))?;
        }
        None => print!("{}", report.to_csv()),
    }
    Ok(true)
}

#[derive(Debug, Serialize)]
struct ResolvedCost {
    scenario: ScenarioSection,
}

fn breakdown_text(b: &CostBreakdown, csv: bool) -> String {
    let mut s = String::new();
    if csv {
        s.push_str("kind,bytes\n");
    }
    for (label, bytes) in b.rows() {
        if csv {
            let _ = writeln!(s, "{label},{bytes}");
        } else {
            let _ = writeln!(s, "{label:<14} {bytes:>12}");
        }
    }
    s
}

pub fn cost(args: &CostArgs) -> Result<bool, CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let breakdown = if let Some(path) = &args.measured {
        let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
        let transcript = match std::str::from_utf8(&bytes) {
            Ok(text) => Transcript::from_text(text),
            Err(_) => Transcript::from_binary(&bytes),
        }
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        eprintln!("# measured from {}", path.display());
        measured(&transcript.board)
    } else {
        let fs = file.scenario.unwrap_or_default();
        let spec = ScenarioSpec {
            n: args.n.or(fs.n).unwrap_or(0),
            dealers: args.dealers.or(fs.dealers).unwrap_or(0),
            k: args.k.or(fs.k).unwrap_or(0),
            voters: args.voters.or(fs.voters).unwrap_or(0),
            direct_revealers: args.direct_revealers.or(fs.direct_revealers).unwrap_or(0),
            shares_revealed: args.shares_revealed.or(fs.shares_revealed).unwrap_or(0),
        };
        // the party count only bounds the dealers; default it to fit
        let spec = ScenarioSpec { n: spec.n.max(if args.n.or(fs.n).is_none() { spec.dealers } else { 0 }), ..spec };
        echo_config(&render(&ResolvedCost {
            scenario: ScenarioSection {
                n: Some(spec.n),
                dealers: Some(spec.dealers),
                k: Some(spec.k),
                voters: Some(spec.voters),
                direct_revealers: Some(spec.direct_revealers),
                shares_revealed: Some(spec.shares_revealed),
            },
        }));
        estimate(&spec).map_err(config_err)?
    };
    print!("{}", breakdown_text(&breakdown, args.csv));
    if let Some(path) = &args.common.out {
        std::fs::write(path, breakdown_text(&breakdown, true)).map_err(|e| io_err(path, e))?;
    }
    Ok(true)
}
