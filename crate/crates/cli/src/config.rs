//! Scenario files and their merge with command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use fdkg::network::{Behavior, BehaviorSpec};
use fdkg::simulator::{BaScope, Topology};
use fdkg::PartyIndex;

use crate::CliError;

/// Everything a scenario file may carry. Each subcommand reads its own sections.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub group: Option<GroupName>,
    pub params: Option<ParamsSection>,
    #[serde(default)]
    pub guardians: BTreeMap<String, Vec<PartyIndex>>,
    #[serde(default)]
    pub behavior: BTreeMap<String, BehaviorValue>,
    pub election: Option<ElectionSection>,
    pub sweep: Option<SweepSection>,
    pub scenario: Option<ScenarioSection>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GroupName {
    #[default]
    Babyjub,
    Test61,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub n: Option<u32>,
    pub t: Option<usize>,
    pub k: Option<usize>,
}

/// `"offline"` or `{ withhold = [1, 4] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BehaviorValue {
    Name(String),
    Withhold { withhold: Vec<PartyIndex> },
}

impl BehaviorValue {
    pub fn to_behavior(&self) -> Result<Behavior, CliError> {
        Ok(match self {
            BehaviorValue::Withhold { withhold } => Behavior::WithholdShares(withhold.iter().copied().collect()),
            BehaviorValue::Name(name) => match name.as_str() {
                "honest" => Behavior::Honest,
                "absent-round1" => Behavior::AbsentRound1,
                "absent-round2" => Behavior::AbsentRound2,
                "offline" => Behavior::Offline,
                "malform-deal" => Behavior::MalformDeal,
                "byzantine-silent" => Behavior::ByzantineSilent,
                other => return Err(CliError::Config(format!("unknown behavior `{other}`"))),
            },
        })
    }
}

pub fn parse_party(key: &str) -> Result<PartyIndex, CliError> {
    key.trim().parse().map_err(|_| CliError::Config(format!("`{key}` is not a party index")))
}

pub fn behaviors(raw: &BTreeMap<String, BehaviorValue>) -> Result<BehaviorSpec, CliError> {
    raw.iter().map(|(k, v)| Ok((parse_party(k)?, v.to_behavior()?))).collect()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectionSection {
    pub candidates: Option<u32>,
    pub n_bound: Option<u64>,
    pub votes: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub n: Option<Vec<u32>>,
    pub p: Option<Vec<f64>>,
    pub r: Option<Vec<f64>>,
    pub k: Option<Vec<usize>>,
    pub t: Option<Vec<usize>>,
    pub t_ratio: Option<Vec<f64>>,
    pub trials: Option<u32>,
    pub topology: Option<String>,
    pub ba_scope: Option<String>,
}

pub fn parse_topology(s: &str) -> Result<Topology, CliError> {
    s.parse().map_err(|_| CliError::Config(format!("unknown topology `{s}`, expected ER or BA")))
}

pub fn parse_ba_scope(s: &str) -> Result<BaScope, CliError> {
    match s {
        "per-trial" => Ok(BaScope::PerTrial),
        "per-cell" => Ok(BaScope::PerCell),
        other => Err(CliError::Config(format!("unknown ba_scope `{other}`, expected per-trial or per-cell"))),
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub n: Option<u64>,
    pub dealers: Option<u64>,
    pub k: Option<u64>,
    pub voters: Option<u64>,
    pub direct_revealers: Option<u64>,
    pub shares_revealed: Option<u64>,
}

/// Renders a resolved config for the audit echo.
pub fn render<T: Serialize>(value: &T) -> String {
    toml::to_string(value).unwrap_or_else(|e| format!("# unrenderable config: {e}\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_sections() {
        let text = r#"
            seed = 3
            group = "test61"
            [params]
            n = 4
            t = 1
            k = 2
            [guardians]
            1 = [2, 3]
            [behavior]
            2 = "offline"
            3 = { withhold = [1] }
            [election]
            candidates = 2
            votes = [1, 2]
        "#;
        let cfg: FileConfig = toml::from_str(text).unwrap();
        assert_eq!(cfg.group, Some(GroupName::Test61));
        assert_eq!(cfg.guardians["1"], vec![2, 3]);
        let b = behaviors(&cfg.behavior).unwrap();
        assert_eq!(b[&2], Behavior::Offline);
        assert_eq!(b[&3], Behavior::WithholdShares([1].into_iter().collect()));
    }

    #[test]
    fn rejects_unknown_keys_and_behaviors() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
        let cfg: FileConfig = toml::from_str("[behavior]\n1 = \"sleepy\"").unwrap();
        assert!(behaviors(&cfg.behavior).is_err());
    }
}
