//! JSON scenario configuration: schema, validation, and conversion into the
//! library's dealer inputs.
//!
//! The file format is versioned (`schema_version: 1`) and strict — unknown
//! fields are rejected so typos surface as parse errors. Matrix and vector
//! entries may be negative; they wrap into canonical residues mod the
//! configured field order at load time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use qmss_core::access_msp::{AccessStructure, MspInstance, ParticipantId};
use qmss_core::blackbox::ShadowPair;
use qmss_core::finite_field::{FieldMatrix, FieldVector, Modulus};
use qmss_core::protocol::{Behavior, DealerConfig};

/// The schema revision this build reads.
pub const SCHEMA_VERSION: u32 = 1;

/// A scenario as written in JSON.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    /// Prime field order.
    pub modulus: u64,
    /// Row-major share matrix; row k belongs to participant P_{k+1}.
    pub matrix: Vec<Vec<i64>>,
    /// One target vector per secret; omitted means unit vectors e_1..e_n.
    #[serde(default)]
    pub targets: Option<Vec<Vec<i64>>>,
    /// Minimal authorized sets per secret, as 1-based participant indices.
    pub access_structures: Vec<Vec<Vec<usize>>>,
    pub secrets: Vec<i64>,
    /// Pins the free coefficients of the distribution vector.
    #[serde(default)]
    pub rho_tail: Option<Vec<i64>>,
    /// Pins the verifier's invertible hiding matrix (order 2m).
    #[serde(default)]
    pub hiding_matrix: Option<Vec<Vec<i64>>>,
    /// The recovering coalition, 1-based participant indices.
    pub authorized: Vec<usize>,
    /// 1-based index of the secret the coalition recovers.
    pub target_secret: usize,
    /// Scripted misbehavior, keyed by participant number.
    #[serde(default)]
    pub behaviors: BTreeMap<usize, BehaviorConfig>,
    pub seed: u64,
}

/// One participant's scripted role.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BehaviorConfig {
    Honest,
    /// Submit these vectors to the verifier instead of the issued pair.
    ForgeShadows { first: Vec<i64>, second: Vec<i64> },
    /// Recover with a share offset by `delta` (1..=d-1).
    ForgePauli { delta: u64 },
}

/// A config converted into ready-to-run library inputs.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub dealer: DealerConfig,
    pub target_secret: usize,
    pub authorized: BTreeSet<ParticipantId>,
    pub behaviors: BTreeMap<ParticipantId, Behavior>,
}

/// Why a config could not be loaded or converted.
#[derive(Debug)]
pub enum ConfigError {
    Io(String),
    /// JSON syntax or schema mismatch; serde's message carries line/column.
    Parse(String),
    Semantic(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(msg) => write!(f, "{msg}"),
            ConfigError::Parse(msg) => write!(f, "{msg}"),
            ConfigError::Semantic(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn semantic<T>(msg: String) -> Result<T, ConfigError> {
    Err(ConfigError::Semantic(msg))
}

/// Reads and parses a config file; errors carry the path and, for JSON
/// problems, the offending line and column.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError::Parse(format!("{}: {e}", path.display())))
}

fn signed_matrix(
    d: Modulus,
    rows: &[Vec<i64>],
    what: &str,
) -> Result<FieldMatrix, ConfigError> {
    if rows.is_empty() || rows[0].is_empty() {
        return semantic(format!("{what} must be non-empty"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return semantic(format!("{what} must be rectangular"));
    }
    let entries: Vec<u64> = rows
        .iter()
        .flatten()
        .map(|&x| d.reduce_signed(x))
        .collect();
    FieldMatrix::new(d, rows.len(), cols, entries)
        .map_err(|e| ConfigError::Semantic(format!("{what}: {e}")))
}

impl ScenarioConfig {
    /// Validates the schema and converts everything into library types.
    pub fn into_scenario(self) -> Result<LoadedScenario, ConfigError> {
        if self.schema_version != SCHEMA_VERSION {
            return semantic(format!(
                "unsupported schema_version {} (this build reads {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let d = Modulus::new(self.modulus)
            .map_err(|e| ConfigError::Semantic(format!("modulus: {e}")))?;
        let matrix = signed_matrix(d, &self.matrix, "matrix")?;
        let m = matrix.rows();
        let owners = (1..=m)
            .map(ParticipantId::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ConfigError::Semantic(e.to_string()))?;

        let secret_count = self.secrets.len();
        if self.access_structures.len() != secret_count {
            return semantic(format!(
                "expected one access structure per secret ({secret_count}), got {}",
                self.access_structures.len()
            ));
        }
        let mut structures = Vec::with_capacity(secret_count);
        for (i, minimal_sets) in self.access_structures.iter().enumerate() {
            let mut sets = Vec::with_capacity(minimal_sets.len());
            for indices in minimal_sets {
                let set = to_coalition(indices).map_err(|e| {
                    ConfigError::Semantic(format!("access structure {}: {e}", i + 1))
                })?;
                sets.push(set);
            }
            let structure = AccessStructure::from_minimal_sets(sets).map_err(|e| {
                ConfigError::Semantic(format!("access structure {}: {e}", i + 1))
            })?;
            if structure.max_participant() > m {
                return semantic(format!(
                    "access structure {} names a participant beyond the {m} matrix rows",
                    i + 1
                ));
            }
            structures.push(structure);
        }

        let msp = match &self.targets {
            None => MspInstance::with_unit_targets(matrix, owners, secret_count, structures),
            Some(rows) => {
                let targets = rows
                    .iter()
                    .map(|r| FieldVector::from_signed(d, r))
                    .collect();
                MspInstance::new(matrix, owners, targets, structures)
            }
        }
        .map_err(|e| ConfigError::Semantic(format!("span program: {e}")))?;

        let secrets: Vec<u64> = self.secrets.iter().map(|&s| d.reduce_signed(s)).collect();
        let rho_tail_override = self
            .rho_tail
            .as_ref()
            .map(|tail| tail.iter().map(|&x| d.reduce_signed(x)).collect());
        let y_override = self
            .hiding_matrix
            .as_ref()
            .map(|rows| signed_matrix(d, rows, "hiding_matrix"))
            .transpose()?;

        let authorized = to_coalition(&self.authorized)
            .map_err(|e| ConfigError::Semantic(format!("authorized: {e}")))?;
        let mut behaviors = BTreeMap::new();
        for (&index, behavior) in &self.behaviors {
            let participant = ParticipantId::new(index)
                .map_err(|e| ConfigError::Semantic(format!("behaviors: {e}")))?;
            let converted = match behavior {
                BehaviorConfig::Honest => Behavior::Honest,
                BehaviorConfig::ForgeShadows { first, second } => {
                    Behavior::ForgeShadows(ShadowPair::new(
                        FieldVector::from_signed(d, first),
                        FieldVector::from_signed(d, second),
                    ))
                }
                BehaviorConfig::ForgePauli { delta } => Behavior::ForgePauli(*delta),
            };
            behaviors.insert(participant, converted);
        }

        Ok(LoadedScenario {
            dealer: DealerConfig {
                msp,
                secrets,
                rho_tail_override,
                y_override,
                seed: self.seed,
            },
            target_secret: self.target_secret,
            authorized,
            behaviors,
        })
    }
}

fn to_coalition(indices: &[usize]) -> Result<BTreeSet<ParticipantId>, String> {
    let mut set = BTreeSet::new();
    for &index in indices {
        let participant = ParticipantId::new(index).map_err(|e| e.to_string())?;
        if !set.insert(participant) {
            return Err(format!("participant P{index} listed twice"));
        }
    }
    if set.is_empty() {
        return Err("a participant set cannot be empty".to_string());
    }
    Ok(set)
}
