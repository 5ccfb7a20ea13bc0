//! Run configuration, read from a versioned JSON file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraConfig>,
    /// A dimension sequence given directly instead of an algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceConfig>,
    #[serde(default = "ModuleConfig::trivial")]
    pub m: ModuleConfig,
    #[serde(default = "ModuleConfig::trivial")]
    pub n: ModuleConfig,
    /// Required with an algebra; defaults to the last index of a sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Defaults to Ext-ring generators through degree `min(6, n_max - 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acting: Option<ActingConfig>,
    #[serde(default = "default_guard")]
    pub guard: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// First index of the holdout window; defaults to `3 n_max / 4`.
    #[serde(default)]
    pub holdout_from: Option<usize>,
    /// Search for an injective operator combination when operators exist.
    #[serde(default = "default_true")]
    pub regular_element: bool,
    #[serde(default)]
    pub limits: LimitsConfig,
}

fn default_guard() -> usize {
    ext_vanishing::hilbert::DEFAULT_GUARD
}

fn default_seed() -> u64 {
    ext_vanishing::vanishing::DEFAULT_SEED
}

fn default_trials() -> u64 {
    ext_vanishing::vanishing::DEFAULT_TRIALS
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldConfig {
    Prime(u64),
    Rationals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraConfig {
    TruncPoly { vars: usize, exponent: usize },
    Exterior { vars: usize },
    QuantumCi { vars: usize, exponent: usize, q: i64 },
    KleinFour,
    Cyclic { order: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    /// CSV with a header row of element labels, then one row of product
    /// indices per element.
    GroupTable(PathBuf),
    /// JSON file, see [`StructureConstantsFile`].
    StructureConstants(PathBuf),
}

impl AlgebraConfig {
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraConfig::TruncPoly { .. } => "trunc-poly",
            AlgebraConfig::Exterior { .. } => "exterior",
            AlgebraConfig::QuantumCi { .. } => "quantum-ci",
            AlgebraConfig::KleinFour => "klein-four",
            AlgebraConfig::Cyclic { .. } => "cyclic",
            AlgebraConfig::Dihedral { .. } => "dihedral",
            AlgebraConfig::Symmetric { .. } => "symmetric",
            AlgebraConfig::GroupTable(_) => "group-table",
            AlgebraConfig::StructureConstants(_) => "structure-constants",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantsFile {
    pub labels: Vec<String>,
    #[serde(default)]
    pub unit: usize,
    /// `products[i][j]` is the coordinate vector of `b_i b_j`.
    pub products: Vec<Vec<Vec<Scalar>>>,
}

/// An integer or a rational written as `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SequenceConfig {
    /// Terms for `n = 0, 1, ...`.
    Terms(Vec<u64>),
    /// CSV with header `n,dim`, as written by `extvan ext`.
    Csv(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModuleConfig {
    Trivial,
    Regular,
    Syzygy(usize),
}

impl ModuleConfig {
    fn trivial() -> Self {
        ModuleConfig::Trivial
    }

    pub fn describe(&self) -> String {
        match self {
            ModuleConfig::Trivial => "trivial".into(),
            ModuleConfig::Regular => "regular".into(),
            ModuleConfig::Syzygy(i) => format!("syzygy({i})"),
        }
    }
}

/// The ring acting on Ext.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActingConfig {
    /// Generators of `Ext(k, k)` computed through this degree.
    ExtGenerators(usize),
    /// One degree-2 operator per variable of a complete-intersection preset.
    DegreeTwo,
    Degrees(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    #[serde(default = "default_max_algebra_dim")]
    pub max_algebra_dim: usize,
    #[serde(default = "default_max_free_dim")]
    pub max_free_dim: usize,
}

fn default_max_algebra_dim() -> usize {
    ext_vanishing::algebra::Limits::default().max_algebra_dim
}

fn default_max_free_dim() -> usize {
    ext_vanishing::algebra::Limits::default().max_free_dim
}

impl Default for LimitsConfig {
    fn default() -> Self {
        LimitsConfig {
            max_algebra_dim: default_max_algebra_dim(),
            max_free_dim: default_max_free_dim(),
        }
    }
}

impl From<LimitsConfig> for ext_vanishing::algebra::Limits {
    fn from(l: LimitsConfig) -> Self {
        ext_vanishing::algebra::Limits {
            max_algebra_dim: l.max_algebra_dim,
            max_free_dim: l.max_free_dim,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config(format!("at `{path}`: {}", e.into_inner()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config; relative data paths are resolved against its directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        match &mut cfg.algebra {
            Some(AlgebraConfig::GroupTable(path) | AlgebraConfig::StructureConstants(path)) if path.is_relative() => {
                *path = base.join(&*path);
            }
            _ => {}
        }
        if let Some(SequenceConfig::Csv(path)) = &mut cfg.sequence {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |key: &str, msg: String| Err(CliError::Config(format!("at `{key}`: {msg}")));
        if self.schema != SCHEMA_VERSION {
            return bad("schema", format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema));
        }
        if let Some(FieldConfig::Prime(p)) = self.field {
            if ext_vanishing::exactmath::PrimeField::new(p).is_err() {
                return bad("field.prime", format!("{p} is not a prime below 2^32"));
            }
        }
        match (&self.algebra, &self.sequence) {
            (Some(_), Some(_)) => return bad("sequence", "give either `algebra` or `sequence`, not both".into()),
            (None, None) => return bad("algebra", "missing; give `algebra` or `sequence`".into()),
            (Some(_), None) => {
                if self.field.is_none() {
                    return bad("field", "required with an algebra".into());
                }
                if self.n_max.is_none() {
                    return bad("n_max", "required with an algebra".into());
                }
            }
            (None, Some(seq)) => {
                if let SequenceConfig::Terms(t) = seq {
                    if t.is_empty() {
                        return bad("sequence.terms", "must not be empty".into());
                    }
                    if let Some(n) = self.n_max {
                        if n >= t.len() {
                            return bad("n_max", format!("exceeds the last index {} of the sequence", t.len() - 1));
                        }
                    }
                }
            }
        }
        if let Some(alg) = &self.algebra {
            self.validate_algebra(alg)?;
        }
        for (key, m) in [("m", self.m), ("n", self.n)] {
            if m == ModuleConfig::Syzygy(0) {
                return bad(key, "syzygy index must be at least 1".into());
            }
        }
        if self.guard < ext_vanishing::hilbert::MIN_GUARD {
            return bad("guard", format!("must be at least {}", ext_vanishing::hilbert::MIN_GUARD));
        }
        if self.n_max == Some(0) {
            return bad("n_max", "must be at least 1".into());
        }
        if let (Some(h), Some(n)) = (self.holdout_from, self.n_max) {
            if h == 0 || h > n {
                return bad("holdout_from", format!("must lie in [1, n_max = {n}]"));
            }
        }
        Ok(())
    }

    /// The acting ring, with the default filled in.
    pub fn acting(&self) -> ActingConfig {
        self.acting
            .clone()
            .unwrap_or(ActingConfig::ExtGenerators(self.n_max.unwrap_or(2).saturating_sub(1).clamp(1, 6)))
    }

    /// Checks that only matter for `analyze`.
    pub fn validate_acting(&self) -> Result<(), CliError> {
        let bad = |key: &str, msg: String| Err(CliError::Config(format!("at `{key}`: {msg}")));
        if self.sequence.is_some() && !matches!(self.acting, Some(ActingConfig::Degrees(_))) {
            return bad("acting", "a sequence needs an explicit `degrees` list".into());
        }
        match &self.acting() {
            ActingConfig::ExtGenerators(d) if *d == 0 || Some(*d) >= self.n_max => {
                return bad(
                    "acting.ext-generators",
                    format!("must be between 1 and n_max - 1 = {}", self.n_max.unwrap_or(1) - 1),
                );
            }
            ActingConfig::Degrees(d) if d.is_empty() || d.contains(&0) => {
                return bad("acting.degrees", "must be a nonempty list of positive degrees".into());
            }
            ActingConfig::DegreeTwo
                if !matches!(
                    self.algebra,
                    Some(AlgebraConfig::TruncPoly { .. } | AlgebraConfig::Exterior { .. } | AlgebraConfig::QuantumCi { .. })
                ) =>
            {
                let name = self.algebra.as_ref().map_or("a sequence", AlgebraConfig::name);
                return bad(
                    "acting",
                    format!("degree-two operators need a complete-intersection preset, not {name}"),
                );
            }
            _ => {}
        }
        Ok(())
    }

    fn validate_algebra(&self, alg: &AlgebraConfig) -> Result<(), CliError> {
        let bad = |key: &str, msg: &str| Err(CliError::Config(format!("at `{key}`: {msg}")));
        match alg {
            AlgebraConfig::TruncPoly { vars, exponent } | AlgebraConfig::QuantumCi { vars, exponent, .. } => {
                if *vars == 0 {
                    return bad(&format!("algebra.{}.vars", alg.name()), "must be at least 1");
                }
                if *exponent < 2 {
                    return bad(&format!("algebra.{}.exponent", alg.name()), "must be at least 2");
                }
            }
            AlgebraConfig::Exterior { vars } if *vars == 0 => return bad("algebra.exterior.vars", "must be at least 1"),
            AlgebraConfig::Cyclic { order } if *order == 0 => return bad("algebra.cyclic.order", "must be at least 1"),
            AlgebraConfig::Dihedral { n } if *n < 2 => return bad("algebra.dihedral.n", "must be at least 2"),
            AlgebraConfig::Symmetric { n } if *n == 0 || *n > 5 => {
                return bad("algebra.symmetric.n", "must be between 1 and 5");
            }
            _ => {}
        }
        Ok(())
    }

    /// Start of the holdout window for data on `[start, n_max]`; defaults
    /// to `start + ceil(3 (n_max - start) / 4)`.
    pub fn holdout_start(&self, start: usize, n_max: usize) -> usize {
        self.holdout_from
            .unwrap_or(start + (3 * n_max.saturating_sub(start)).div_ceil(4).max(1))
    }
}
