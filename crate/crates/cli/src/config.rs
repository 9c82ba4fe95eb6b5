//! Run configuration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed configuration: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("undefined {kind} `{name}`")]
    Undefined { kind: &'static str, name: String },
    #[error("{context}: {source}")]
    Invalid {
        context: String,
        source: rswan_core::Error,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default = "one_u32")]
    pub s: u32,
    pub variables: Vec<String>,
    #[serde(default = "default_precision")]
    pub precision: i64,
}

fn one() -> usize {
    1
}

fn one_u32() -> u32 {
    1
}

fn default_precision() -> i64 {
    rswan_core::algebra::series::DEFAULT_PRECISION
}

/// Components in print order, on the main tower or on a named one.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CharacterSpec {
    Components(Vec<String>),
    On { tower: String, components: Vec<String> },
}

impl CharacterSpec {
    pub fn tower(&self) -> Option<&str> {
        match self {
            CharacterSpec::Components(_) => None,
            CharacterSpec::On { tower, .. } => Some(tower),
        }
    }

    pub fn components(&self) -> &[String] {
        match self {
            CharacterSpec::Components(c) => c,
            CharacterSpec::On { components, .. } => components,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    /// Source tower name; the main tower when absent.
    #[serde(default)]
    pub source: Option<String>,
    pub target: String,
    /// Source variable -> literal over the target.
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Swan {
        character: String,
    },
    Rsw {
        character: String,
    },
    Duality {
        #[serde(default)]
        tower: Option<String>,
        n: i64,
        m: i64,
        /// Degree of the left factor; `depth - 1` when absent.
        #[serde(default)]
        degree: Option<usize>,
    },
    Reciprocity {
        character: String,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    ConductorChange {
        character: String,
        extension: String,
    },
    #[serde(rename = "thmB")]
    ThmB {
        character: String,
        /// Parameters of the canned family `u -> v^p + w, t -> w^t`.
        #[serde(default)]
        family: Vec<i64>,
        /// Explicit extensions, used when `family` is empty.
        #[serde(default)]
        extensions: Vec<String>,
    },
    #[serde(rename = "thmC")]
    ThmC {
        /// Tower with variables `(x, t)`; the main tower when absent.
        #[serde(default)]
        tower: Option<String>,
        f: String,
        #[serde(default)]
        x0: u32,
        e: Vec<i64>,
    },
    ExpCongruences {
        p: u32,
        #[serde(default)]
        degree: Option<usize>,
    },
}

fn default_samples() -> usize {
    20
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Swan { .. } => "swan",
            Task::Rsw { .. } => "rsw",
            Task::Duality { .. } => "duality",
            Task::Reciprocity { .. } => "reciprocity",
            Task::ConductorChange { .. } => "conductor-change",
            Task::ThmB { .. } => "thmB",
            Task::ThmC { .. } => "thmC",
            Task::ExpCongruences { .. } => "exp-congruences",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub tower: TowerSpec,
    #[serde(default)]
    pub towers: BTreeMap<String, TowerSpec>,
    #[serde(default)]
    pub characters: BTreeMap<String, CharacterSpec>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub tasks: Vec<Task>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        if cfg.version != SCHEMA_VERSION {
            return Err(ConfigError::Version(cfg.version));
        }
        Ok(cfg)
    }

    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}
