//! Schema-checked config loading on top of the kv format.
//!
//! Each subcommand declares its keys up front; unknown keys are errors, not
//! warnings, and every value is dimension-checked against the schema before
//! any computation starts. `--set key=value` overrides apply after the file
//! is parsed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gravcat::kv::{KvEntry, KvError, KvFile};
use gravcat::quantities::{parse_quantity, Dimension, Quantity};

#[derive(Debug)]
pub enum ConfigError {
    Io {
        path: PathBuf,
        message: String,
    },
    Syntax {
        message: String,
    },
    UnknownKey {
        path: PathBuf,
        key: String,
    },
    MissingRequired {
        path: PathBuf,
        key: &'static str,
    },
    BadValue {
        path: PathBuf,
        key: String,
        message: String,
    },
    DimensionMismatch {
        path: PathBuf,
        key: String,
        expected: String,
        found: String,
    },
    BadOverride {
        setting: String,
        message: String,
    },
    /// Semantic config problems (missing alternative groups etc.).
    Invalid {
        path: PathBuf,
        message: String,
    },
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Io { path, message } => {
                write!(f, "cannot read config {}: {message}", path.display())
            }
            ConfigError::Syntax { message } => write!(f, "{message}"),
            ConfigError::UnknownKey { path, key } => {
                write!(f, "{}: unknown key `{key}`", path.display())
            }
            ConfigError::MissingRequired { path, key } => {
                write!(f, "{}: missing required key `{key}`", path.display())
            }
            ConfigError::BadValue { path, key, message } => {
                write!(f, "{}: key `{key}`: {message}", path.display())
            }
            ConfigError::DimensionMismatch {
                path,
                key,
                expected,
                found,
            } => write!(
                f,
                "{}: key `{key}`: dimension mismatch, expected {expected}, found {found}",
                path.display()
            ),
            ConfigError::BadOverride { setting, message } => {
                write!(f, "--set {setting}: {message}")
            }
            ConfigError::Invalid { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<KvError> for ConfigError {
    fn from(e: KvError) -> Self {
        match e {
            KvError::Io { path, source } => ConfigError::Io {
                path,
                message: source.to_string(),
            },
            syntax => ConfigError::Syntax {
                message: syntax.to_string(),
            },
        }
    }
}

/// Expected type of a config value.
#[derive(Debug, Clone, Copy)]
pub enum ValueKind {
    /// Unit-tagged quantity of the given dimension; the name is the human
    /// label used in errors ("mass", "length", ...).
    Quantity(Dimension, &'static str),
    /// Dimensionless real.
    Number,
    /// Dimensionless non-negative integer.
    Integer,
    Text,
}

pub struct KeySpec {
    pub key: &'static str,
    pub kind: ValueKind,
    pub required: bool,
}

pub const fn required(key: &'static str, kind: ValueKind) -> KeySpec {
    KeySpec {
        key,
        kind,
        required: true,
    }
}

pub const fn optional(key: &'static str, kind: ValueKind) -> KeySpec {
    KeySpec {
        key,
        kind,
        required: false,
    }
}

#[derive(Debug, Clone)]
pub enum ConfigValue {
    Quantity(Quantity),
    Number(f64),
    Integer(i64),
    Text(String),
}

/// A fully typed, dimension-checked parameter set.
pub struct LoadedConfig {
    pub path: PathBuf,
    values: BTreeMap<String, ConfigValue>,
    pub warnings: Vec<String>,
}

impl LoadedConfig {
    pub fn quantity(&self, key: &str) -> Option<Quantity> {
        match self.values.get(key) {
            Some(ConfigValue::Quantity(q)) => Some(*q),
            _ => None,
        }
    }

    pub fn require_quantity(&self, key: &'static str) -> Result<Quantity, ConfigError> {
        self.quantity(key).ok_or(ConfigError::MissingRequired {
            path: self.path.clone(),
            key,
        })
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.values.get(key) {
            Some(ConfigValue::Number(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn integer(&self, key: &str) -> Option<i64> {
        match self.values.get(key) {
            Some(ConfigValue::Integer(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn require_integer(&self, key: &'static str) -> Result<i64, ConfigError> {
        self.integer(key).ok_or(ConfigError::MissingRequired {
            path: self.path.clone(),
            key,
        })
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.values.get(key) {
            Some(ConfigValue::Text(s)) => Some(s.as_str()),
            _ => None,
        }
    }

    pub fn invalid(&self, message: impl Into<String>) -> ConfigError {
        ConfigError::Invalid {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    /// Resolves a path value relative to the config file's directory.
    pub fn sibling_path(&self, value: &str) -> PathBuf {
        let candidate = Path::new(value);
        if candidate.is_absolute() {
            candidate.to_path_buf()
        } else {
            self.path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(candidate)
        }
    }
}

fn parse_value(
    path: &Path,
    key: &str,
    raw: &str,
    kind: ValueKind,
) -> Result<ConfigValue, ConfigError> {
    let bad = |message: String| ConfigError::BadValue {
        path: path.to_path_buf(),
        key: key.to_string(),
        message,
    };
    match kind {
        ValueKind::Text => Ok(ConfigValue::Text(raw.to_string())),
        ValueKind::Quantity(dim, label) => {
            let quantity = parse_quantity(raw).map_err(|e| bad(e.to_string()))?;
            if quantity.dim() != dim {
                return Err(ConfigError::DimensionMismatch {
                    path: path.to_path_buf(),
                    key: key.to_string(),
                    expected: format!("{label} ({dim})"),
                    found: quantity.dim().to_string(),
                });
            }
            Ok(ConfigValue::Quantity(quantity))
        }
        ValueKind::Number => {
            let quantity = parse_quantity(raw).map_err(|e| bad(e.to_string()))?;
            if !quantity.dim().is_dimensionless() {
                return Err(ConfigError::DimensionMismatch {
                    path: path.to_path_buf(),
                    key: key.to_string(),
                    expected: "dimensionless number".to_string(),
                    found: quantity.dim().to_string(),
                });
            }
            Ok(ConfigValue::Number(quantity.magnitude()))
        }
        ValueKind::Integer => {
            let quantity = parse_quantity(raw).map_err(|e| bad(e.to_string()))?;
            if !quantity.dim().is_dimensionless() {
                return Err(ConfigError::DimensionMismatch {
                    path: path.to_path_buf(),
                    key: key.to_string(),
                    expected: "integer".to_string(),
                    found: quantity.dim().to_string(),
                });
            }
            let value = quantity.magnitude();
            if value.fract() != 0.0 || value.abs() > i64::MAX as f64 {
                return Err(bad(format!("expected an integer, got {value}")));
            }
            Ok(ConfigValue::Integer(value as i64))
        }
    }
}

/// Loads the config file, applies `--set` overrides, and validates every
/// key against the schema.
pub fn load_config(
    path: &Path,
    overrides: &[String],
    schema: &[KeySpec],
) -> Result<LoadedConfig, ConfigError> {
    let file = KvFile::load(path)?;
    let (mut map, warnings) = file.to_map();

    for setting in overrides {
        let Some((key, value)) = setting.split_once('=') else {
            return Err(ConfigError::BadOverride {
                setting: setting.clone(),
                message: "expected KEY=VALUE".to_string(),
            });
        };
        map.insert(
            key.trim().to_string(),
            KvEntry {
                key: key.trim().to_string(),
                value: value.trim().to_string(),
                line: 0,
            },
        );
    }

    let mut values = BTreeMap::new();
    for (key, entry) in &map {
        let Some(spec) = schema.iter().find(|s| s.key == key) else {
            return Err(ConfigError::UnknownKey {
                path: path.to_path_buf(),
                key: key.clone(),
            });
        };
        values.insert(key.clone(), parse_value(path, key, &entry.value, spec.kind)?);
    }
    for spec in schema {
        if spec.required && !values.contains_key(spec.key) {
            return Err(ConfigError::MissingRequired {
                path: path.to_path_buf(),
                key: spec.key,
            });
        }
    }

    Ok(LoadedConfig {
        path: path.to_path_buf(),
        values,
        warnings,
    })
}
