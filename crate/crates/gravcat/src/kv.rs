//! Flat `key = value` files.
//!
//! The format shared by the materials catalog, the proposal catalog, and
//! run configs: one `key = value` pair per line, `#` starts a comment,
//! blank lines ignored. Keys are dotted identifiers (`Pb.rho`); values are
//! free text, usually unit-tagged numbers handled by
//! [`crate::quantities::parse_quantity`]. Duplicate keys resolve last-wins,
//! reported as warnings rather than errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KvError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

/// One `key = value` pair with its source line (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KvEntry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parsed file: entries in order plus last-wins lookup with duplicate
/// warnings.
#[derive(Debug, Clone)]
pub struct KvFile {
    pub path: PathBuf,
    pub entries: Vec<KvEntry>,
}

impl KvFile {
    pub fn load(path: &Path) -> Result<Self, KvError> {
        let text = fs::read_to_string(path).map_err(|source| KvError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(path, &text)
    }

    pub fn parse(path: &Path, text: &str) -> Result<Self, KvError> {
        let mut entries = Vec::new();
        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            let content = match raw_line.find('#') {
                Some(i) => &raw_line[..i],
                None => raw_line,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(KvError::Syntax {
                    path: path.to_path_buf(),
                    line,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(KvError::Syntax {
                    path: path.to_path_buf(),
                    line,
                    message: "empty key".to_string(),
                });
            }
            if !key
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
            {
                return Err(KvError::Syntax {
                    path: path.to_path_buf(),
                    line,
                    message: format!("invalid key `{key}`"),
                });
            }
            entries.push(KvEntry {
                key: key.to_string(),
                value: value.to_string(),
                line,
            });
        }
        Ok(Self {
            path: path.to_path_buf(),
            entries,
        })
    }

    /// Last-wins map plus one warning line per overridden key.
    pub fn to_map(&self) -> (BTreeMap<String, KvEntry>, Vec<String>) {
        let mut map: BTreeMap<String, KvEntry> = BTreeMap::new();
        let mut warnings = Vec::new();
        for entry in &self.entries {
            if let Some(previous) = map.insert(entry.key.clone(), entry.clone()) {
                warnings.push(format!(
                    "{}:{}: duplicate key `{}` overrides value from line {} (last one wins)",
                    self.path.display(),
                    entry.line,
                    entry.key,
                    previous.line
                ));
            }
        }
        (map, warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> KvFile {
        KvFile::parse(Path::new("test.kv"), text).unwrap()
    }

    #[test]
    fn basic_lines_and_comments() {
        let file = parse("# header\nM = 0.38 ng\n\nL = 1 pm # trailing\n");
        assert_eq!(file.entries.len(), 2);
        assert_eq!(file.entries[0].key, "M");
        assert_eq!(file.entries[0].value, "0.38 ng");
        assert_eq!(file.entries[1].value, "1 pm");
        assert_eq!(file.entries[1].line, 4);
    }

    #[test]
    fn duplicate_keys_last_wins_with_warning() {
        let file = parse("a = 1\na = 2\n");
        let (map, warnings) = file.to_map();
        assert_eq!(map["a"].value, "2");
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("duplicate key `a`"));
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let err = KvFile::parse(Path::new("bad.kv"), "just words\n").unwrap_err();
        match err {
            KvError::Syntax { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(KvFile::parse(Path::new("bad.kv"), "we ird = 1\n").is_err());
    }
}
