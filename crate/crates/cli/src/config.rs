//! Flat `key = value` config files. Keys are identical to the long flag
//! names of the subcommand they configure; explicit flags override file
//! values. Lines starting with `#` and blank lines are ignored.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct ConfigMap {
    values: HashMap<String, String>,
    source: String,
}

impl ConfigMap {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::empty());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "{source}:{}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::usage(format!(
                    "{source}:{}: empty key",
                    lineno + 1
                )));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(CliError::usage(format!(
                    "{source}:{}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(Self {
            values,
            source: source.to_string(),
        })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    pub fn take_string(&mut self, key: &str) -> Option<String> {
        self.take(key)
    }

    pub fn take_path(&mut self, key: &str) -> Option<PathBuf> {
        self.take(key).map(PathBuf::from)
    }

    pub fn take_f64(&mut self, key: &str) -> Result<Option<f64>, CliError> {
        self.take(key)
            .map(|v| {
                v.parse::<f64>().map_err(|_| {
                    CliError::usage(format!(
                        "{}: key `{key}`: expected a number, got `{v}`",
                        self.source
                    ))
                })
            })
            .transpose()
    }

    pub fn take_usize(&mut self, key: &str) -> Result<Option<usize>, CliError> {
        self.take(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| {
                    CliError::usage(format!(
                        "{}: key `{key}`: expected a non-negative integer, got `{v}`",
                        self.source
                    ))
                })
            })
            .transpose()
    }

    pub fn take_bool(&mut self, key: &str) -> Result<Option<bool>, CliError> {
        self.take(key)
            .map(|v| match v.as_str() {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(CliError::usage(format!(
                    "{}: key `{key}`: expected true/false, got `{v}`",
                    self.source
                ))),
            })
            .transpose()
    }

    /// Error out if any keys were never consumed (catches typos).
    pub fn finish(self) -> Result<(), CliError> {
        if self.values.is_empty() {
            return Ok(());
        }
        let mut keys: Vec<&str> = self.values.keys().map(String::as_str).collect();
        keys.sort_unstable();
        Err(CliError::usage(format!(
            "{}: unknown key(s): {}",
            self.source,
            keys.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_values() {
        let text = "# comment\n\nstrength = 0.4\nwarp=20\nthin = false\n";
        let mut cfg = ConfigMap::parse(text, "test").unwrap();
        assert_eq!(cfg.take_f64("strength").unwrap(), Some(0.4));
        assert_eq!(cfg.take_f64("warp").unwrap(), Some(20.0));
        assert_eq!(cfg.take_bool("thin").unwrap(), Some(false));
        cfg.finish().unwrap();
    }

    #[test]
    fn unknown_key_is_reported() {
        let cfg = ConfigMap::parse("warpp = 3\n", "test").unwrap();
        let err = cfg.finish().unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("warpp"));
    }

    #[test]
    fn malformed_line_is_usage_error() {
        let err = ConfigMap::parse("just a line\n", "test").unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn duplicate_key_is_rejected() {
        let err = ConfigMap::parse("a = 1\na = 2\n", "test").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn bad_number_names_the_key() {
        let mut cfg = ConfigMap::parse("gain = high\n", "test").unwrap();
        let err = cfg.take_f64("gain").unwrap_err();
        assert!(err.to_string().contains("gain"));
    }
}
