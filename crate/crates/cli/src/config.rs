//! Optional `key=value` defaults file, merged under explicit flags.
//!
//! Lines are `key = value`; blank lines and `#` comments are skipped. Keys
//! mirror long flag names (`ab`, `samples`, `t-deg`, …). Keys a subcommand
//! does not use are ignored, so one file can serve several commands. A flag
//! given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    /// Loads the file when a path is given; no path means no defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError(format!(
                    "config {} line {}: expected key=value, got `{line}`",
                    path.display(),
                    idx + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    /// Typed lookup; a present-but-unparsable value is an error, not a miss.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                CliError(format!("config key {key}: cannot parse `{raw}`"))
            }),
        }
    }
}

/// Flag value if given, else config value, else nothing.
pub fn merged<T: FromStr>(
    flag: Option<T>,
    cfg: &ConfigMap,
    key: &str,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

/// Flag value if given, else config value, else the built-in default.
pub fn resolve<T: FromStr>(
    flag: Option<T>,
    cfg: &ConfigMap,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    Ok(flag.or(cfg.get(key)?).unwrap_or(default))
}

/// Flag value if given, else config value; missing entirely is an error.
pub fn resolve_required<T: FromStr>(
    flag: Option<T>,
    cfg: &ConfigMap,
    key: &str,
) -> Result<T, CliError> {
    flag.or(cfg.get(key)?)
        .ok_or_else(|| CliError(format!("missing required option --{key}")))
}
