//! `key = value` experiment configs merged with command-line overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(format!("line {}: expected `key = value`", lineno + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return err(format!("line {}: invalid key `{key}`", lineno + 1));
        }
        if value.is_empty() {
            return err(format!("line {}: empty value for `{key}`", lineno + 1));
        }
        if out.insert(key.to_string(), value.to_string()).is_some() {
            return err(format!("line {}: duplicate key `{key}`", lineno + 1));
        }
    }
    Ok(out)
}

/// Resolved parameters: defaults, then the config file, then flags.
#[derive(Debug, Clone)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn resolve(
        schema: &[(&str, &str)],
        config: Option<&Path>,
        overrides: &[(&str, Option<String>)],
    ) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<String, String> = schema
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
            for (k, v) in parse_config(&text)? {
                if !values.contains_key(&k) {
                    let known: Vec<&str> = schema.iter().map(|(k, _)| *k).collect();
                    return err(format!(
                        "unknown key `{k}` (expected one of: {})",
                        known.join(", ")
                    ));
                }
                values.insert(k, v);
            }
        }
        for (k, v) in overrides {
            debug_assert!(
                values.contains_key(*k),
                "override `{k}` missing from schema"
            );
            if let Some(v) = v {
                values.insert(k.to_string(), v.clone());
            }
        }
        Ok(Settings { values })
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, ConfigError> {
        let raw = self.raw(key);
        raw.parse()
            .map_err(|_| ConfigError(format!("invalid value `{raw}` for `{key}`")))
    }

    /// Comma-separated list; an empty value gives an empty list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, ConfigError> {
        let raw = self.raw(key);
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|item| {
                item.trim()
                    .parse()
                    .map_err(|_| ConfigError(format!("invalid item `{}` in `{key}`", item.trim())))
            })
            .collect()
    }

    pub fn finite(&self, key: &str) -> Result<f64, ConfigError> {
        let v: f64 = self.get(key)?;
        if !v.is_finite() {
            return err(format!("`{key}` must be finite"));
        }
        Ok(v)
    }

    pub fn in_range<T>(&self, key: &str, lo: T, hi: T) -> Result<T, ConfigError>
    where
        T: FromStr + PartialOrd + fmt::Display + Copy,
    {
        let v: T = self.get(key)?;
        if v < lo || v > hi {
            return err(format!("`{key}` = {v} outside {lo}..={hi}"));
        }
        Ok(v)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}
