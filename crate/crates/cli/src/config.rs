//! Flat `key = value` experiment configuration with flag overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};

/// Invalid command-line or configuration input; maps to exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub const KEYS: &[&str] = &[
    "kind",
    "graph",
    "n",
    "d",
    "p",
    "alpha",
    "eps",
    "delta",
    "gadget-m",
    "gadget-girth",
    "trials",
    "r",
    "seed",
    "ecc-vertex",
    "out",
    "summary",
    "p-grid",
    "n-grid",
    "r-grid",
];

const DEFAULTS: &[(&str, &str)] =
    &[("kind", "regular"), ("n", "10000"), ("d", "3"), ("p", "0.75"), ("trials", "10"), ("seed", "1")];

/// Raw settings after merging defaults, the config file and flags, in that
/// order of precedence (last wins).
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn resolve(file: Option<&Path>, flags: &[(&str, Option<String>)]) -> Result<Self> {
        let mut values: BTreeMap<String, String> =
            DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            values.extend(parse_config(&text)?);
        }
        for (key, value) in flags {
            if let Some(v) = value {
                values.insert(key.to_string(), v.clone());
            }
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| usage(format!("invalid value {v:?} for --{key}"))),
        }
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| usage(format!("missing required setting --{key}")))
    }

    pub fn count(&self, key: &str) -> Result<Option<usize>> {
        self.raw(key)
            .map(|v| parse_count(v).ok_or_else(|| usage(format!("invalid count {v:?} for --{key}"))))
            .transpose()
    }

    pub fn probability(&self, key: &str) -> Result<f64> {
        let p: f64 = self.require(key)?;
        check_probability(key, p)?;
        Ok(p)
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.raw(key).map(PathBuf::from)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        for (k, v) in self.entries() {
            map.insert(k.into(), v.into());
        }
        map.into()
    }

    /// `# `-prefixed provenance lines for tabular outputs.
    pub fn header(&self, command: &str) -> String {
        let mut out = format!("# giantlab {} {command}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in self.entries() {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out
    }
}

pub fn check_probability(key: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(usage(format!("--{key} must lie in [0, 1], got {p}")))
    }
}

fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value, got {line:?}", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key {:?}", i + 1, k.trim())));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Integer counts written as `100000`, `1e5`, `10^5` or `3*10^4`.
pub fn parse_count(s: &str) -> Option<usize> {
    let s = s.trim();
    if let Ok(n) = s.parse::<usize>() {
        return Some(n);
    }
    let value = if let Some((base, exp)) = s.rsplit_once('^') {
        let (mult, base) = match base.split_once('*') {
            Some((m, b)) => (m.trim().parse::<f64>().ok()?, b),
            None => (1.0, base),
        };
        mult * base.trim().parse::<f64>().ok()?.powf(exp.trim().parse::<f64>().ok()?)
    } else {
        s.parse::<f64>().ok()?
    };
    let rounded = value.round();
    (value.is_finite() && value >= 0.0 && (value - rounded).abs() < 1e-9 * value.max(1.0)).then_some(rounded as usize)
}

/// A grid written as `a,b,c` or as an inclusive range `start:stop:step`.
pub fn parse_real_grid(key: &str, s: &str) -> Result<Vec<f64>> {
    let bad = || usage(format!("invalid grid {s:?} for --{key}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let grid = if parts.len() == 3 {
        let [start, stop, step] = [parts[0], parts[1], parts[2]].map(|x| x.parse::<f64>());
        let (start, stop, step) = (start.map_err(|_| bad())?, stop.map_err(|_| bad())?, step.map_err(|_| bad())?);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad());
        }
        let steps = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=steps).map(|i| round12(start + step * i as f64)).collect()
    } else {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    Ok(grid)
}

pub fn parse_count_grid(key: &str, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_count(t).ok_or_else(|| usage(format!("invalid entry {t:?} in --{key}"))))
        .collect()
}

/// Strips accumulation noise from grid points such as `0.55 + 3 * 0.05`.
fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("100000"), Some(100_000));
        assert_eq!(parse_count("10^5"), Some(100_000));
        assert_eq!(parse_count("3*10^4"), Some(30_000));
        assert_eq!(parse_count("1e6"), Some(1_000_000));
        assert_eq!(parse_count("2.5"), None);
        assert_eq!(parse_count("x"), None);
    }

    #[test]
    fn grids() {
        let g = parse_real_grid("p-grid", "0.55:0.95:0.05").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[3], 0.7);
        assert_eq!(g[8], 0.95);
        assert_eq!(parse_real_grid("p-grid", "0.5, 0.6").unwrap(), vec![0.5, 0.6]);
        assert!(parse_real_grid("p-grid", "").unwrap().is_empty());
        assert!(parse_real_grid("p-grid", "1:0:0.1").is_err());
    }

    #[test]
    fn config_file_and_flags_merge() {
        let parsed = parse_config("# comment\nn = 500\necc_vertex = 3\n\np=0.6\n").unwrap();
        assert_eq!(parsed[1], ("ecc-vertex".into(), "3".into()));
        assert!(parse_config("bogus = 1").is_err());
        assert!(parse_config("just text").is_err());
    }
}
