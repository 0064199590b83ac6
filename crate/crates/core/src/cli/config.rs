//! Flat `key = value` experiment configuration files.
//!
//! ```text
//! # Case I sweep
//! schemes = mrc, zf, naive
//! case    = I
//! et      = 10db
//! pr      = 1lin
//! k       = 5
//! n       = 32, 64, 128
//! trials  = 1000
//! seed    = 1
//! ```
//!
//! Power fields (`pt`, `pr`, `et`, `er`, `noise`) need an explicit `db` or
//! `lin` suffix. `eta1` / `eta2` are plain linear gains and default to all
//! ones.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::asymptotics::ScalingCase;
use crate::channel::{db_to_linear, LargeScaleProfile};
use crate::montecarlo::{SweepSpec, DEFAULT_TRIALS};
use crate::relaying::RelayScheme;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerUnit {
    Db,
    Lin,
}

/// A power as written in a config file: value plus unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSpec {
    pub value: f64,
    pub unit: PowerUnit,
}

impl PowerSpec {
    pub fn db(value: f64) -> Self {
        PowerSpec {
            value,
            unit: PowerUnit::Db,
        }
    }

    pub fn lin(value: f64) -> Self {
        PowerSpec {
            value,
            unit: PowerUnit::Lin,
        }
    }

    pub fn linear(&self) -> f64 {
        match self.unit {
            PowerUnit::Db => db_to_linear(self.value),
            PowerUnit::Lin => self.value,
        }
    }
}

impl FromStr for PowerSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        let (number, unit) = if let Some(v) = lower.strip_suffix("db") {
            (v, PowerUnit::Db)
        } else if let Some(v) = lower.strip_suffix("lin") {
            (v, PowerUnit::Lin)
        } else {
            return Err(format!("`{s}` needs a unit suffix (`db` or `lin`)"));
        };
        let value: f64 = number
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a number with a unit"))?;
        if !value.is_finite() {
            return Err(format!("`{s}` is not finite"));
        }
        let spec = PowerSpec { value, unit };
        if unit == PowerUnit::Lin && value <= 0.0 {
            return Err(format!("`{s}` must be positive"));
        }
        Ok(spec)
    }
}

impl fmt::Display for PowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            PowerUnit::Db => write!(f, "{}db", self.value),
            PowerUnit::Lin => write!(f, "{}lin", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    I,
    II,
    III,
    Unscaled,
}

impl CaseKind {
    fn parse(s: &str) -> Option<CaseKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" | "case1" | "casei" => Some(CaseKind::I),
            "ii" | "2" | "case2" | "caseii" => Some(CaseKind::II),
            "iii" | "3" | "case3" | "caseiii" => Some(CaseKind::III),
            "unscaled" | "none" => Some(CaseKind::Unscaled),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CaseKind::I => "I",
            CaseKind::II => "II",
            CaseKind::III => "III",
            CaseKind::Unscaled => "unscaled",
        }
    }

    /// Power keys this case needs, in file order.
    fn power_keys(self) -> [&'static str; 2] {
        match self {
            CaseKind::I => ["et", "pr"],
            CaseKind::II => ["pt", "er"],
            CaseKind::III => ["et", "er"],
            CaseKind::Unscaled => ["pt", "pr"],
        }
    }
}

/// A parsed experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub schemes: Vec<RelayScheme>,
    pub case: CaseKind,
    /// Values for `case.power_keys()`, same order.
    pub powers: [PowerSpec; 2],
    pub noise: PowerSpec,
    pub k: usize,
    pub eta1: Vec<f64>,
    pub eta2: Vec<f64>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

const KNOWN_KEYS: [&str; 14] = [
    "schemes", "case", "et", "pt", "er", "pr", "noise", "k", "eta1", "eta2", "n", "trials",
    "seed", "out",
];

fn parse_list<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| ConfigError::new(line, format!("`{key}`: cannot parse `{s}`")))
        })
        .collect()
}

fn parse_one<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .trim()
        .parse()
        .map_err(|_| ConfigError::new(line, format!("`{key}`: cannot parse `{value}`")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries: Vec<(usize, String, String)> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| ConfigError::new(line, format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim().to_ascii_lowercase();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::new(line, format!("unknown key `{key}`")));
            }
            if let Some((prev, _, _)) = entries.iter().find(|(_, k, _)| *k == key) {
                return Err(ConfigError::new(
                    line,
                    format!("`{key}` already set on line {prev}"),
                ));
            }
            entries.push((line, key, value.trim().to_string()));
        }
        let eof = last_line + 1;
        let get = |key: &str| entries.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()));
        let require = |key: &str| get(key).ok_or_else(|| ConfigError::new(eof, format!("missing key `{key}`")));

        let (line, v) = require("schemes")?;
        let schemes: Vec<RelayScheme> = v
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| RelayScheme::parse(s).ok_or_else(|| ConfigError::new(line, format!("unknown scheme `{s}`"))))
            .collect::<Result<_, _>>()?;
        if schemes.is_empty() {
            return Err(ConfigError::new(line, "`schemes` is empty"));
        }
        if let Some(dup) = schemes.iter().enumerate().find(|(i, s)| schemes[..*i].contains(s)) {
            return Err(ConfigError::new(line, format!("scheme `{}` listed twice", dup.1)));
        }

        let (line, v) = require("case")?;
        let case = CaseKind::parse(v).ok_or_else(|| ConfigError::new(line, format!("unknown case `{v}`")))?;

        for key in ["et", "pt", "er", "pr"] {
            if let Some((line, _)) = get(key) {
                if !case.power_keys().contains(&key) {
                    return Err(ConfigError::new(line, format!("`{key}` is not used by case {}", case.name())));
                }
            }
        }
        let mut powers = [PowerSpec::lin(1.0); 2];
        for (slot, key) in powers.iter_mut().zip(case.power_keys()) {
            let (line, v) = require(key).map_err(|e| ConfigError::new(e.line, format!("{} (needed by case {})", e.message, case.name())))?;
            *slot = v.parse().map_err(|m: String| ConfigError::new(line, format!("`{key}`: {m}")))?;
        }

        let noise = match get("noise") {
            Some((line, v)) => v.parse().map_err(|m: String| ConfigError::new(line, format!("`noise`: {m}")))?,
            None => PowerSpec::lin(1.0),
        };

        let eta1 = get("eta1").map(|(l, v)| parse_list::<f64>(l, "eta1", v)).transpose()?;
        let eta2 = get("eta2").map(|(l, v)| parse_list::<f64>(l, "eta2", v)).transpose()?;
        let k = match get("k") {
            Some((line, v)) => {
                let k: usize = parse_one(line, "k", v)?;
                if k == 0 {
                    return Err(ConfigError::new(line, "`k` must be at least 1"));
                }
                k
            }
            None => match (&eta1, &eta2) {
                (Some(e), _) | (None, Some(e)) => e.len(),
                (None, None) => return Err(ConfigError::new(eof, "missing key `k`")),
            },
        };
        let check_eta = |key: &str, eta: Option<Vec<f64>>| -> Result<Vec<f64>, ConfigError> {
            match eta {
                None => Ok(vec![1.0; k]),
                Some(e) => {
                    let line = get(key).map_or(eof, |(l, _)| l);
                    if e.len() != k {
                        return Err(ConfigError::new(line, format!("`{key}` has {} entries but k = {k}", e.len())));
                    }
                    if let Some(bad) = e.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
                        return Err(ConfigError::new(line, format!("`{key}` entries must be positive, got {bad}")));
                    }
                    Ok(e)
                }
            }
        };
        let eta1 = check_eta("eta1", eta1)?;
        let eta2 = check_eta("eta2", eta2)?;

        let (line, v) = require("n")?;
        let n_values: Vec<usize> = parse_list(line, "n", v)?;
        if n_values.is_empty() || n_values.contains(&0) {
            return Err(ConfigError::new(line, "`n` must list positive antenna counts"));
        }
        if n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::new(line, "`n` must be strictly increasing"));
        }

        let trials = match get("trials") {
            Some((line, v)) => {
                let t: usize = parse_one(line, "trials", v)?;
                if t < 2 {
                    return Err(ConfigError::new(line, "`trials` must be at least 2"));
                }
                t
            }
            None => DEFAULT_TRIALS,
        };
        let seed = get("seed").map(|(l, v)| parse_one(l, "seed", v)).transpose()?.unwrap_or(0);
        let output = get("out").map(|(_, v)| PathBuf::from(v));

        Ok(ExperimentConfig {
            schemes,
            case,
            powers,
            noise,
            k,
            eta1,
            eta2,
            n_values,
            trials,
            seed,
            output,
        })
    }

    pub fn scaling_case(&self) -> ScalingCase {
        let [a, b] = self.powers.map(|p| p.linear());
        match self.case {
            CaseKind::I => ScalingCase::CaseI { e_t: a, p_r: b },
            CaseKind::II => ScalingCase::CaseII { p_t: a, e_r: b },
            CaseKind::III => ScalingCase::CaseIII { e_t: a, e_r: b },
            CaseKind::Unscaled => ScalingCase::Unscaled { p_t: a, p_r: b },
        }
    }

    pub fn profile(&self) -> LargeScaleProfile {
        LargeScaleProfile::new(self.eta1.clone(), self.eta2.clone())
            .expect("validated while parsing")
    }

    pub fn noise_power(&self) -> f64 {
        self.noise.linear()
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            schemes: self.schemes.clone(),
            case: self.scaling_case(),
            profile: self.profile(),
            noise_power: self.noise_power(),
            n_values: self.n_values.clone(),
            trials: self.trials,
            seed: self.seed,
        }
    }

    /// Renders the config in the file format accepted by [`ExperimentConfig::parse`].
    pub fn to_config_string(&self) -> String {
        let join = |xs: &[f64]| xs.iter().map(f64::to_string).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        let names: Vec<&str> = self.schemes.iter().map(|s| s.name()).collect();
        s += &format!("schemes = {}\n", names.join(", "));
        s += &format!("case = {}\n", self.case.name());
        for (key, p) in self.case.power_keys().iter().zip(&self.powers) {
            s += &format!("{key} = {p}\n");
        }
        s += &format!("noise = {}\n", self.noise);
        s += &format!("k = {}\n", self.k);
        s += &format!("eta1 = {}\n", join(&self.eta1));
        s += &format!("eta2 = {}\n", join(&self.eta2));
        let ns: Vec<String> = self.n_values.iter().map(usize::to_string).collect();
        s += &format!("n = {}\n", ns.join(", "));
        s += &format!("trials = {}\n", self.trials);
        s += &format!("seed = {}\n", self.seed);
        if let Some(out) = &self.output {
            s += &format!("out = {}\n", out.display());
        }
        s
    }
}
