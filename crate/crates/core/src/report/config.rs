//! The line-oriented analysis config.
//!
//! ```text
//! # comments run to the end of the line
//! source   = M2 (+) M1
//! hom      = dsum(power(2), bar)
//! mode     = unitary
//! analyses = lambda, verdict
//! seed     = 42
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraShape, TraceWeights};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unitary,
    Gl,
}

/// One requested analysis. The declaration order is the execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Stone,
    Lambda,
    Verdict,
    Dual,
    K0,
    Pairing,
    Ktu,
    Thomsen,
    Gl,
    Ftau,
}

impl Analysis {
    pub const ALL: [Analysis; 10] = [
        Analysis::Stone,
        Analysis::Lambda,
        Analysis::Verdict,
        Analysis::Dual,
        Analysis::K0,
        Analysis::Pairing,
        Analysis::Ktu,
        Analysis::Thomsen,
        Analysis::Gl,
        Analysis::Ftau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Stone => "stone",
            Analysis::Lambda => "lambda",
            Analysis::Verdict => "verdict",
            Analysis::Dual => "dual",
            Analysis::K0 => "k0",
            Analysis::Pairing => "pairing",
            Analysis::Ktu => "ktu",
            Analysis::Thomsen => "thomsen",
            Analysis::Gl => "gl",
            Analysis::Ftau => "ftau",
        }
    }

    /// Analyses whose results this one reads.
    pub fn dependencies(self) -> &'static [Analysis] {
        match self {
            Analysis::Verdict => &[Analysis::Lambda],
            Analysis::Dual => &[Analysis::Verdict],
            Analysis::Pairing => &[Analysis::Lambda, Analysis::K0],
            Analysis::Ktu => &[Analysis::Verdict, Analysis::K0],
            Analysis::Thomsen => &[Analysis::Lambda],
            _ => &[],
        }
    }

    /// `requested` together with everything it depends on, in execution order.
    pub fn closure(requested: &[Analysis]) -> Vec<Analysis> {
        let mut set = BTreeSet::new();
        let mut stack = requested.to_vec();
        while let Some(a) = stack.pop() {
            if set.insert(a) {
                stack.extend_from_slice(a.dependencies());
            }
        }
        set.into_iter().collect()
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Analysis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown analysis `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub hom: Homomorphism,
    pub mode: Mode,
    /// In execution order, dependencies included.
    pub analyses: Vec<Analysis>,
    pub seed: u64,
    pub trials: usize,
    /// Trace of the target used by `ftau`; uniform when absent.
    pub tau: Option<TraceWeights>,
    /// Tolerance for the pairing, naturality and Thomsen comparisons.
    pub tol: f64,
}

impl AnalysisConfig {
    /// Config for `hom` over `source` with every default filled in.
    pub fn new(hom: &str, source: &str, mode: Mode) -> Result<Self> {
        let source: AlgebraShape = source.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
        let hom = validate(hom, source, mode, 0)?;
        Ok(AnalysisConfig {
            hom,
            mode,
            analyses: default_analyses(mode),
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            tau: None,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_analyses(mut self, analyses: &[Analysis]) -> Self {
        self.analyses = Analysis::closure(analyses);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tau_or_uniform(&self) -> TraceWeights {
        self.tau
            .clone()
            .unwrap_or_else(|| TraceWeights::uniform(self.hom.target().block_count()))
    }
}

fn default_analyses(mode: Mode) -> Vec<Analysis> {
    match mode {
        Mode::Unitary => Analysis::ALL.into_iter().filter(|a| *a != Analysis::Gl).collect(),
        Mode::Gl => vec![Analysis::Gl, Analysis::Ftau],
    }
}

fn config_err(line: usize, msg: impl fmt::Display) -> Error {
    if line == 0 {
        Error::Config(msg.to_string())
    } else {
        Error::Config(format!("line {line}: {msg}"))
    }
}

fn validate(text: &str, source: AlgebraShape, mode: Mode, line: usize) -> Result<Homomorphism> {
    let hom = Homomorphism::parse(text, source).map_err(|e| config_err(line, e))?;
    if mode == Mode::Unitary && hom.uses_gl_generators() {
        return Err(config_err(line, "`modtwist` needs `mode = gl`"));
    }
    Ok(hom)
}

fn parse_value<T: FromStr>(v: &str, key: &str, line: usize) -> Result<T> {
    v.parse().map_err(|_| config_err(line, format!("bad value `{v}` for `{key}`")))
}

impl FromStr for AnalysisConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut seen: Vec<(&str, (usize, &str))> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| config_err(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            const KEYS: [&str; 9] = ["source", "target", "hom", "mode", "analyses", "seed", "trials", "tau", "tol"];
            if !KEYS.contains(&key) {
                return Err(config_err(line, format!("unknown key `{key}`")));
            }
            if let Some((_, (prev, _))) = seen.iter().find(|(k, _)| *k == key) {
                return Err(config_err(line, format!("`{key}` already set on line {prev}")));
            }
            seen.push((key, (line, value)));
        }
        let get = |k: &str| seen.iter().find(|(key, _)| *key == k).map(|(_, v)| *v);

        let (sl, sv) = get("source").ok_or_else(|| config_err(0, "missing `source`"))?;
        let source: AlgebraShape = sv.parse().map_err(|e: Error| config_err(sl, e))?;
        let mode = match get("mode") {
            None => Mode::Unitary,
            Some((_, "unitary")) => Mode::Unitary,
            Some((_, "gl")) => Mode::Gl,
            Some((l, v)) => return Err(config_err(l, format!("mode must be `unitary` or `gl`, found `{v}`"))),
        };
        let (hl, hv) = get("hom").ok_or_else(|| config_err(0, "missing `hom`"))?;
        let hom = validate(hv, source, mode, hl)?;
        if let Some((l, v)) = get("target") {
            let target: AlgebraShape = v.parse().map_err(|e: Error| config_err(l, e))?;
            if &target != hom.target() {
                return Err(config_err(l, format!("target {target} does not match the inferred {}", hom.target())));
            }
        }
        let analyses = match get("analyses") {
            None => default_analyses(mode),
            Some((l, v)) => {
                let list = v
                    .split(',')
                    .map(|s| s.trim().parse::<Analysis>().map_err(|e| config_err(l, e)))
                    .collect::<Result<Vec<_>>>()?;
                Analysis::closure(&list)
            }
        };
        let seed = get("seed").map(|(l, v)| parse_value(v, "seed", l)).transpose()?.unwrap_or(DEFAULT_SEED);
        let trials = get("trials")
            .map(|(l, v)| parse_value(v, "trials", l))
            .transpose()?
            .unwrap_or(DEFAULT_TRIALS);
        let tol: f64 = get("tol").map(|(l, v)| parse_value(v, "tol", l)).transpose()?.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(config_err(get("tol").unwrap().0, "tol must be positive"));
        }
        let tau = match get("tau") {
            None => None,
            Some((l, v)) => {
                let w = v
                    .split(',')
                    .map(|s| parse_value::<f64>(s.trim(), "tau", l))
                    .collect::<Result<Vec<_>>>()?;
                let tau = TraceWeights::new(w).map_err(|e| config_err(l, e))?;
                tau.check_shape(hom.target()).map_err(|e| config_err(l, e))?;
                Some(tau)
            }
        };
        Ok(AnalysisConfig { hom, mode, analyses, seed, trials, tau, tol })
    }
}

/// The config as it appears in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub source: AlgebraShape,
    pub target: AlgebraShape,
    pub hom: String,
    pub mode: Mode,
    pub analyses: Vec<Analysis>,
    pub seed: u64,
    pub trials: usize,
    pub tau: Option<Vec<f64>>,
    pub tol: f64,
}

impl From<&AnalysisConfig> for ConfigEcho {
    fn from(c: &AnalysisConfig) -> Self {
        ConfigEcho {
            source: c.hom.source().clone(),
            target: c.hom.target().clone(),
            hom: c.hom.expr().to_string(),
            mode: c.mode,
            analyses: c.analyses.clone(),
            seed: c.seed,
            trials: c.trials,
            tau: c.tau.as_ref().map(|t| t.weights().to_vec()),
            tol: c.tol,
        }
    }
}
