//! JSON run configurations. Every schema rejects unknown keys, and values are
//! validated before any computation starts.

use crate::CliError;
use circleqm::circlespace::{Params, Sector};
use circleqm::mincs::MinUncParams;
use circleqm::zakcs::WZParams;
use circleqm::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::io::Read;
use std::path::Path;

/// Reads the config from `path`, or from stdin when `path` is absent or `-`.
pub fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Config(format!("cannot read config from stdin: {e}")))?;
            if s.trim().is_empty() {
                return Err(CliError::Config("no config given: pass a JSON file or pipe one on stdin".into()));
            }
            Ok(s)
        }
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
}

fn invalid(e: circleqm::Error) -> CliError {
    CliError::Config(format!("config: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WzConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub theta: f64,
    #[serde(rename = "l")]
    pub l_tilde: f64,
}

/// A coherent state of either family.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum StateConfig {
    Min(MinUncParams),
    Wz(WzConfig),
}

/// Validated form of [`StateConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Min(MinUncParams),
    Wz { params: WZParams, z: Complex64 },
}

impl StateConfig {
    pub fn validate(&self) -> Result<StateSpec, CliError> {
        match *self {
            StateConfig::Min(p) => {
                p.validate().map_err(invalid)?;
                Ok(StateSpec::Min(p))
            }
            StateConfig::Wz(w) => {
                let params = wz_params(w.epsilon, w.delta)?;
                let z = Complex64::new(w.theta, w.l_tilde);
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(CliError::Config("config: theta and l must be finite".into()));
                }
                Ok(StateSpec::Wz { params, z })
            }
        }
    }
}

impl StateSpec {
    pub fn sector(&self) -> Result<Sector, CliError> {
        match self {
            StateSpec::Min(p) => p.sector().map_err(invalid),
            StateSpec::Wz { params, .. } => Ok(params.sector()),
        }
    }
}

pub fn sector(delta: f64) -> Result<Sector, CliError> {
    Sector::new(delta).map_err(invalid)
}

pub fn wz_params(epsilon: f64, delta: f64) -> Result<WZParams, CliError> {
    WZParams::new(epsilon, sector(delta)?).map_err(invalid)
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapConfig {
    pub a: StateConfig,
    pub b: StateConfig,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub state: StateConfig,
    /// Required for the min family; must match the state's ε for wz.
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default = "one")]
    pub omega: f64,
    pub times: Vec<f64>,
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<(StateSpec, Params), CliError> {
        let spec = self.state.validate()?;
        let eps = match (&spec, self.epsilon) {
            (StateSpec::Min(_), Some(e)) => e,
            (StateSpec::Min(_), None) => {
                return Err(CliError::Config("config: `epsilon` is required for the min family".into()))
            }
            (StateSpec::Wz { params, .. }, None) => params.epsilon(),
            (StateSpec::Wz { params, .. }, Some(e)) if e == params.epsilon() => e,
            (StateSpec::Wz { .. }, Some(_)) => {
                return Err(CliError::Config("config: `epsilon` differs from the state's epsilon".into()))
            }
        };
        let params = Params::new(eps, self.omega).map_err(invalid)?;
        check_grid("times", &self.times)?;
        Ok((spec, params))
    }
}

fn check_grid(name: &str, v: &[f64]) -> Result<(), CliError> {
    if v.is_empty() {
        return Err(CliError::Config(format!("config: `{name}` must not be empty")));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Config(format!("config: `{name}` entries must be finite")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub epsilon: f64,
    #[serde(default = "one")]
    pub omega: f64,
    pub delta: f64,
    pub t: f64,
    pub eta: f64,
    /// Explicit angle differences.
    #[serde(default)]
    pub dphi: Option<Vec<f64>>,
    /// Or this many uniform points on `[0, 2π)`.
    #[serde(default)]
    pub points: Option<usize>,
}

impl KernelConfig {
    pub fn validate(&self) -> Result<(Params, Sector, Vec<f64>), CliError> {
        let params = Params::new(self.epsilon, self.omega).map_err(invalid)?;
        let s = sector(self.delta)?;
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(CliError::Config("config: `eta` must be positive".into()));
        }
        if !self.t.is_finite() {
            return Err(CliError::Config("config: `t` must be finite".into()));
        }
        let grid = match (&self.dphi, self.points) {
            (Some(v), None) => v.clone(),
            (None, Some(n)) if n > 0 => {
                (0..n).map(|k| std::f64::consts::TAU * k as f64 / n as f64).collect()
            }
            (None, Some(_)) => return Err(CliError::Config("config: `points` must be positive".into())),
            _ => return Err(CliError::Config("config: give exactly one of `dphi` and `points`".into())),
        };
        check_grid("dphi", &grid)?;
        Ok((params, s, grid))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub theta: f64,
    #[serde(rename = "l")]
    pub l_tilde: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KjConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub theta: Vec<f64>,
    #[serde(rename = "l")]
    pub l_tilde: Vec<f64>,
}

impl KjConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_grid("theta", &self.theta)?;
        check_grid("l", &self.l_tilde)
    }
}
