//! Flat `key = value` scenario configuration.
//!
//! Frequencies are given in the declared units (`g` or `mhz`, meaning
//! `2π × MHz`). Times (`tmax`) are always in units of `1/g1`.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Units};

use super::presets;

/// Which master equation a custom run integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Atoms with `{0, 1, e, r}` and the cavity.
    Full,
    /// The reduced 32-state effective model.
    Effective,
    /// Atoms with `{0, 1, e}` and the cavity, no Rydberg level.
    ZpumpOnly,
    /// The symmetric four-state Rydberg ladder.
    Symmetric4x4,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Full => "full",
            ModelKind::Effective => "effective",
            ModelKind::ZpumpOnly => "zpump-only",
            ModelKind::Symmetric4x4 => "symmetric-4x4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [ModelKind::Full, ModelKind::Effective, ModelKind::ZpumpOnly, ModelKind::Symmetric4x4]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialState {
    /// Uniform mixture of the eight qubit product states.
    FullyMixed,
    /// A basis ket given by its label, e.g. `111` or `111,0`.
    Ket(String),
    /// A named state such as `GHZ-`.
    Named(String),
}

impl InitialState {
    pub fn emit(&self) -> String {
        match self {
            InitialState::FullyMixed => "fully-mixed".into(),
            InitialState::Ket(l) => format!("ket:{l}"),
            InitialState::Named(n) => format!("named:{n}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "fully-mixed" {
            return Some(InitialState::FullyMixed);
        }
        if let Some(l) = s.strip_prefix("ket:") {
            return Some(InitialState::Ket(l.to_string()));
        }
        s.strip_prefix("named:").map(|n| InitialState::Named(n.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: String,
    /// Parameters in their declared units.
    pub params: ModelParams,
    pub model: ModelKind,
    pub initial: InitialState,
    pub cutoff: usize,
    pub tmax: f64,
    /// Number of output intervals over `[0, tmax]`.
    pub grid: usize,
    pub rtol: f64,
    pub atol: f64,
    pub out_dir: PathBuf,
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>().map_err(|_| Error::Config(format!("{key}: not a number: {v}")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|x| parse_f64(key, x.trim())).collect()
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got {v}"))),
    }
}

impl ScenarioConfig {
    /// Parameters converted to g-units (reference `g1`).
    pub fn g_params(&self) -> Result<ModelParams> {
        self.params.to_g_units(self.params.g[0])
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are ignored; unknown keys are errors.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Sets one key.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        let p = &mut self.params;
        let mhz = p.units == Units::Mhz2Pi;
        match key {
            "scenario" => self.scenario = v.to_string(),
            "units" => {
                p.units = Units::parse(v).ok_or_else(|| Error::Config(format!("units: expected g or mhz, got {v}")))?
            }
            "g_mhz" | "g" if (key == "g_mhz") == mhz => p.g = [parse_f64(key, v)?; 3],
            "g1_mhz" | "g1" if (key == "g1_mhz") == mhz => p.g[0] = parse_f64(key, v)?,
            "g2_mhz" | "g2" if (key == "g2_mhz") == mhz => p.g[1] = parse_f64(key, v)?,
            "g3_mhz" | "g3" if (key == "g3_mhz") == mhz => p.g[2] = parse_f64(key, v)?,
            "g_mhz" | "g1_mhz" | "g2_mhz" | "g3_mhz" | "g" | "g1" | "g2" | "g3" => {
                return Err(Error::Config(format!("{key} does not match units = {}", p.units.as_str())))
            }
            "omega" => p.omega = parse_f64(key, v)?,
            "delta1" => p.delta[0] = parse_f64(key, v)?,
            "delta2" => p.delta[1] = parse_f64(key, v)?,
            "delta3" => p.delta[2] = parse_f64(key, v)?,
            "omega_r" => p.omega_r = parse_f64(key, v)?,
            "delta_cap" => p.delta_cap = parse_f64(key, v)?,
            "u" => {
                p.u = match parse_list(key, v)?.as_slice() {
                    [x] => [*x; 3],
                    [a, b, c] => [*a, *b, *c],
                    _ => return Err(Error::Config("u: expected one value or three (U12, U13, U23)".into())),
                }
            }
            "gamma_e" => p.gamma_e = parse_f64(key, v)?,
            "gamma_r" => p.gamma_r = parse_f64(key, v)?,
            "kappa" => p.kappa = parse_f64(key, v)?,
            "stark_cancel" => p.stark_cancellation = parse_bool(key, v)?,
            "model" => {
                self.model = ModelKind::parse(v).ok_or_else(|| Error::Config(format!("model: unknown kind {v}")))?
            }
            "initial" => {
                self.initial =
                    InitialState::parse(v).ok_or_else(|| Error::Config(format!("initial: cannot parse {v}")))?
            }
            "cutoff" => self.cutoff = v.parse().map_err(|_| Error::Config(format!("cutoff: not an integer: {v}")))?,
            "tmax" => self.tmax = parse_f64(key, v)?,
            "grid" => self.grid = v.parse().map_err(|_| Error::Config(format!("grid: not an integer: {v}")))?,
            "rtol" => self.rtol = parse_f64(key, v)?,
            "atol" => self.atol = parse_f64(key, v)?,
            "out_dir" => self.out_dir = PathBuf::from(v),
            _ => return Err(Error::Config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// Parses a complete configuration. Keys absent from `text` keep the
    /// defaults of the named scenario (`custom` when no scenario is given).
    pub fn parse(text: &str) -> Result<Self> {
        let scenario = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find_map(|l| l.split_once('=').filter(|(k, _)| k.trim() == "scenario").map(|(_, v)| v.trim().to_string()))
            .unwrap_or_else(|| "custom".to_string());
        let mut cfg = presets::preset(&scenario)?;
        // Units come first so that the coupling keys can be checked against them.
        if let Some(u) = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find_map(|l| l.split_once('=').filter(|(k, _)| k.trim() == "units").map(|(_, v)| v.trim().to_string()))
        {
            cfg.set("units", &u)?;
        }
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        presets::check_scenario_name(&self.scenario)?;
        if !(self.tmax.is_finite() && self.tmax > 0.0) {
            return Err(Error::Config("tmax must be positive".into()));
        }
        if self.grid == 0 {
            return Err(Error::Config("grid must be at least 1".into()));
        }
        if self.cutoff == 0 && matches!(self.model, ModelKind::Full | ModelKind::ZpumpOnly) {
            return Err(Error::Config("cutoff must be at least 1 for cavity models".into()));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if !(self.params.g[0] > 0.0) {
            return Err(Error::Config("g1 must be positive".into()));
        }
        self.params.validate()
    }

    /// Every key, one per line, in a form [`ScenarioConfig::parse`] reads
    /// back to an equal value.
    pub fn emit(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("scenario", self.scenario.clone());
        kv("units", p.units.as_str().into());
        let suffix = if p.units == Units::Mhz2Pi { "_mhz" } else { "" };
        for (i, g) in p.g.iter().enumerate() {
            kv(&format!("g{}{suffix}", i + 1), format!("{g:?}"));
        }
        kv("omega", format!("{:?}", p.omega));
        for (i, d) in p.delta.iter().enumerate() {
            kv(&format!("delta{}", i + 1), format!("{d:?}"));
        }
        kv("omega_r", format!("{:?}", p.omega_r));
        kv("delta_cap", format!("{:?}", p.delta_cap));
        kv("u", format!("{:?}, {:?}, {:?}", p.u[0], p.u[1], p.u[2]));
        kv("gamma_e", format!("{:?}", p.gamma_e));
        kv("gamma_r", format!("{:?}", p.gamma_r));
        kv("kappa", format!("{:?}", p.kappa));
        kv("stark_cancel", p.stark_cancellation.to_string());
        kv("model", self.model.as_str().into());
        kv("initial", self.initial.emit());
        kv("cutoff", self.cutoff.to_string());
        kv("tmax", format!("{:?}", self.tmax));
        kv("grid", self.grid.to_string());
        kv("rtol", format!("{:?}", self.rtol));
        kv("atol", format!("{:?}", self.atol));
        kv("out_dir", self.out_dir.display().to_string());
        s
    }
}
