use std::fmt;

use crate::error::{Error, Result};

/// Unit system of a [`ModelParams`] instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    /// Multiples of the reference coupling `g` (time in units of `1/g`).
    G,
    /// Angular frequencies given as `2π × MHz` (the stored number is the MHz value).
    Mhz2Pi,
}

impl Units {
    pub fn as_str(self) -> &'static str {
        match self {
            Units::G => "g",
            Units::Mhz2Pi => "mhz",
        }
    }

    pub fn parse(s: &str) -> Option<Units> {
        match s.trim() {
            "g" => Some(Units::G),
            "mhz" => Some(Units::Mhz2Pi),
            _ => None,
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Units::G => "g-units",
            Units::Mhz2Pi => "2pi x MHz",
        })
    }
}

/// Physical parameters of the three-atom model.
///
/// Pair shifts are ordered `[U12, U13, U23]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub units: Units,
    pub g: [f64; 3],
    pub omega: f64,
    pub delta: [f64; 3],
    pub omega_r: f64,
    pub delta_cap: f64,
    pub u: [f64; 3],
    pub gamma_e: f64,
    pub gamma_r: f64,
    pub kappa: f64,
    /// Adds the counter-shift that cancels the Rydberg-drive light shift of
    /// the ground manifold (see [`crate::model::build_stark_compensation`]).
    pub stark_cancellation: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            units: Units::G,
            g: [1.0; 3],
            omega: 0.0,
            delta: [0.0; 3],
            omega_r: 0.0,
            delta_cap: 0.0,
            u: [0.0; 3],
            gamma_e: 0.0,
            gamma_r: 0.0,
            kappa: 0.0,
            stark_cancellation: false,
        }
    }
}

impl ModelParams {
    /// Light shifts `(-d, 2d, -d)`.
    pub fn symmetric_delta(d: f64) -> [f64; 3] {
        [-d, 2.0 * d, -d]
    }

    pub fn require_g_units(&self) -> Result<()> {
        if self.units != Units::G {
            return Err(Error::UnitsMismatch { expected: Units::G.to_string(), found: self.units.to_string() });
        }
        Ok(())
    }

    /// Rates must be nonnegative and every field finite.
    pub fn validate(&self) -> Result<()> {
        let all = self
            .g
            .iter()
            .chain(&self.delta)
            .chain(&self.u)
            .chain([&self.omega, &self.omega_r, &self.delta_cap, &self.gamma_e, &self.gamma_r, &self.kappa]);
        if all.into_iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite parameter".into()));
        }
        for (name, r) in [("gamma_e", self.gamma_e), ("gamma_r", self.gamma_r), ("kappa", self.kappa)] {
            if r < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be nonnegative")));
            }
        }
        Ok(())
    }

    /// Converts to g-units by dividing every frequency by `g_ref` (expressed
    /// in this instance's units). A g-unit instance is returned unchanged.
    pub fn to_g_units(&self, g_ref: f64) -> Result<ModelParams> {
        if self.units == Units::G {
            return Ok(self.clone());
        }
        if !(g_ref.is_finite() && g_ref > 0.0) {
            return Err(Error::InvalidParameter("reference coupling must be positive".into()));
        }
        let s = |x: f64| x / g_ref;
        Ok(ModelParams {
            units: Units::G,
            g: self.g.map(s),
            omega: s(self.omega),
            delta: self.delta.map(s),
            omega_r: s(self.omega_r),
            delta_cap: s(self.delta_cap),
            u: self.u.map(s),
            gamma_e: s(self.gamma_e),
            gamma_r: s(self.gamma_r),
            kappa: s(self.kappa),
            stark_cancellation: self.stark_cancellation,
        })
    }

    /// True when all pair shifts equal the detuning, the working point of the
    /// Rydberg pumping.
    pub fn has_u_equal_delta(&self) -> bool {
        self.u.iter().all(|&u| (u - self.delta_cap).abs() <= 1e-12 * self.delta_cap.abs().max(1.0))
    }
}
