//! Master-equation trajectories with per-time observables.

use crate::error::{Error, Result};
use crate::hilbert::{expectation_rho, DensityMatrix, SparseOperator, StateVector};
use crate::linalg::CMat;
use crate::C64;

use super::model::LindbladModel;
use super::observables::fidelity_mixed;
use super::ode::{integrate_ode_with, OdeControls};
use super::propagate::{RationalControls, RationalPropagator};

/// A quantity recorded at every output time.
#[derive(Clone, Debug)]
pub enum Observable {
    Population { name: String, ket: StateVector },
    Fidelity { name: String, ket: StateVector },
    /// Uhlmann fidelity to a mixed target.
    MixedFidelity { name: String, target: DensityMatrix },
    Expectation { name: String, op: SparseOperator },
    Purity,
}

impl Observable {
    pub fn population(name: impl Into<String>, ket: &StateVector) -> Self {
        Observable::Population { name: name.into(), ket: ket.clone() }
    }

    pub fn fidelity(name: impl Into<String>, ket: &StateVector) -> Self {
        Observable::Fidelity { name: name.into(), ket: ket.clone() }
    }

    pub fn name(&self) -> &str {
        match self {
            Observable::Population { name, .. }
            | Observable::Fidelity { name, .. }
            | Observable::MixedFidelity { name, .. }
            | Observable::Expectation { name, .. } => name,
            Observable::Purity => "purity",
        }
    }

    fn eval(&self, rho: &DensityMatrix) -> Result<f64> {
        Ok(match self {
            Observable::Population { ket, .. } => rho.population(ket),
            Observable::Fidelity { ket, .. } => rho.population(ket).max(0.0).sqrt(),
            Observable::MixedFidelity { target, .. } => fidelity_mixed(target, rho)?,
            Observable::Expectation { op, .. } => expectation_rho(op, rho)?.re,
            Observable::Purity => rho.purity(),
        })
    }

    fn space_matches(&self, rho: &DensityMatrix) -> bool {
        match self {
            Observable::Population { ket, .. } | Observable::Fidelity { ket, .. } => ket.space() == rho.space(),
            Observable::MixedFidelity { target, .. } => target.space() == rho.space(),
            Observable::Expectation { op, .. } => op.space() == rho.space(),
            Observable::Purity => true,
        }
    }
}

/// Columns always appended after the requested observables.
pub const DIAGNOSTIC_COLUMNS: [&str; 3] = ["trace", "min_eig", "herm_err"];

/// Sampled observables along a trajectory. `rows[k]` holds the values at
/// `times[k]` in the order of `names`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub final_state: DensityMatrix,
}

impl Trajectory {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn series(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.column(name)?;
        Some(self.rows.iter().map(|r| r[c]).collect())
    }

    pub fn last(&self, name: &str) -> Option<f64> {
        let c = self.column(name)?;
        self.rows.last().map(|r| r[c])
    }

    /// Largest `|Tr rho - 1|` over the samples.
    pub fn max_trace_error(&self) -> f64 {
        self.series("trace").map_or(0.0, |s| s.iter().fold(0.0, |m, t| f64::max(m, (t - 1.0).abs())))
    }

    /// Smallest eigenvalue over the samples.
    pub fn min_eigenvalue(&self) -> f64 {
        self.series("min_eig").map_or(0.0, |s| s.iter().copied().fold(f64::INFINITY, f64::min))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Method {
    /// Dormand–Prince 5(4) with error control.
    Adaptive,
    /// Rational approximant of the propagator; time-independent models only.
    Rational(RationalControls),
}

#[derive(Clone, Debug)]
pub struct IntegratorControls {
    pub rtol: f64,
    pub atol: f64,
    pub method: Method,
    pub max_steps: usize,
}

impl Default for IntegratorControls {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, method: Method::Adaptive, max_steps: 10_000_000 }
    }
}

fn record(observables: &[Observable], rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut row = Vec::with_capacity(observables.len() + DIAGNOSTIC_COLUMNS.len());
    for o in observables {
        row.push(o.eval(rho)?);
    }
    row.push(rho.trace().re);
    row.push(rho.min_eigenvalue());
    row.push(rho.hermiticity_error());
    Ok(row)
}

/// Integrates `model` from `rho0` at `times[0]` through `times`.
pub fn integrate(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    times: &[f64],
    observables: &[Observable],
    controls: &IntegratorControls,
) -> Result<Trajectory> {
    if rho0.space() != model.space() {
        return Err(Error::SpaceMismatch);
    }
    if let Some(o) = observables.iter().find(|o| !o.space_matches(rho0)) {
        return Err(Error::InvalidParameter(format!("observable {} lives on another space", o.name())));
    }
    if times.is_empty() {
        return Err(Error::InvalidParameter("no output times".into()));
    }
    let n = model.dim();
    let space = model.space().clone();
    let mut names: Vec<String> = observables.iter().map(|o| o.name().to_string()).collect();
    names.extend(DIAGNOSTIC_COLUMNS.iter().map(|s| s.to_string()));
    let mut rows = Vec::with_capacity(times.len());

    let final_mat = match controls.method {
        Method::Adaptive => {
            let mut y = rho0.matrix().as_slice().to_vec();
            let ode = OdeControls {
                rtol: controls.rtol,
                atol: controls.atol,
                max_steps: controls.max_steps,
                ..OdeControls::default()
            };
            integrate_ode_with(
                |t, x, dx| model.apply_hermitian(t, x, dx),
                |x| hermitize_slice(x, n),
                &mut y,
                times,
                &ode,
                |_, x| {
                    let rho = DensityMatrix::new(&space, CMat::from_vec(n, n, x.to_vec()))?;
                    rows.push(record(observables, &rho)?);
                    Ok(())
                },
            )?;
            CMat::from_vec(n, n, y)
        }
        Method::Rational(rc) => {
            let mut prop = RationalPropagator::new(model, &rc)?;
            let mut cur = rho0.matrix().clone();
            cur.hermitize();
            rows.push(record(observables, &DensityMatrix::new(&space, cur.clone())?)?);
            for w in times.windows(2) {
                cur = prop.advance(&cur, w[1] - w[0], rc.max_step)?;
                rows.push(record(observables, &DensityMatrix::new(&space, cur.clone())?)?);
            }
            cur
        }
    };
    Ok(Trajectory { times: times.to_vec(), names, rows, final_state: DensityMatrix::new(&space, final_mat)? })
}

fn hermitize_slice(x: &mut [C64], n: usize) {
    for i in 0..n {
        x[i * n + i].im = 0.0;
        for j in (i + 1)..n {
            let a = 0.5 * (x[i * n + j] + x[j * n + i].conj());
            x[i * n + j] = a;
            x[j * n + i] = a.conj();
        }
    }
}

/// Uniform grid `0, dt, 2dt, ...` up to and including `t_end`.
pub fn uniform_times(t_end: f64, dt: f64) -> Vec<f64> {
    let steps = (t_end / dt).round().max(1.0) as usize;
    (0..=steps).map(|k| t_end * k as f64 / steps as f64).collect()
}
