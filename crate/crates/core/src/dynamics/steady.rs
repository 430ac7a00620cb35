//! Stationary states of master equations.

use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::DensityMatrix;
use crate::linalg::{gmres, CMat, GmresOptions, SylvesterSolver};
use crate::C64;

use super::integrate::{integrate, IntegratorControls, Method};
use super::model::LindbladModel;
use super::ode::{integrate_ode, OdeControls};
use super::propagate::RationalControls;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteadyMethod {
    /// Time integration until the residual or window rule is met.
    Integrate,
    /// GMRES on the trace-augmented generator; time-independent models only.
    Krylov,
    /// Dense null vector of the generator; dimension 64 or less.
    Direct,
}

#[derive(Clone, Debug)]
pub struct SteadyStateCriterion {
    /// Stop once `||L(rho)||_F` drops below this.
    pub tol_residual: f64,
    /// Length of the trailing window for the population-change rule.
    pub window: f64,
    /// Stop once no population moved more than this over the window.
    pub window_tol: f64,
    /// Model-time cap for integration.
    pub t_cap: f64,
    pub method: SteadyMethod,
    pub rtol: f64,
    pub atol: f64,
}

impl Default for SteadyStateCriterion {
    fn default() -> Self {
        Self {
            tol_residual: 1e-8,
            window: 100.0,
            window_tol: 1e-6,
            t_cap: 1e6,
            method: SteadyMethod::Integrate,
            rtol: 1e-8,
            atol: 1e-10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SteadyStateResult {
    pub state: DensityMatrix,
    /// `||L(rho)||_F` at the returned state.
    pub residual: f64,
    /// Model time spent integrating; zero for the algebraic methods.
    pub elapsed: f64,
    pub converged: bool,
}

/// `||L(rho)||_F` at `t`.
pub fn generator_residual(model: &LindbladModel, rho: &DensityMatrix, t: f64) -> f64 {
    let n = model.dim();
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    model.apply(t, rho.matrix().as_slice(), &mut out);
    out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Stationary state according to `criterion.method`. Non-convergence is
/// reported through the `converged` flag.
pub fn steady_state(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    criterion: &SteadyStateCriterion,
) -> Result<SteadyStateResult> {
    if model.channels().is_empty() {
        return Err(Error::InvalidParameter("steady state needs at least one collapse channel".into()));
    }
    match criterion.method {
        SteadyMethod::Integrate => steady_state_integrate(model, rho0, criterion),
        SteadyMethod::Krylov => steady_state_krylov(model, criterion.tol_residual),
        SteadyMethod::Direct => steady_state_direct(model),
    }
}

fn diagonal(rho: &DensityMatrix) -> Vec<f64> {
    let m = rho.matrix();
    (0..m.rows()).map(|i| m[(i, i)].re).collect()
}

/// Integrates in chunks of a tenth of the window. Converges when the
/// residual is below `tol_residual`, or when every diagonal element stayed
/// within `window_tol` of its value one full window earlier.
fn steady_state_integrate(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    criterion: &SteadyStateCriterion,
) -> Result<SteadyStateResult> {
    const CHUNKS_PER_WINDOW: usize = 10;
    let chunk = criterion.window / CHUNKS_PER_WINDOW as f64;
    let method = if model.is_time_independent() && model.dim() > 64 {
        Method::Rational(RationalControls { max_step: chunk, ..RationalControls::default() })
    } else {
        Method::Adaptive
    };
    let controls = IntegratorControls { rtol: criterion.rtol, atol: criterion.atol, method, ..Default::default() };
    let mut rho = rho0.clone();
    let mut t = 0.0;
    let mut history: VecDeque<Vec<f64>> = VecDeque::from([diagonal(&rho)]);
    loop {
        let residual = generator_residual(model, &rho, t);
        if residual < criterion.tol_residual {
            return Ok(SteadyStateResult { state: rho, residual, elapsed: t, converged: true });
        }
        if history.len() > CHUNKS_PER_WINDOW {
            let now = history.back().expect("nonempty");
            let moved = history
                .iter()
                .flat_map(|d| d.iter().zip(now).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if moved < criterion.window_tol {
                return Ok(SteadyStateResult { state: rho, residual, elapsed: t, converged: true });
            }
        }
        if t >= criterion.t_cap {
            return Ok(SteadyStateResult { state: rho, residual, elapsed: t, converged: false });
        }
        let traj = integrate(model, &rho, &[t, t + chunk], &[], &controls)?;
        rho = traj.final_state;
        t += chunk;
        history.push_back(diagonal(&rho));
        if history.len() > CHUNKS_PER_WINDOW + 1 {
            history.pop_front();
        }
    }
}

fn normalize(mut m: CMat) -> Result<CMat> {
    m.hermitize();
    let tr = m.trace().re;
    if !tr.is_finite() || tr.abs() < 1e-300 {
        return Err(Error::Solver("stationary solution has vanishing trace".into()));
    }
    Ok(m.scale(C64::new(1.0 / tr, 0.0)))
}

/// Solves `L(X) + Tr(X) I/n = I/n`, whose unique solution (for a unique
/// stationary state) is that state. Preconditioned on the right by the exact
/// inverse of `X -> M X + X M† - s X` with `M = -iK` and a small shift `s`.
pub fn steady_state_krylov(model: &LindbladModel, tol: f64) -> Result<SteadyStateResult> {
    if !model.is_time_independent() {
        return Err(Error::InvalidParameter("Krylov steady state needs a time-independent generator".into()));
    }
    const SHIFT: f64 = 1e-6;
    let n = model.dim();
    let m = model.k_dense(0.0).scale(C64::new(0.0, -1.0));
    let syl = SylvesterSolver::new(&m);
    let inv_n = C64::new(1.0 / n as f64, 0.0);
    let mut b = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        b[i * n + i] = inv_n;
    }
    let mut x = b.clone();
    let opts = GmresOptions { tol: 1e-13, restart: 80, max_iter: 2000 };
    let info = gmres(
        |v, out| {
            model.apply(0.0, v, out);
            let tr: C64 = (0..n).map(|i| v[i * n + i]).sum();
            for i in 0..n {
                out[i * n + i] += tr * inv_n;
            }
        },
        |v, out| syl.solve(C64::new(SHIFT, 0.0), v, out),
        &b,
        &mut x,
        opts,
    );
    let rho = DensityMatrix::new(model.space(), normalize(CMat::from_vec(n, n, x))?)?;
    let residual = generator_residual(model, &rho, 0.0);
    let converged = residual < tol || info.converged;
    Ok(SteadyStateResult { state: rho, residual, elapsed: 0.0, converged })
}

/// Null vector of the dense generator with the trace condition replacing one
/// (redundant) diagonal equation.
pub fn steady_state_direct(model: &LindbladModel) -> Result<SteadyStateResult> {
    if !model.is_time_independent() {
        return Err(Error::InvalidParameter("direct steady state needs a time-independent generator".into()));
    }
    let n = model.dim();
    let s = model.superoperator(0.0)?;
    let nn = n * n;
    let mut a = DMatrix::from_fn(nn, nn, |r, c| s[(r, c)]);
    let mut rhs = DMatrix::<C64>::zeros(nn, 1);
    for c in 0..nn {
        a[(0, c)] = C64::new(0.0, 0.0);
    }
    for i in 0..n {
        a[(0, i * n + i)] = C64::new(1.0, 0.0);
    }
    rhs[(0, 0)] = C64::new(1.0, 0.0);
    let sol = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Solver("generator has no unique stationary state".into()))?;
    let rho = DensityMatrix::new(model.space(), normalize(CMat::from_vec(n, n, sol.as_slice().to_vec()))?)?;
    let residual = generator_residual(model, &rho, 0.0);
    Ok(SteadyStateResult { state: rho, residual, elapsed: 0.0, converged: true })
}

/// Singular values (ascending) of the dense generator at time `t`. A single
/// value at roundoff level, separated from the rest, indicates a unique
/// stationary state.
pub fn generator_singular_values(model: &LindbladModel, t: f64) -> Result<Vec<f64>> {
    let s = model.superoperator(t)?;
    let mut sv: Vec<f64> = s.to_nalgebra().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    Ok(sv)
}

/// Dense one-period propagator `Φ` of a periodic generator on row-major
/// vectorized matrices, starting at `t0`; dimension 64 or less.
pub fn period_map(model: &LindbladModel, t0: f64, period: f64, controls: &OdeControls) -> Result<CMat> {
    let n = model.dim();
    if n > 64 {
        return Err(Error::InvalidParameter(format!("dense period map requested for dimension {n} (limit 64)")));
    }
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let nn = n * n;
    let mut phi = CMat::zeros(nn, nn);
    for c in 0..nn {
        let mut y = vec![C64::new(0.0, 0.0); nn];
        y[c] = C64::new(1.0, 0.0);
        integrate_ode(|t, x, dx| model.apply(t, x, dx), &mut y, &[t0, t0 + period], controls, |_, _| Ok(()))?;
        for (r, v) in y.iter().enumerate() {
            phi[(r, c)] = *v;
        }
    }
    Ok(phi)
}

/// Singular values (ascending) of `Φ - I` for a one-period propagator.
/// Periodic stationary states are its null vectors, so a single value at
/// roundoff level, separated from the rest, indicates a unique one.
pub fn fixed_point_singular_values(phi: &CMat) -> Vec<f64> {
    let a = phi.sub(&CMat::identity(phi.rows()));
    let mut sv: Vec<f64> = a.to_nalgebra().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    sv
}

/// Fixed point of the period map `phi` of `model`, with the trace condition
/// replacing one diagonal equation. `residual` is `||Φ(rho) - rho||_F`.
pub fn period_map_fixed_point(model: &LindbladModel, phi: &CMat) -> Result<SteadyStateResult> {
    let n = model.dim();
    let nn = n * n;
    if phi.rows() != nn || phi.cols() != nn {
        return Err(Error::SpaceMismatch);
    }
    let mut a = DMatrix::from_fn(nn, nn, |r, c| phi[(r, c)] - if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    let mut rhs = DMatrix::<C64>::zeros(nn, 1);
    for c in 0..nn {
        a[(0, c)] = C64::new(0.0, 0.0);
    }
    for i in 0..n {
        a[(0, i * n + i)] = C64::new(1.0, 0.0);
    }
    rhs[(0, 0)] = C64::new(1.0, 0.0);
    let sol = a.lu().solve(&rhs).ok_or_else(|| Error::Solver("period map has no unique fixed point".into()))?;
    let x = normalize(CMat::from_vec(n, n, sol.as_slice().to_vec()))?;
    let mut image = vec![C64::new(0.0, 0.0); nn];
    for (r, out) in image.iter_mut().enumerate() {
        *out = (0..nn).map(|c| phi[(r, c)] * x.as_slice()[c]).sum();
    }
    let residual = image.iter().zip(x.as_slice()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    Ok(SteadyStateResult { state: DensityMatrix::new(model.space(), x)?, residual, elapsed: 0.0, converged: true })
}
