//! Adaptive Dormand–Prince 5(4) integration of complex ODE systems.

use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Debug)]
pub struct OdeControls {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; estimated from the right-hand side when `None`.
    pub h_init: Option<f64>,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeControls {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, h_init: None, h_max: f64::INFINITY, max_steps: 10_000_000 }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn err_norm(err: &[C64], y0: &[C64], y1: &[C64], rtol: f64, atol: f64) -> f64 {
    let s: f64 = err
        .iter()
        .zip(y0.iter().zip(y1))
        .map(|(e, (a, b))| {
            let sc = atol + rtol * a.norm().max(b.norm());
            (e.norm() / sc).powi(2)
        })
        .sum();
    (s / err.len().max(1) as f64).sqrt()
}

/// Integrates `dy/dt = f(t, y)` through the increasing output `times`
/// (the first entry is the initial time). After every accepted step
/// `post_step` may project the state (e.g. restore Hermiticity); at every
/// output time `sample` receives the state.
pub fn integrate_ode_with(
    mut f: impl FnMut(f64, &[C64], &mut [C64]),
    mut post_step: impl FnMut(&mut [C64]),
    y: &mut [C64],
    times: &[f64],
    controls: &OdeControls,
    mut sample: impl FnMut(f64, &[C64]) -> Result<()>,
) -> Result<OdeStats> {
    let n = y.len();
    let mut stats = OdeStats::default();
    let Some(&t0) = times.first() else {
        return Ok(stats);
    };
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("output times must be nondecreasing".into()));
    }
    let zero = C64::new(0.0, 0.0);
    let mut k: Vec<Vec<C64>> = vec![vec![zero; n]; 7];
    let mut ytmp = vec![zero; n];
    let mut ynew = vec![zero; n];
    let mut errv = vec![zero; n];
    let (rtol, atol) = (controls.rtol, controls.atol);

    let mut t = t0;
    f(t, y, &mut k[0]);
    stats.rhs_evals += 1;

    let mut h = match controls.h_init {
        Some(h) => h,
        None => {
            let d0 = err_norm(y, y, y, rtol, atol);
            let d1 = err_norm(&k[0], y, y, rtol, atol);
            let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
            for i in 0..n {
                ytmp[i] = y[i] + k[0][i] * h0;
            }
            f(t + h0, &ytmp, &mut k[1]);
            stats.rhs_evals += 1;
            for i in 0..n {
                errv[i] = k[1][i] - k[0][i];
            }
            let d2 = err_norm(&errv, y, y, rtol, atol) / h0;
            let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
            (100.0 * h0).min(h1)
        }
    };
    h = h.min(controls.h_max);
    sample(t, y)?;

    for &t_out in &times[1..] {
        while t < t_out {
            if stats.accepted + stats.rejected >= controls.max_steps {
                return Err(Error::ToleranceNotMet { t, target: t_out, steps: controls.max_steps });
            }
            let remaining = t_out - t;
            let last = h >= remaining;
            let hs = if last { remaining } else { h };
            if hs <= 16.0 * f64::EPSILON * t.abs().max(1.0) && !last {
                return Err(Error::StepSizeUnderflow { t, h: hs });
            }

            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        let a = A[s][j];
                        if a != 0.0 {
                            acc += kj[i] * (a * hs);
                        }
                    }
                    ytmp[i] = acc;
                }
                f(t + C[s] * hs, &ytmp, &mut k[s]);
                stats.rhs_evals += 1;
            }
            // Stage 7 is evaluated at the fifth-order solution (FSAL).
            ynew.copy_from_slice(&ytmp);
            for i in 0..n {
                let mut e = zero;
                for (j, kj) in k.iter().enumerate() {
                    if E[j] != 0.0 {
                        e += kj[i] * E[j];
                    }
                }
                errv[i] = e * hs;
            }
            let err = err_norm(&errv, y, &ynew, rtol, atol);
            if err <= 1.0 {
                t = if last { t_out } else { t + hs };
                post_step(&mut ynew);
                y.copy_from_slice(&ynew);
                f(t, y, &mut k[0]);
                stats.rhs_evals += 1;
                stats.accepted += 1;
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last || fac < 1.0 {
                    h = (hs * fac).min(controls.h_max);
                }
            } else {
                stats.rejected += 1;
                let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
                h = hs * fac;
            }
        }
        sample(t, y)?;
    }
    Ok(stats)
}

/// [`integrate_ode_with`] without a post-step projection.
pub fn integrate_ode(
    f: impl FnMut(f64, &[C64], &mut [C64]),
    y: &mut [C64],
    times: &[f64],
    controls: &OdeControls,
    sample: impl FnMut(f64, &[C64]) -> Result<()>,
) -> Result<OdeStats> {
    integrate_ode_with(f, |_| {}, y, times, controls, sample)
}
