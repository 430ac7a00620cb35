//! Large-step propagation of time-independent generators through a rational
//! approximant of `exp(hL)`.
//!
//! `R(hL) rho = c0 rho + sum_i (r_i/h) (L - p_i/h)^{-1} rho`. Each shifted
//! solve runs GMRES preconditioned by the exact inverse of the Sylvester part
//! `X -> M X + X M† - s X` with `M = -iK`, so only the jump sandwiches remain
//! for the Krylov iteration. The default approximant is the `[k-1/k]` Padé
//! form, which damps infinitely fast modes.

use crate::error::{Error, Result};
use crate::linalg::{gmres, CMat, GmresOptions, PadeExp, SylvesterSolver};
use crate::C64;

use super::model::LindbladModel;

#[derive(Clone, Copy, Debug)]
pub struct RationalControls {
    /// Largest step; output intervals are split into equal substeps.
    pub max_step: f64,
    /// Denominator degree `k` of the `[k-1/k]` approximant.
    pub order: usize,
    pub gmres_tol: f64,
}

impl Default for RationalControls {
    fn default() -> Self {
        Self { max_step: 200.0, order: 5, gmres_tol: 1e-12 }
    }
}

pub struct RationalPropagator<'a> {
    model: &'a LindbladModel,
    sylvester: SylvesterSolver,
    pade: PadeExp,
    opts: GmresOptions,
    pub gmres_iterations: usize,
}

impl<'a> RationalPropagator<'a> {
    pub fn new(model: &'a LindbladModel, controls: &RationalControls) -> Result<Self> {
        if !model.is_time_independent() {
            return Err(Error::InvalidParameter("rational propagation needs a time-independent generator".into()));
        }
        let m = model.k_dense(0.0).scale(C64::new(0.0, -1.0));
        Ok(Self {
            model,
            sylvester: SylvesterSolver::new(&m),
            pade: PadeExp::new(controls.order.saturating_sub(1), controls.order),
            opts: GmresOptions { tol: controls.gmres_tol, restart: 60, max_iter: 600 },
            gmres_iterations: 0,
        })
    }

    /// Solves `(L - s) Y = B`.
    pub fn shifted_solve(&mut self, s: C64, b: &[C64]) -> Result<Vec<C64>> {
        let nn = b.len();
        let model = self.model;
        let syl = &self.sylvester;
        let mut y = vec![C64::new(0.0, 0.0); nn];
        let info = gmres(
            |x, out| {
                model.apply(0.0, x, out);
                for (o, xi) in out.iter_mut().zip(x) {
                    *o -= s * xi;
                }
            },
            |x, out| syl.solve(s, x, out),
            b,
            &mut y,
            self.opts,
        );
        self.gmres_iterations += info.iterations;
        if !info.converged {
            return Err(Error::Solver(format!(
                "GMRES stalled at relative residual {:e} after {} iterations",
                info.relative_residual, info.iterations
            )));
        }
        Ok(y)
    }

    /// One step of length `h` applied to a Hermitian `rho`.
    pub fn step(&mut self, rho: &CMat, h: f64) -> Result<CMat> {
        let n = rho.rows();
        let mut out = rho.scale(C64::new(self.pade.c0, 0.0));
        let poles = self.pade.poles.clone();
        let residues = self.pade.residues.clone();
        for (p, r) in poles.iter().zip(&residues) {
            // For Hermitian input the conjugate pole contributes the adjoint.
            if p.im < -1e-12 {
                continue;
            }
            let y = self.shifted_solve(p / h, rho.as_slice())?;
            let y = CMat::from_vec(n, n, y).scale(r / h);
            if p.im > 1e-12 {
                out = out.add(&y).add(&y.adjoint());
            } else {
                out = out.add(&y);
            }
        }
        out.hermitize();
        Ok(out)
    }

    /// Propagates over `dt` using equal substeps no longer than `max_step`.
    pub fn advance(&mut self, rho: &CMat, dt: f64, max_step: f64) -> Result<CMat> {
        if dt <= 0.0 {
            return Ok(rho.clone());
        }
        let steps = (dt / max_step).ceil().max(1.0) as usize;
        let h = dt / steps as f64;
        let mut cur = rho.clone();
        for _ in 0..steps {
            cur = self.step(&cur, h)?;
        }
        Ok(cur)
    }
}
