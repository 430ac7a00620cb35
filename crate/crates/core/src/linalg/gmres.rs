//! Restarted GMRES with right preconditioning.

use crate::C64;

#[derive(Clone, Copy, Debug)]
pub struct GmresOptions {
    /// Target for `||b - A x|| / ||b||`.
    pub tol: f64,
    pub restart: usize,
    pub max_iter: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { tol: 1e-10, restart: 40, max_iter: 400 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GmresInfo {
    pub iterations: usize,
    pub relative_residual: f64,
    pub converged: bool,
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Solves `A x = b` with right preconditioner `M ~ A^{-1}`; `x` holds the
/// initial guess on entry.
pub fn gmres(
    mut apply_a: impl FnMut(&[C64], &mut [C64]),
    mut apply_m: impl FnMut(&[C64], &mut [C64]),
    b: &[C64],
    x: &mut [C64],
    opts: GmresOptions,
) -> GmresInfo {
    let n = b.len();
    let zero = C64::new(0.0, 0.0);
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = zero);
        return GmresInfo { iterations: 0, relative_residual: 0.0, converged: true };
    }
    let m = opts.restart.max(1);
    let mut r = vec![zero; n];
    let mut w = vec![zero; n];
    let mut z = vec![zero; n];
    let mut total = 0;
    let mut rel;

    while total < opts.max_iter {
        apply_a(x, &mut r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        let beta = norm(&r);
        rel = beta / bnorm;
        if rel <= opts.tol {
            return GmresInfo { iterations: total, relative_residual: rel, converged: true };
        }

        let mut basis: Vec<Vec<C64>> = Vec::with_capacity(m + 1);
        basis.push(r.iter().map(|v| v / beta).collect());
        let mut h = vec![vec![zero; m]; m + 1];
        let mut cs = vec![0.0; m];
        let mut sn = vec![zero; m];
        let mut g = vec![zero; m + 1];
        g[0] = C64::new(beta, 0.0);
        let mut used = 0;

        for j in 0..m {
            apply_m(&basis[j], &mut z);
            apply_a(&z, &mut w);
            for _pass in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let hij = dot(v, &w);
                    h[i][j] += hij;
                    for (wk, vk) in w.iter_mut().zip(v) {
                        *wk -= hij * vk;
                    }
                }
            }
            let hn = norm(&w);
            h[j + 1][j] = C64::new(hn, 0.0);

            for i in 0..j {
                let a = h[i][j];
                let bb = h[i + 1][j];
                h[i][j] = cs[i] * a + sn[i] * bb;
                h[i + 1][j] = -sn[i].conj() * a + cs[i] * bb;
            }
            let a = h[j][j];
            let bb = h[j + 1][j];
            let rr = (a.norm_sqr() + bb.norm_sqr()).sqrt();
            if rr == 0.0 {
                cs[j] = 1.0;
                sn[j] = zero;
            } else if a.norm() == 0.0 {
                cs[j] = 0.0;
                sn[j] = C64::new(1.0, 0.0);
            } else {
                cs[j] = a.norm() / rr;
                sn[j] = (a / a.norm()) * bb.conj() / rr;
            }
            h[j][j] = cs[j] * a + sn[j] * bb;
            h[j + 1][j] = zero;
            let gj = g[j];
            g[j] = cs[j] * gj;
            g[j + 1] = -sn[j].conj() * gj;

            used = j + 1;
            total += 1;
            rel = g[j + 1].norm() / bnorm;
            if rel <= opts.tol || total >= opts.max_iter || hn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / hn).collect());
        }

        let mut y = vec![zero; used];
        for i in (0..used).rev() {
            let mut acc = g[i];
            for k in i + 1..used {
                acc -= h[i][k] * y[k];
            }
            y[i] = acc / h[i][i];
        }
        let mut vy = vec![zero; n];
        for (yi, v) in y.iter().zip(&basis) {
            for (a, b) in vy.iter_mut().zip(v) {
                *a += yi * b;
            }
        }
        apply_m(&vy, &mut z);
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi += zi;
        }
    }

    apply_a(x, &mut r);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    rel = norm(&r) / bnorm;
    GmresInfo { iterations: total, relative_residual: rel, converged: rel <= opts.tol }
}
