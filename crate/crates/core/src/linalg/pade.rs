//! Padé approximants of `exp` in partial-fraction form.

use super::dense::{CMat, Schur};
use crate::C64;

/// `R(z) = c0 + sum_i r_i / (z - p_i)`, the `[m/n]` Padé approximant of `e^z`
/// with `m <= n`.
#[derive(Clone, Debug)]
pub struct PadeExp {
    pub c0: f64,
    pub poles: Vec<C64>,
    pub residues: Vec<C64>,
}

/// Coefficients `a_j = (m+n-j)! d! / ((m+n)! j! (d-j)!)`, `j = 0..=d`.
fn pade_coeffs(d: usize, total: usize) -> Vec<f64> {
    let mut c = vec![1.0];
    for j in 0..d {
        let ratio = (d - j) as f64 / (((total - j) * (j + 1)) as f64);
        c.push(c[j] * ratio);
    }
    c
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}

impl PadeExp {
    /// Diagonal `[k/k]` approximant.
    pub fn diagonal(k: usize) -> Self {
        Self::new(k, k)
    }

    /// Panics unless `1 <= n` and `m <= n`.
    pub fn new(m: usize, n: usize) -> Self {
        assert!(n >= 1 && m <= n, "need 1 <= n and m <= n");
        let num: Vec<C64> = pade_coeffs(m, m + n).into_iter().map(|c| C64::new(c, 0.0)).collect();
        let den: Vec<C64> = pade_coeffs(n, m + n)
            .into_iter()
            .enumerate()
            .map(|(j, c)| C64::new(if j % 2 == 0 { c } else { -c }, 0.0))
            .collect();
        let dden: Vec<C64> = den.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect();

        let lead = den[n];
        let comp = CMat::from_fn(n, n, |i, j| {
            if i == 0 {
                -den[n - 1 - j] / lead
            } else if j + 1 == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let mut poles = Schur::new(&comp).eigenvalues();
        for p in poles.iter_mut() {
            for _ in 0..3 {
                let step = horner(&den, *p) / horner(&dden, *p);
                *p -= step;
            }
        }
        poles.sort_by(|a, b| a.im.total_cmp(&b.im));
        let residues = poles.iter().map(|p| horner(&num, *p) / horner(&dden, *p)).collect();
        let c0 = if m < n {
            0.0
        } else if n % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        Self { c0, poles, residues }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.poles
            .iter()
            .zip(&self.residues)
            .fold(C64::new(self.c0, 0.0), |acc, (p, r)| acc + r / (z - p))
    }
}
