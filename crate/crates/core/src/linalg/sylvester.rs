//! Shifted Sylvester solves `K Y + Y K† - s Y = B` through a cached complex
//! Schur form of `K`. These exact solves serve as preconditioners for the
//! Lindblad generator, whose jump sandwiches are a low-rank perturbation of
//! the Sylvester part.

use super::dense::{gemm, CMat, Op, Schur};
use crate::C64;

pub struct SylvesterSolver {
    schur: Schur,
}

impl SylvesterSolver {
    pub fn new(k: &CMat) -> Self {
        assert!(k.is_square());
        Self { schur: Schur::new(k) }
    }

    pub fn dim(&self) -> usize {
        self.schur.t.rows()
    }

    /// Solves `K Y + Y K† - s Y = B` for row-major `n x n` buffers.
    pub fn solve(&self, s: C64, b: &[C64], y: &mut [C64]) {
        let n = self.dim();
        let q = &self.schur.q;
        let t = &self.schur.t;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);

        let bm = CMat::from_vec(n, n, b.to_vec());
        let mut tmp = CMat::zeros(n, n);
        gemm(one, q, Op::H, &bm, Op::N, zero, &mut tmp);
        let mut c = CMat::zeros(n, n);
        gemm(one, &tmp, Op::N, q, Op::N, zero, &mut c);

        // Column j of Z is row j of `zt`; T† is lower triangular, so columns
        // are resolved from the last one backwards.
        let ct = c.transpose();
        let mut zt = CMat::zeros(n, n);
        let mut rhs = vec![zero; n];
        for j in (0..n).rev() {
            rhs.copy_from_slice(ct.row(j));
            for k in j + 1..n {
                let f = t[(j, k)].conj();
                if f == zero {
                    continue;
                }
                let zk = &zt.as_slice()[k * n..(k + 1) * n];
                for (r, z) in rhs.iter_mut().zip(zk) {
                    *r -= f * z;
                }
            }
            let shift = t[(j, j)].conj() - s;
            let zj = &mut zt.as_mut_slice()[j * n..(j + 1) * n];
            for i in (0..n).rev() {
                let row = t.row(i);
                let mut acc = rhs[i];
                for l in i + 1..n {
                    acc -= row[l] * zj[l];
                }
                zj[i] = acc / (row[i] + shift);
            }
        }

        let z = zt.transpose();
        gemm(one, q, Op::N, &z, Op::N, zero, &mut tmp);
        let mut out = CMat::zeros(n, n);
        gemm(one, &tmp, Op::N, q, Op::H, zero, &mut out);
        y.copy_from_slice(out.as_slice());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_shifted_sylvester_equation() {
        let n = 6;
        let k = CMat::from_fn(n, n, |i, j| {
            let x = (i * 7 + j * 3) as f64;
            C64::new((x * 0.37).sin(), (x * 0.11).cos()) - if i == j { C64::new(2.0, 0.0) } else { C64::new(0.0, 0.0) }
        });
        let b = CMat::from_fn(n, n, |i, j| C64::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.05));
        let s = C64::new(0.3, -0.7);
        let solver = SylvesterSolver::new(&k);
        let mut y = vec![C64::new(0.0, 0.0); n * n];
        solver.solve(s, b.as_slice(), &mut y);
        let y = CMat::from_vec(n, n, y);
        let lhs = k.matmul(&y).add(&y.matmul(&k.adjoint())).sub(&y.scale(s));
        assert!(lhs.sub(&b).max_abs() < 1e-12);
    }
}
