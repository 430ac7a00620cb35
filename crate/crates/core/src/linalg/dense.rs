use std::ops::{Index, IndexMut};

use matrixmultiply::CGemmOption;
use nalgebra::DMatrix;

use crate::C64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "buffer length does not match shape");
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |A - A†|.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut err: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    /// Replaces the matrix by (A + A†)/2.
    pub fn hermitize(&mut self) {
        let n = self.rows;
        for i in 0..n {
            self.data[i * n + i].im = 0.0;
            for j in i + 1..n {
                let avg = (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5;
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg.conj();
            }
        }
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows, other.cols);
        gemm(C64::new(1.0, 0.0), self, Op::N, other, Op::N, C64::new(0.0, 0.0), &mut out);
        out
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> CMat {
        CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Operand transform for [`gemm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    N,
    /// Conjugate transpose.
    H,
}

/// `c <- alpha * op(a) * op(b) + beta * c`.
pub fn gemm(alpha: C64, a: &CMat, op_a: Op, b: &CMat, op_b: Op, beta: C64, c: &mut CMat) {
    // The kernel has no conjugation flag, so adjoint operands are materialized.
    let a_h;
    let a = match op_a {
        Op::N => a,
        Op::H => {
            a_h = a.adjoint();
            &a_h
        }
    };
    let b_h;
    let b = match op_b {
        Op::N => b,
        Op::H => {
            b_h = b.adjoint();
            &b_h
        }
    };
    let (m, k, rsa, csa) = (a.rows, a.cols, a.cols as isize, 1);
    let (kb, n, rsb, csb) = (b.rows, b.cols, b.cols as isize, 1);
    assert_eq!(k, kb, "inner dimensions differ");
    assert_eq!((c.rows, c.cols), (m, n), "output shape differs");
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: Complex<f64> is repr(C) with layout [re, im], matching [f64; 2];
    // the strides above describe the row-major buffers exactly.
    unsafe {
        matrixmultiply::zgemm(
            CGemmOption::Standard,
            CGemmOption::Standard,
            m,
            k,
            n,
            [alpha.re, alpha.im],
            a.data.as_ptr() as *const [f64; 2],
            rsa,
            csa,
            b.data.as_ptr() as *const [f64; 2],
            rsb,
            csb,
            [beta.re, beta.im],
            c.data.as_mut_ptr() as *mut [f64; 2],
            c.cols as isize,
            1,
        );
    }
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn herm_eigenvalues(a: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = a.to_nalgebra().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matrix whose columns are the matching orthonormal eigenvectors.
pub fn herm_eigh(a: &CMat) -> (Vec<f64>, CMat) {
    let eig = a.to_nalgebra().symmetric_eigen();
    let mut order: Vec<usize> = (0..a.rows).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(a.rows, a.rows, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vecs)
}

/// Complex Schur form `A = Q T Q†` with `T` upper triangular.
pub struct Schur {
    pub q: CMat,
    pub t: CMat,
}

impl Schur {
    pub fn new(a: &CMat) -> Self {
        let (q, t) = a.to_nalgebra().schur().unpack();
        let mut t = CMat::from_nalgebra(&t);
        let n = t.rows;
        for i in 1..n {
            for j in 0..i {
                t[(i, j)] = C64::new(0.0, 0.0);
            }
        }
        Self { q: CMat::from_nalgebra(&q), t }
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        (0..self.t.rows).map(|i| self.t[(i, i)]).collect()
    }
}
