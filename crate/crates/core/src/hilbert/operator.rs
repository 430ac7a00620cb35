use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::C64;

use super::space::{Level, SpaceSpec};
use super::state::{DensityMatrix, StateVector};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Complex sparse operator in compressed-row form, tagged with its space.
///
/// Construction goes through coordinate triplets; duplicates are summed and
/// exact zeros dropped, so each stored `(row, col)` pair is unique.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    space: SpaceSpec,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
    hermitian_hint: bool,
}

/// Equality compares space and stored entries; the Hermitian hint is ignored.
impl PartialEq for SparseOperator {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.indptr == other.indptr
            && self.indices == other.indices
            && self.values == other.values
    }
}

impl SparseOperator {
    pub fn from_triplets(space: &SpaceSpec, mut triplets: Vec<(usize, usize, C64)>) -> Result<Self> {
        let n = space.dim();
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= n || *c >= n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.max(c) + 1 });
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0; n + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut rows = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                rows.push(r);
                last = Some((r, c));
            }
        }
        let mut keep_idx = Vec::with_capacity(indices.len());
        let mut keep_val = Vec::with_capacity(values.len());
        for ((r, c), v) in rows.iter().zip(indices).zip(values) {
            if v != ZERO {
                indptr[r + 1] += 1;
                keep_idx.push(c);
                keep_val.push(v);
            }
        }
        for i in 0..n {
            indptr[i + 1] += indptr[i];
        }
        Ok(Self { space: space.clone(), indptr, indices: keep_idx, values: keep_val, hermitian_hint: false })
    }

    pub fn zero(space: &SpaceSpec) -> Self {
        Self {
            space: space.clone(),
            indptr: vec![0; space.dim() + 1],
            indices: Vec::new(),
            values: Vec::new(),
            hermitian_hint: true,
        }
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        let n = space.dim();
        Self {
            space: space.clone(),
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![C64::new(1.0, 0.0); n],
            hermitian_hint: true,
        }
    }

    /// Keeps entries with modulus above `drop_tol`.
    pub fn from_dense(space: &SpaceSpec, m: &CMat, drop_tol: f64) -> Result<Self> {
        let n = space.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
        }
        let mut t = Vec::new();
        for i in 0..n {
            for (j, v) in m.row(i).iter().enumerate() {
                if v.norm() > drop_tol {
                    t.push((i, j, *v));
                }
            }
        }
        Self::from_triplets(space, t)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    /// Marks the operator Hermitian after verifying it to 1e-12.
    pub fn assert_hermitian(mut self) -> Result<Self> {
        let err = self.hermiticity_error();
        if err > 1e-12 {
            return Err(Error::NotHermitian(err));
        }
        self.hermitian_hint = true;
        Ok(self)
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[C64]) {
        let (a, b) = (self.indptr[i], self.indptr[i + 1]);
        (&self.indices[a..b], &self.values[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(ZERO, |k| vals[k])
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim()).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim(), self.dim());
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    fn check_space(&self, other: &SparseOperator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, s: C64) -> SparseOperator {
        if s == ZERO {
            return SparseOperator::zero(&self.space);
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out.hermitian_hint = self.hermitian_hint && s.im == 0.0;
        out
    }

    pub fn scale_re(&self, s: f64) -> SparseOperator {
        self.scale(C64::new(s, 0.0))
    }

    /// `self + other`.
    pub fn plus(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_space(other)?;
        let t = self.triplets().chain(other.triplets()).collect();
        Self::from_triplets(&self.space, t)
    }

    /// `self - other`.
    pub fn minus(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.plus(&other.scale_re(-1.0))
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_space(other)?;
        let n = self.dim();
        let mut acc = vec![ZERO; n];
        let mut touched = vec![false; n];
        let mut cols = Vec::new();
        let mut t = Vec::new();
        for i in 0..n {
            let (ka, va) = self.row(i);
            for (&k, &a) in ka.iter().zip(va) {
                let (jb, vb) = other.row(k);
                for (&j, &b) in jb.iter().zip(vb) {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            for &j in &cols {
                t.push((i, j, acc[j]));
                acc[j] = ZERO;
                touched[j] = false;
            }
            cols.clear();
        }
        Self::from_triplets(&self.space, t)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> SparseOperator {
        let t = self.triplets().map(|(i, j, v)| (j, i, v.conj())).collect();
        let mut out = Self::from_triplets(&self.space, t).expect("indices already validated");
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.compose(other)?.minus(&other.compose(self)?)
    }

    /// Largest entrywise |A - A†|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for (i, j, v) in self.triplets() {
            err = err.max((v - self.get(j, i).conj()).norm());
        }
        err
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `out = A x` on raw buffers.
    pub fn apply_slice(&self, x: &[C64], out: &mut [C64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            *o = cols.iter().zip(vals).map(|(&j, &v)| v * x[j]).sum();
        }
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = vec![ZERO; self.dim()];
        self.apply_slice(psi.amplitudes(), &mut out);
        StateVector::new(&self.space, out)
    }

    /// Compresses an operator of the parent product space onto `reduced`:
    /// `V† A V` with `V` the reduced space's isometry.
    pub fn compress(&self, reduced: &SpaceSpec) -> Result<SparseOperator> {
        let iso = reduced
            .isometry()
            .ok_or_else(|| Error::InvalidSpace("target is not a reduced space".into()))?;
        if reduced.product_space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let n = self.dim();
        let m = reduced.dim();
        let mut av = CMat::zeros(n, m);
        for (i, k, a) in self.triplets() {
            for j in 0..m {
                av[(i, j)] += a * iso[(k, j)];
            }
        }
        let out = iso.adjoint().matmul(&av);
        let mut op = SparseOperator::from_dense(reduced, &out, 1e-14)?;
        op.hermitian_hint = self.hermitian_hint;
        Ok(op)
    }
}

/// Embeds a local operator acting on `site` (0-based atom index, or
/// `n_atoms` for the cavity) as identity elsewhere.
pub fn embed_site_operator(space: &SpaceSpec, site: usize, local: &CMat) -> Result<SparseOperator> {
    if space.is_reduced() {
        return Err(Error::InvalidSpace("embed on the product space, then compress".into()));
    }
    let n_sites = space.n_atoms() + usize::from(space.has_cavity());
    if site >= n_sites {
        return Err(Error::SiteOutOfRange { index: site, n_sites });
    }
    let d = if site == space.n_atoms() { space.cavity_dim() } else { space.local_dim() };
    if local.rows() != d || local.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: local.rows() });
    }
    let stride = space.stride(site);
    let mut local_nz = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let v = local[(a, b)];
            if v != ZERO {
                local_nz.push((a, b, v));
            }
        }
    }
    let mut t = Vec::with_capacity(space.dim() / d * local_nz.len());
    for col in 0..space.dim() {
        let digit = (col / stride) % d;
        let base = col - digit * stride;
        for &(a, b, v) in &local_nz {
            if b == digit {
                t.push((base + a * stride, col, v));
            }
        }
    }
    SparseOperator::from_triplets(space, t)
}

/// `|x><y|` acting on atom `site`.
pub fn site_dyad(space: &SpaceSpec, site: usize, x: Level, y: Level) -> Result<SparseOperator> {
    let base = space.product_space();
    let xi = base.level_index(x).ok_or_else(|| Error::MissingLevel(x.symbol().to_string()))?;
    let yi = base.level_index(y).ok_or_else(|| Error::MissingLevel(y.symbol().to_string()))?;
    if site >= base.n_atoms() {
        return Err(Error::SiteOutOfRange { index: site, n_sites: base.n_atoms() });
    }
    let mut local = CMat::zeros(base.local_dim(), base.local_dim());
    local[(xi, yi)] = C64::new(1.0, 0.0);
    embed_site_operator(space, site, &local)
}

/// Cavity annihilation operator `a`, truncated at the cutoff.
pub fn cavity_annihilation(space: &SpaceSpec) -> Result<SparseOperator> {
    if !space.product_space().has_cavity() || space.is_reduced() {
        return Err(Error::NoCavity);
    }
    let c = space.cavity_dim();
    let local = CMat::from_fn(c, c, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO });
    embed_site_operator(space, space.n_atoms(), &local)
}

/// `<psi|A|psi>`.
pub fn expectation(op: &SparseOperator, psi: &StateVector) -> Result<C64> {
    let a_psi = op.apply(psi)?;
    Ok(psi.inner(&a_psi))
}

/// `Tr(A rho)`.
pub fn expectation_rho(op: &SparseOperator, rho: &DensityMatrix) -> Result<C64> {
    if rho.space() != op.space() {
        return Err(Error::SpaceMismatch);
    }
    let m = rho.matrix();
    Ok(op.triplets().map(|(i, j, v)| v * m[(j, i)]).sum())
}
