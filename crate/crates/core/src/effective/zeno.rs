//! Eigenprojections of a strong coupling on an invariant subspace, and the
//! rotating-frame bookkeeping that turns them into a Zeno-projected
//! Hamiltonian.

use crate::error::{Error, Result};
use crate::hilbert::{SparseOperator, StateVector};
use crate::linalg::{herm_eigh, CMat};
use crate::C64;

/// Relative tolerance for grouping degenerate eigenvalues.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ZenoDecomposition {
    /// Distinct eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// One projector per distinct eigenvalue, on the full space.
    pub projectors: Vec<SparseOperator>,
    /// Rank of each projector.
    pub dims: Vec<usize>,
    /// All eigenvalues with multiplicity, ascending.
    pub spectrum: Vec<f64>,
    /// Orthonormal eigenvectors matching `spectrum`.
    pub eigenvectors: Vec<StateVector>,
}

impl ZenoDecomposition {
    /// The projected drive `P_n H0 P_n` for every Zeno subspace.
    pub fn projected(&self, h0: &SparseOperator) -> Result<Vec<SparseOperator>> {
        self.projectors.iter().map(|p| p.compose(h0)?.compose(p)).collect()
    }
}

fn basis_matrix(basis: &[StateVector]) -> Result<CMat> {
    let first = basis.first().ok_or_else(|| Error::InvalidParameter("empty subspace basis".into()))?;
    let n = first.space().dim();
    let m = basis.len();
    let mut b = CMat::zeros(n, m);
    for (j, v) in basis.iter().enumerate() {
        if v.space() != first.space() {
            return Err(Error::SpaceMismatch);
        }
        for (i, x) in v.amplitudes().iter().enumerate() {
            b[(i, j)] = *x;
        }
    }
    if b.adjoint().matmul(&b).sub(&CMat::identity(m)).max_abs() > 1e-10 {
        return Err(Error::InvalidParameter("subspace basis is not orthonormal".into()));
    }
    Ok(b)
}

/// Diagonalizes `h_m` on the span of `basis` and groups eigenvalues closer
/// than `grouping_tol * ||h_m||` into one Zeno subspace.
pub fn zeno_decompose(h_m: &SparseOperator, basis: &[StateVector], grouping_tol: f64) -> Result<ZenoDecomposition> {
    let herm = h_m.hermiticity_error();
    if herm > 1e-12 * h_m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    let b = basis_matrix(basis)?;
    if basis[0].space() != h_m.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = b.rows();
    let m = b.cols();
    let hd = h_m.to_dense();
    let hb = hd.matmul(&b);
    let block = b.adjoint().matmul(&hb);
    let leak = hb.sub(&b.matmul(&block)).max_abs();
    if leak > 1e-10 * h_m.max_abs().max(1.0) {
        return Err(Error::NotInvariant(leak));
    }

    let (vals, vecs) = herm_eigh(&block);
    let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let full = b.matmul(&vecs);
    let space = h_m.space();
    let eigenvectors: Vec<StateVector> = (0..m)
        .map(|k| StateVector::new(space, (0..n).map(|i| full[(i, k)]).collect()))
        .collect::<Result<_>>()?;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..m {
        match groups.last_mut() {
            Some(g) if (vals[k] - vals[g[0]]).abs() <= grouping_tol * scale => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut dims = Vec::new();
    for g in &groups {
        eigenvalues.push(g.iter().map(|&k| vals[k]).sum::<f64>() / g.len() as f64);
        let mut p = CMat::zeros(n, n);
        for &k in g {
            let v = eigenvectors[k].amplitudes();
            for i in 0..n {
                if v[i] == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    p[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        projectors.push(SparseOperator::from_dense(space, &p, 1e-15)?);
        dims.push(g.len());
    }
    Ok(ZenoDecomposition { eigenvalues, projectors, dims, spectrum: vals, eigenvectors })
}

/// Off-diagonal coupling `<row|H|col>` seen in the interaction picture of a
/// diagonal frame: it rotates as `e^{i frequency t}` with
/// `frequency = E_row - E_col`. The Hermitian partner is implied.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameTerm {
    pub row: String,
    pub col: String,
    pub amplitude: C64,
    pub frequency: f64,
}

/// Expands `h` in the frame basis `(label, ket, energy)` and lists every
/// nonzero coupling between distinct frame states (row precedes column in
/// the frame order).
pub fn rotating_frame_terms(h: &SparseOperator, frame: &[(String, StateVector, f64)]) -> Result<Vec<FrameTerm>> {
    let hk: Vec<StateVector> = frame.iter().map(|(_, k, _)| h.apply(k)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (a, (la, ka, ea)) in frame.iter().enumerate() {
        for (b, (lb, _, eb)) in frame.iter().enumerate().skip(a + 1) {
            let amp = ka.inner(&hk[b]);
            if amp.norm() > 1e-14 {
                out.push(FrameTerm { row: la.clone(), col: lb.clone(), amplitude: amp, frequency: ea - eb });
            }
        }
    }
    Ok(out)
}

/// Keeps terms with `|frequency| < cutoff`.
pub fn near_resonant(terms: &[FrameTerm], cutoff: f64) -> Vec<FrameTerm> {
    terms.iter().filter(|t| t.frequency.abs() < cutoff).cloned().collect()
}
