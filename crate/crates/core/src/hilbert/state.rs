use crate::error::{Error, Result};
use crate::linalg::{herm_eigenvalues, CMat};
use crate::C64;

use super::operator::SparseOperator;
use super::space::{Level, SpaceSpec};

/// Dense ket on a space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: SpaceSpec,
    data: Vec<C64>,
}

impl StateVector {
    pub fn new(space: &SpaceSpec, data: Vec<C64>) -> Result<Self> {
        if data.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), got: data.len() });
        }
        Ok(Self { space: space.clone(), data })
    }

    /// Panics if `index` is out of range.
    pub fn basis(space: &SpaceSpec, index: usize) -> Self {
        let mut data = vec![C64::new(0.0, 0.0); space.dim()];
        data[index] = C64::new(1.0, 0.0);
        Self { space: space.clone(), data }
    }

    /// Product basis ket `|atoms>|photon>`.
    pub fn from_labels(space: &SpaceSpec, atoms: &[Level], photon: usize) -> Result<Self> {
        Ok(Self::basis(space, space.index_of(atoms, photon)?))
    }

    /// Basis ket addressed by its label (see [`SpaceSpec::label`]).
    pub fn from_label(space: &SpaceSpec, label: &str) -> Result<Self> {
        Ok(Self::basis(space, space.index_of_label(label)?))
    }

    /// `sum_k c_k |psi_k>`; all terms must share a space.
    pub fn superpose(terms: &[(C64, &StateVector)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or_else(|| Error::InvalidParameter("empty superposition".into()))?;
        let mut data = vec![C64::new(0.0, 0.0); first.space.dim()];
        for (c, psi) in terms {
            if psi.space != first.space {
                return Err(Error::SpaceMismatch);
            }
            for (d, a) in data.iter_mut().zip(&psi.data) {
                *d += c * a;
            }
        }
        Ok(Self { space: first.space.clone(), data })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.data
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(Self { space: self.space.clone(), data: self.data.iter().map(|z| z / n).collect() })
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-10
    }

    /// `<self|other>`; panics on dimension mismatch.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.data.len(), other.data.len(), "inner product across dimensions");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// Rank-one projector `|psi><psi|`.
    pub fn projector(&self) -> SparseOperator {
        let nz: Vec<(usize, C64)> =
            self.data.iter().copied().enumerate().filter(|(_, z)| *z != C64::new(0.0, 0.0)).collect();
        let mut t = Vec::with_capacity(nz.len() * nz.len());
        for &(i, a) in &nz {
            for &(j, b) in &nz {
                t.push((i, j, a * b.conj()));
            }
        }
        SparseOperator::from_triplets(&self.space, t).expect("indices in range")
    }

    pub fn to_density(&self) -> DensityMatrix {
        let n = self.data.len();
        let m = CMat::from_fn(n, n, |i, j| self.data[i] * self.data[j].conj());
        DensityMatrix { space: self.space.clone(), mat: m }
    }

    /// Coordinates in a reduced space: `V† psi`.
    pub fn restrict(&self, reduced: &SpaceSpec) -> Result<StateVector> {
        let iso = reduced
            .isometry()
            .ok_or_else(|| Error::InvalidSpace("target is not a reduced space".into()))?;
        if reduced.product_space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let data = (0..reduced.dim())
            .map(|j| (0..self.data.len()).map(|i| iso[(i, j)].conj() * self.data[i]).sum())
            .collect();
        StateVector::new(reduced, data)
    }
}

/// Projector `|psi><psi|` onto a ket.
pub fn projector(psi: &StateVector) -> SparseOperator {
    psi.projector()
}

/// Dense density matrix on a space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    space: SpaceSpec,
    mat: CMat,
}

impl DensityMatrix {
    pub fn new(space: &SpaceSpec, mat: CMat) -> Result<Self> {
        if mat.rows() != space.dim() || mat.cols() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), got: mat.rows() });
        }
        Ok(Self { space: space.clone(), mat })
    }

    /// Mixture `sum_k w_k |psi_k><psi_k|`.
    pub fn mixture(terms: &[(f64, &StateVector)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut mat = CMat::zeros(first.space.dim(), first.space.dim());
        for (w, psi) in terms {
            if psi.space != first.space {
                return Err(Error::SpaceMismatch);
            }
            mat = mat.add(&psi.to_density().mat.scale(C64::new(*w, 0.0)));
        }
        Ok(Self { space: first.space.clone(), mat })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.mat.hermiticity_error()
    }

    pub fn hermitize(&mut self) {
        self.mat.hermitize();
    }

    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
        self.mat.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<psi|rho|psi>`.
    pub fn population(&self, psi: &StateVector) -> f64 {
        let n = self.space.dim();
        let v = psi.amplitudes();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            if v[i] == C64::new(0.0, 0.0) {
                continue;
            }
            let row = self.mat.row(i);
            let rv: C64 = row.iter().zip(v).map(|(r, x)| r * x).sum();
            acc += v[i].conj() * rv;
        }
        acc.re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        herm_eigenvalues(&self.mat).first().copied().unwrap_or(0.0)
    }

    /// Checks unit trace (1e-10) and Hermiticity (1e-12).
    pub fn validate(&self) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).norm() > 1e-10 {
            return Err(Error::NotNormalized(tr.re));
        }
        let h = self.hermiticity_error();
        if h > 1e-12 {
            return Err(Error::NotHermitian(h));
        }
        Ok(())
    }

    /// Lifts a state of a reduced space into its parent: `V rho V†`.
    pub fn lift(&self) -> Result<DensityMatrix> {
        let iso = self
            .space
            .isometry()
            .ok_or_else(|| Error::InvalidSpace("state is not on a reduced space".into()))?;
        let m = iso.matmul(&self.mat).matmul(&iso.adjoint());
        DensityMatrix::new(self.space.product_space(), m)
    }

    /// Restricts a parent-space state to a reduced space: `V† rho V`.
    pub fn restrict(&self, reduced: &SpaceSpec) -> Result<DensityMatrix> {
        let iso = reduced
            .isometry()
            .ok_or_else(|| Error::InvalidSpace("target is not a reduced space".into()))?;
        if reduced.product_space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        DensityMatrix::new(reduced, iso.adjoint().matmul(&self.mat).matmul(iso))
    }
}
