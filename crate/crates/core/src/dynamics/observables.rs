//! Scalar observables of density matrices and the parity feedback map.

use crate::error::{Error, Result};
use crate::hilbert::{embed_site_operator, DensityMatrix, Level, SpaceSpec, SparseOperator, StateVector};
use crate::linalg::{herm_eigh, CMat};
use crate::C64;

fn same_space(psi: &StateVector, rho: &DensityMatrix) -> Result<()> {
    if psi.space() != rho.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// `<psi|rho|psi>`.
pub fn population(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    same_space(psi, rho)?;
    Ok(rho.population(psi))
}

/// Fidelity with a pure target, `sqrt(<s|rho|s>)`.
pub fn fidelity_pure(target: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    Ok(population(rho, target)?.max(0.0).sqrt())
}

/// `sqrt` of a positive semidefinite Hermitian matrix; negative roundoff
/// eigenvalues are clipped.
fn psd_sqrt(a: &CMat) -> CMat {
    let (vals, vecs) = herm_eigh(a);
    let n = a.rows();
    let d: Vec<C64> = vals.iter().map(|v| C64::new(v.max(0.0).sqrt(), 0.0)).collect();
    let vd = CMat::from_fn(n, n, |i, j| vecs[(i, j)] * d[j]);
    vd.matmul(&vecs.adjoint())
}

/// Uhlmann fidelity `Tr sqrt(sqrt(sigma) rho sqrt(sigma))`.
pub fn fidelity_mixed(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    if sigma.space() != rho.space() {
        return Err(Error::SpaceMismatch);
    }
    let s = psd_sqrt(sigma.matrix());
    let mut inner = s.matmul(rho.matrix()).matmul(&s);
    inner.hermitize();
    let (vals, _) = herm_eigh(&inner);
    Ok(vals.iter().map(|v| v.max(0.0).sqrt()).sum())
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

pub fn trace(rho: &DensityMatrix) -> f64 {
    rho.trace().re
}

pub fn min_eigenvalue(rho: &DensityMatrix) -> f64 {
    rho.min_eigenvalue()
}

/// Acts on the product space underlying `space`; compressed onto `space` if
/// it is a reduced space.
fn on_space(space: &SpaceSpec, build: impl Fn(&SpaceSpec) -> Result<SparseOperator>) -> Result<SparseOperator> {
    let op = build(space.product_space())?;
    if space.is_reduced() {
        op.compress(space)
    } else {
        Ok(op)
    }
}

fn local_x(space: &SpaceSpec) -> Result<CMat> {
    let d = space.local_dim();
    let i0 = space.level_index(Level::G0).ok_or(Error::MissingLevel("0".into()))?;
    let i1 = space.level_index(Level::G1).ok_or(Error::MissingLevel("1".into()))?;
    let mut x = CMat::zeros(d, d);
    x[(i0, i1)] = C64::new(1.0, 0.0);
    x[(i1, i0)] = C64::new(1.0, 0.0);
    Ok(x)
}

/// Parity `P = prod_i (|1><0|_i + |0><1|_i)`. It vanishes on any state with an
/// atom outside the qubit levels.
pub fn parity_operator(space: &SpaceSpec) -> Result<SparseOperator> {
    on_space(space, |s| {
        s.require_levels(&[Level::G0, Level::G1])?;
        let x = local_x(s)?;
        let mut p = embed_site_operator(s, 0, &x)?;
        for site in 1..s.n_atoms() {
            p = p.compose(&embed_site_operator(s, site, &x)?)?;
        }
        Ok(p)
    })
}

/// `Z` on the qubit levels of atom 1, identity elsewhere.
fn z_first(space: &SpaceSpec) -> Result<SparseOperator> {
    on_space(space, |s| {
        let d = s.local_dim();
        let i1 = s.level_index(Level::G1).ok_or(Error::MissingLevel("1".into()))?;
        let mut z = CMat::identity(d);
        z[(i1, i1)] = C64::new(-1.0, 0.0);
        embed_site_operator(s, 0, &z)
    })
}

/// Returns `Tr(P rho)` and the feedback-corrected state
/// `Pi_- rho Pi_- + Z_1 Pi_+ rho Pi_+ Z_1 + Pi_0 rho Pi_0`, with
/// `Pi_± = (P^2 ± P)/2` and `Pi_0 = 1 - P^2`. Trace is preserved and the
/// `GHZ+` weight is moved onto `GHZ-`.
pub fn parity_and_feedback(rho: &DensityMatrix) -> Result<(f64, DensityMatrix)> {
    let space = rho.space();
    let p = parity_operator(space)?.to_dense();
    let p2 = p.matmul(&p);
    let half = C64::new(0.5, 0.0);
    let pi_plus = p2.add(&p).scale(half);
    let pi_minus = p2.sub(&p).scale(half);
    let pi_zero = CMat::identity(space.dim()).sub(&p2);
    let z = z_first(space)?.to_dense();

    let r = rho.matrix();
    let parity = p.matmul(r).trace().re;
    let sandwich = |a: &CMat| a.matmul(r).matmul(&a.adjoint());
    let flipped = z.matmul(&pi_plus);
    let mut out = sandwich(&pi_minus).add(&sandwich(&flipped)).add(&sandwich(&pi_zero));
    out.hermitize();
    Ok((parity, DensityMatrix::new(space, out)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::named_states;

    fn qubits() -> SpaceSpec {
        SpaceSpec::new(3, &[Level::G0, Level::G1], None).unwrap()
    }

    #[test]
    fn mixed_fidelity_reduces_to_pure_formula() {
        let s = qubits();
        let named = named_states(&s).unwrap();
        let ghz = named.get("GHZ-").unwrap();
        let rho = named.fully_mixed.clone();
        let f_mixed = fidelity_mixed(&ghz.to_density(), &rho).unwrap();
        let f_pure = fidelity_pure(ghz, &rho).unwrap();
        assert!((f_mixed - f_pure).abs() < 1e-10);
        assert!((f_pure - (1.0f64 / 8.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ghz_states_are_parity_eigenstates() {
        let s = qubits();
        let named = named_states(&s).unwrap();
        let (p, out) = parity_and_feedback(&named.get("GHZ+").unwrap().to_density()).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!((out.population(named.get("GHZ-").unwrap()) - 1.0).abs() < 1e-12);
        let (p, _) = parity_and_feedback(&named.get("GHZ-").unwrap().to_density()).unwrap();
        assert!((p + 1.0).abs() < 1e-12);
    }
}
