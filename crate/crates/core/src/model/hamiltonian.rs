use crate::error::{Error, Result};
use crate::hilbert::{cavity_annihilation, site_dyad, Level, SpaceSpec, SparseOperator};
use crate::C64;

use super::params::ModelParams;

use Level::{E, G0, G1, R};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_atoms(space: &SpaceSpec) -> Result<()> {
    if space.n_atoms() != 3 {
        return Err(Error::InvalidParameter(format!(
            "the model is defined for three atoms, space has {}",
            space.n_atoms()
        )));
    }
    Ok(())
}

fn sum(space: &SpaceSpec, terms: impl IntoIterator<Item = Result<SparseOperator>>) -> Result<SparseOperator> {
    let mut acc = SparseOperator::zero(space);
    for t in terms {
        acc = acc.plus(&t?)?;
    }
    Ok(acc)
}

/// Atom-cavity coupling `sum_i g_i (|e><0|_i a + H.c.)`.
pub fn build_cavity_coupling(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    params.require_g_units()?;
    check_atoms(space)?;
    space.require_levels(&[G0, E])?;
    let a = cavity_annihilation(space)?;
    let mut h = SparseOperator::zero(space);
    for i in 0..3 {
        let t = site_dyad(space, i, E, G0)?.compose(&a)?.scale_re(params.g[i]);
        h = h.plus(&t)?.plus(&t.dagger())?;
    }
    h.assert_hermitian()
}

/// Classical drive and light shifts `sum_i (Ω |e><1|_i + H.c. + δ_i |1><1|_i)`.
pub fn build_drive(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    params.require_g_units()?;
    check_atoms(space)?;
    space.require_levels(&[G1, E])?;
    let mut h = SparseOperator::zero(space);
    for i in 0..3 {
        let t = site_dyad(space, i, E, G1)?.scale_re(params.omega);
        let shift = site_dyad(space, i, G1, G1)?.scale_re(params.delta[i]);
        h = h.plus(&t)?.plus(&t.dagger())?.plus(&shift)?;
    }
    h.assert_hermitian()
}

/// Z-pumping Hamiltonian: drive, light shifts and cavity coupling.
pub fn build_hk(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    space.require_levels(&[G0, G1, E])?;
    if !space.has_cavity() {
        return Err(Error::NoCavity);
    }
    build_drive(params, space)?.plus(&build_cavity_coupling(params, space)?)?.assert_hermitian()
}

/// Rydberg pumping Hamiltonian:
/// `sum_i [Ω_r (|r><0|_i + |r><1|_i + H.c.) - Δ |r><r|_i] + sum_{i<j} U_ij |rr><rr|_ij`.
pub fn build_hr(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    params.require_g_units()?;
    check_atoms(space)?;
    space.require_levels(&[G0, G1, R])?;
    let mut h = SparseOperator::zero(space);
    for i in 0..3 {
        let up = site_dyad(space, i, R, G0)?.plus(&site_dyad(space, i, R, G1)?)?.scale_re(params.omega_r);
        let det = site_dyad(space, i, R, R)?.scale_re(-params.delta_cap);
        h = h.plus(&up)?.plus(&up.dagger())?.plus(&det)?;
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for ((i, j), u) in pairs.into_iter().zip(params.u) {
        let rr = site_dyad(space, i, R, R)?.compose(&site_dyad(space, j, R, R)?)?;
        h = h.plus(&rr.scale_re(u))?;
    }
    h.assert_hermitian()
}

/// Counter-shift `-ε sum_i (|+><+|_i + |r><r|_i)` with `ε = 2Ω_r²/Δ`.
///
/// Far off resonance the Rydberg drive pushes the bright single-atom state
/// `|+>` by `+ε` and `|r>` by `-ε`. This term is the ancillary-level
/// cancellation assumed when those light shifts are discarded; without it the
/// three-body resonance `|+++> <-> |rrr>` is detuned by `6ε`.
pub fn build_stark_compensation(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    params.require_g_units()?;
    check_atoms(space)?;
    space.require_levels(&[G0, G1, R])?;
    if params.delta_cap == 0.0 {
        return Err(Error::InvalidParameter("light-shift cancellation needs a nonzero detuning".into()));
    }
    let eps = 2.0 * params.omega_r * params.omega_r / params.delta_cap;
    sum(
        space,
        (0..3).flat_map(|i| {
            [
                site_dyad(space, i, G0, G0).map(|o| o.scale_re(0.5)),
                site_dyad(space, i, G1, G1).map(|o| o.scale_re(0.5)),
                site_dyad(space, i, G0, G1).map(|o| o.scale_re(0.5)),
                site_dyad(space, i, G1, G0).map(|o| o.scale_re(0.5)),
                site_dyad(space, i, R, R),
            ]
        }),
    )
    .map(|h| h.scale(c(-eps)))?
    .assert_hermitian()
}

/// Full interaction Hamiltonian: `H_k`, plus `H_r` when the space has `|r>`,
/// plus the light-shift cancellation when requested.
pub fn build_full_hamiltonian(params: &ModelParams, space: &SpaceSpec) -> Result<SparseOperator> {
    let mut h = build_hk(params, space)?;
    if space.has_level(R) {
        h = h.plus(&build_hr(params, space)?)?;
        if params.stark_cancellation {
            h = h.plus(&build_stark_compensation(params, space)?)?;
        }
    }
    h.assert_hermitian()
}

/// Number of atoms in `|e>` plus photons.
pub fn excitation_number(space: &SpaceSpec) -> Result<SparseOperator> {
    let a = cavity_annihilation(space)?;
    let mut n = a.dagger().compose(&a)?;
    for i in 0..space.n_atoms() {
        n = n.plus(&site_dyad(space, i, E, E)?)?;
    }
    Ok(n)
}
