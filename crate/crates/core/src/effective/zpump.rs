//! Zeno-projected Z pumping on the atomic space without cavity.

use crate::dynamics::{Hamiltonian, LindbladModel};
use crate::error::{Error, Result};
use crate::hilbert::{site_dyad, Level, SpaceSpec, SparseOperator, StateVector};
use crate::model::{named_states, CollapseChannel, ModelParams};
use crate::C64;

use super::rydberg::adiabatic_eliminate;
use super::td::{RotatingTerm, TimeDependentHamiltonian};

const DARK: [&str; 5] = ["D1", "D2", "D3", "D4", "D5"];

/// The effective-model space: the 27 product states of levels `{0, 1, r}`
/// followed by the dark states `D1`..`D5`, as a reduced space of the
/// cavity-free `{0, 1, e, r}` product space.
pub fn effective_space() -> Result<SpaceSpec> {
    let parent = SpaceSpec::new(3, &[Level::G0, Level::G1, Level::E, Level::R], None)?;
    let named = named_states(&parent)?;
    let syms = ['0', '1', 'r'];
    let mut basis = Vec::with_capacity(32);
    for a in syms {
        for b in syms {
            for c in syms {
                let label: String = [a, b, c].iter().collect();
                basis.push((label.clone(), StateVector::from_label(&parent, &label)?.into_amplitudes()));
            }
        }
    }
    for d in DARK {
        basis.push((d.to_string(), named.get(d)?.amplitudes().to_vec()));
    }
    parent.reduce(basis)
}

/// `d` such that the light shifts read `(-d, 2d, -d)`.
fn light_shift_scale(params: &ModelParams) -> Result<f64> {
    let [d1, d2, d3] = params.delta;
    let d = d2 / 2.0;
    let tol = 1e-12 * d1.abs().max(d2.abs()).max(d3.abs()).max(f64::MIN_POSITIVE);
    if (d1 - d3).abs() > tol || (d1 + d).abs() > tol {
        return Err(Error::DeltaConvention(params.delta));
    }
    Ok(d)
}

fn dyad(space: &SpaceSpec, row: &str, col: &str) -> Result<SparseOperator> {
    let i = space.index_of_label(row)?;
    let j = space.index_of_label(col)?;
    SparseOperator::from_triplets(space, vec![(i, j, C64::new(1.0, 0.0))])
}

/// Effective Z-pumping Hamiltonian and its sixteen Lindblad operators on
/// [`effective_space`].
///
/// Couplings between single- and double-excitation qubit states and the dark
/// states rotate at `-d` or `2d`, where the light shifts are `(-d, 2d, -d)`.
pub fn build_effective_zpump(params: &ModelParams) -> Result<(TimeDependentHamiltonian, Vec<CollapseChannel>)> {
    params.require_g_units()?;
    params.validate()?;
    let d = light_shift_scale(params)?;
    let space = effective_space()?;
    let w = params.omega;
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();

    let couplings: [(&str, &str, f64, f64); 11] = [
        ("001", "D1", w / s6, -d),
        ("001", "D2", -w / s2, -d),
        ("100", "D1", w / s6, -d),
        ("100", "D2", w / s2, -d),
        ("010", "D1", -2.0 * w / s6, 2.0 * d),
        ("011", "D4", -w / s2, -d),
        ("011", "D5", -w / s2, 2.0 * d),
        ("101", "D3", -w / s2, -d),
        ("101", "D5", w / s2, -d),
        ("110", "D3", w / s2, 2.0 * d),
        ("110", "D4", w / s2, -d),
    ];
    let mut terms = Vec::with_capacity(couplings.len());
    for (q, dark, amp, freq) in couplings {
        if amp != 0.0 {
            terms.push(RotatingTerm { op: dyad(&space, q, dark)?, amplitude: C64::new(amp, 0.0), frequency: freq });
        }
    }
    let h = TimeDependentHamiltonian::new(SparseOperator::zero(&space), terms)?;

    let ge = params.gamma_e;
    let decays: [(&str, &str, f64); 16] = [
        ("001", "D1", ge / 12.0),
        ("100", "D1", ge / 12.0),
        ("010", "D1", ge / 3.0),
        ("000", "D1", ge / 2.0),
        ("001", "D2", ge / 4.0),
        ("100", "D2", ge / 4.0),
        ("000", "D2", ge / 2.0),
        ("110", "D3", ge / 4.0),
        ("101", "D3", ge / 4.0),
        ("100", "D3", ge / 2.0),
        ("110", "D4", ge / 4.0),
        ("011", "D4", ge / 4.0),
        ("010", "D4", ge / 2.0),
        ("101", "D5", ge / 4.0),
        ("011", "D5", ge / 4.0),
        ("001", "D5", ge / 2.0),
    ];
    let mut channels = Vec::with_capacity(16);
    for (to, from, rate) in decays {
        if rate > 0.0 {
            channels.push(CollapseChannel::new(rate, dyad(&space, to, from)?, format!("|{to}><{from}|")));
        }
    }
    Ok((h, channels))
}

/// `Ω_eff (|+++><rrr| + H.c.)` on [`effective_space`], in the frame that
/// removes the light shifts: the `|q><rrr|` component of a qubit state `q`
/// rotates at its light-shift energy `sum_i δ_i n_i`, the same frame in which
/// the Z-pump couplings rotate. `|000>` and `|111>` stay static.
pub fn build_effective_rydberg_pump(params: &ModelParams, space: &SpaceSpec) -> Result<Vec<RotatingTerm>> {
    params.require_g_units()?;
    let pump = adiabatic_eliminate(params.omega_r, params.delta_cap)?;
    let parent = space.product_space();
    let plus = named_states(parent)?.get("+++")?.clone();
    let rrr = parent.index_of_label("rrr")?;
    let mut terms = Vec::with_capacity(8);
    for (i, a) in plus.amplitudes().iter().enumerate() {
        if *a == C64::new(0.0, 0.0) {
            continue;
        }
        let (levels, _) = parent.decode(i);
        let energy: f64 = levels.iter().zip(params.delta).filter(|(l, _)| **l == Level::G1).map(|(_, d)| d).sum();
        let op = SparseOperator::from_triplets(parent, vec![(i, rrr, C64::new(1.0, 0.0))])?.compress(space)?;
        terms.push(RotatingTerm { op, amplitude: a * pump.omega_eff, frequency: energy });
    }
    Ok(terms)
}

/// Effective model of the complete scheme: Z pumping, the eliminated
/// Rydberg pumping, and single-atom Rydberg decay at `γ_r/2` into each qubit
/// level. Light shifts from the Rydberg drive are not included. Each decay
/// changes the light-shift energy by a fixed `δ_i`, so its dissipator is
/// unchanged by the frame.
pub fn build_effective_full_model(params: &ModelParams) -> Result<LindbladModel> {
    let (zp, mut channels) = build_effective_zpump(params)?;
    let space = zp.space().clone();
    let pump = build_effective_rydberg_pump(params, &space)?;
    let h = zp.with_terms(pump)?;
    if params.gamma_r > 0.0 {
        let parent = space.product_space();
        for i in 0..3 {
            for lower in [Level::G0, Level::G1] {
                let op = site_dyad(parent, i, lower, Level::R)?.compress(&space)?;
                channels.push(CollapseChannel::new(
                    params.gamma_r / 2.0,
                    op,
                    format!("|{}><r|_{}", lower.symbol(), i + 1),
                ));
            }
        }
    }
    LindbladModel::new(Hamiltonian::TimeDependent(h), channels)
}

/// Effective Z-pumping model alone (no Rydberg pumping or decay).
pub fn build_effective_zpump_model(params: &ModelParams) -> Result<LindbladModel> {
    let (h, channels) = build_effective_zpump(params)?;
    LindbladModel::new(Hamiltonian::TimeDependent(h), channels)
}
