use crate::error::Result;
use crate::hilbert::{cavity_annihilation, site_dyad, Level, SpaceSpec, SparseOperator};

use super::params::ModelParams;

/// Dissipator `rate * D[op]`.
#[derive(Clone, Debug)]
pub struct CollapseChannel {
    pub rate: f64,
    pub op: SparseOperator,
    pub label: String,
}

impl CollapseChannel {
    pub fn new(rate: f64, op: SparseOperator, label: impl Into<String>) -> Self {
        debug_assert!(rate >= 0.0);
        Self { rate, op, label: label.into() }
    }
}

/// Spontaneous emission of `|e>` and `|r>` into both qubit levels at half
/// the total rate each, and cavity leakage. Zero-rate channels and channels
/// whose levels the space lacks are omitted.
pub fn build_collapse_channels(params: &ModelParams, space: &SpaceSpec) -> Result<Vec<CollapseChannel>> {
    params.require_g_units()?;
    params.validate()?;
    let mut out = Vec::new();
    for (upper, rate) in [(Level::E, params.gamma_e), (Level::R, params.gamma_r)] {
        if rate == 0.0 || !space.has_level(upper) {
            continue;
        }
        for i in 0..space.n_atoms() {
            for lower in [Level::G0, Level::G1] {
                let op = site_dyad(space, i, lower, upper)?;
                out.push(CollapseChannel::new(
                    rate / 2.0,
                    op,
                    format!("|{}><{}|_{}", lower.symbol(), upper.symbol(), i + 1),
                ));
            }
        }
    }
    if params.kappa > 0.0 && space.has_cavity() {
        out.push(CollapseChannel::new(params.kappa, cavity_annihilation(space)?, "a"));
    }
    Ok(out)
}
