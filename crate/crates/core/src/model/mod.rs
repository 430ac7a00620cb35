//! Physical model: parameters, Hamiltonians, collapse channels, named states.

mod channels;
mod geometry;
mod hamiltonian;
mod params;
mod states;

pub use channels::{build_collapse_channels, CollapseChannel};
pub use geometry::rydberg_u_from_geometry;
pub use hamiltonian::{
    build_cavity_coupling, build_drive, build_full_hamiltonian, build_hk, build_hr, build_stark_compensation,
    excitation_number,
};
pub use params::{ModelParams, Units};
pub use states::{named_states, NamedStates};

use crate::error::Result;
use crate::hilbert::{Level, SpaceSpec};

/// Full three-atom space with levels `{0, 1, e, r}` and the given cavity cutoff.
pub fn full_space(cutoff: usize) -> Result<SpaceSpec> {
    SpaceSpec::new(3, &[Level::G0, Level::G1, Level::E, Level::R], Some(cutoff))
}

/// Z-pumping space with levels `{0, 1, e}` and the given cavity cutoff.
pub fn zpump_space(cutoff: usize) -> Result<SpaceSpec> {
    SpaceSpec::new(3, &[Level::G0, Level::G1, Level::E], Some(cutoff))
}
