//! Model reductions: the Zeno-projected Z pumping and the adiabatically
//! eliminated Rydberg pumping.

mod rydberg;
mod td;
mod zeno;
mod zpump;

pub use rydberg::{
    adiabatic_eliminate, amplitude_rhs, ladder_c3_population, oscillation_frequency, symmetric_hr_4x4,
    AdiabaticPump, SymmetricAmplitudes, ADIABATIC_RATIO_LIMIT,
};
pub use td::{RotatingTerm, TimeDependentHamiltonian};
pub use zeno::{near_resonant, rotating_frame_terms, zeno_decompose, FrameTerm, ZenoDecomposition, DEFAULT_GROUPING_TOL};
pub use zpump::{
    build_effective_full_model, build_effective_rydberg_pump, build_effective_zpump, build_effective_zpump_model,
    effective_space,
};
