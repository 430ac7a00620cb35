//! Master-equation generators, time integration, stationary states and
//! observables.

mod integrate;
mod model;
mod observables;
mod ode;
mod propagate;
mod steady;

pub use integrate::{integrate, uniform_times, IntegratorControls, Method, Observable, Trajectory, DIAGNOSTIC_COLUMNS};
pub use model::{lindblad_rhs, Hamiltonian, LindbladModel};
pub use observables::{
    fidelity_mixed, fidelity_pure, min_eigenvalue, parity_and_feedback, parity_operator, population, purity, trace,
};
pub use ode::{integrate_ode, integrate_ode_with, OdeControls, OdeStats};
pub use propagate::{RationalControls, RationalPropagator};
pub use steady::{
    fixed_point_singular_values, generator_residual, generator_singular_values, period_map, period_map_fixed_point,
    steady_state, steady_state_direct, steady_state_krylov,
    SteadyMethod, SteadyStateCriterion, SteadyStateResult,
};
