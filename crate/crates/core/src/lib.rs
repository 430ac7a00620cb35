//! Simulation engine for dissipative preparation of a three-atom GHZ state
//! with Rydberg atoms coupled to a leaky cavity.
//!
//! * [`hilbert`]: composite spaces, sparse operators, states.
//! * [`model`]: Hamiltonians, collapse channels and named states.
//! * [`effective`]: Zeno-projected Z pumping and adiabatically eliminated
//!   Rydberg pumping.
//! * [`dynamics`]: master-equation integration, steady states, observables.
//! * [`experiments`]: scenario definitions, configuration and reporting.
//!
//! All frequencies and rates are in units of a reference coupling `g`.

pub mod dynamics;
pub mod effective;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod linalg;
pub mod model;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
