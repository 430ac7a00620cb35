//! Tensor-product Hilbert spaces of multilevel atoms plus a truncated cavity
//! mode, with sparse operators and dense states on them.

mod operator;
mod space;
mod state;

pub use operator::{
    cavity_annihilation, embed_site_operator, expectation, expectation_rho, site_dyad, SparseOperator,
};
pub use space::{build_space, Level, SpaceSpec};
pub use state::{projector, DensityMatrix, StateVector};
