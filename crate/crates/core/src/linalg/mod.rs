//! Dense complex linear algebra used by the solvers.

pub mod dense;
pub mod gmres;
pub mod pade;
pub mod sylvester;

pub use dense::{gemm, herm_eigenvalues, herm_eigh, CMat, Op, Schur};
pub use gmres::{gmres, GmresInfo, GmresOptions};
pub use pade::PadeExp;
pub use sylvester::SylvesterSolver;
