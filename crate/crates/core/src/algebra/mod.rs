//! The fifteen-generator extended Poincaré algebra: structure constants,
//! Jacobi check, adjoint realization, group metric, Casimirs and the
//! second Lie-algebra cohomology.

pub mod casimir;
pub mod cohomology;
pub mod generators;
pub mod jacobi;
pub mod metric;
pub mod realization;
pub mod structure;

pub use casimir::{casimir_element, check_casimir_commutators, CasimirKind, CasimirReport, OperatorExpr, QuadraticElement};
pub use cohomology::{check_central_extensions, CohomologyReport};
pub use generators::{levi_civita, GeneratorId, ETA};
pub use jacobi::{check_jacobi, JacobiReport};
pub use metric::group_metric;
pub use realization::{adjoint_matrices, adjoint_rep, closure_defect, ClosureReport, Realization};
pub use structure::{abelian, build_algebra, su2, without_gamma_p_bracket, StructureConstants};
