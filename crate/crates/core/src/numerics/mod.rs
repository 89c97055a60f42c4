//! Exact scalars and matrices over ℚ(i, √2), complex floating-point
//! matrices, and the linear-algebra kernels shared by every other module.

pub mod exact_matrix;
pub mod float;
pub mod halfint;
pub mod scalar;
pub mod surd;

pub use exact_matrix::{commutator, exact_rank, exact_rank_with, nullspace, rref, solve, ExactMatrix, Pivoting};
pub use float::{
    eig_spectrum, mat_exp, null_space, numerical_rank, orthonormal_columns, subspace_angle, EigenCluster, FloatMatrix,
    Spectrum, EIGEN_CLUSTER_TOL,
};
pub use scalar::{parse_rational, rational_to_string, ExactScalar, QSqrt2};
pub use halfint::HalfInt;
pub use surd::Surd;

use num_rational::BigRational;

/// Shorthand for a small rational `n/d`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
