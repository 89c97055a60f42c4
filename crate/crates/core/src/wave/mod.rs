//! The operator `Γ^μ p_μ` in finite representations: spectra under boosts,
//! plane-wave solutions and current conservation.

pub mod current;
pub mod spectrum;
pub mod vector;

pub use current::{convergence_slope, current_divergence, gamma_pseudo_hermiticity_defect, ConvergenceFit, CurrentSample, GridSpec};
pub use spectrum::{
    boost_operator, eigenspace_alignment, expected_rest_spectrum, plane_waves, slash, spectrum_invariance, BoostDrift,
    PlaneWaveSolution, SpectrumInvariance,
};
pub use vector::{boost_momentum, parse_floats, parse_three, rapidity, FourVector, ETA};
