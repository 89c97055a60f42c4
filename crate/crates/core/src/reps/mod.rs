//! Finite-dimensional matrix representations of the extended Lorentz
//! subalgebra and their validation.

pub mod blocks;
pub mod dirac;
pub mod equivalence;
pub mod lambda1;
pub mod representation;
pub mod synth;
pub mod validate;

pub use dirac::dirac_rep;
pub use equivalence::{find_intertwiner, invariant_form};
pub use lambda1::{analyze_lambda1, lambda1_rep, printed_blocks, BlockData, Lambda1Analysis};
pub use representation::{Amendment, Representation, RepresentationFile};
pub use synth::synthesize_rep;
pub use validate::{delta_j_matrix, validate_rep, ValidationReport};

use crate::error::{Error, Result};
use crate::numerics::HalfInt;

/// Where `rep build` takes its matrices from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepSource {
    Paper,
    Dirac,
    Synthesize,
}

/// Builds the representation for `lambda` from `source`.
pub fn build_rep(lambda: HalfInt, source: RepSource) -> Result<Representation> {
    match source {
        RepSource::Paper if lambda == HalfInt::ONE => Ok(lambda1_rep()),
        RepSource::Dirac if lambda == HalfInt::HALF => dirac_rep(),
        RepSource::Synthesize => synthesize_rep(lambda),
        RepSource::Paper => Err(Error::InvalidLabel(format!("the paper source only has Lambda = 1, not {lambda}"))),
        RepSource::Dirac => Err(Error::InvalidLabel(format!("the Dirac source only has Lambda = 1/2, not {lambda}"))),
    }
}
