pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod poincare;
pub mod reps;
pub mod report;
pub mod spinor;
pub mod transforms;
pub mod wave;

pub use error::{Error, Result};
