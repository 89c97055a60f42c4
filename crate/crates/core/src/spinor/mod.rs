//! Spinor-polynomial states `ψ^{Λ,J}_{γ,M}`, their quantum-number
//! bookkeeping, label-level operator actions and the spinor metric.

pub mod label;
pub mod ladder;
pub mod poly;
pub mod state;

pub use label::{j_values, multiplet_dimension, multiplet_labels, SpinorLabel};
pub use ladder::{apply_ladder, LadderOp, LadderResult};
pub use poly::{Exponents, Poly};
pub use state::{build_state, gram_matrix, laurent_state, spinor_metric, Origin, SpinorPoly};
