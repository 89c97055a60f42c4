use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::HalfInt;

/// Quantum numbers `(Λ, J, γ, M)` of a spinor state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinorLabel {
    #[serde(rename = "Lambda")]
    pub lambda: HalfInt,
    #[serde(rename = "J")]
    pub j: HalfInt,
    pub gamma: HalfInt,
    #[serde(rename = "M")]
    pub m: HalfInt,
}

impl SpinorLabel {
    pub fn new(lambda: HalfInt, j: HalfInt, gamma: HalfInt, m: HalfInt) -> Result<Self> {
        let l = Self { lambda, j, gamma, m };
        l.validate()?;
        Ok(l)
    }

    /// Shorthand taking doubled values.
    pub fn from_twice(lambda: i64, j: i64, gamma: i64, m: i64) -> Result<Self> {
        Self::new(HalfInt::from_twice(lambda), HalfInt::from_twice(j), HalfInt::from_twice(gamma), HalfInt::from_twice(m))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidLabel(format!("{self}: {why}")));
        if self.lambda < HalfInt::ZERO || self.j < HalfInt::ZERO {
            return bad("negative Lambda or J");
        }
        let lj = self.lambda - self.j;
        if lj < HalfInt::ZERO || !lj.is_integer() {
            return bad("Lambda - J must be a nonnegative integer");
        }
        if self.m.abs() > self.j || !(self.j - self.m).is_integer() {
            return bad("M outside -J..J");
        }
        if self.gamma.abs() > self.j || !(self.j - self.gamma).is_integer() {
            return bad("gamma outside -J..J");
        }
        Ok(())
    }

    pub fn with_m(self, m: HalfInt) -> Self {
        Self { m, ..self }
    }

    pub fn with_gamma(self, gamma: HalfInt) -> Self {
        Self { gamma, ..self }
    }

    /// Whether the χ exponents `M ± γ` of the generating formula are nonnegative.
    pub fn formula_applies(&self) -> bool {
        self.m >= self.gamma.abs()
    }
}

impl fmt::Display for SpinorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Lambda={}, J={}, gamma={}, M={})", self.lambda, self.j, self.gamma, self.m)
    }
}

/// The `J` content `Λ, Λ−1, …` of a multiplet, in ascending order.
pub fn j_values(lambda: HalfInt) -> Vec<HalfInt> {
    let low = HalfInt::from_twice(lambda.twice().rem_euclid(2));
    let mut v: Vec<HalfInt> = lambda.down_to(low).collect();
    v.reverse();
    v
}

/// All labels of a multiplet in canonical order: `J` ascending, then `γ`
/// descending, then `M` descending.
pub fn multiplet_labels(lambda: HalfInt) -> Vec<SpinorLabel> {
    let mut out = Vec::new();
    for j in j_values(lambda) {
        for gamma in j.down_to(-j) {
            for m in j.down_to(-j) {
                out.push(SpinorLabel { lambda, j, gamma, m });
            }
        }
    }
    out
}

/// `Σ_J (2J+1)²`.
pub fn multiplet_dimension(lambda: HalfInt) -> usize {
    j_values(lambda).iter().map(|j| ((j.twice() + 1) * (j.twice() + 1)) as usize).sum()
}
