use serde::Serialize;

use crate::wave::FourVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaClass {
    Timelike,
    Spacelike,
    Null,
}

/// The group parameter `ω_μ = ω u_μ` conjugate to `Γ^μ`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OmegaParameter {
    pub omega: FourVector,
    pub class: OmegaClass,
}

impl OmegaParameter {
    pub fn new(omega: FourVector) -> Self {
        let sq = omega.square();
        let size: f64 = omega.0.iter().map(|x| x * x).sum();
        let class = if sq.abs() <= 1e-14 * size {
            OmegaClass::Null
        } else if sq < 0.0 {
            OmegaClass::Timelike
        } else {
            OmegaClass::Spacelike
        };
        Self { omega, class }
    }

    /// `ω = √|ω·ω|`.
    pub fn magnitude(&self) -> f64 {
        self.omega.square().abs().sqrt()
    }

    /// The unit direction `u_μ`; `None` when null.
    pub fn direction(&self) -> Option<FourVector> {
        (self.class != OmegaClass::Null).then(|| self.omega.scale(1.0 / self.magnitude()))
    }

    /// `(cos x, sin x / x, (cos x − 1)/ω·ω)` at `x = √(−ω·ω)`, continued to
    /// `cosh`/`sinh` for spacelike `ω` and to the limits `(1, 1, 1/2)` for null `ω`.
    pub fn trig(&self) -> (f64, f64, f64) {
        let x = self.magnitude();
        match self.class {
            OmegaClass::Null => (1.0, 1.0, 0.5),
            OmegaClass::Timelike => (x.cos(), x.sin() / x, 2.0 * (x / 2.0).sin().powi(2) / (x * x)),
            OmegaClass::Spacelike => (x.cosh(), x.sinh() / x, 2.0 * (x / 2.0).sinh().powi(2) / (x * x)),
        }
    }
}
