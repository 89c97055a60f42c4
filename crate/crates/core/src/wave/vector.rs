use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// A real four-vector. The wave equation stores momenta with lower indices
/// `p_0..p_3`; four-velocities in [`crate::poincare`] are stored with upper
/// indices. The contraction `dot` is the same in both cases.
///
/// The rest-frame momentum of mass `μ` is `(μ, 0, 0, 0)`, so `Γ^μ p_μ`
/// reduces to `μ Γ⁰` there. Boosts act on the raised components `p^μ = η^{μν} p_ν`
/// and the result is lowered again.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self([p0, p1, p2, p3])
    }

    pub fn rest(mass: f64) -> Self {
        Self([mass, 0.0, 0.0, 0.0])
    }

    /// `η^{μν} p_μ q_ν`.
    pub fn dot(&self, o: &FourVector) -> f64 {
        (0..4).map(|m| ETA[m] * self.0[m] * o.0[m]).sum()
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    /// Components with the index moved, `η^{μν} p_ν`.
    pub fn raised(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|m| ETA[m] * self.0[m])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|x| s * x))
    }

    pub fn add(&self, o: &FourVector) -> Self {
        Self([0, 1, 2, 3].map(|m| self.0[m] + o.0[m]))
    }

    pub fn sub(&self, o: &FourVector) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn max_abs_diff(&self, o: &FourVector) -> f64 {
        (0..4).map(|m| (self.0[m] - o.0[m]).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Display for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl FromStr for FourVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_floats(s)?;
        let arr: [f64; 4] = v.try_into().map_err(|_| Error::Parse(format!("expected 4 components in {s:?}")))?;
        Ok(Self(arr))
    }
}

/// Comma-separated floats.
pub fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// Three comma-separated floats.
pub fn parse_three(s: &str) -> Result<[f64; 3]> {
    parse_floats(s)?.try_into().map_err(|_| Error::Parse(format!("expected 3 components in {s:?}")))
}

/// The velocity's rapidity `ζ = atanh|v|` and unit direction (zero for `v = 0`).
pub fn rapidity(velocity: [f64; 3]) -> Result<(f64, [f64; 3])> {
    if velocity.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidVelocity(format!("{velocity:?}")));
    }
    let speed = velocity.iter().map(|x| x * x).sum::<f64>().sqrt();
    if speed >= 1.0 {
        return Err(Error::SuperluminalVelocity(speed));
    }
    if speed == 0.0 {
        return Ok((0.0, [0.0; 3]));
    }
    Ok((speed.atanh(), velocity.map(|x| x / speed)))
}

/// Applies the pure boost with the given velocity to `p`.
pub fn boost_momentum(p: FourVector, velocity: [f64; 3]) -> Result<FourVector> {
    let (zeta, n) = rapidity(velocity)?;
    if zeta == 0.0 {
        return Ok(p);
    }
    let (ch, sh) = (zeta.cosh(), zeta.sinh());
    let up = p.raised();
    let along = n[0] * up[1] + n[1] * up[2] + n[2] * up[3];
    let mut out = [0.0; 4];
    out[0] = ch * up[0] + sh * along;
    for i in 0..3 {
        out[i + 1] = up[i + 1] + ((ch - 1.0) * along + sh * up[0]) * n[i];
    }
    Ok(FourVector(FourVector(out).raised()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_velocity_is_identity() {
        let p = FourVector::new(1.0, 0.2, -0.3, 0.4);
        assert_eq!(boost_momentum(p, [0.0; 3]).unwrap(), p);
    }

    #[test]
    fn z_boost_of_rest_vector() {
        let z: f64 = 0.7;
        let p = boost_momentum(FourVector::rest(2.0), [0.0, 0.0, z.tanh()]).unwrap();
        assert!((p.0[0] - 2.0 * z.cosh()).abs() < 1e-14);
        assert!((p.0[3] + 2.0 * z.sinh()).abs() < 1e-14);
    }

    #[test]
    fn superluminal_is_rejected() {
        assert!(matches!(boost_momentum(FourVector::rest(1.0), [0.6, 0.8, 0.0]), Err(Error::SuperluminalVelocity(_))));
    }

    proptest! {
        #[test]
        fn collinear_rapidities_add(a in -2.0f64..2.0, b in -2.0f64..2.0, m in 0.1f64..5.0) {
            let p = FourVector::rest(m);
            let two = boost_momentum(boost_momentum(p, [a.tanh(), 0.0, 0.0]).unwrap(), [b.tanh(), 0.0, 0.0]).unwrap();
            let one = boost_momentum(p, [(a + b).tanh(), 0.0, 0.0]).unwrap();
            prop_assert!(two.max_abs_diff(&one) < 1e-10 * m * (a.abs() + b.abs()).cosh());
        }

        #[test]
        fn boosts_preserve_the_square(v in prop::array::uniform3(-0.55f64..0.55), p in prop::array::uniform4(-3.0f64..3.0)) {
            let p = FourVector(p);
            let q = boost_momentum(p, v).unwrap();
            prop_assert!((q.square() - p.square()).abs() < 1e-10 * (1.0 + p.0.iter().map(|x| x * x).sum::<f64>()) * 10.0);
        }
    }
}
