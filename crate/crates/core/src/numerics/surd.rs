use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::scalar::{rat_to_f64, rational_to_string, ExactScalar};

/// A signed square root `sign·√radicand` of a nonnegative rational.
///
/// Ladder coefficients such as `√((J+M+1)(J−M))` leave ℚ(√2) once spins
/// above 1 appear; keeping them as surds keeps the label algebra exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    negative: bool,
    radicand: BigRational,
}

impl Surd {
    /// `±√q`; panics on a negative radicand.
    pub fn new(negative: bool, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "surd radicand must be nonnegative");
        let negative = negative && !radicand.is_zero();
        Self { negative, radicand }
    }

    /// The surd equal to a rational value `r`, i.e. `sign(r)·√(r²)`.
    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r.is_negative(), &r * &r)
    }

    /// The positive root `√q`.
    pub fn sqrt(q: BigRational) -> Self {
        Self::new(false, q)
    }

    pub fn one() -> Self {
        Self::new(false, BigRational::from_integer(1.into()))
    }

    pub fn inv(&self) -> crate::error::Result<Self> {
        if self.is_zero() {
            return Err(crate::error::Error::DivisionByZero);
        }
        Ok(Self::new(self.negative, self.radicand.recip()))
    }

    pub fn neg(&self) -> Self {
        Self::new(!self.negative, self.radicand.clone())
    }

    pub fn zero() -> Self {
        Self::new(false, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// The square of the value, `radicand`, as an exact rational.
    pub fn square(&self) -> &BigRational {
        &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        let v = rat_to_f64(&self.radicand).sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// The exact value when it lies in ℚ(√2).
    pub fn to_exact(&self) -> Option<ExactScalar> {
        let v = ExactScalar::sqrt_rational(&self.radicand)?;
        Some(if self.negative { -v } else { v })
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        Surd::new(self.negative != o.negative, &self.radicand * &o.radicand)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match super::scalar::rational_sqrt(&self.radicand) {
            Some(r) => write!(f, "{sign}{r}"),
            None => write!(f, "{sign}sqrt({})", self.radicand),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Surd", 2)?;
        st.serialize_field("sign", if self.negative { &-1 } else { &1 })?;
        st.serialize_field("squared", &rational_to_string(&self.radicand))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_multiply_radicands() {
        let a = Surd::new(false, BigRational::from_integer(3.into()));
        let b = Surd::new(true, BigRational::from_integer(3.into()));
        let p = &a * &b;
        assert!(p.is_negative());
        assert_eq!(p.to_exact(), Some(ExactScalar::from_i64(-3)));
        assert_eq!(a.to_exact(), None);
        assert!((a.to_f64() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_is_never_negative() {
        assert!(!Surd::new(true, BigRational::zero()).is_negative());
    }
}
