//! Exact scalars in the field ℚ(i, √2).
//!
//! A value is stored as `(re_rat + re_root2·√2) + i·(im_rat + im_root2·√2)`
//! with every rational kept in lowest terms by `BigRational`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Element `rat + root2·√2` of the real quadratic field ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub rat: BigRational,
    pub root2: BigRational,
}

impl QSqrt2 {
    pub fn new(rat: BigRational, root2: BigRational) -> Self {
        Self { rat, root2 }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Self { rat, root2: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.root2.is_zero()
    }

    /// Galois conjugate `rat − root2·√2`.
    pub fn galois(&self) -> Self {
        Self { rat: self.rat.clone(), root2: -self.root2.clone() }
    }

    /// Field norm `rat² − 2·root2²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(2.into()) * &self.root2 * &self.root2
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = self.galois();
        Ok(Self { rat: g.rat / &n, root2: g.root2 / n })
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.rat) + rat_to_f64(&self.root2) * std::f64::consts::SQRT_2
    }

    /// Sign of the real number, exact.
    pub fn signum(&self) -> i8 {
        // a + b√2 > 0 decided by comparing a² with 2b² when the signs differ.
        let a = self.rat.signum();
        let b = self.root2.signum();
        let a = a.to_i8().unwrap_or(0);
        let b = b.to_i8().unwrap_or(0);
        if a == 0 {
            return b;
        }
        if b == 0 || a == b {
            return a;
        }
        let a2 = &self.rat * &self.rat;
        let b2 = BigRational::from_integer(2.into()) * &self.root2 * &self.root2;
        if a2 > b2 {
            a
        } else if a2 < b2 {
            b
        } else {
            0
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_rational() && o.is_rational() {
            return Self::from_rational(&self.rat * &o.rat);
        }
        let two = BigRational::from_integer(2.into());
        Self {
            rat: &self.rat * &o.rat + two * &self.root2 * &o.root2,
            root2: &self.rat * &o.root2 + &self.root2 * &o.rat,
        }
    }
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 { rat: &self.rat + &o.rat, root2: &self.root2 + &o.root2 }
    }
}

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 { rat: &self.rat - &o.rat, root2: &self.root2 - &o.root2 }
    }
}

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        self.mul_ref(o)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { rat: -self.rat.clone(), root2: -self.root2.clone() }
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    // Ratio::to_f64 rounds to nearest for big operands as well.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `p/q` rendering (denominator always present, positive).
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exact element of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl ExactScalar {
    pub fn new(re: QSqrt2, im: QSqrt2) -> Self {
        Self { re, im }
    }

    /// Builds `(re_rat + re_root2·√2) + i(im_rat + im_root2·√2)`.
    pub fn from_parts(
        re_rat: BigRational,
        re_root2: BigRational,
        im_rat: BigRational,
        im_root2: BigRational,
    ) -> Self {
        Self { re: QSqrt2::new(re_rat, re_root2), im: QSqrt2::new(im_rat, im_root2) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn i() -> Self {
        Self { re: QSqrt2::zero(), im: QSqrt2::from_rational(BigRational::one()) }
    }

    pub fn sqrt2() -> Self {
        Self::real(QSqrt2::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::real(QSqrt2::from_rational(r))
    }

    pub fn real(re: QSqrt2) -> Self {
        Self { re, im: QSqrt2::zero() }
    }

    /// `r·√2` for rational `r`.
    pub fn root2_times(r: BigRational) -> Self {
        Self::real(QSqrt2::new(BigRational::zero(), r))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.root2.is_zero() && self.re.rat.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero() && self.re.root2.is_zero()
    }

    /// The rational value, if this scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re.rat)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`, an element of ℚ(√2).
    pub fn abs_sq(&self) -> QSqrt2 {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.abs_sq().inv()?;
        let c = self.conj();
        Ok(Self { re: &c.re * &n, im: &c.im * &n })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `√q` for rational `q ≥ 0` when it lies in ℚ(√2), i.e. `q = r²` or `q = 2r²`.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        if let Some(r) = rational_sqrt(q) {
            return Some(Self::from_rational(r));
        }
        let half = q / BigRational::from_integer(2.into());
        rational_sqrt(&half).map(Self::root2_times)
    }
}

/// Exact rational square root when `q` is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return ExactScalar::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return ExactScalar::real(&self.re * &o.re);
        }
        ExactScalar {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        if o.is_zero() {
            return;
        }
        self.re = &self.re + &o.re;
        self.im = &self.im + &o.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        if o.is_zero() {
            return;
        }
        self.re = &self.re - &o.re;
        self.im = &self.im - &o.im;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        let mut acc = ExactScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for ExactScalar {
    /// Human-readable form, e.g. `1/2 + 1/2√2 + (−1)i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part(q: &QSqrt2) -> String {
            match (q.rat.is_zero(), q.root2.is_zero()) {
                (true, true) => "0".into(),
                (false, true) => q.rat.to_string(),
                (true, false) => format!("{}√2", q.root2),
                (false, false) => format!("{}+{}√2", q.rat, q.root2),
            }
        }
        if self.im.is_zero() {
            write!(f, "{}", part(&self.re))
        } else if self.re.is_zero() {
            write!(f, "({})i", part(&self.im))
        } else {
            write!(f, "{} + ({})i", part(&self.re), part(&self.im))
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form `{"re":["p/q","r/s"],"im":["p/q","r/s"]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarWire {
    re: [String; 2],
    im: [String; 2],
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarWire {
            re: [rational_to_string(&self.re.rat), rational_to_string(&self.re.root2)],
            im: [rational_to_string(&self.im.rat), rational_to_string(&self.im.root2)],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ScalarWire::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(ExactScalar::from_parts(p(&w.re[0])?, p(&w.re[1])?, p(&w.im[0])?, p(&w.im[1])?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn conjugate_surds_multiply_to_minus_one() {
        let a = ExactScalar::from_parts(r(1, 1), r(1, 1), r(0, 1), r(0, 1));
        let b = ExactScalar::from_parts(r(1, 1), r(-1, 1), r(0, 1), r(0, 1));
        assert_eq!(&a * &b, ExactScalar::from_i64(-1));
    }

    #[test]
    fn i_squared() {
        assert_eq!(ExactScalar::i() * ExactScalar::i(), ExactScalar::from_i64(-1));
    }

    #[test]
    fn half_root_two_squared() {
        let h = ExactScalar::root2_times(r(1, 2));
        assert_eq!(&h * &h, ExactScalar::ratio(1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(ExactScalar::one().checked_div(&ExactScalar::zero()), Err(Error::DivisionByZero)));
        assert!(matches!(QSqrt2::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let z = ExactScalar::from_parts(r(3, 2), r(-1, 3), r(2, 1), r(5, 7));
        assert_eq!(&z * &z.inv().unwrap(), ExactScalar::one());
    }

    #[test]
    fn json_encoding_is_canonical() {
        let z = ExactScalar::from_parts(r(2, 4), r(0, 1), r(-3, 1), r(1, 2));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":["1/2","0/1"],"im":["-3/1","1/2"]}"#);
        let back: ExactScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn json_rejects_extra_components() {
        let s = r#"{"re":["1/2","0/1"],"im":["0/1","0/1"],"root3":["1/1","0/1"]}"#;
        assert!(serde_json::from_str::<ExactScalar>(s).is_err());
        let s = r#"{"re":["1/2","0/1","1/1"],"im":["0/1","0/1"]}"#;
        assert!(serde_json::from_str::<ExactScalar>(s).is_err());
    }

    #[test]
    fn sqrt_of_rationals_in_field() {
        assert_eq!(ExactScalar::sqrt_rational(&r(2, 1)), Some(ExactScalar::sqrt2()));
        assert_eq!(ExactScalar::sqrt_rational(&r(9, 4)), Some(ExactScalar::ratio(3, 2)));
        assert_eq!(ExactScalar::sqrt_rational(&r(1, 2)), Some(ExactScalar::root2_times(r(1, 2))));
        assert_eq!(ExactScalar::sqrt_rational(&r(3, 1)), None);
    }

    #[test]
    fn signum_of_surds() {
        assert_eq!(QSqrt2::new(r(1, 1), r(-1, 1)).signum(), -1);
        assert_eq!(QSqrt2::new(r(-1, 1), r(1, 1)).signum(), 1);
        assert_eq!(QSqrt2::new(r(3, 1), r(-2, 1)).signum(), 1);
        assert_eq!(QSqrt2::zero().signum(), 0);
    }
}
