use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer; `None` for odd halves.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.0.into(), 2.into())
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `self, self − 1, …` down to `stop` inclusive.
    pub fn down_to(self, stop: HalfInt) -> impl Iterator<Item = HalfInt> {
        let top = self.0;
        (0..).map(move |k| HalfInt(top - 2 * k)).take_while(move |h| *h >= stop)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `n`, `n/2`, `n/1` and decimal halves such as `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            match d.trim() {
                "1" => Ok(HalfInt(2 * n)),
                "2" => Ok(HalfInt(n)),
                _ => Err(bad()),
            }
        } else if let Ok(n) = s.parse::<i64>() {
            Ok(HalfInt(2 * n))
        } else {
            let v: f64 = s.parse().map_err(|_| bad())?;
            let t = (2.0 * v).round();
            if (2.0 * v - t).abs() > 1e-12 {
                return Err(bad());
            }
            Ok(HalfInt(t as i64))
        }
    }
}

/// Serialized as a canonical `"p/q"` fraction like every other rational.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.collect_str(&format_args!("{}/1", self.0 / 2))
        } else {
            s.collect_str(&format_args!("{}/2", self.0))
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!("1/2".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert_eq!("-3/2".parse::<HalfInt>().unwrap().twice(), -3);
        assert_eq!("2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!("1.5".parse::<HalfInt>().unwrap().twice(), 3);
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(serde_json::to_string(&HalfInt::ONE).unwrap(), "\"1/1\"");
    }

    #[test]
    fn descending_range() {
        let v: Vec<i64> = HalfInt::from_twice(3).down_to(HalfInt::from_twice(-3)).map(|h| h.twice()).collect();
        assert_eq!(v, vec![3, 1, -1, -3]);
    }
}
