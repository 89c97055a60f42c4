use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponents of `(χ₊⁺, χ₋⁺, χ₊⁻, χ₋⁻)`.
pub type Exponents = [u32; 4];

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// A polynomial with rational coefficients in the four spinor variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0; 4], BigRational::one())
    }

    pub fn monomial(e: Exponents, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The common total degree, or `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = *e;
                e2[var] -= 1;
                out.add_term(e2, c * BigRational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// `x ∂_y` applied to `self`.
    fn shift(&self, x: usize, y: usize) -> Self {
        self.derivative(y).mul(&Self::var(x))
    }

    /// `J₋ = χ₋⁺ ∂/∂χ₊⁺ + χ₋⁻ ∂/∂χ₊⁻`.
    pub fn j_minus(&self) -> Self {
        self.shift(B, A).add(&self.shift(D, C))
    }

    /// `J₊ = χ₊⁺ ∂/∂χ₋⁺ + χ₊⁻ ∂/∂χ₋⁻`.
    pub fn j_plus(&self) -> Self {
        self.shift(A, B).add(&self.shift(C, D))
    }

    /// `J_z = ½(N_a − N_b + N_c − N_d)` with `N` the Euler operators.
    pub fn j_z(&self) -> Self {
        self.weighted(|e| e[A] as i64 - e[B] as i64 + e[C] as i64 - e[D] as i64)
    }

    /// `Γ⁰ = ½(N⁺ − N⁻)`, half the degree difference between the two spinors.
    pub fn gamma0(&self) -> Self {
        self.weighted(|e| e[A] as i64 + e[B] as i64 - e[C] as i64 - e[D] as i64)
    }

    /// `J² = J₊J₋ + J_z² − J_z`.
    pub fn j_squared(&self) -> Self {
        let jz = self.j_z();
        self.j_minus().j_plus().add(&jz.j_z()).sub(&jz)
    }

    fn weighted(&self, twice: impl Fn(&Exponents) -> i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * BigRational::new(twice(e).into(), 2.into()));
        }
        out
    }

    /// Whether `self = λ · other` for some rational `λ`, returning it.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (e, c) = other.terms.iter().next()?;
        let lam = self.coefficient(e) / c;
        (other.scale(&lam) == *self).then_some(lam)
    }
}

/// Writes `a, b, c, d` for `χ₊⁺, χ₋⁺, χ₊⁻, χ₋⁻`, highest power of `a` first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &BigRational::zero();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = if neg { -c.clone() } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(mag.to_string());
            }
            for (v, &k) in ["a", "b", "c", "d"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push((*v).to_string()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    #[test]
    fn arithmetic() {
        let x = Poly::var(A).mul(&Poly::var(D));
        let y = Poly::var(B).mul(&Poly::var(C));
        let p = x.sub(&y).pow(2);
        assert_eq!(p.coefficient(&[1, 1, 1, 1]), q(-2, 1));
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert!(x.sub(&y).j_minus().is_zero(), "x − y is a rotation scalar");
        assert!(x.sub(&y).j_plus().is_zero());
    }

    #[test]
    fn single_spinor_is_spin_half() {
        let a = Poly::var(A);
        assert_eq!(a.j_z(), a.scale(&q(1, 2)));
        assert_eq!(a.gamma0(), a.scale(&q(1, 2)));
        assert_eq!(a.j_squared(), a.scale(&q(3, 4)));
        assert_eq!(a.j_minus(), Poly::var(B));
        assert_eq!(Poly::var(C).gamma0(), Poly::var(C).scale(&q(-1, 2)));
    }
}
