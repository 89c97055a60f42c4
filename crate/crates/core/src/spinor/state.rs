use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::label::{multiplet_labels, SpinorLabel};
use super::poly::{Exponents, Poly, A, B, C, D};
use crate::error::{Error, Result};
use crate::numerics::{ExactMatrix, ExactScalar, HalfInt, Surd};

/// How a state was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Direct expansion of the generating formula.
    Formula,
    /// Lowered with `J₋` from the lowest `M` the formula reaches.
    Ladder,
}

/// A state `prefactor · poly`; the prefactor is a signed square root so
/// that the factorial normalization stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorPoly {
    pub label: SpinorLabel,
    pub prefactor: Surd,
    pub poly: Poly,
    pub origin: Origin,
}

impl SpinorPoly {
    /// Exact value equality, comparing `prefactor · coefficient` termwise.
    pub fn same_value(&self, other: &SpinorPoly) -> bool {
        let keys: std::collections::BTreeSet<&Exponents> =
            self.poly.terms().map(|(e, _)| e).chain(other.poly.terms().map(|(e, _)| e)).collect();
        keys.into_iter().all(|e| {
            let (c1, c2) = (self.poly.coefficient(e), other.poly.coefficient(e));
            let s1 = c1.signum() * if self.prefactor.is_negative() { -BigRational::one() } else { BigRational::one() };
            let s2 = c2.signum() * if other.prefactor.is_negative() { -BigRational::one() } else { BigRational::one() };
            s1 == s2 && self.prefactor.square() * &c1 * &c1 == other.prefactor.square() * &c2 * &c2
        })
    }

    /// Terms with the prefactor folded in, when it lies in ℚ(√2).
    pub fn exact_terms(&self) -> Option<Vec<(Exponents, ExactScalar)>> {
        let p = self.prefactor.to_exact()?;
        Some(self.poly.terms().map(|(e, c)| (*e, &p * &ExactScalar::from_rational(c.clone()))).collect())
    }
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn int(h: HalfInt) -> u32 {
    h.as_int().and_then(|v| u32::try_from(v).ok()).expect("nonnegative integer exponent")
}

/// `√((J−M)! / ((J+M)! (2J)!))`.
fn normalization(l: &SpinorLabel) -> Surd {
    let jm = (l.j - l.m).as_int().expect("integer");
    let jp = (l.j + l.m).as_int().expect("integer");
    let twoj = l.j.twice();
    Surd::sqrt(BigRational::new(factorial(jm), factorial(jp) * factorial(twoj)))
}

/// `x = χ₊⁺ χ₋⁻`, `y = χ₋⁺ χ₊⁻`.
fn x_poly() -> Poly {
    Poly::var(A).mul(&Poly::var(D))
}

fn y_poly() -> Poly {
    Poly::var(B).mul(&Poly::var(C))
}

/// Expands the generating formula literally: differentiate `x^{J−γ} y^{J+γ}`
/// by `(∂_x + ∂_y)^{J+M}`, substitute the spinor products, and multiply by
/// `[x−y]^{Λ−J} (χ₊⁺)^{M+γ} (χ₊⁻)^{M−γ}` with unit normalization constant.
fn formula_poly(l: &SpinorLabel) -> Poly {
    // Two-variable polynomial in (x, y).
    let mut xy: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
    xy.insert((int(l.j - l.gamma), int(l.j + l.gamma)), BigRational::one());
    for _ in 0..int(l.j + l.m) {
        let mut next: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for ((i, j), c) in &xy {
            if *i > 0 {
                *next.entry((i - 1, *j)).or_insert_with(BigRational::zero) += c * BigRational::from_integer((*i).into());
            }
            if *j > 0 {
                *next.entry((*i, j - 1)).or_insert_with(BigRational::zero) += c * BigRational::from_integer((*j).into());
            }
        }
        next.retain(|_, c| !c.is_zero());
        xy = next;
    }
    let (x, y) = (x_poly(), y_poly());
    let mut body = Poly::zero();
    for ((i, j), c) in xy {
        body = body.add(&x.pow(i).mul(&y.pow(j)).scale(&c));
    }
    x.sub(&y)
        .pow(int(l.lambda - l.j))
        .mul(&Poly::var(A).pow(int(l.m + l.gamma)))
        .mul(&Poly::var(C).pow(int(l.m - l.gamma)))
        .mul(&body)
}

/// Builds `ψ^{Λ,J}_{γ,M}`.
///
/// Labels with `M < |γ|` give negative χ exponents in the formula; those are
/// reached from `M = |γ|` by repeated `J₋` and marked [`Origin::Ladder`].
pub fn build_state(l: &SpinorLabel) -> Result<SpinorPoly> {
    l.validate()?;
    if l.formula_applies() {
        return Ok(SpinorPoly { label: *l, prefactor: normalization(l), poly: formula_poly(l), origin: Origin::Formula });
    }
    let start = l.with_m(l.gamma.abs());
    let mut state = build_state(&start)?;
    let mut m = start.m;
    while m > l.m {
        // J₋ ψ_M = √((J+M)(J−M+1)) ψ_{M−1}.
        let c = Surd::sqrt(((l.j + m).to_rational()) * ((l.j - m + HalfInt::ONE).to_rational()));
        state.prefactor = &state.prefactor * &c.inv()?;
        state.poly = state.poly.j_minus();
        m = m - HalfInt::ONE;
    }
    state.label = *l;
    state.origin = Origin::Ladder;
    Ok(state)
}

/// The generating formula read as a Laurent expression: every monomial
/// `a^{J+M−k} b^{γ−M+k} c^k d^{J−γ−k}` of the expansion has nonnegative
/// exponents, so this is defined on every label.
pub fn laurent_state(l: &SpinorLabel) -> Result<SpinorPoly> {
    l.validate()?;
    let n = int(l.j + l.m) as i64;
    let (jg, jpg) = (int(l.j - l.gamma) as i64, int(l.j + l.gamma) as i64);
    let falling = |top: i64, k: i64| -> BigInt {
        if k > top {
            BigInt::zero()
        } else {
            factorial(top) / factorial(top - k)
        }
    };
    let binom = |n: i64, k: i64| factorial(n) / (factorial(k) * factorial(n - k));
    let (twice_m, twice_g) = (l.m.twice(), l.gamma.twice());
    let mut body = Poly::zero();
    for k in 0..=n {
        let c = binom(n, k) * falling(jg, k) * falling(jpg, n - k);
        if c.is_zero() {
            continue;
        }
        let ea = (l.j + l.m).as_int().unwrap() - k;
        let eb = (twice_g - twice_m) / 2 + k;
        let ed = jg - k;
        assert!(ea >= 0 && eb >= 0 && ed >= 0);
        body.add_term([ea as u32, eb as u32, k as u32, ed as u32], BigRational::from_integer(c));
    }
    let poly = x_poly().sub(&y_poly()).pow(int(l.lambda - l.j)).mul(&body);
    Ok(SpinorPoly { label: *l, prefactor: normalization(l), poly, origin: Origin::Formula })
}

/// `(−1)^{Λ−γ}`.
pub fn spinor_metric(l: &SpinorLabel) -> Result<ExactScalar> {
    let d = (l.lambda - l.gamma)
        .as_int()
        .ok_or_else(|| Error::InvalidLabel(format!("{l}: Lambda - gamma is not an integer")))?;
    Ok(ExactScalar::from_i64(if d.rem_euclid(2) == 0 { 1 } else { -1 }))
}

/// Gram matrix `Σ_monomials c_i c_j` of the rational parts of every state in
/// the multiplet. The positive prefactors do not change its rank.
pub fn gram_matrix(lambda: HalfInt) -> Result<ExactMatrix> {
    if lambda > HalfInt::from_int(3) {
        return Err(Error::InvalidLabel(format!("gram_matrix is limited to Lambda <= 3, got {lambda}")));
    }
    let states: Vec<Poly> =
        multiplet_labels(lambda).iter().map(|l| build_state(l).map(|s| s.poly)).collect::<Result<_>>()?;
    let n = states.len();
    let mut g = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = BigRational::zero();
            for (e, c) in states[i].terms() {
                s += c * states[j].coefficient(e);
            }
            let v = ExactScalar::from_rational(s);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{exact_rank, q};

    fn label(l: i64, j: i64, g: i64, m: i64) -> SpinorLabel {
        SpinorLabel::from_twice(l, j, g, m).unwrap()
    }

    #[test]
    fn lowest_states() {
        let s = build_state(&label(1, 1, 1, 1)).unwrap();
        assert_eq!(s.poly, Poly::var(A));
        let s = build_state(&label(2, 2, 2, 2)).unwrap();
        assert_eq!(s.poly, Poly::monomial([2, 0, 0, 0], q(2, 1)));
        assert_eq!(s.prefactor.square(), &q(1, 4));
    }

    #[test]
    fn eigenvalues_on_every_label() {
        for t in 0..=4 {
            for l in multiplet_labels(HalfInt::from_twice(t)) {
                let s = build_state(&l).unwrap();
                let p = &s.poly;
                assert!(!p.is_zero(), "{l}");
                assert_eq!(p.homogeneous_degree(), Some(t as u32), "{l}");
                assert_eq!(p.j_z(), p.scale(&l.m.to_rational()), "{l}");
                assert_eq!(p.gamma0(), p.scale(&l.gamma.to_rational()), "{l}");
                let jj = l.j.to_rational() * (l.j.to_rational() + BigRational::one());
                assert_eq!(p.j_squared(), p.scale(&jj), "{l}");
            }
        }
    }

    #[test]
    fn lowering_matches_the_ladder_coefficient() {
        for l in multiplet_labels(HalfInt::from_int(2)) {
            if l.m == -l.j {
                continue;
            }
            let s = build_state(&l).unwrap();
            let lowered = build_state(&l.with_m(l.m - HalfInt::ONE)).unwrap();
            let c = Surd::sqrt((l.j + l.m).to_rational() * (l.j - l.m + HalfInt::ONE).to_rational());
            let lhs = SpinorPoly { prefactor: &s.prefactor * &c.inv().unwrap(), poly: s.poly.j_minus(), ..s.clone() };
            assert!(lhs.same_value(&lowered), "{l}");
        }
    }

    #[test]
    fn ladder_states_agree_with_laurent_reading() {
        for t in 0..=4 {
            for l in multiplet_labels(HalfInt::from_twice(t)) {
                let built = build_state(&l).unwrap();
                assert!(built.same_value(&laurent_state(&l).unwrap()), "{l}");
            }
        }
    }

    #[test]
    fn gram_ranks() {
        for (t, dim) in [(0, 1), (1, 4), (2, 10), (3, 20), (4, 35)] {
            let g = gram_matrix(HalfInt::from_twice(t)).unwrap();
            assert_eq!(exact_rank(&g), dim);
        }
        assert!(gram_matrix(HalfInt::from_int(4)).is_err());
    }

    #[test]
    fn metric_signs() {
        let diag: Vec<i64> = multiplet_labels(HalfInt::ONE)
            .iter()
            .map(|l| if spinor_metric(l).unwrap().is_one() { 1 } else { -1 })
            .collect();
        assert_eq!(diag, vec![-1, 1, 1, 1, -1, -1, -1, 1, 1, 1]);
        let dirac: Vec<bool> = multiplet_labels(HalfInt::HALF).iter().map(|l| spinor_metric(l).unwrap().is_one()).collect();
        assert_eq!(dirac, vec![true, true, false, false]);
    }
}
