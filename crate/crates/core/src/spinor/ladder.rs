use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::label::SpinorLabel;
use crate::numerics::{HalfInt, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderOp {
    Jz,
    Jplus,
    Jminus,
    Gamma0,
    DeltaJplus,
    DeltaJminus,
    Casimir,
    J2,
}

impl LadderOp {
    pub const ALL: [LadderOp; 8] = [
        LadderOp::Jz,
        LadderOp::Jplus,
        LadderOp::Jminus,
        LadderOp::Gamma0,
        LadderOp::DeltaJplus,
        LadderOp::DeltaJminus,
        LadderOp::Casimir,
        LadderOp::J2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LadderOp::Jz => "Jz",
            LadderOp::Jplus => "Jplus",
            LadderOp::Jminus => "Jminus",
            LadderOp::Gamma0 => "Gamma0",
            LadderOp::DeltaJplus => "DeltaJplus",
            LadderOp::DeltaJminus => "DeltaJminus",
            LadderOp::Casimir => "Casimir",
            LadderOp::J2 => "J2",
        }
    }
}

/// `coeff · ψ_label`, or the zero vector when `label` is `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderResult {
    pub coeff: Surd,
    pub label: Option<SpinorLabel>,
}

impl LadderResult {
    pub fn is_annihilated(&self) -> bool {
        self.label.is_none()
    }

    fn of(coeff: Surd, label: SpinorLabel) -> Self {
        if coeff.is_zero() {
            Self { coeff, label: None }
        } else {
            Self { coeff, label: Some(label) }
        }
    }
}

fn rat(h: HalfInt) -> BigRational {
    h.to_rational()
}

/// Label-level action of the diagonal and ladder operators.
pub fn apply_ladder(op: LadderOp, l: &SpinorLabel) -> LadderResult {
    let one = BigRational::one();
    let (lam, j, g, m) = (rat(l.lambda), rat(l.j), rat(l.gamma), rat(l.m));
    match op {
        LadderOp::Jz => LadderResult::of(Surd::from_rational(m), *l),
        LadderOp::Gamma0 => LadderResult::of(Surd::from_rational(g), *l),
        LadderOp::J2 => LadderResult::of(Surd::from_rational(&j * (&j + &one)), *l),
        LadderOp::Casimir => LadderResult::of(Surd::from_rational(BigRational::from_integer(2.into()) * &lam * (&lam + BigRational::from_integer(2.into()))), *l),
        LadderOp::Jplus => {
            LadderResult::of(Surd::sqrt((&j + &m + &one) * (&j - &m)), l.with_m(l.m + HalfInt::ONE))
        }
        LadderOp::Jminus => {
            LadderResult::of(Surd::sqrt((&j - &m + &one) * (&j + &m)), l.with_m(l.m - HalfInt::ONE))
        }
        LadderOp::DeltaJplus => {
            LadderResult::of(Surd::from_rational((&lam + &one) * (&j - &g)), l.with_gamma(l.gamma + HalfInt::ONE))
        }
        LadderOp::DeltaJminus => {
            LadderResult::of(Surd::from_rational(-(&lam + &one) * (&j + &g)), l.with_gamma(l.gamma - HalfInt::ONE))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{q, ExactScalar};
    use crate::spinor::label::multiplet_labels;

    fn label(l: i64, j: i64, g: i64, m: i64) -> SpinorLabel {
        SpinorLabel::from_twice(l, j, g, m).unwrap()
    }

    #[test]
    fn table_examples() {
        let r = apply_ladder(LadderOp::Jplus, &label(2, 2, 0, 0));
        assert_eq!(r.coeff.to_exact(), Some(ExactScalar::sqrt2()));
        assert_eq!(r.label.unwrap().m, HalfInt::ONE);

        assert!(apply_ladder(LadderOp::DeltaJplus, &label(2, 2, 2, 0)).is_annihilated());

        let r = apply_ladder(LadderOp::DeltaJminus, &label(2, 2, 0, 2));
        assert_eq!(r.coeff.to_exact(), Some(ExactScalar::from_i64(-2)));
        assert_eq!(r.label.unwrap().gamma, -HalfInt::ONE);

        for l in multiplet_labels(HalfInt::ONE) {
            assert_eq!(apply_ladder(LadderOp::Casimir, &l).coeff.to_exact(), Some(ExactScalar::from_i64(6)));
        }
        assert_eq!(apply_ladder(LadderOp::Casimir, &label(1, 1, 1, 1)).coeff.square(), &q(25, 4));
    }

    #[test]
    fn boundaries_and_ladder_algebra() {
        for t in 0..=4 {
            for l in multiplet_labels(HalfInt::from_twice(t)) {
                let up = apply_ladder(LadderOp::DeltaJplus, &l);
                assert_eq!(up.is_annihilated(), l.gamma == l.j, "{l}");
                if let Some(nl) = up.label {
                    assert_eq!(apply_ladder(LadderOp::Gamma0, &nl).coeff, Surd::from_rational(rat(l.gamma) + BigRational::one()));
                }
                let down = apply_ladder(LadderOp::DeltaJminus, &l);
                assert_eq!(down.is_annihilated(), l.gamma == -l.j, "{l}");

                // ⟨J₊J₋⟩ − ⟨J₋J₊⟩ = 2M.
                let pm = apply_ladder(LadderOp::Jminus, &l).coeff.square().clone();
                let mp = apply_ladder(LadderOp::Jplus, &l).coeff.square().clone();
                assert_eq!(pm - mp, rat(l.m) * BigRational::from_integer(2.into()), "{l}");
            }
        }
    }
}
