use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::adjoint::{adjoint_float, conjugate};
use super::{
    conjugate_g_by_gamma, conjugate_gamma_by_g, conjugate_gamma_by_p, conjugate_p_by_gamma, OmegaClass, OmegaParameter,
    TransformCheck, TRANSFORM_TOL,
};
use crate::algebra::{GeneratorId, ETA};
use crate::error::{Error, Result};
use crate::numerics::FloatMatrix;
use crate::report::Status;
use crate::wave::FourVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    GByGamma,
    PByGamma,
    GammaByG,
    GammaByP,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub seed: u64,
    pub draws: usize,
    pub timelike: usize,
    pub spacelike: usize,
    pub status: Status,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_printed_residual: Option<f64>,
    pub max_outside_span: f64,
    /// The draw with the largest residual.
    pub worst: TransformCheck,
}

fn random_omega(rng: &mut ChaCha8Rng, class: OmegaClass) -> FourVector {
    let dir: [f64; 3] = loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 {
            break v.map(|x: f64| x / n);
        }
    };
    let (t, s) = match class {
        OmegaClass::Timelike => {
            let t: f64 = rng.gen_range(0.2..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            (t, t.abs() * rng.gen_range(0.0..0.9))
        }
        _ => {
            let s: f64 = rng.gen_range(0.2..2.5);
            (s * rng.gen_range(-0.9..0.9), s)
        }
    };
    FourVector::new(t, s * dir[0], s * dir[1], s * dir[2])
}

/// `n` seeded draws of one identity; ω alternates between timelike and spacelike.
pub fn sweep(kind: SweepKind, n: usize, seed: u64) -> Result<SweepReport> {
    if n == 0 {
        return Err(Error::Parse("a sweep needs at least one draw".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<(FourVector, f64, usize)> = (0..n)
        .map(|i| {
            let class = if i % 2 == 0 { OmegaClass::Timelike } else { OmegaClass::Spacelike };
            let w = random_omega(&mut rng, class);
            let alpha = rng.gen_range(-3.0..3.0);
            let a = FourVector::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            (if kind == SweepKind::GammaByP { a } else { w }, alpha, i % 4)
        })
        .collect();
    let checks: Vec<TransformCheck> = params
        .par_iter()
        .map(|&(w, alpha, idx)| match kind {
            SweepKind::GByGamma => conjugate_g_by_gamma(&OmegaParameter::new(w)),
            SweepKind::PByGamma => conjugate_p_by_gamma(&OmegaParameter::new(w), idx),
            SweepKind::GammaByG => conjugate_gamma_by_g(alpha, idx),
            SweepKind::GammaByP => conjugate_gamma_by_p(w.0, idx),
        })
        .collect::<Result<_>>()?;
    let uses_omega = matches!(kind, SweepKind::GByGamma | SweepKind::PByGamma);
    let count = |c: OmegaClass| if uses_omega { params.iter().filter(|p| OmegaParameter::new(p.0).class == c).count() } else { 0 };
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let max_printed_residual = checks.iter().filter_map(|c| c.printed_residual).reduce(f64::max);
    let max_outside_span = checks.iter().map(|c| c.measured.outside_span).fold(0.0, f64::max);
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Amended) {
        Status::Amended
    } else {
        Status::Pass
    };
    let worst = checks.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)).cloned().expect("n > 0");
    Ok(SweepReport {
        kind,
        seed,
        draws: n,
        timelike: count(OmegaClass::Timelike),
        spacelike: count(OmegaClass::Spacelike),
        status,
        max_residual,
        max_printed_residual,
        max_outside_span,
        worst,
    })
}

/// Deviation from the identity on `span{𝒢, P}` after conjugation by
/// `ω = 2π u` for a timelike unit `u`.
pub fn periodicity_defect(u: FourVector) -> Result<f64> {
    let w = OmegaParameter::new(u);
    if w.class != OmegaClass::Timelike {
        return Err(Error::Parse(format!("periodicity needs a timelike direction, got {u}")));
    }
    let omega = OmegaParameter::new(u.scale(2.0 * PI / w.magnitude()));
    let mut worst: f64 = 0.0;
    let g = conjugate_g_by_gamma(&omega)?;
    worst = worst.max(unit_defect(&g, GeneratorId::G));
    for b in 0..4 {
        worst = worst.max(unit_defect(&conjugate_p_by_gamma(&omega, b)?, GeneratorId::p(b)));
    }
    Ok(worst)
}

fn unit_defect(c: &TransformCheck, g: GeneratorId) -> f64 {
    let m = &c.measured.coefficients;
    (0..15).map(|a| (m[a] - if a == g.index() { 1.0 } else { 0.0 }).abs()).fold(c.measured.outside_span, f64::max)
}

/// `|c_𝒢² − η^{νν} c_ν² − 1|` for the measured image of `𝒢`.
pub fn mixing_identity_defect(omega: &OmegaParameter) -> Result<f64> {
    let m = conjugate_g_by_gamma(omega)?.measured.coefficients;
    let cg = m[GeneratorId::G.index()];
    let cp: f64 = (0..4).map(|nu| ETA[nu] as f64 * m[GeneratorId::p(nu).index()].powi(2)).sum();
    Ok((cg * cg - cp - 1.0).abs())
}

/// Largest second difference `f(t+δ) − 2f(t) + f(t−δ)` of the coefficients of
/// `Γ^μ` conjugated by `t·𝒢` (`by_g`) or by `t·a^β P_β`.
pub fn affine_defect(by_g: bool, t: f64, delta: f64, a: [f64; 4], mu: usize) -> Result<f64> {
    let at = |s: f64| -> Result<[f64; 15]> {
        Ok(if by_g {
            conjugate_gamma_by_g(s, mu)?.measured.coefficients
        } else {
            conjugate_gamma_by_p(a.map(|x| x * s), mu)?.measured.coefficients
        })
    };
    let (p, z, m) = (at(t + delta)?, at(t)?, at(t - delta)?);
    Ok((0..15).map(|i| (p[i] - 2.0 * z[i] + m[i]).abs()).fold(0.0, f64::max))
}

/// Difference between the exponential conjugation and its second-order
/// series `X + i[A, X] − ½[A, [A, X]]`.
pub fn truncation_defect(exponent: &[(GeneratorId, f64)], x: GeneratorId) -> f64 {
    let ad = adjoint_float();
    let mut a = FloatMatrix::zeros(15, 15);
    for &(g, c) in exponent {
        a = &a + &ad[g.index()].scale(Complex64::new(c, 0.0));
    }
    let comm = |p: &FloatMatrix, q: &FloatMatrix| &(p * q) - &(q * p);
    let x0 = &ad[x.index()];
    let c1 = comm(&a, x0);
    let c2 = comm(&a, &c1);
    let series = &(x0 + &c1.scale(Complex64::new(0.0, 1.0))) + &c2.scale(Complex64::new(-0.5, 0.0));
    (&conjugate(exponent, x) - &series).max_abs()
}

/// Tolerance shared by the sweep checks.
pub const SWEEP_TOL: f64 = TRANSFORM_TOL;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps_hold() {
        for kind in [SweepKind::GByGamma, SweepKind::PByGamma, SweepKind::GammaByG, SweepKind::GammaByP] {
            let r = sweep(kind, 100, 0).unwrap();
            assert!(r.max_residual < SWEEP_TOL, "{kind:?}: {}", r.max_residual);
            assert!(r.status.is_pass());
            assert!(r.max_outside_span < 1e-11);
        }
        let r = sweep(SweepKind::GByGamma, 100, 0).unwrap();
        assert_eq!((r.timelike, r.spacelike), (50, 50));
    }

    #[test]
    fn period_and_mixing() {
        assert!(periodicity_defect(FourVector::new(1.0, 0.0, 0.0, 0.0)).unwrap() < 1e-10);
        assert!(periodicity_defect(FourVector::new(1.3, 0.2, -0.4, 0.5)).unwrap() < 1e-10);
        for w in [FourVector::new(0.9, 0.1, 0.2, 0.3), FourVector::new(0.1, 1.0, -0.7, 0.2)] {
            assert!(mixing_identity_defect(&OmegaParameter::new(w)).unwrap() < 1e-10);
        }
    }

    #[test]
    fn shifts_are_affine_and_truncate() {
        assert!(affine_defect(true, 0.7, 0.3, [0.0; 4], 2).unwrap() < 1e-12);
        assert!(affine_defect(false, -0.4, 0.25, [0.3, -1.0, 0.5, 2.0], 0).unwrap() < 1e-12);
        assert!(truncation_defect(&[(GeneratorId::G, 1.7)], GeneratorId::Gam3) < 1e-13);
        let a: Vec<_> = GeneratorId::P.iter().zip([0.5, -1.2, 0.8, 0.3]).map(|(&g, c)| (g, c)).collect();
        assert!(truncation_defect(&a, GeneratorId::Gam1) < 1e-13);
    }
}
