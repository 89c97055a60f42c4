use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use epalg_core::algebra::{adjoint_rep, build_algebra, GeneratorId, ETA};
use epalg_core::numerics::{commutator, parse_rational, ExactScalar, FloatMatrix, HalfInt};
use epalg_core::poincare::{little_d, wigner_d, wigner_rotation, LorentzMatrix};
use epalg_core::reps::{dirac_rep, synthesize_rep, Representation};
use epalg_core::transforms::{conjugate_g_by_gamma, conjugate_p_by_gamma, OmegaParameter};
use epalg_core::wave::{spectrum_invariance, FourVector};

fn unit_axis() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0).prop_filter("nonzero axis", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

fn velocity(max: f64) -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-max..max).prop_filter("subluminal", move |v| v.iter().map(|x| x * x).sum::<f64>() < max * max)
}

fn lorentz() -> impl Strategy<Value = LorentzMatrix> {
    (unit_axis(), 0.0..PI, velocity(0.9))
        .prop_map(|(axis, angle, v)| LorentzMatrix::boost(v).unwrap().compose(&LorentzMatrix::rotation(axis, angle).unwrap()))
}

fn max_diff(a: &FloatMatrix, b: &FloatMatrix) -> f64 {
    let mut m: f64 = 0.0;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m = m.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    m
}

/// `x_G² − η^{νν} x_ν²`, the value of `𝒢² − η^{βν}P_βP_ν` on a coefficient vector.
fn mass_form(x: &[f64; 15]) -> f64 {
    let g = x[GeneratorId::G.index()];
    g * g - (0..4).map(|nu| ETA[nu] as f64 * x[GeneratorId::p(nu).index()].powi(2)).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn halfint_text_round_trips(twice in -40i64..40) {
        let h = HalfInt::from_twice(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = BigRational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn field_division_inverts_multiplication(a in -50i64..50, b in -50i64..50, c in 1i64..50, d in -50i64..50) {
        prop_assume!(c != 0 && (b != 0 || d != 0));
        let x = &ExactScalar::ratio(a, c) + &(&ExactScalar::sqrt2() * &ExactScalar::from_i64(b));
        let y = &ExactScalar::from_i64(d) + &(&ExactScalar::i() * &ExactScalar::root2_times(BigRational::from_integer(b.into())));
        prop_assume!(!y.is_zero());
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
    }

    #[test]
    fn adjoint_brackets_reproduce_the_structure_constants(a in 0usize..15, b in 0usize..15) {
        let sc = build_algebra();
        let ad = adjoint_rep(&sc).unwrap();
        let (ga, gb) = (GeneratorId::ALL[a], GeneratorId::ALL[b]);
        let mut d = commutator(&ad.mat(ga), &ad.mat(gb)).unwrap();
        for (c, f) in sc.bracket(a, b) {
            d = &d - &ad.mat(GeneratorId::ALL[c]).scale(&(&ExactScalar::i() * &ExactScalar::from_rational(f)));
        }
        prop_assert!(d.is_zero());
    }

    #[test]
    fn gamma_conjugation_preserves_the_mass_form(w in prop::array::uniform4(-1.5f64..1.5), beta in 0usize..4) {
        let omega = OmegaParameter::new(FourVector(w));
        let g = conjugate_g_by_gamma(&omega).unwrap().measured.coefficients;
        prop_assert!((mass_form(&g) - 1.0).abs() < 1e-9 * (1.0 + mass_form(&g).abs()));
        let p = conjugate_p_by_gamma(&omega, beta).unwrap().measured.coefficients;
        let want = -(ETA[beta] as f64);
        prop_assert!((mass_form(&p) - want).abs() < 1e-9 * (1.0 + p.iter().map(|x| x * x).sum::<f64>()));
    }

    #[test]
    fn wigner_rotation_of_a_rotation_is_itself(axis in unit_axis(), angle in 0.0..PI, v in velocity(0.95)) {
        let r = LorentzMatrix::rotation(axis, angle).unwrap();
        let u = epalg_core::poincare::four_velocity(v).unwrap();
        let w = wigner_rotation(&r, &u).unwrap();
        prop_assert!(w.max_abs_diff(&r) < 1e-10);
    }

    #[test]
    fn wigner_rotations_are_rotations(l in lorentz(), v in velocity(0.95)) {
        let u = epalg_core::poincare::four_velocity(v).unwrap();
        let (fix, orth) = wigner_rotation(&l, &u).unwrap().rotation_defects();
        prop_assert!(fix < 1e-10 && orth < 1e-10);
    }

    #[test]
    fn wigner_d_is_a_projective_homomorphism(
        a1 in unit_axis(), t1 in 0.0..PI, a2 in unit_axis(), t2 in 0.0..PI, twice in 1i64..5,
    ) {
        let j = HalfInt::from_twice(twice);
        let (r1, r2) = (LorentzMatrix::rotation(a1, t1).unwrap(), LorentzMatrix::rotation(a2, t2).unwrap());
        let d12 = wigner_d(j, &r1.compose(&r2)).unwrap().matrix;
        let prod = &wigner_d(j, &r1).unwrap().matrix * &wigner_d(j, &r2).unwrap().matrix;
        let plus = max_diff(&d12, &prod);
        let minus = max_diff(&d12, &prod.scale(Complex64::new(-1.0, 0.0)));
        if j.is_integer() {
            prop_assert!(plus < 1e-9, "integer J must be a true representation, {}", plus);
        } else {
            prop_assert!(plus.min(minus) < 1e-9);
        }
    }

    #[test]
    fn little_d_is_orthogonal(beta in -PI..PI, twice in 0i64..7) {
        let j = HalfInt::from_twice(twice);
        let ms: Vec<HalfInt> = j.down_to(-j).collect();
        for &a in &ms {
            for &b in &ms {
                let dot: f64 = ms.iter().map(|&m| little_d(j, a, m, beta) * little_d(j, b, m, beta)).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dirac_spectrum_is_boost_invariant(v in velocity(0.9), mass in 0.2f64..4.0) {
        let inv = spectrum_invariance(&dirac_rep().unwrap(), mass, &[v]).unwrap();
        prop_assert!(inv.rest_matches);
        prop_assert!(inv.max_drift < 1e-10 * mass.max(1.0));
    }
}

#[test]
fn representation_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for rep in [dirac_rep().unwrap(), synthesize_rep(HalfInt::ONE).unwrap(), epalg_core::reps::lambda1_rep()] {
        let path = dir.path().join(format!("{}.json", rep.source));
        rep.write(&path).unwrap();
        assert_eq!(Representation::read(&path).unwrap(), rep);
    }
}
