use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::Coefficients;
use crate::algebra::{adjoint_matrices, build_algebra, GeneratorId};
use crate::error::{Error, Result};
use crate::numerics::{mat_exp, ExactMatrix, FloatMatrix};

/// Relative size of the component outside the generator span that is
/// still attributed to rounding.
const SPAN_TOL: f64 = 1e-12;

struct AdjointData {
    exact: Vec<ExactMatrix>,
    float: Vec<FloatMatrix>,
    gram_inv: DMatrix<Complex64>,
}

fn data() -> &'static AdjointData {
    static DATA: OnceLock<AdjointData> = OnceLock::new();
    DATA.get_or_init(|| {
        let exact = adjoint_matrices(&build_algebra()).expect("the algebra satisfies Jacobi");
        let float: Vec<FloatMatrix> = exact.iter().map(ExactMatrix::to_float).collect();
        let gram = DMatrix::from_fn(15, 15, |a, b| frob_inner(&float[a], &float[b]));
        let gram_inv = gram.try_inverse().expect("the adjoint representation is faithful");
        AdjointData { exact, float, gram_inv }
    })
}

fn frob_inner(a: &FloatMatrix, b: &FloatMatrix) -> Complex64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x.conj() * y).sum()
}

/// The fifteen adjoint matrices in floating point.
pub fn adjoint_float() -> &'static [FloatMatrix] {
    &data().float
}

/// `exp(iA) X exp(−iA)` with `A = Σ c_g g` in the adjoint representation.
pub fn conjugate(exponent: &[(GeneratorId, f64)], x: GeneratorId) -> FloatMatrix {
    let ad = adjoint_float();
    let mut a = FloatMatrix::zeros(15, 15);
    for &(g, c) in exponent {
        if c != 0.0 {
            a = &a + &ad[g.index()].scale(Complex64::new(0.0, c));
        }
    }
    let u = mat_exp(&a);
    let u_inv = mat_exp(&a.scale(Complex64::new(-1.0, 0.0)));
    &(&u * &ad[x.index()]) * &u_inv
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "ser_coeffs")]
    pub coefficients: Coefficients,
    /// Largest imaginary part among the coefficients.
    pub imaginary: f64,
    /// Frobenius norm of the part of the matrix outside the generator span.
    pub outside_span: f64,
}

/// Least-squares coefficients of `m` over the adjoint matrices.
pub fn decompose(m: &FloatMatrix) -> Result<Decomposition> {
    let d = data();
    let rhs = DVector::from_fn(15, |a, _| frob_inner(&d.float[a], m));
    let c = &d.gram_inv * rhs;
    let mut fit = FloatMatrix::zeros(15, 15);
    for (a, ad) in d.float.iter().enumerate() {
        fit = &fit + &ad.scale(c[a]);
    }
    let outside_span = (m - &fit).frobenius();
    if outside_span > SPAN_TOL * m.frobenius().max(1.0) {
        return Err(Error::DecompositionResidual(outside_span));
    }
    let mut coefficients = [0.0; 15];
    let mut imaginary: f64 = 0.0;
    for a in 0..15 {
        coefficients[a] = c[a].re;
        imaginary = imaginary.max(c[a].im.abs());
    }
    Ok(Decomposition { coefficients, imaginary, outside_span })
}

/// Exact checks `[𝒢, [𝒢, Γ^μ]] = 0` and `[P_β, [P_ν, Γ^μ]] = 0` for all
/// indices, returned as the number of nonzero columns found for each.
pub fn nilpotency_defects() -> (usize, usize) {
    let ex = &data().exact;
    let col_nonzero = |m: &ExactMatrix, c: usize| (0..15).any(|r| !m[(r, c)].is_zero());
    let adg = &ex[GeneratorId::G.index()];
    let gg = adg.checked_mul(adg).expect("square");
    let g_bad = GeneratorId::GAMMA.iter().filter(|g| col_nonzero(&gg, g.index())).count();
    let mut p_bad = 0;
    for b in GeneratorId::P {
        for n in GeneratorId::P {
            let pp = ex[b.index()].checked_mul(&ex[n.index()]).expect("square");
            p_bad += GeneratorId::GAMMA.iter().filter(|g| col_nonzero(&pp, g.index())).count();
        }
    }
    (g_bad, p_bad)
}

pub(crate) fn ser_coeffs<S: Serializer>(c: &Coefficients, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(15))?;
    for g in GeneratorId::ALL {
        m.serialize_entry(g.name(), &crate::report::fmt_float(c[g.index()]))?;
    }
    m.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_decompose_to_themselves() {
        for g in GeneratorId::ALL {
            let d = decompose(&adjoint_float()[g.index()]).unwrap();
            for (a, c) in d.coefficients.iter().enumerate() {
                let want = if a == g.index() { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn out_of_span_is_rejected() {
        assert!(matches!(decompose(&FloatMatrix::identity(15)), Err(Error::DecompositionResidual(_))));
    }

    #[test]
    fn nilpotent_shifts_are_exact() {
        assert_eq!(nilpotency_defects(), (0, 0));
    }
}
