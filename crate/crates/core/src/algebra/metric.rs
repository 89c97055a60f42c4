use num_rational::BigRational;
use num_traits::Zero;

use super::structure::StructureConstants;
use crate::numerics::{ExactMatrix, ExactScalar};

/// The group metric `η_ab = Σ_{c,d} f_ac^d f_bd^c`.
pub fn group_metric(sc: &StructureConstants) -> ExactMatrix {
    let n = sc.dim();
    // ad[a][c] lists (d, f_ac^d).
    let ad: Vec<Vec<Vec<(usize, BigRational)>>> = (0..n).map(|a| (0..n).map(|c| sc.bracket(a, c)).collect()).collect();
    let mut out = ExactMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut s = BigRational::zero();
            for c in 0..n {
                for (d, f1) in &ad[a][c] {
                    for (e, f2) in &ad[b][*d] {
                        if *e == c {
                            s += f1 * f2;
                        }
                    }
                }
            }
            let v = ExactScalar::from_rational(s);
            out[(b, a)] = v.clone();
            out[(a, b)] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generators::GeneratorId::*;
    use crate::algebra::structure::{build_algebra, su2};

    #[test]
    fn paper_metric_values() {
        let m = group_metric(&build_algebra());
        let v = |a: crate::algebra::GeneratorId, b: crate::algebra::GeneratorId| m[(a.index(), b.index())].clone();
        assert_eq!(v(J3, J3), ExactScalar::from_i64(-8));
        assert_eq!(v(K1, K1), ExactScalar::from_i64(8));
        assert_eq!(v(Gam0, Gam0), ExactScalar::from_i64(-8));
        assert_eq!(v(Gam3, Gam3), ExactScalar::from_i64(8));
        for g in [P0, P1, P2, P3, G] {
            for h in 0..15 {
                assert!(m[(g.index(), h)].is_zero());
            }
        }
        assert!(v(J1, K1).is_zero());
    }

    #[test]
    fn su2_killing_form() {
        // With real constants ε, Σ ε_acd ε_bdc = −2δ_ab.
        assert_eq!(group_metric(&su2()), ExactMatrix::identity(3).scale(&ExactScalar::from_i64(-2)));
    }
}
