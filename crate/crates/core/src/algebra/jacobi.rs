use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::structure::StructureConstants;
use crate::numerics::rational_to_string;

#[derive(Clone, Debug, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    /// Nonzero components `(e, Σ_cyclic f_ab^d f_dc^e)`.
    pub residual: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub triples: usize,
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!("{} triples, {} failures", self.triples, self.failures.len())
    }
}

/// `Σ_cyclic [[X_a, X_b], X_c]` in units of `−X_e`, i.e. `Σ_cyclic Σ_d f_ab^d f_dc^e`.
pub fn jacobi_residual(sc: &StructureConstants, a: usize, b: usize, c: usize) -> BTreeMap<usize, BigRational> {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        for (d, f1) in sc.bracket(x, y) {
            for (e, f2) in sc.bracket(d, z) {
                *acc.entry(e).or_insert_with(BigRational::zero) += &f1 * &f2;
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Checks the Jacobi identity on every unordered triple of distinct generators.
pub fn check_jacobi(sc: &StructureConstants) -> JacobiReport {
    let n = sc.dim();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c)))).collect();
    let names = sc.names();
    let failures = triples
        .par_iter()
        .filter_map(|&(a, b, c)| {
            let r = jacobi_residual(sc, a, b, c);
            (!r.is_empty()).then(|| JacobiFailure {
                triple: [names[a].clone(), names[b].clone(), names[c].clone()],
                residual: r.into_iter().map(|(e, v)| (names[e].clone(), rational_to_string(&v))).collect(),
            })
        })
        .collect();
    JacobiReport { triples: triples.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::{build_algebra, su2, without_gamma_p_bracket};

    #[test]
    fn full_algebra_is_clean() {
        let r = check_jacobi(&build_algebra());
        assert_eq!(r.triples, 455);
        assert!(r.is_clean(), "{:?}", r.failures.first());
    }

    #[test]
    fn su2_is_clean() {
        let r = check_jacobi(&su2());
        assert_eq!(r.triples, 1);
        assert!(r.is_clean());
    }

    #[test]
    fn deleted_bracket_breaks_p_gamma0_gamma() {
        let r = check_jacobi(&without_gamma_p_bracket());
        for k in 1..=3 {
            let t = ["Gam0".to_string(), format!("Gam{k}"), format!("P{k}")];
            assert!(r.failures.iter().any(|f| f.triple == t), "missing {t:?}");
        }
    }
}
