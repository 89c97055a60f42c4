use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::generators::GeneratorId;
use super::jacobi::check_jacobi;
use super::structure::StructureConstants;
use crate::error::{Error, Result};
use crate::numerics::{commutator, ExactMatrix, ExactScalar};
use crate::report::Residual;

/// Matrices assigned to (some of) the generators, all of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    dim: usize,
    mats: BTreeMap<GeneratorId, ExactMatrix>,
}

impl Realization {
    pub fn new(dim: usize, mats: BTreeMap<GeneratorId, ExactMatrix>) -> Result<Self> {
        for (g, m) in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("{g} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        Ok(Self { dim, mats })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, g: GeneratorId) -> Option<&ExactMatrix> {
        self.mats.get(&g)
    }

    /// The matrix of `g`, or zero when the realization leaves it out.
    pub fn mat(&self, g: GeneratorId) -> ExactMatrix {
        self.mats.get(&g).cloned().unwrap_or_else(|| ExactMatrix::zeros(self.dim, self.dim))
    }

    pub fn generators(&self) -> impl Iterator<Item = (GeneratorId, &ExactMatrix)> {
        self.mats.iter().map(|(g, m)| (*g, m))
    }

    pub fn insert(&mut self, g: GeneratorId, m: ExactMatrix) {
        assert_eq!((m.rows(), m.cols()), (self.dim, self.dim));
        self.mats.insert(g, m);
    }

    /// Checks `[M_a, M_b] = i Σ_c f_ab^c M_c` for every pair drawn from `gens`.
    pub fn check_closure(&self, sc: &StructureConstants, gens: &[GeneratorId]) -> ClosureReport {
        assert_eq!(sc.dim(), GeneratorId::ALL.len());
        let pairs: Vec<(GeneratorId, GeneratorId)> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| gens[i + 1..].iter().map(move |&b| (a, b)))
            .collect();
        let entries: Vec<BracketResidual> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let r = closure_defect(sc, &|g| self.mat(g), a, b);
                BracketResidual { a, b, residual: Residual::exact(r.max_abs(), r.is_zero()) }
            })
            .collect();
        ClosureReport { pairs: entries.len(), entries }
    }
}

/// `[M_a, M_b] − i Σ_c f_ab^c M_c`.
pub fn closure_defect(
    sc: &StructureConstants,
    mat: &dyn Fn(GeneratorId) -> ExactMatrix,
    a: GeneratorId,
    b: GeneratorId,
) -> ExactMatrix {
    let mut r = commutator(&mat(a), &mat(b)).expect("square matrices of one dimension");
    for (c, f) in sc.bracket(a.index(), b.index()) {
        let s = ExactScalar::i() * ExactScalar::from_rational(f);
        r = &r - &mat(GeneratorId::from_index(c).expect("15-generator table")).scale(&s);
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketResidual {
    pub a: GeneratorId,
    pub b: GeneratorId,
    pub residual: Residual,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub pairs: usize,
    pub entries: Vec<BracketResidual>,
}

impl ClosureReport {
    pub fn failures(&self) -> impl Iterator<Item = &BracketResidual> {
        self.entries.iter().filter(|e| !e.residual.is_exact_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn max_residual(&self) -> Residual {
        self.entries.iter().fold(Residual::ExactZero, |acc, e| acc.max(e.residual))
    }
}

/// Adjoint matrices `(ad_a)_{c,b} = i f_ab^c`, the matrix of `Y ↦ [X_a, Y]`
/// in the basis of the table.
pub fn adjoint_matrices(sc: &StructureConstants) -> Result<Vec<ExactMatrix>> {
    let jac = check_jacobi(sc);
    if !jac.is_clean() {
        return Err(Error::JacobiViolation(jac.failures.len()));
    }
    let n = sc.dim();
    Ok((0..n)
        .map(|a| {
            let mut m = ExactMatrix::zeros(n, n);
            for b in 0..n {
                for (c, f) in sc.bracket(a, b) {
                    m[(c, b)] = ExactScalar::i() * ExactScalar::from_rational(f);
                }
            }
            m
        })
        .collect())
}

/// The fifteen-dimensional adjoint realization of the full algebra.
pub fn adjoint_rep(sc: &StructureConstants) -> Result<Realization> {
    if sc.dim() != GeneratorId::ALL.len() {
        return Err(Error::DimensionMismatch(format!("adjoint_rep expects 15 generators, got {}", sc.dim())));
    }
    let mats = adjoint_matrices(sc)?;
    Realization::new(sc.dim(), GeneratorId::ALL.iter().copied().zip(mats).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::{build_algebra, su2, without_gamma_p_bracket};
    use GeneratorId::*;

    #[test]
    fn adjoint_is_faithful_on_all_pairs() {
        let sc = build_algebra();
        let ad = adjoint_rep(&sc).unwrap();
        let r = ad.check_closure(&sc, &GeneratorId::ALL);
        assert_eq!(r.pairs, 105);
        assert!(r.is_exact());
    }

    #[test]
    fn j3_rotates_j1_j2() {
        let ad = adjoint_rep(&build_algebra()).unwrap();
        let m = ad.mat(J3);
        // [J3, J1] = i J2 and [J3, J2] = −i J1.
        assert_eq!(m[(J2.index(), J1.index())], ExactScalar::i());
        assert_eq!(m[(J1.index(), J2.index())], -ExactScalar::i());
        assert!(m[(J1.index(), J1.index())].is_zero());
    }

    #[test]
    fn p0_is_nilpotent_on_gamma0() {
        let ad = adjoint_rep(&build_algebra()).unwrap();
        let p0 = ad.mat(P0);
        let sq = &p0 * &p0;
        for i in 0..15 {
            assert!(sq[(i, Gam0.index())].is_zero());
        }
        assert!(!p0[(G.index(), Gam0.index())].is_zero());
    }

    #[test]
    fn gamma_bracket_gives_boost() {
        let ad = adjoint_rep(&build_algebra()).unwrap();
        let c = commutator(&ad.mat(Gam0), &ad.mat(Gam3)).unwrap();
        assert_eq!(c, ad.mat(K3).scale(&ExactScalar::i()));
    }

    #[test]
    fn broken_table_is_refused() {
        assert!(matches!(adjoint_rep(&without_gamma_p_bracket()), Err(Error::JacobiViolation(_))));
    }

    #[test]
    fn su2_adjoint_matrices() {
        let ad = adjoint_matrices(&su2()).unwrap();
        let c = commutator(&ad[0], &ad[1]).unwrap();
        assert_eq!(c, ad[2].scale(&ExactScalar::i()));
    }
}
