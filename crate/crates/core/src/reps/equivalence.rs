use serde::Serialize;

use super::representation::Representation;
use crate::algebra::GeneratorId;
use crate::error::{Error, Result};
use crate::numerics::{exact_rank, nullspace, ExactMatrix, ExactScalar};

/// An invertible `S` with `S·A_g = B_g·S` for every Lorentz generator.
#[derive(Clone, Debug, Serialize)]
pub struct Intertwiner {
    pub s: ExactMatrix,
    /// Dimension of the commutant solution space; 1 for irreducible pairs.
    pub nullity: usize,
    /// `c` with `S†·g_B·S = c·g_A`, when such a constant exists.
    pub metric_factor: Option<ExactScalar>,
}

/// Solves `S·A − B·S = 0` exactly over all Lorentz generators.
pub fn find_intertwiner(a: &Representation, b: &Representation) -> Result<Intertwiner> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("{} vs {}", n, b.dim())));
    }
    let pairs: Vec<(ExactMatrix, ExactMatrix)> = GeneratorId::LORENTZ.iter().map(|&g| (a.mat(g), b.mat(g))).collect();
    let rows = commutant_rows(n, &pairs);
    let basis = if rows.is_empty() {
        return Err(Error::NoClosure("trivial generators have no unique intertwiner".into()));
    } else {
        nullspace(&ExactMatrix::from_rows(rows)?)
    };
    let nullity = basis.len();
    let v = basis
        .into_iter()
        .find(|v| exact_rank(&ExactMatrix::from_fn(n, n, |r, c| v[r * n + c].clone())) == n)
        .ok_or_else(|| Error::NoClosure("no invertible intertwiner".into()))?;
    let s = ExactMatrix::from_fn(n, n, |r, c| v[r * n + c].clone());
    let lhs = s.adjoint().checked_mul(&b.metric_matrix())?.checked_mul(&s)?;
    let ga = a.metric_matrix();
    let metric_factor = (0..n).find(|&i| !ga[(i, i)].is_zero()).and_then(|i| {
        let c = lhs[(i, i)].checked_div(&ga[(i, i)]).ok()?;
        (lhs == ga.scale(&c)).then_some(c)
    });
    Ok(Intertwiner { s, nullity, metric_factor })
}

/// Rows of the linear system `S·A − B·S = 0` over every `(A, B)` pair.
/// Unknown `S[r][c]` sits at column `r*n + c`.
fn commutant_rows(n: usize, pairs: &[(ExactMatrix, ExactMatrix)]) -> Vec<Vec<ExactScalar>> {
    let mut rows = Vec::new();
    for (ma, mb) in pairs {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![ExactScalar::zero(); n * n];
                for k in 0..n {
                    if !ma[(k, c)].is_zero() {
                        row[r * n + k] += &ma[(k, c)];
                    }
                    if !mb[(r, k)].is_zero() {
                        row[k * n + c] -= &mb[(r, k)];
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// The diagonal hermitian form `h` with `h·X = X†·h` for all fifteen
/// generators, scaled so `h[0] = g[0]`. `None` unless that form is unique up
/// to scale, diagonal and real.
pub fn invariant_form(rep: &Representation) -> Option<Vec<ExactScalar>> {
    let n = rep.dim();
    let pairs: Vec<(ExactMatrix, ExactMatrix)> = GeneratorId::ALL
        .iter()
        .map(|&g| {
            let m = rep.mat(g);
            let d = m.adjoint();
            (m, d)
        })
        .collect();
    let rows = commutant_rows(n, &pairs);
    if rows.is_empty() {
        return None;
    }
    let basis = nullspace(&ExactMatrix::from_rows(rows).ok()?);
    let [v] = basis.as_slice() else { return None };
    let diagonal = (0..n).all(|r| (0..n).all(|c| r == c || v[r * n + c].is_zero()));
    if !diagonal || v[0].is_zero() {
        return None;
    }
    let scale = rep.metric.first()?.checked_div(&v[0]).ok()?;
    let h: Vec<ExactScalar> = (0..n).map(|i| &v[i * n + i] * &scale).collect();
    h.iter().all(|x| x.is_real() && !x.is_zero()).then_some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::HalfInt;
    use crate::reps::{dirac_rep, lambda1_rep, synthesize_rep};

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_i64(x)).collect()
    }

    #[test]
    fn dirac_form_is_its_metric() {
        let d = dirac_rep().unwrap();
        assert_eq!(invariant_form(&d).unwrap(), d.metric);
    }

    #[test]
    fn vector_multiplet_form_reweights_gamma_zero() {
        let r = lambda1_rep();
        assert_eq!(invariant_form(&r).unwrap(), ints(&[-1, 2, 2, 2, -1, -1, -1, 2, 2, 2]));
        assert_ne!(invariant_form(&r).unwrap(), r.metric);
    }

    #[test]
    fn dirac_is_self_equivalent() {
        let d = dirac_rep().unwrap();
        let i = find_intertwiner(&d, &d).unwrap();
        assert_eq!(i.nullity, 1);
        assert!(i.metric_factor.is_some());
    }

    #[test]
    fn amended_vector_multiplet_matches_synthesis() {
        let p = lambda1_rep();
        let s = synthesize_rep(HalfInt::ONE).unwrap();
        let i = find_intertwiner(&p, &s).unwrap();
        for g in GeneratorId::LORENTZ {
            let l = i.s.checked_mul(&p.mat(g)).unwrap();
            let r = s.mat(g).checked_mul(&i.s).unwrap();
            assert_eq!(l, r, "{g}");
        }
    }
}
