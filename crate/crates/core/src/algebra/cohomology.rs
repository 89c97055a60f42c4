use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::structure::StructureConstants;
use crate::numerics::{exact_rank, exact_rank_with, nullspace, rational_to_string, ExactMatrix, ExactScalar, Pivoting};

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub dim_c1: usize,
    pub dim_c2: usize,
    pub dim_c3: usize,
    pub rank_d1: usize,
    pub rank_d2: usize,
    /// Rank of `d2` recomputed with the opposite pivot order.
    pub rank_d2_reverse: usize,
    pub dim_h2: usize,
    /// Cocycles spanning a complement of the coboundaries, as `(a, b, ω_ab)` lists.
    pub witness_basis: Vec<Vec<(String, String, String)>>,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// `d1`: 1-cochains to 2-cochains, `(dω)(x_a, x_b) = −ω([x_a, x_b])`.
pub fn d1(sc: &StructureConstants) -> ExactMatrix {
    let n = sc.dim();
    let ps = pairs(n);
    let mut m = ExactMatrix::zeros(ps.len(), n);
    for (r, &(a, b)) in ps.iter().enumerate() {
        for (c, f) in sc.bracket(a, b) {
            m[(r, c)] = ExactScalar::from_rational(-f);
        }
    }
    m
}

/// `d2`: 2-cochains to 3-cochains,
/// `(dω)(x, y, z) = −ω([x,y], z) + ω([x,z], y) − ω([y,z], x)`.
pub fn d2(sc: &StructureConstants) -> ExactMatrix {
    let n = sc.dim();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c)))).collect();
    let mut m = ExactMatrix::zeros(triples.len(), n * (n - 1) / 2);
    for (r, &(a, b, c)) in triples.iter().enumerate() {
        let mut row = vec![BigRational::zero(); n * (n.max(1) - 1) / 2];
        for (x, y, z, sign) in [(a, b, c, -1i64), (a, c, b, 1), (b, c, a, -1)] {
            for (d, f) in sc.bracket(x, y) {
                if d == z {
                    continue;
                }
                let (lo, hi, s) = if d < z { (d, z, sign) } else { (z, d, -sign) };
                row[pair_index(n, lo, hi)] += f * BigRational::from_integer(s.into());
            }
        }
        for (col, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                m[(r, col)] = ExactScalar::from_rational(v);
            }
        }
    }
    m
}

/// `dim H²(g; ℝ)` with trivial coefficients from exact ranks of the
/// Chevalley–Eilenberg differentials.
pub fn check_central_extensions(sc: &StructureConstants) -> CohomologyReport {
    let n = sc.dim();
    let dim_c2 = n * n.saturating_sub(1) / 2;
    let dim_c3 = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
    let m1 = d1(sc);
    let rank_d1 = exact_rank(&m1);
    let (rank_d2, rank_d2_reverse, m2) = if dim_c3 == 0 {
        (0, 0, None)
    } else {
        let m2 = d2(sc);
        (exact_rank_with(&m2, Pivoting::Forward), exact_rank_with(&m2, Pivoting::Backward), Some(m2))
    };
    let dim_h2 = dim_c2 - rank_d2 - rank_d1;

    let mut witness_basis = Vec::new();
    if dim_h2 > 0 {
        let cocycles: Vec<Vec<ExactScalar>> = match &m2 {
            Some(m2) => nullspace(m2),
            None => (0..dim_c2).map(|i| (0..dim_c2).map(|j| ExactScalar::from_i64((i == j) as i64)).collect()).collect(),
        };
        // Greedily extend the coboundary span until it reaches the cocycle space.
        let mut span: Vec<Vec<ExactScalar>> = (0..n).map(|c| (0..dim_c2).map(|r| m1[(r, c)].clone()).collect()).collect();
        let mut rank = rank_d1;
        let ps = pairs(n);
        for z in cocycles {
            span.push(z.clone());
            let cols = span.len();
            let mat = ExactMatrix::from_fn(dim_c2, cols, |r, c| span[c][r].clone());
            let new_rank = exact_rank(&mat);
            if new_rank > rank {
                rank = new_rank;
                witness_basis.push(
                    ps.iter()
                        .zip(&z)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(&(a, b), v)| {
                            let v = v.as_rational().map(rational_to_string).unwrap_or_else(|| v.to_string());
                            (sc.names()[a].clone(), sc.names()[b].clone(), v)
                        })
                        .collect(),
                );
            } else {
                span.pop();
            }
            if witness_basis.len() == dim_h2 {
                break;
            }
        }
    }

    CohomologyReport { dim_c1: n, dim_c2, dim_c3, rank_d1, rank_d2, rank_d2_reverse, dim_h2, witness_basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::{abelian, build_algebra, su2};

    #[test]
    fn pair_indexing() {
        for (i, (a, b)) in pairs(6).into_iter().enumerate() {
            assert_eq!(pair_index(6, a, b), i);
        }
    }

    #[test]
    fn d2_after_d1_vanishes() {
        let sc = build_algebra();
        assert!((&d2(&sc) * &d1(&sc)).is_zero());
    }

    #[test]
    fn controls() {
        let r = check_central_extensions(&abelian(2));
        assert_eq!(r.dim_h2, 1);
        assert_eq!(r.witness_basis.len(), 1);
        let r = check_central_extensions(&su2());
        assert_eq!((r.rank_d1, r.rank_d2, r.dim_h2), (3, 0, 0));
    }

    #[test]
    fn full_algebra_has_no_central_extensions() {
        let r = check_central_extensions(&build_algebra());
        assert_eq!((r.dim_c2, r.dim_c3), (105, 455));
        assert_eq!(r.rank_d1, 15);
        assert_eq!(r.rank_d2, 90);
        assert_eq!(r.rank_d2_reverse, 90);
        assert_eq!(r.dim_h2, 0);
        assert!(r.witness_basis.is_empty());
    }
}
