use crate::numerics::{nullspace, q, ExactMatrix, ExactScalar, HalfInt};

/// Phase convention of the `(2J+1)`-dimensional angular-momentum blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinBasis {
    /// Condon–Shortley: hermitian `J_k`, entries `√((J∓M)(J±M+1))`.
    CondonShortley,
    /// Rescaled basis with `J₊ e_M = (J+M+1) e_{M+1}` and `J₋ e_{M+1} = (J−M) e_M`,
    /// rational for every `J`.
    Binomial,
}

impl SpinBasis {
    /// Condon–Shortley where its entries lie in ℚ(√2), i.e. `J ≤ 1`.
    pub fn for_spin(j: HalfInt) -> Self {
        if j <= HalfInt::ONE {
            SpinBasis::CondonShortley
        } else {
            SpinBasis::Binomial
        }
    }
}

/// `(J_x, J_y, J_z)` on `M = J, J−1, …, −J`.
pub fn spin_matrices(j: HalfInt, basis: SpinBasis) -> [ExactMatrix; 3] {
    let n = (j.twice() + 1) as usize;
    let ms: Vec<HalfInt> = j.down_to(-j).collect();
    let mut jp = ExactMatrix::zeros(n, n);
    let mut jm = ExactMatrix::zeros(n, n);
    // Column r holds M = ms[r]; J₊ maps it to row r−1.
    for r in 1..n {
        let m = ms[r];
        let a = (j - m).to_rational(); // J − M
        let b = (j + m + HalfInt::ONE).to_rational(); // J + M + 1
        match basis {
            SpinBasis::CondonShortley => {
                let c = ExactScalar::sqrt_rational(&(&a * &b)).expect("Condon-Shortley entry outside the field");
                jp[(r - 1, r)] = c.clone();
                jm[(r, r - 1)] = c;
            }
            SpinBasis::Binomial => {
                jp[(r - 1, r)] = ExactScalar::from_rational(b);
                jm[(r, r - 1)] = ExactScalar::from_rational(a);
            }
        }
    }
    let half = ExactScalar::ratio(1, 2);
    let jx = (&jp + &jm).scale(&half);
    let jy = (&jp - &jm).scale(&(&half * &-ExactScalar::i()));
    let jz = ExactMatrix::diagonal(&ms.iter().map(|m| ExactScalar::from_rational(m.to_rational())).collect::<Vec<_>>());
    [jx, jy, jz]
}

/// The vector-operator tensor `T_k` mapping spin `j` to spin `jp`:
/// the unique (up to scale) solution of `J'_a T_b − T_b J_a = i ε_abc T_c`,
/// normalized so that its first nonzero entry is 1. `None` when no such
/// operator exists (`|j − jp| > 1` or `j = jp = 0`).
pub fn vector_operator(jp: HalfInt, j: HalfInt) -> Option<[ExactMatrix; 3]> {
    let (lj, rj) = (spin_matrices(jp, SpinBasis::for_spin(jp)), spin_matrices(j, SpinBasis::for_spin(j)));
    let (np, n) = (lj[0].rows(), rj[0].rows());
    let block = np * n;
    let idx = |k: usize, r: usize, c: usize| k * block + r * n + c;
    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for r in 0..np {
                for c in 0..n {
                    let mut row = vec![ExactScalar::zero(); 3 * block];
                    for s in 0..np {
                        row[idx(b, s, c)] += &lj[a][(r, s)];
                    }
                    for s in 0..n {
                        row[idx(b, r, s)] -= &rj[a][(s, c)];
                    }
                    for cc in 0..3 {
                        let e = crate::algebra::levi_civita(a + 1, b + 1, cc + 1);
                        if e != 0 {
                            row[idx(cc, r, c)] -= &(&ExactScalar::i() * &ExactScalar::from_i64(e));
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let m = ExactMatrix::from_rows(rows).ok()?;
    let ns = nullspace(&m);
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    let pivot = v.iter().find(|x| !x.is_zero())?.inv().ok()?;
    let v: Vec<ExactScalar> = v.iter().map(|x| x * &pivot).collect();
    Some([0, 1, 2].map(|k| ExactMatrix::from_fn(np, n, |r, c| v[idx(k, r, c)].clone())))
}

/// `Σ_k A_k B_k`.
pub fn dot(a: &[ExactMatrix; 3], b: &[ExactMatrix; 3]) -> ExactMatrix {
    let mut out = &a[0] * &b[0];
    for k in 1..3 {
        out = &out + &(&a[k] * &b[k]);
    }
    out
}

/// `J(J+1)` as an exact scalar.
pub fn casimir_value(j: HalfInt) -> ExactScalar {
    let r = j.to_rational();
    ExactScalar::from_rational(&r * (&r + q(1, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::commutator;

    fn check_su2(j: HalfInt, basis: SpinBasis) {
        let [jx, jy, jz] = spin_matrices(j, basis);
        let i = ExactScalar::i();
        assert_eq!(commutator(&jx, &jy).unwrap(), jz.scale(&i));
        assert_eq!(commutator(&jy, &jz).unwrap(), jx.scale(&i));
        assert_eq!(commutator(&jz, &jx).unwrap(), jy.scale(&i));
        let n = jx.rows();
        let c = dot(&[jx.clone(), jy.clone(), jz.clone()], &[jx, jy, jz]);
        assert_eq!(c, ExactMatrix::identity(n).scale(&casimir_value(j)));
    }

    #[test]
    fn spin_algebra_in_both_bases() {
        for t in 0..=4 {
            check_su2(HalfInt::from_twice(t), SpinBasis::Binomial);
        }
        for t in 0..=2 {
            check_su2(HalfInt::from_twice(t), SpinBasis::CondonShortley);
        }
    }

    #[test]
    fn condon_shortley_spin_one_is_hermitian() {
        let [jx, jy, jz] = spin_matrices(HalfInt::ONE, SpinBasis::CondonShortley);
        assert_eq!(jx.adjoint(), jx);
        assert_eq!(jy.adjoint(), jy);
        assert_eq!(jz.diag()[0], ExactScalar::one());
        assert_eq!(jx[(0, 1)], ExactScalar::root2_times(q(1, 2)));
    }

    #[test]
    fn vector_operators_exist_for_adjacent_spins() {
        for (a, b) in [(0, 2), (2, 0), (1, 1), (2, 2), (1, 3), (3, 1), (2, 4), (4, 2), (3, 3)] {
            let (jp, j) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
            let t = vector_operator(jp, j).unwrap_or_else(|| panic!("{jp} <- {j}"));
            let lj = spin_matrices(jp, SpinBasis::for_spin(jp));
            let rj = spin_matrices(j, SpinBasis::for_spin(j));
            let lhs = &(&lj[0] * &t[1]) - &(&t[1] * &rj[0]);
            assert_eq!(lhs, t[2].scale(&ExactScalar::i()));
        }
        assert!(vector_operator(HalfInt::ZERO, HalfInt::ZERO).is_none());
        assert!(vector_operator(HalfInt::from_int(2), HalfInt::ZERO).is_none());
    }
}
