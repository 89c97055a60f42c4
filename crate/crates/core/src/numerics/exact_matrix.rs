use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::float::FloatMatrix;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Dense matrix over ℚ(i, √2), row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<ExactScalar>>", into = "Vec<Vec<ExactScalar>>")]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ExactScalar::one() } else { ExactScalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!("ragged rows in {r}-row matrix")));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(diag: &[ExactScalar]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { ExactScalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<ExactScalar> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn map(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ExactMatrix {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Matrix product; zero entries of the left factor are skipped.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest entry modulus, evaluated in floating point (for reporting only).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_complex().norm()).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex())
    }

    /// Row-major entries, `rows × cols` long.
    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn all_rational(&self) -> bool {
        self.data.iter().all(ExactScalar::is_rational)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the checked_* methods on
// untrusted input.
impl Add<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        self.checked_add(o).expect("matrix shapes must agree")
    }
}

impl Sub<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(o).expect("matrix shapes must agree")
    }
}

impl Mul<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(o).expect("inner dimensions must agree")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.map(|x| -x)
    }
}

impl TryFrom<Vec<Vec<ExactScalar>>> for ExactMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<ExactMatrix> for Vec<Vec<ExactScalar>> {
    fn from(m: ExactMatrix) -> Self {
        m.to_rows()
    }
}

/// `AB − BA`, exact.
pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "commutator needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// Order in which pivot rows are searched during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivoting {
    /// First row (top-down) with a nonzero entry in the pivot column.
    Forward,
    /// Last row (bottom-up) with a nonzero entry in the pivot column.
    Backward,
}

/// Exact rank by fraction-free (Bareiss) elimination with forward pivoting.
pub fn exact_rank(a: &ExactMatrix) -> usize {
    exact_rank_with(a, Pivoting::Forward)
}

/// Exact rank with an explicit pivot search order.
///
/// Rational matrices are scaled row-wise to integers and eliminated over
/// `BigInt`; anything else runs the same recurrence over ℚ(i, √2).
pub fn exact_rank_with(a: &ExactMatrix, pivoting: Pivoting) -> usize {
    if a.all_rational() {
        let rows = (0..a.rows())
            .map(|i| integer_row(a.row(i).iter().map(|x| x.as_rational().expect("rational"))))
            .collect();
        bareiss_rank(rows, a.cols(), pivoting, BigInt::is_zero, |x, y| x * y, |x, y| x - y, |x, d| x / d, BigInt::one())
    } else {
        bareiss_rank(
            a.to_rows(),
            a.cols(),
            pivoting,
            ExactScalar::is_zero,
            |x, y| x * y,
            |x, y| x - y,
            |x, d| x.checked_div(d).expect("Bareiss pivots are nonzero"),
            ExactScalar::one(),
        )
    }
}

fn integer_row<'a>(row: impl Iterator<Item = &'a BigRational> + Clone) -> Vec<BigInt> {
    let lcm = row.clone().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    row.map(|r| r.numer() * (&lcm / r.denom())).collect()
}

#[allow(clippy::too_many_arguments)]
fn bareiss_rank<T: Clone>(
    mut m: Vec<Vec<T>>,
    cols: usize,
    pivoting: Pivoting,
    is_zero: impl Fn(&T) -> bool,
    mul: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
    div: impl Fn(&T, &T) -> T,
    one: T,
) -> usize {
    let nrows = m.len();
    let mut prev = one;
    let mut rank = 0;
    for c in 0..cols {
        if rank == nrows {
            break;
        }
        let candidates: Box<dyn Iterator<Item = usize>> = match pivoting {
            Pivoting::Forward => Box::new(rank..nrows),
            Pivoting::Backward => Box::new((rank..nrows).rev()),
        };
        let Some(p) = candidates.into_iter().find(|&r| !is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = sub(&mul(&row[j], &piv), &mul(&lead, &pivot_row[j]));
                row[j] = div(&v, &prev);
            }
            row[c] = sub(&lead, &lead);
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Basis of the right null space `{x : A x = 0}` over ℚ(i, √2), from the
/// reduced row echelon form; each basis vector has a 1 in its free column.
pub fn nullspace(a: &ExactMatrix) -> Vec<Vec<ExactScalar>> {
    let (rref, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ExactScalar::zero(); a.cols()];
            v[f] = ExactScalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rref[(r, f)];
            }
            v
        })
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols() {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = t;
            }
        }
        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in c..m.cols() {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows() {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols() {
                if !m[(r, j)].is_zero() {
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Solves the square system `A x = b` exactly; `None` when `A` is singular.
pub fn solve(a: &ExactMatrix, b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return None;
    }
    let aug = ExactMatrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let (m, pivots) = rref(&aug);
    (pivots.len() == n && pivots.iter().enumerate().all(|(i, &p)| p == i))
        .then(|| (0..n).map(|i| m[(i, n)].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ExactScalar::from_i64(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_commutes() {
        let b = m(&[&[1, 2], &[3, 4]]);
        assert!(commutator(&ExactMatrix::identity(2), &b).unwrap().is_zero());
        assert!(commutator(&b, &b).unwrap().is_zero());
    }

    #[test]
    fn pauli_like_bracket() {
        // σx = [[0,1],[1,0]], σz = diag(1,−1): [σx, σz] = −2iσy = [[0,−2],[2,0]].
        let sx = m(&[&[0, 1], &[1, 0]]);
        let sz = m(&[&[1, 0], &[0, -1]]);
        assert_eq!(commutator(&sx, &sz).unwrap(), m(&[&[0, -2], &[2, 0]]));
    }

    #[test]
    fn commutator_shape_errors() {
        let a = ExactMatrix::zeros(2, 2);
        let b = ExactMatrix::zeros(3, 3);
        assert!(matches!(commutator(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(commutator(&ExactMatrix::zeros(2, 3), &ExactMatrix::zeros(2, 3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn small_ranks() {
        assert_eq!(exact_rank(&m(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(exact_rank(&ExactMatrix::zeros(3, 4)), 0);
        assert_eq!(exact_rank(&ExactMatrix::identity(5)), 5);
    }

    #[test]
    fn rank_over_the_extension_field() {
        // Rows (1, √2) and (√2, 2) are dependent; (i, 1) is not a multiple.
        let s = ExactScalar::sqrt2();
        let a = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), s.clone()],
            vec![s.clone(), ExactScalar::from_i64(2)],
            vec![ExactScalar::i(), ExactScalar::one()],
        ])
        .unwrap();
        assert_eq!(exact_rank(&a), 2);
        assert_eq!(exact_rank_with(&a, Pivoting::Backward), 2);
        let dep = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), s.clone()],
            vec![s.clone(), ExactScalar::from_i64(2)],
        ])
        .unwrap();
        assert_eq!(exact_rank(&dep), 1);
    }

    #[test]
    fn rational_rank_with_fractions() {
        let a = ExactMatrix::from_fn(3, 3, |i, j| ExactScalar::ratio(1, (i + j + 1) as i64));
        assert_eq!(exact_rank(&a), 3);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for i in 0..2 {
                let s: ExactScalar = (0..3).map(|j| &a[(i, j)] * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solve_square_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[ExactScalar::from_i64(3), ExactScalar::from_i64(5)]).unwrap();
        assert_eq!(x, vec![ExactScalar::ratio(4, 5), ExactScalar::ratio(7, 5)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[ExactScalar::one(), ExactScalar::one()]).is_none());
    }

    #[test]
    fn json_round_trip_shape() {
        let a = m(&[&[1, 0], &[0, -1]]);
        let s = serde_json::to_string(&a).unwrap();
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
        assert!(serde_json::from_str::<ExactMatrix>(r#"[[{"re":["1/1","0/1"],"im":["0/1","0/1"]}],[]]"#).is_err());
    }
}
