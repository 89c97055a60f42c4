use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute distance under which eigenvalues are merged into one cluster.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-8;

/// Dense complex double-precision matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl FloatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, vals: &[f64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| Complex64::new(vals[i * cols + j], 0.0))
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i] } else { Complex64::new(0.0, 0.0) })
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

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Inverse by LU; `None` when numerically singular.
    pub fn try_inverse(&self) -> Option<Self> {
        self.to_nalgebra().try_inverse().map(|m| Self::from_nalgebra(&m))
    }
}

impl Index<(usize, usize)> for FloatMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FloatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add<&FloatMatrix> for &FloatMatrix {
    type Output = FloatMatrix;
    fn add(self, o: &FloatMatrix) -> FloatMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shapes must agree");
        FloatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&FloatMatrix> for &FloatMatrix {
    type Output = FloatMatrix;
    fn sub(self, o: &FloatMatrix) -> FloatMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shapes must agree");
        FloatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&FloatMatrix> for &FloatMatrix {
    type Output = FloatMatrix;
    fn mul(self, o: &FloatMatrix) -> FloatMatrix {
        assert_eq!(self.cols, o.rows, "inner dimensions must agree");
        let mut out = FloatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o[(k, j)];
                }
            }
        }
        out
    }
}

/// Taylor degree used after scaling.
const EXP_TAYLOR_ORDER: usize = 18;

/// Matrix exponential by scaling and squaring with a fixed-order Taylor
/// polynomial. After scaling, `‖A/2^s‖₁ ≤ 1/2`, so the truncation error of
/// the degree-18 polynomial is below 1e−22 before squaring.
pub fn mat_exp(a: &FloatMatrix) -> FloatMatrix {
    assert!(a.is_square(), "mat_exp needs a square matrix");
    let n = a.rows();
    let norm = a.norm1();
    let mut s = 0u32;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(Complex64::new(0.5f64.powi(s as i32), 0.0));
    // Horner: I + X(I + X/2(I + X/3(...)))
    let id = FloatMatrix::identity(n);
    let mut acc = id.clone();
    for k in (1..=EXP_TAYLOR_ORDER).rev() {
        let t = &scaled * &acc;
        acc = &id + &t.scale(Complex64::new(1.0 / k as f64, 0.0));
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// One cluster of numerically equal eigenvalues.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCluster {
    /// Mean of the clustered eigenvalues.
    pub value: Complex64,
    /// Number of eigenvalues in the cluster.
    pub algebraic: usize,
    /// `n − rank(A − λI)` at the cluster mean.
    pub geometric: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<EigenCluster>,
}

impl Spectrum {
    /// Sorted `(value, algebraic multiplicity)` pairs.
    pub fn multiset(&self) -> Vec<(Complex64, usize)> {
        self.clusters.iter().map(|c| (c.value, c.algebraic)).collect()
    }

    /// Largest distance between matched sorted eigenvalue lists.
    pub fn max_distance(&self, other: &Spectrum) -> f64 {
        if self.eigenvalues.len() != other.eigenvalues.len() {
            return f64::INFINITY;
        }
        self.eigenvalues.iter().zip(&other.eigenvalues).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues with multiplicities, via the complex Schur form.
pub fn eig_spectrum(a: &FloatMatrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("eigenvalues of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Spectrum { eigenvalues: vec![], clusters: vec![] });
    }
    let schur = nalgebra::linalg::Schur::try_new(a.to_nalgebra(), f64::EPSILON, 100 * n.max(10))
        .ok_or_else(|| Error::ConvergenceFailure(format!("Schur iteration did not converge for n = {n}")))?;
    let (_, t) = schur.unpack();
    let mut eigs: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    eigs.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let scale = a.norm1().max(1.0);
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &e in &eigs {
        match clusters.iter_mut().find(|(c, _)| (c - e).norm() < EIGEN_CLUSTER_TOL * scale) {
            Some((c, members)) => {
                members.push(e);
                *c = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => clusters.push((e, vec![e])),
        }
    }
    let clusters = clusters
        .into_iter()
        .map(|(value, members)| {
            let shifted = a - &FloatMatrix::identity(n).scale(value);
            EigenCluster { value, algebraic: members.len(), geometric: n - numerical_rank(&shifted, EIGEN_CLUSTER_TOL) }
        })
        .collect();
    Ok(Spectrum { eigenvalues: eigs, clusters })
}

/// Rank from singular values above `tol · max(1, σ_max)`.
pub fn numerical_rank(a: &FloatMatrix, tol: f64) -> usize {
    let sv = a.to_nalgebra().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Orthonormal basis (columns) of the numerical null space of `a`.
pub fn null_space(a: &FloatMatrix, tol: f64) -> FloatMatrix {
    let n = a.cols();
    // Pad with zero rows so the SVD returns all n right singular vectors.
    let m = DMatrix::from_fn(a.rows().max(n), n, |i, j| {
        if i < a.rows() {
            a[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max).max(1.0);
    let rows: Vec<usize> = (0..n).filter(|&k| svd.singular_values[k] <= tol * smax).collect();
    FloatMatrix::from_fn(n, rows.len(), |i, j| v_t[(rows[j], i)].conj())
}

/// Orthonormalizes the columns of `a` (thin QR); drops dependent columns.
pub fn orthonormal_columns(a: &FloatMatrix, tol: f64) -> FloatMatrix {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..a.cols() {
        let mut v = a.column(j);
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > tol {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    FloatMatrix::from_fn(a.rows(), basis.len(), |i, j| basis[j][i])
}

/// Largest principal angle (radians) between two column spaces given by
/// orthonormal bases; `π/2` when the dimensions differ.
pub fn subspace_angle(q1: &FloatMatrix, q2: &FloatMatrix) -> f64 {
    if q1.cols() != q2.cols() || q1.rows() != q2.rows() {
        return std::f64::consts::FRAC_PI_2;
    }
    if q1.cols() == 0 {
        return 0.0;
    }
    // sin θ_max = ‖(I − Q₁Q₁†)Q₂‖₂ stays accurate for small angles, unlike acos.
    let resid = q2 - &(q1 * &(&q1.adjoint() * q2));
    let sv = resid.to_nalgebra().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).min(1.0);
    smax.asin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mat_exp(&FloatMatrix::zeros(3, 3)), FloatMatrix::identity(3));
    }

    #[test]
    fn exp_of_nilpotent_terminates() {
        let n = FloatMatrix::from_real(3, 3, &[0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let e = mat_exp(&n);
        let expect = &FloatMatrix::identity(3) + &n;
        assert!((&e - &expect).max_abs() < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_phase() {
        let theta = 0.7;
        let a = FloatMatrix::diagonal(&[c(0.0, theta), c(0.0, 0.0), c(0.0, -theta)]);
        let e = mat_exp(&a);
        for (k, m) in [1.0, 0.0, -1.0].iter().enumerate() {
            assert!((e[(k, k)] - c(0.0, theta * m).exp()).norm() < 1e-14);
        }
    }

    #[test]
    fn exp_of_large_norm_matches_closed_form() {
        // Rotation generator with angle 40: exp([[0,−t],[t,0]]) = [[cos,−sin],[sin,cos]].
        let t = 40.0;
        let a = FloatMatrix::from_real(2, 2, &[0.0, -t, t, 0.0]);
        let e = mat_exp(&a);
        assert!((e[(0, 0)].re - t.cos()).abs() < 1e-12);
        assert!((e[(1, 0)].re - t.sin()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_spectrum() {
        let s = eig_spectrum(&FloatMatrix::diagonal(&[c(2.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)])).unwrap();
        let vals: Vec<f64> = s.clusters.iter().map(|k| k.value.re).collect();
        assert_eq!(vals.len(), 3);
        assert!((vals[0] + 2.0).abs() < 1e-14 && vals[1].abs() < 1e-14 && (vals[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jordan_block_geometric_multiplicity() {
        let j = FloatMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let s = eig_spectrum(&j).unwrap();
        assert_eq!(s.clusters.len(), 1);
        assert_eq!(s.clusters[0].algebraic, 2);
        assert_eq!(s.clusters[0].geometric, 1);
    }

    #[test]
    fn null_space_and_angles() {
        let a = FloatMatrix::from_real(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.cols(), 1);
        assert!((ns[(2, 0)].norm() - 1.0).abs() < 1e-12);
        let e3 = FloatMatrix::from_real(3, 1, &[0.0, 0.0, 1.0]);
        assert!(subspace_angle(&ns, &e3) < 1e-10);
        let e1 = FloatMatrix::from_real(3, 1, &[1.0, 0.0, 0.0]);
        assert!((subspace_angle(&ns, &e1) - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }
}
