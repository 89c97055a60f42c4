//! Pure boosts, Wigner rotations and spin-`J` rotation matrices for the
//! massive states `|u, μ, γ, J, M⟩`.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{mat_exp, FloatMatrix, HalfInt};
use crate::wave::{rapidity, FourVector};

const ETA: Matrix4<f64> = Matrix4::new(-1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);

/// Tolerance for the defining relations of a Lorentz matrix.
pub const LORENTZ_TOL: f64 = 1e-12;
/// Tolerance for `R_W` to be a rotation fixing the time axis.
pub const ROTATION_TOL: f64 = 1e-10;

/// A proper orthochronous Lorentz transformation acting on upper-index components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl Serialize for LorentzMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..4).map(|i| (0..4).map(|j| crate::report::fmt_float(self.0[(i, j)])).collect()).collect();
        rows.serialize(s)
    }
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Validates `ΛᵀηΛ = η`, `det Λ = 1` and `Λ⁰₀ ≥ 1`.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let defect = (m.transpose() * ETA * m - ETA).abs().max();
        if defect > LORENTZ_TOL * m.abs().max().powi(2).max(1.0) || (m.determinant() - 1.0).abs() > 1e-9 || m[(0, 0)] < 1.0 - LORENTZ_TOL {
            return Err(Error::InvalidVelocity(format!("not a proper orthochronous Lorentz matrix (metric defect {defect:.3e})")));
        }
        Ok(Self(m))
    }

    /// Active rotation by `angle` about `axis`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = Vector3::from(axis);
        if n.norm() == 0.0 {
            return Err(Error::NotARotation("zero rotation axis".into()));
        }
        let r = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(n), angle);
        Ok(Self::from_rotation(r.matrix()))
    }

    pub fn from_rotation(r: &Matrix3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r);
        Self(m)
    }

    /// The pure boost giving a particle at rest the velocity `v`.
    pub fn boost(v: [f64; 3]) -> Result<Self> {
        pure_boost(four_velocity(v)?)
    }

    pub fn apply(&self, u: &FourVector) -> FourVector {
        let v = self.0 * Vector4::from(u.0);
        FourVector([v[0], v[1], v[2], v[3]])
    }

    pub fn compose(&self, o: &LorentzMatrix) -> LorentzMatrix {
        Self(self.0 * o.0)
    }

    /// `η Λᵀ η`.
    pub fn inverse(&self) -> LorentzMatrix {
        Self(ETA * self.0.transpose() * ETA)
    }

    /// The spatial block.
    pub fn rotation_part(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// `max |Λ e₀ − e₀|` together with `max |RᵀR − I|` of the spatial block.
    pub fn rotation_defects(&self) -> (f64, f64) {
        let fix = (self.0.column(0) - Vector4::new(1.0, 0.0, 0.0, 0.0)).abs().max().max((self.0.row(0) - Vector4::new(1.0, 0.0, 0.0, 0.0).transpose()).abs().max());
        let r = self.rotation_part();
        (fix, (r.transpose() * r - Matrix3::identity()).abs().max())
    }

    pub fn max_abs_diff(&self, o: &LorentzMatrix) -> f64 {
        (self.0 - o.0).abs().max()
    }
}

/// `u = (γ, γv)` in upper components.
pub fn four_velocity(v: [f64; 3]) -> Result<FourVector> {
    let (zeta, n) = rapidity(v)?;
    let (c, s) = (zeta.cosh(), zeta.sinh());
    Ok(FourVector::new(c, s * n[0], s * n[1], s * n[2]))
}

/// The symmetric boost with `L(u)·(1, 0, 0, 0) = u`.
pub fn pure_boost(u: FourVector) -> Result<LorentzMatrix> {
    let [u0, u1, u2, u3] = u.0;
    if !u.0.iter().all(|x| x.is_finite()) || (u.square() + 1.0).abs() > 1e-10 * u0.abs().max(1.0).powi(2) || u0 <= 0.0 {
        return Err(Error::InvalidVelocity(format!("u = ({u}) is not a future-pointing unit timelike vector")));
    }
    let s = [u1, u2, u3];
    let mut m = Matrix4::identity();
    m[(0, 0)] = u0;
    for i in 0..3 {
        m[(0, i + 1)] = s[i];
        m[(i + 1, 0)] = s[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += s[i] * s[j] / (1.0 + u0);
        }
    }
    Ok(LorentzMatrix(m))
}

/// `R_W = L⁻¹(Λu) Λ L(u)`.
pub fn wigner_rotation(lam: &LorentzMatrix, u: &FourVector) -> Result<LorentzMatrix> {
    let lu = pure_boost(*u)?;
    let lv = pure_boost(lam.apply(u))?;
    let r = lv.inverse().compose(lam).compose(&lu);
    let (fix, orth) = r.rotation_defects();
    if fix > ROTATION_TOL || orth > ROTATION_TOL {
        return Err(Error::NotARotation(format!("time-axis defect {fix:.3e}, orthogonality defect {orth:.3e}")));
    }
    Ok(r)
}

/// `max |R_W(Λ₂Λ₁, u) − R_W(Λ₂, Λ₁u) R_W(Λ₁, u)|`.
pub fn cocycle_defect(l2: &LorentzMatrix, l1: &LorentzMatrix, u: &FourVector) -> Result<f64> {
    let lhs = wigner_rotation(&l2.compose(l1), u)?;
    let rhs = wigner_rotation(l2, &l1.apply(u))?.compose(&wigner_rotation(l1, u)?);
    Ok(lhs.max_abs_diff(&rhs))
}

/// Rotation angle in `[0, π]` of a rotation matrix.
pub fn rotation_angle(r: &LorentzMatrix) -> f64 {
    ((r.rotation_part().trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
}

/// A boost with speed below 0.9 composed with a rotation, both uniformly drawn.
pub fn random_lorentz(rng: &mut impl Rng) -> LorentzMatrix {
    let axis = random_direction(rng);
    let rot = LorentzMatrix::rotation(axis, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).expect("unit axis");
    let speed = rng.gen_range(0.0..0.9);
    let boost = LorentzMatrix::boost(random_direction(rng).map(|x| x * speed)).expect("subluminal");
    boost.compose(&rot)
}

/// A random future-pointing unit four-velocity with speed below 0.9.
pub fn random_four_velocity(rng: &mut impl Rng) -> FourVector {
    let speed = rng.gen_range(0.0..0.9);
    four_velocity(random_direction(rng).map(|x| x * speed)).expect("subluminal")
}

fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// `R = R_z(α) R_y(β) R_z(γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn to_rotation(&self) -> LorentzMatrix {
        let rz = |a: f64| nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), a).into_inner();
        let ry = nalgebra::Rotation3::from_axis_angle(&Vector3::y_axis(), self.beta).into_inner();
        LorentzMatrix::from_rotation(&(rz(self.alpha) * ry * rz(self.gamma)))
    }
}

/// z-y-z Euler angles with `β ∈ [0, π]`; `γ = 0` when `β` is 0 or π.
pub fn euler_zyz(r: &LorentzMatrix) -> Result<EulerAngles> {
    let (fix, orth) = r.rotation_defects();
    if fix > ROTATION_TOL || orth > ROTATION_TOL {
        return Err(Error::NotARotation(format!("time-axis defect {fix:.3e}, orthogonality defect {orth:.3e}")));
    }
    let m = r.rotation_part();
    let beta = m[(2, 2)].clamp(-1.0, 1.0).acos();
    let sb = beta.sin();
    Ok(if sb.abs() < 1e-12 {
        let alpha = if m[(2, 2)] > 0.0 { m[(1, 0)].atan2(m[(0, 0)]) } else { (-m[(1, 0)]).atan2(m[(1, 1)]) };
        EulerAngles { alpha, beta, gamma: 0.0 }
    } else {
        EulerAngles { alpha: m[(1, 2)].atan2(m[(0, 2)]), beta, gamma: m[(2, 1)].atan2(-m[(2, 0)]) }
    })
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `d^J_{M′M}(β)`, the real reduced rotation matrix element.
pub fn little_d(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> f64 {
    let (j2, mp2, m2) = (j.twice(), mp.twice(), m.twice());
    let jpm = |a: i64| ((j2 + a) / 2, (j2 - a) / 2);
    let (jpmp, jmmp) = jpm(mp2);
    let (jpm_, jmm) = jpm(m2);
    let pref = (factorial(jpmp) * factorial(jmmp) * factorial(jpm_) * factorial(jmm)).sqrt();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let dm = (mp2 - m2) / 2;
    let mut sum = 0.0;
    for k in 0..=(j2 + 1) {
        let (a, b, d, e) = (jpm_ - k, k, jmmp - k, k + dm);
        if a < 0 || d < 0 || e < 0 {
            continue;
        }
        let sign = if (k + dm) % 2 == 0 { 1.0 } else { -1.0 };
        let pc = (j2 - 2 * k - dm) as i32;
        let ps = (2 * k + dm) as i32;
        sum += sign * c.powi(pc) * s.powi(ps) / (factorial(a) * factorial(b) * factorial(d) * factorial(e));
    }
    pref * sum
}

/// `D^{(J)}` with rows and columns ordered by `M` descending.
#[derive(Clone, Debug, Serialize)]
pub struct WignerD {
    pub j: HalfInt,
    #[serde(serialize_with = "crate::report::ser_float_matrix")]
    pub matrix: FloatMatrix,
}

fn m_values(j: HalfInt) -> Vec<HalfInt> {
    j.down_to(-j).collect()
}

/// `D_{M′M} = e^{iM′α} d_{M′M}(β) e^{iMγ}`.
///
/// This is the complex conjugate of the common active convention; it makes a
/// rotation by θ about z read `diag(e^{iMθ})`.
pub fn wigner_d_euler(j: HalfInt, e: &EulerAngles) -> WignerD {
    let ms = m_values(j);
    let n = ms.len();
    let matrix = FloatMatrix::from_fn(n, n, |r, c| {
        let (mp, m) = (ms[r], ms[c]);
        Complex64::from_polar(little_d(j, mp, m, e.beta), mp.to_f64() * e.alpha + m.to_f64() * e.gamma)
    });
    WignerD { j, matrix }
}

/// `D^{(J)}(R)` through the z-y-z decomposition of `R`.
pub fn wigner_d(j: HalfInt, r: &LorentzMatrix) -> Result<WignerD> {
    Ok(wigner_d_euler(j, &euler_zyz(r)?))
}

/// Standard spin matrices `(J_x, J_y, J_z)` with `M` descending.
fn spin_float(j: HalfInt) -> [FloatMatrix; 3] {
    let ms = m_values(j);
    let n = ms.len();
    let jf = j.to_f64();
    let mut jp = FloatMatrix::zeros(n, n);
    for c in 1..n {
        let m = ms[c].to_f64();
        jp[(c - 1, c)] = Complex64::new(((jf - m) * (jf + m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm).scale(Complex64::new(0.5, 0.0));
    let jy = (&jp - &jm).scale(Complex64::new(0.0, -0.5));
    let jz = FloatMatrix::diagonal(&ms.iter().map(|m| Complex64::new(m.to_f64(), 0.0)).collect::<Vec<_>>());
    [jx, jy, jz]
}

/// `D^{(J)}` for a rotation by `angle` about `axis`, taken on the double
/// cover so that `angle = 2π` gives `(−1)^{2J}`.
pub fn wigner_d_axis_angle(j: HalfInt, axis: [f64; 3], angle: f64) -> Result<WignerD> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NotARotation("zero rotation axis".into()));
    }
    let s = spin_float(j);
    let n = s[0].rows();
    let mut gen = FloatMatrix::zeros(n, n);
    for k in 0..3 {
        gen = &gen + &s[k].scale(Complex64::new(0.0, -angle * axis[k] / norm));
    }
    let d = mat_exp(&gen);
    Ok(WignerD { j, matrix: FloatMatrix::from_fn(n, n, |r, c| d[(r, c)].conj()) })
}

impl WignerD {
    /// `max |D†D − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.rows();
        (&(&self.matrix.adjoint() * &self.matrix) - &FloatMatrix::identity(n)).max_abs()
    }
}

/// The label of a massive state `|u, μ, γ, J, M⟩`; `u` has upper components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StateLabel {
    pub u: FourVector,
    pub mu: f64,
    pub gamma: HalfInt,
    #[serde(rename = "J")]
    pub j: HalfInt,
    #[serde(rename = "M")]
    pub m: HalfInt,
}

impl StateLabel {
    pub fn new(u: FourVector, mu: f64, gamma: HalfInt, j: HalfInt, m: HalfInt) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::InvalidLabel(format!("mass {mu} must be positive")));
        }
        if j < HalfInt::ZERO || m.abs() > j || !(j - m).is_integer() || gamma.abs() > j || !(j - gamma).is_integer() {
            return Err(Error::InvalidLabel(format!("J = {j}, gamma = {gamma}, M = {m}")));
        }
        pure_boost(u)?;
        Ok(Self { u, mu, gamma, j, m })
    }
}

/// `U(Λ)|u, μ, γ, J, M⟩ = Σ_{M′} D^{(J)}_{M′M}(R_W) |Λu, μ, γ, J, M′⟩`;
/// returns the new label (with `M` kept) and the amplitudes over `M′` descending.
pub fn transform_state(lam: &LorentzMatrix, s: &StateLabel) -> Result<(StateLabel, Vec<Complex64>)> {
    let rw = wigner_rotation(lam, &s.u)?;
    let d = wigner_d(s.j, &rw)?;
    let col = (s.j - s.m).twice() as usize / 2;
    let mut out = *s;
    out.u = lam.apply(&s.u);
    Ok((out, d.matrix.column(col)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn half(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn boosts() {
        assert_eq!(pure_boost(FourVector::new(1.0, 0.0, 0.0, 0.0)).unwrap(), LorentzMatrix::identity());
        let b = LorentzMatrix::boost([0.0, 0.0, 1f64.tanh()]).unwrap();
        assert!((b.0[(0, 0)] - 1f64.cosh()).abs() < 1e-14);
        let back = b.inverse().compose(&b);
        assert!(back.max_abs_diff(&LorentzMatrix::identity()) < 1e-12);
        assert!(LorentzMatrix::new(b.0).is_ok());
        assert!(pure_boost(FourVector::new(-1.0, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn wigner_rotation_special_cases() {
        let r = LorentzMatrix::rotation([1.0, 2.0, -0.5], 0.8).unwrap();
        let std = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert!(wigner_rotation(&r, &std).unwrap().max_abs_diff(&r) < 1e-12);
        let bz = LorentzMatrix::boost([0.0, 0.0, 0.6]).unwrap();
        let u = four_velocity([0.0, 0.0, -0.3]).unwrap();
        assert!(wigner_rotation(&bz, &u).unwrap().max_abs_diff(&LorentzMatrix::identity()) < 1e-12);
    }

    #[test]
    fn thomas_rotation_of_orthogonal_boosts() {
        for z in [0.05f64, 0.02, 0.01] {
            let u = four_velocity([z.tanh(), 0.0, 0.0]).unwrap();
            let lam = LorentzMatrix::boost([0.0, z.tanh(), 0.0]).unwrap();
            let angle = rotation_angle(&wigner_rotation(&lam, &u).unwrap());
            assert!((angle - z * z / 2.0).abs() < 2.0 * z.powi(3), "{z}: {angle}");
        }
    }

    #[test]
    fn cocycle_over_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (l2, l1, u) = (random_lorentz(&mut rng), random_lorentz(&mut rng), random_four_velocity(&mut rng));
            assert!(cocycle_defect(&l2, &l1, &u).unwrap() < 1e-9);
        }
    }

    #[test]
    fn euler_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let r = LorentzMatrix::rotation(random_direction(&mut rng), rng.gen_range(-PI..PI)).unwrap();
            assert!(euler_zyz(&r).unwrap().to_rotation().max_abs_diff(&r) < 1e-12);
        }
        for e in [EulerAngles { alpha: 0.3, beta: 0.0, gamma: 0.4 }, EulerAngles { alpha: 0.3, beta: PI, gamma: -0.2 }] {
            let r = e.to_rotation();
            assert!(euler_zyz(&r).unwrap().to_rotation().max_abs_diff(&r) < 1e-12);
        }
    }

    #[test]
    fn d_matrix_conventions() {
        let id = wigner_d(HalfInt::HALF, &LorentzMatrix::identity()).unwrap();
        assert!((&id.matrix - &FloatMatrix::identity(2)).max_abs() < 1e-15);
        let full = wigner_d_axis_angle(HalfInt::HALF, [0.3, -0.2, 0.9], 2.0 * PI).unwrap();
        assert!((&full.matrix + &FloatMatrix::identity(2)).max_abs() < 1e-12);
        let t = 0.7;
        let z = wigner_d(HalfInt::ONE, &LorentzMatrix::rotation([0.0, 0.0, 1.0], t).unwrap()).unwrap();
        let want = FloatMatrix::diagonal(&[Complex64::from_polar(1.0, t), Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, -t)]);
        assert!((&z.matrix - &want).max_abs() < 1e-14);
    }

    #[test]
    fn euler_formula_matches_spin_exponential() {
        for t in 1..=4 {
            let e = EulerAngles { alpha: 0.4, beta: 1.1, gamma: -0.7 };
            let via_euler = wigner_d_euler(half(t), &e);
            let s = spin_float(half(t));
            let rot = |k: usize, a: f64| mat_exp(&s[k].scale(Complex64::new(0.0, -a)));
            let std = &(&rot(2, e.alpha) * &rot(1, e.beta)) * &rot(2, e.gamma);
            let n = std.rows();
            let conj = FloatMatrix::from_fn(n, n, |r, c| std[(r, c)].conj());
            assert!((&via_euler.matrix - &conj).max_abs() < 1e-12, "J = {t}/2");
        }
    }

    #[test]
    fn d_is_a_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let r1 = LorentzMatrix::rotation(random_direction(&mut rng), rng.gen_range(-PI..PI)).unwrap();
            let r2 = LorentzMatrix::rotation(random_direction(&mut rng), rng.gen_range(-PI..PI)).unwrap();
            for t in 1..=4 {
                let j = half(t);
                let d12 = wigner_d(j, &r1.compose(&r2)).unwrap().matrix;
                let prod = &wigner_d(j, &r1).unwrap().matrix * &wigner_d(j, &r2).unwrap().matrix;
                let plus = (&d12 - &prod).max_abs();
                let minus = (&d12 + &prod).max_abs();
                // Half-integer spins are defined on the rotation group only up to sign.
                let defect = if t % 2 == 0 { plus } else { plus.min(minus) };
                assert!(defect < 1e-10, "J = {t}/2: {defect}");
                assert!(wigner_d(j, &r1).unwrap().unitarity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn state_transformations() {
        let u = four_velocity([0.2, -0.1, 0.4]).unwrap();
        let s = StateLabel::new(u, 1.5, HalfInt::ZERO, HalfInt::ONE, HalfInt::ZERO).unwrap();
        let (same, amp) = transform_state(&LorentzMatrix::identity(), &s).unwrap();
        assert_eq!(same, s);
        assert!(amp.iter().enumerate().all(|(i, a)| (a - Complex64::new(if i == 1 { 1.0 } else { 0.0 }, 0.0)).norm() < 1e-12));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (l1, l2) = (random_lorentz(&mut rng), random_lorentz(&mut rng));
        let (s1, a1) = transform_state(&l1, &s).unwrap();
        let direct = transform_state(&l2.compose(&l1), &s).unwrap();
        let d2 = wigner_d(s.j, &wigner_rotation(&l2, &s1.u).unwrap()).unwrap();
        let two_step = d2.matrix.mul_vec(&a1);
        assert!(direct.1.iter().zip(&two_step).all(|(x, y)| (x - y).norm() < 1e-10));
        assert!(direct.0.u.max_abs_diff(&l2.apply(&s1.u)) < 1e-10);
        assert_eq!((direct.0.mu, direct.0.gamma), (s.mu, s.gamma));
        let norm: f64 = direct.1.iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-10);

        let rest = StateLabel::new(FourVector::new(1.0, 0.0, 0.0, 0.0), 1.0, HalfInt::HALF, HalfInt::HALF, HalfInt::HALF).unwrap();
        let rot = LorentzMatrix::rotation([1.0, 0.0, 0.0], 0.9).unwrap();
        let (moved, _) = transform_state(&rot, &rest).unwrap();
        assert_eq!(moved.u, rest.u);
        assert!(StateLabel::new(u, 1.0, HalfInt::ZERO, HalfInt::ONE, HalfInt::from_int(2)).is_err());
    }
}
