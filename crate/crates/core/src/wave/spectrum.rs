use num_complex::Complex64;
use serde::Serialize;

use super::vector::{boost_momentum, rapidity, FourVector};
use crate::algebra::GeneratorId;
use crate::error::{Error, Result};
use crate::numerics::{eig_spectrum, mat_exp, null_space, orthonormal_columns, subspace_angle, FloatMatrix, Spectrum};
use crate::reps::Representation;

/// Relative tolerance for eigenvector residuals and null spaces.
const NULL_TOL: f64 = 1e-8;

/// `Γ^μ p_μ`.
pub fn slash(rep: &Representation, p: &FourVector) -> FloatMatrix {
    let n = rep.dim();
    let mut out = FloatMatrix::zeros(n, n);
    for mu in 0..4 {
        if p.0[mu] != 0.0 {
            out = &out + &rep.mat(GeneratorId::gamma(mu)).to_float().scale(Complex64::new(p.0[mu], 0.0));
        }
    }
    out
}

/// `exp(iζ n̂·K)`, which carries `slash(p)` to `slash(boost(p))` by conjugation.
pub fn boost_operator(rep: &Representation, velocity: [f64; 3]) -> Result<FloatMatrix> {
    let (zeta, n) = rapidity(velocity)?;
    let dim = rep.dim();
    let mut gen = FloatMatrix::zeros(dim, dim);
    for k in 0..3 {
        if n[k] != 0.0 {
            gen = &gen + &rep.mat(GeneratorId::k(k + 1)).to_float().scale(Complex64::new(0.0, zeta * n[k]));
        }
    }
    Ok(mat_exp(&gen))
}

/// `{γμ}` over the basis labels, sorted, with multiplicities.
pub fn expected_rest_spectrum(rep: &Representation, mass: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut vals: Vec<f64> = rep.basis.iter().map(|l| l.gamma.to_f64() * mass).collect();
    vals.sort_by(f64::total_cmp);
    for v in vals {
        match out.last_mut() {
            Some((w, k)) if *w == v => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BoostDrift {
    pub velocity: [f64; 3],
    pub momentum: FourVector,
    pub drift: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumInvariance {
    pub mass: f64,
    pub rest_spectrum: Vec<(f64, usize)>,
    pub expected_rest_spectrum: Vec<(f64, usize)>,
    pub rest_matches: bool,
    pub boosts: Vec<BoostDrift>,
    pub max_drift: f64,
}

fn real_multiset(s: &Spectrum) -> Vec<(f64, usize)> {
    s.multiset().into_iter().map(|(z, k)| (z.re, k)).collect()
}

/// Spectrum of `slash(boost(p_rest, v))` against the rest-frame spectrum for each velocity.
pub fn spectrum_invariance(rep: &Representation, mass: f64, velocities: &[[f64; 3]]) -> Result<SpectrumInvariance> {
    if !(mass > 0.0) {
        return Err(Error::Parse(format!("mass must be positive, got {mass}")));
    }
    let rest = FourVector::rest(mass);
    let rest_spec = eig_spectrum(&slash(rep, &rest))?;
    let rest_spectrum = real_multiset(&rest_spec);
    let expected = expected_rest_spectrum(rep, mass);
    let rest_matches = rest_spectrum.len() == expected.len()
        && rest_spectrum.iter().zip(&expected).all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() < 1e-12 * mass.max(1.0));
    let mut boosts = Vec::new();
    for &v in velocities {
        let p = boost_momentum(rest, v)?;
        let s = eig_spectrum(&slash(rep, &p))?;
        boosts.push(BoostDrift { velocity: v, momentum: p, drift: s.max_distance(&rest_spec) });
    }
    let max_drift = boosts.iter().map(|b| b.drift).fold(0.0, f64::max);
    Ok(SpectrumInvariance { mass, rest_spectrum, expected_rest_spectrum: expected, rest_matches, boosts, max_drift })
}

/// Largest principal angle, over rest eigenvalues, between the boosted rest
/// eigenspace `U·E_λ` and the eigenspace of `slash(boost(p_rest))` at `λ`.
pub fn eigenspace_alignment(rep: &Representation, mass: f64, velocity: [f64; 3]) -> Result<f64> {
    let rest = FourVector::rest(mass);
    let u = boost_operator(rep, velocity)?;
    let boosted = slash(rep, &boost_momentum(rest, velocity)?);
    let rest_slash = slash(rep, &rest);
    let n = rep.dim();
    let mut worst: f64 = 0.0;
    for (lambda, _) in expected_rest_spectrum(rep, mass) {
        let shift = FloatMatrix::identity(n).scale(Complex64::new(lambda, 0.0));
        let e_rest = null_space(&(&rest_slash - &shift), NULL_TOL);
        let carried = orthonormal_columns(&(&u * &e_rest), NULL_TOL);
        let direct = null_space(&(&boosted - &shift), NULL_TOL);
        worst = worst.max(subspace_angle(&carried, &direct));
    }
    Ok(worst)
}

/// A solution `ψ(x) = a·e^{ip·x}` of `(Γ·p) a = λ a`.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneWaveSolution {
    pub rep: String,
    pub eigenvalue: f64,
    pub momentum: FourVector,
    pub amplitude: Vec<Complex64>,
}

/// An orthonormal basis of plane-wave amplitudes with eigenvalue `λ` at momentum `p`.
pub fn plane_waves(rep: &Representation, p: FourVector, eigenvalue: f64) -> Result<Vec<PlaneWaveSolution>> {
    let s = slash(rep, &p);
    let n = rep.dim();
    let shifted = &s - &FloatMatrix::identity(n).scale(Complex64::new(eigenvalue, 0.0));
    let basis = null_space(&shifted, NULL_TOL);
    let tag = rep.lambda.map_or_else(|| rep.source.clone(), |l| format!("{}:{l}", rep.source));
    let mut out = Vec::new();
    for j in 0..basis.cols() {
        let a = basis.column(j);
        let res = shifted.mul_vec(&a).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if res > 1e-10 * s.max_abs().max(1.0) {
            return Err(Error::ConvergenceFailure(format!("eigenvector residual {res:e} at eigenvalue {eigenvalue}")));
        }
        out.push(PlaneWaveSolution { rep: tag.clone(), eigenvalue, momentum: p, amplitude: a });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::HalfInt;
    use crate::reps::{dirac_rep, lambda1_rep, synthesize_rep};
    use rand::{Rng, SeedableRng};

    fn random_velocities(n: usize, seed: u64) -> Vec<[f64; 3]> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let speed = rng.gen_range(0.0..0.9);
                v.map(|x| x / norm * speed)
            })
            .collect()
    }

    #[test]
    fn rest_frame_is_mass_times_gamma0() {
        let r = lambda1_rep();
        let s = slash(&r, &FourVector::rest(2.0));
        assert_eq!(s, r.mat(GeneratorId::Gam0).to_float().scale(Complex64::new(2.0, 0.0)));
        let spec = spectrum_invariance(&r, 2.0, &[]).unwrap();
        assert_eq!(spec.rest_spectrum, vec![(-2.0, 3), (0.0, 4), (2.0, 3)]);
        assert!(spec.rest_matches);
    }

    #[test]
    fn drift_under_random_boosts() {
        for r in [lambda1_rep(), dirac_rep().unwrap()] {
            let rep = spectrum_invariance(&r, 1.0, &random_velocities(20, 7)).unwrap();
            assert!(rep.max_drift < 1e-10, "{}", rep.max_drift);
        }
        let zero = spectrum_invariance(&lambda1_rep(), 1.0, &[[0.0; 3]; 3]).unwrap();
        assert_eq!(zero.max_drift, 0.0);
    }

    #[test]
    fn dirac_on_shell_spectrum() {
        let r = dirac_rep().unwrap();
        let p = boost_momentum(FourVector::rest(3.0), [0.3, -0.2, 0.5]).unwrap();
        let s = eig_spectrum(&slash(&r, &p)).unwrap();
        let m = real_multiset(&s);
        assert_eq!(m.len(), 2);
        assert!((m[0].0 + 1.5).abs() < 1e-10 && (m[1].0 - 1.5).abs() < 1e-10);
    }

    #[test]
    fn boosted_eigenspaces_align() {
        for r in [lambda1_rep(), synthesize_rep(HalfInt::from_twice(3)).unwrap()] {
            for v in random_velocities(5, 3) {
                let a = eigenspace_alignment(&r, 1.0, v).unwrap();
                assert!(a < 1e-8, "{} {v:?}: {a}", r.source);
            }
        }
    }

    #[test]
    fn slash_is_linear() {
        let r = lambda1_rep();
        let p = FourVector::new(1.0, 0.5, -0.25, 2.0);
        let q = FourVector::new(-0.3, 0.0, 1.5, 0.75);
        let lhs = slash(&r, &p.scale(2.0).add(&q.scale(-3.0)));
        let rhs = &slash(&r, &p).scale(Complex64::new(2.0, 0.0)) - &slash(&r, &q).scale(Complex64::new(3.0, 0.0));
        assert!((&lhs - &rhs).max_abs() < 1e-14);
    }

    #[test]
    fn plane_wave_eigenvectors() {
        let r = dirac_rep().unwrap();
        let p = boost_momentum(FourVector::rest(1.0), [0.0, 0.4, 0.0]).unwrap();
        let sols = plane_waves(&r, p, 0.5).unwrap();
        assert_eq!(sols.len(), 2);
    }
}
