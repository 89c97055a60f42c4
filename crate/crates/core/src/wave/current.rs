use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::spectrum::PlaneWaveSolution;
use crate::algebra::GeneratorId;
use crate::error::{Error, Result};
use crate::numerics::FloatMatrix;
use crate::reps::Representation;

/// A cubic grid of `n` points per axis with spacing `h`, starting at `origin`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSpec {
    pub h: f64,
    pub n: usize,
    pub origin: [f64; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct CurrentSample {
    pub h: f64,
    pub points: Vec<[f64; 4]>,
    /// `|∂_μ j^μ|` by central differences at each interior point.
    pub divergence: Vec<f64>,
    /// Largest `|j^μ|` seen on the stencils.
    pub scale: f64,
    pub max_divergence: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CurrentSample {
    /// Rows `x0,x1,x2,x3,div_j`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x0,x1,x2,x3,div_j\n");
        for (x, d) in self.points.iter().zip(&self.divergence) {
            out.push_str(&format!("{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n", x[0], x[1], x[2], x[3], d));
        }
        out
    }
}

struct Field {
    gammas: [FloatMatrix; 4],
    metric: Vec<f64>,
    modes: Vec<(PlaneWaveSolution, [f64; 4])>,
}

impl Field {
    fn psi(&self, x: &[f64; 4]) -> Vec<Complex64> {
        let n = self.metric.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (s, p) in &self.modes {
            let phase = Complex64::from_polar(1.0, (0..4).map(|m| p[m] * x[m]).sum());
            for (o, a) in out.iter_mut().zip(&s.amplitude) {
                *o += a * phase;
            }
        }
        out
    }

    /// `j^μ = (gψ)† Γ^μ ψ`.
    fn current(&self, x: &[f64; 4]) -> [Complex64; 4] {
        let psi = self.psi(x);
        [0, 1, 2, 3].map(|mu| {
            let gp = self.gammas[mu].mul_vec(&psi);
            psi.iter().zip(&self.metric).zip(&gp).map(|((a, g), b)| a.conj() * g * b).sum()
        })
    }

    fn divergence(&self, x: &[f64; 4], h: f64) -> (f64, f64) {
        let mut div = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        for mu in 0..4 {
            let (mut xp, mut xm) = (*x, *x);
            xp[mu] += h;
            xm[mu] -= h;
            let (jp, jm) = (self.current(&xp), self.current(&xm));
            scale = scale.max(jp[mu].norm()).max(jm[mu].norm());
            div += (jp[mu] - jm[mu]) / (2.0 * h);
        }
        (div.norm(), scale)
    }
}

/// Checks `g Γ^μ = (Γ^μ)† g`, the condition under which `j` is conserved.
pub fn gamma_pseudo_hermiticity_defect(rep: &Representation) -> f64 {
    let g = rep.metric_matrix().to_float();
    (0..4)
        .map(|mu| {
            let x = rep.mat(GeneratorId::gamma(mu)).to_float();
            (&(&g * &x) - &(&x.adjoint() * &g)).max_abs()
        })
        .fold(0.0, f64::max)
}

fn field(rep: &Representation, sols: &[PlaneWaveSolution]) -> Result<Field> {
    let first = sols.first().ok_or_else(|| Error::Parse("no plane-wave modes given".into()))?;
    if let Some(bad) = sols.iter().find(|s| (s.eigenvalue - first.eigenvalue).abs() > 1e-10 || s.rep != first.rep) {
        return Err(Error::MixedEigenvalues(format!(
            "{} ({}) vs {} ({})",
            first.eigenvalue, first.rep, bad.eigenvalue, bad.rep
        )));
    }
    let metric = rep.metric.iter().map(|m| m.to_complex().re).collect();
    Ok(Field {
        gammas: [0, 1, 2, 3].map(|mu| rep.mat(GeneratorId::gamma(mu)).to_float()),
        metric,
        modes: sols.iter().map(|s| (s.clone(), s.momentum.0)).collect(),
    })
}

/// Central-difference divergence of the current of `Σ_s ψ_s` on the interior of `grid`.
pub fn current_divergence(rep: &Representation, sols: &[PlaneWaveSolution], grid: GridSpec) -> Result<CurrentSample> {
    if !(grid.h > 0.0) || grid.n < 3 {
        return Err(Error::Parse(format!("grid needs h > 0 and at least 3 points per axis, got h = {}, n = {}", grid.h, grid.n)));
    }
    let f = field(rep, sols)?;
    let m = grid.n - 2;
    let points: Vec<[f64; 4]> = (0..m.pow(4))
        .map(|idx| {
            let mut x = grid.origin;
            let mut r = idx;
            for c in x.iter_mut().rev() {
                *c += grid.h * (1 + r % m) as f64;
                r /= m;
            }
            x
        })
        .collect();
    let vals: Vec<(f64, f64)> = points.par_iter().map(|x| f.divergence(x, grid.h)).collect();
    let divergence: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let scale = vals.iter().map(|v| v.1).fold(0.0, f64::max);
    let max_divergence = divergence.iter().cloned().fold(0.0, f64::max);
    let defect = gamma_pseudo_hermiticity_defect(rep);
    let diagnostic = (defect > 1e-12).then(|| {
        format!("g Gamma^mu != (Gamma^mu)^dagger g (defect {defect:.3e}); the current is not conserved in this basis")
    });
    Ok(CurrentSample { h: grid.h, points, divergence, scale, max_divergence, diagnostic })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceFit {
    pub spacings: Vec<f64>,
    /// Largest relative divergence `max|∂·j| / scale` per spacing.
    pub maxima: Vec<f64>,
    pub slope: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Least-squares slope of `log max|∂·j|` against `log h`, on grids of `n`
/// (odd) points per axis centred on `center`.
pub fn convergence_slope(rep: &Representation, sols: &[PlaneWaveSolution], spacings: &[f64], n: usize, center: [f64; 4]) -> Result<ConvergenceFit> {
    let mut maxima = Vec::new();
    let mut diagnostic = None;
    for &h in spacings {
        let half = (n / 2) as f64 * h;
        let s = current_divergence(rep, sols, GridSpec { h, n, origin: center.map(|c| c - half) })?;
        maxima.push(s.max_divergence / s.scale.max(f64::MIN_POSITIVE));
        diagnostic = diagnostic.or(s.diagnostic);
    }
    let xs: Vec<f64> = spacings.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = maxima.iter().map(|m| m.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(ConvergenceFit { spacings: spacings.to_vec(), maxima, slope: sxy / sxx, diagnostic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{dirac_rep, lambda1_rep};
    use crate::wave::{boost_momentum, plane_waves, FourVector};

    fn modes(rep: &Representation, lambda: f64, vs: &[[f64; 3]]) -> Vec<PlaneWaveSolution> {
        vs.iter().map(|&v| plane_waves(rep, boost_momentum(FourVector::rest(1.0), v).unwrap(), lambda).unwrap()[0].clone()).collect()
    }

    #[test]
    fn single_wave_has_constant_current() {
        let r = dirac_rep().unwrap();
        let s = current_divergence(&r, &modes(&r, 0.5, &[[0.2, 0.1, 0.0]]), GridSpec { h: 0.1, n: 4, origin: [0.0; 4] }).unwrap();
        assert!(s.max_divergence < 1e-13 * s.scale.max(1.0), "{}", s.max_divergence);
    }

    #[test]
    fn degenerate_rest_modes_are_conserved() {
        let r = dirac_rep().unwrap();
        let sols = plane_waves(&r, FourVector::rest(1.0), 0.5).unwrap();
        let s = current_divergence(&r, &sols, GridSpec { h: 0.05, n: 4, origin: [0.0; 4] }).unwrap();
        assert!(s.max_divergence < 1e-12, "{}", s.max_divergence);
    }

    #[test]
    fn two_modes_converge_quadratically() {
        let r = dirac_rep().unwrap();
        let sols = modes(&r, 0.5, &[[0.3, 0.0, 0.1], [-0.2, 0.25, 0.0]]);
        let fit = convergence_slope(&r, &sols, &[0.4, 0.2, 0.1, 0.05], 3, [0.3, -0.2, 0.1, 0.7]).unwrap();
        assert!((fit.slope - 2.0).abs() < 0.2, "{fit:?}");
        assert!(fit.diagnostic.is_none());
    }

    #[test]
    fn mixed_eigenvalues_rejected() {
        let r = dirac_rep().unwrap();
        let mut sols = modes(&r, 0.5, &[[0.0; 3]]);
        sols.extend(modes(&r, -0.5, &[[0.0; 3]]));
        let e = current_divergence(&r, &sols, GridSpec { h: 0.1, n: 3, origin: [0.0; 4] });
        assert!(matches!(e, Err(Error::MixedEigenvalues(_))));
    }

    #[test]
    fn vector_multiplet_reports_its_metric() {
        let r = lambda1_rep();
        let sols = modes(&r, 1.0, &[[0.3, 0.0, 0.1], [-0.2, 0.25, 0.0]]);
        let fit = convergence_slope(&r, &sols, &[0.4, 0.2, 0.1, 0.05], 3, [0.3, -0.2, 0.1, 0.7]).unwrap();
        assert!(fit.diagnostic.is_some() || (fit.slope - 2.0).abs() < 0.2, "{fit:?}");
    }
}
