use std::collections::BTreeMap;

use super::representation::Representation;
use crate::algebra::{build_algebra, closure_defect, GeneratorId, Realization};
use crate::error::{Error, Result};
use crate::numerics::{commutator, ExactMatrix, ExactScalar, HalfInt};
use crate::spinor::{multiplet_labels, spinor_metric};

fn pauli(k: usize) -> ExactMatrix {
    let (o, z, i) = (ExactScalar::one(), ExactScalar::zero(), ExactScalar::i());
    let rows = match k {
        1 => vec![vec![z.clone(), o.clone()], vec![o, z]],
        2 => vec![vec![z.clone(), -&i], vec![i, z]],
        _ => vec![vec![o, z.clone()], vec![z, -ExactScalar::one()]],
    };
    ExactMatrix::from_rows(rows).expect("2x2")
}

/// Dirac-basis `γ^μ`: `γ⁰ = diag(1, 1, −1, −1)`, `γ^k = [[0, σ_k], [−σ_k, 0]]`.
pub fn gamma_matrices() -> [ExactMatrix; 4] {
    let mut g0 = ExactMatrix::identity(4);
    g0[(2, 2)] = ExactScalar::from_i64(-1);
    g0[(3, 3)] = ExactScalar::from_i64(-1);
    let gk = |k: usize| {
        let mut m = ExactMatrix::zeros(4, 4);
        m.set_block(0, 2, &pauli(k));
        m.set_block(2, 0, &-&pauli(k));
        m
    };
    [g0, gk(1), gk(2), gk(3)]
}

/// The four-dimensional representation `J_k = Σ_k/2`, `K_k = σ(i/2)γ⁰γ^k`,
/// `Γ^μ = s γ^μ`, with the boost sign `σ` and the scale `s` fixed by closure
/// and the sign of `s` fixed by the grading `γ = +1/2` on the upper components.
pub fn dirac_rep() -> Result<Representation> {
    let sc = build_algebra();
    let g = gamma_matrices();
    let half = ExactScalar::ratio(1, 2);
    let mut mats: BTreeMap<GeneratorId, ExactMatrix> = BTreeMap::new();
    for k in 1..=3 {
        let mut spin = ExactMatrix::zeros(4, 4);
        spin.set_block(0, 0, &pauli(k));
        spin.set_block(2, 2, &pauli(k));
        mats.insert(GeneratorId::j(k), spin.scale(&half));
    }

    let boost = |sigma: i64, k: usize| (&g[0] * &g[k]).scale(&(&ExactScalar::i() * &ExactScalar::ratio(sigma, 2)));
    let lorentz_closes = |sigma: i64| {
        let mut m = mats.clone();
        for k in 1..=3 {
            m.insert(GeneratorId::k(k), boost(sigma, k));
        }
        let get = |x: GeneratorId| m[&x].clone();
        let jk: Vec<GeneratorId> = GeneratorId::J.into_iter().chain(GeneratorId::K).collect();
        jk.iter().enumerate().all(|(n, &a)| jk[n + 1..].iter().all(|&b| closure_defect(&sc, &get, a, b).is_zero()))
    };
    // [Γ⁰, Γ^k] = s² [γ⁰, γ^k] must equal i K_k with s real.
    let scale_sq = |sigma: i64| -> Result<ExactScalar> {
        let c = commutator(&g[0], &g[3])?;
        let target = boost(sigma, 3).scale(&ExactScalar::i());
        let (r, col) = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .find(|&(r, cc)| !c[(r, cc)].is_zero())
            .expect("nonzero commutator");
        let s2 = target[(r, col)].checked_div(&c[(r, col)])?;
        if c.scale(&s2) != target {
            return Err(Error::NoClosure("[gamma^0, gamma^k] is not proportional to K_k".into()));
        }
        Ok(s2)
    };
    let mut found = None;
    for sigma in [1, -1] {
        if !lorentz_closes(sigma) {
            continue;
        }
        let s2 = scale_sq(sigma)?;
        if let Some(s) = s2.as_rational().and_then(ExactScalar::sqrt_rational) {
            found = Some((sigma, s));
            break;
        }
    }
    let (sigma, s) = found.ok_or_else(|| Error::NoClosure("no boost sign gives a real gamma scale".into()))?;
    for k in 1..=3 {
        mats.insert(GeneratorId::k(k), boost(sigma, k));
    }

    let basis = multiplet_labels(HalfInt::HALF);
    let metric: Vec<ExactScalar> = basis.iter().map(spinor_metric).collect::<Result<_>>()?;
    for sign in [ExactScalar::one(), -ExactScalar::one()] {
        let s = &s * &sign;
        let mut m = mats.clone();
        for (mu, gm) in g.iter().enumerate() {
            m.insert(GeneratorId::gamma(mu), gm.scale(&s));
        }
        let want: Vec<ExactScalar> = basis.iter().map(|l| ExactScalar::from_rational(l.gamma.to_rational())).collect();
        if m[&GeneratorId::Gam0] != ExactMatrix::diagonal(&want) {
            continue;
        }
        let real = Realization::new(4, m)?;
        if !real.check_closure(&sc, &GeneratorId::LORENTZ).is_exact() {
            return Err(Error::NoClosure(format!("s = {s} leaves open brackets")));
        }
        return Ok(Representation {
            lambda: Some(HalfInt::HALF),
            source: "dirac".into(),
            basis,
            mats: real,
            metric,
            manifest: Vec::new(),
        });
    }
    Err(Error::NoClosure("no sign of s matches the gamma grading".into()))
}
