use std::collections::BTreeMap;

use serde::Serialize;

use super::representation::Representation;
use crate::algebra::{build_algebra, casimir_element, CasimirKind, ClosureReport, GeneratorId};
use crate::numerics::{ExactMatrix, ExactScalar, HalfInt};
use crate::report::{Residual, Status};
use crate::spinor::SpinorLabel;

#[derive(Clone, Debug, Serialize)]
pub struct ScalarCheck {
    pub status: Status,
    pub expected: ExactScalar,
    pub residual: Residual,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaEntry {
    pub from: SpinorLabel,
    pub to: SpinorLabel,
    pub coefficient: ExactScalar,
    pub expected: ExactScalar,
    /// Coefficient after the γ-level rescaling.
    pub rescaled: ExactScalar,
}

/// Cross-check of `Δ_J^{(±)} = Σ_k J_k (Γ^k ± i K_k)` against the label-level
/// coefficients `(±)(Λ+1)(J ∓ γ)`.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub status: Status,
    /// Each column maps to at most one basis vector with the same `(J, M)` and `γ ± 1`.
    pub block_structure: bool,
    /// `γ = ±J` and the `J = 0` states are annihilated.
    pub boundary_annihilation: bool,
    /// Positive scale per `(J, γ)` level (as `"J,gamma" -> scale`) relating the
    /// stored basis to the normalization of the label table.
    pub rescaling: BTreeMap<String, ExactScalar>,
    pub unit_rescaling: bool,
    pub raising: Vec<DeltaEntry>,
    pub lowering: Vec<DeltaEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudoHermiticity {
    /// Residual of `g X − X† g` per generator.
    pub residuals: BTreeMap<GeneratorId, Residual>,
    pub holds: bool,
    /// A diagonal metric `h` with `h X = X† h` for every generator, when one
    /// exists, seeded with the sign of the stored metric.
    pub restoring_metric: Option<Vec<ExactScalar>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub status: Status,
    pub closure: ClosureReport,
    pub closure_residual: Residual,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub casimir: Option<ScalarCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma0_grading: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_j: Option<DeltaReport>,
    /// Whether `J_1..J_3` and `Γ⁰` are hermitian as stored.
    pub hermitian: BTreeMap<GeneratorId, bool>,
    pub pseudo_hermiticity: PseudoHermiticity,
    pub manifest_entries: usize,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.status.is_pass()
    }
}

pub fn validate_rep(r: &Representation) -> ValidationReport {
    let sc = build_algebra();
    let closure = r.mats.check_closure(&sc, &GeneratorId::LORENTZ);
    let closure_residual = closure.max_residual();
    let n = r.dim();

    let casimir = r.lambda.map(|lam| {
        let l = lam.to_rational();
        let expected = ExactScalar::from_rational(&l * (&l + crate::numerics::q(2, 1)) * crate::numerics::q(2, 1));
        let c = casimir_element(CasimirKind::Lorentz).evaluate(&r.mats);
        let d = &c - &ExactMatrix::identity(n).scale(&expected);
        let residual = Residual::exact(d.max_abs(), d.is_zero());
        ScalarCheck { status: Status::from_bool(residual.is_exact_zero()), expected, residual }
    });

    let gamma0_grading = (r.basis.len() == n).then(|| {
        let want: Vec<ExactScalar> = r.basis.iter().map(|l| ExactScalar::from_rational(l.gamma.to_rational())).collect();
        Status::from_bool(r.mat(GeneratorId::Gam0) == ExactMatrix::diagonal(&want))
    });

    let delta_j = match (r.lambda, r.basis.len() == n) {
        (Some(lam), true) => Some(delta_check(r, lam)),
        _ => None,
    };

    let hermitian = [GeneratorId::J1, GeneratorId::J2, GeneratorId::J3, GeneratorId::Gam0]
        .into_iter()
        .map(|g| {
            let m = r.mat(g);
            (g, m.adjoint() == m)
        })
        .collect();

    let pseudo_hermiticity = pseudo_hermiticity(r);

    let mut ok = closure.is_exact();
    ok &= casimir.as_ref().is_none_or(|c| c.status.is_pass());
    ok &= gamma0_grading.is_none_or(Status::is_pass);
    ok &= delta_j.as_ref().is_none_or(|d| d.status.is_pass());
    let status = match (ok, r.manifest.is_empty()) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Amended,
    };

    ValidationReport {
        status,
        closure,
        closure_residual,
        casimir,
        gamma0_grading,
        delta_j,
        hermitian,
        pseudo_hermiticity,
        manifest_entries: r.manifest.len(),
    }
}

/// `Σ_k J_k (Γ^k + s·i K_k)` for `s = ±1`.
pub fn delta_j_matrix(r: &Representation, s: i64) -> ExactMatrix {
    let n = r.dim();
    let si = if s > 0 { ExactScalar::i() } else { -ExactScalar::i() };
    let mut out = ExactMatrix::zeros(n, n);
    for k in 1..=3 {
        let inner = &r.mat(GeneratorId::gamma(k)) + &r.mat(GeneratorId::k(k)).scale(&si);
        out = &out + &(&r.mat(GeneratorId::j(k)) * &inner);
    }
    out
}

fn level_key(j: HalfInt, gamma: HalfInt) -> String {
    format!("{j},{gamma}")
}

fn delta_check(r: &Representation, lam: HalfInt) -> DeltaReport {
    let n = r.dim();
    let lam1 = lam.to_rational() + crate::numerics::q(1, 1);
    let mut problems = Vec::new();
    let mut block_structure = true;
    let mut boundary = true;

    // Collect single-target coefficients, column by column.
    let mut collect = |d: &ExactMatrix, sign: i64, problems: &mut Vec<String>| -> Vec<DeltaEntry> {
        let mut out = Vec::new();
        for c in 0..n {
            let from = r.basis[c];
            let targets: Vec<usize> = (0..n).filter(|&i| !d[(i, c)].is_zero()).collect();
            let at_boundary = from.j == HalfInt::ZERO || from.gamma == if sign > 0 { from.j } else { -from.j };
            if at_boundary {
                if !targets.is_empty() {
                    boundary = false;
                    problems.push(format!("boundary state {from} not annihilated"));
                }
                continue;
            }
            let want = from.with_gamma(from.gamma + HalfInt::from_twice(2 * sign));
            match targets.as_slice() {
                [t] if r.basis[*t] == want => {
                    let g = from.gamma.to_rational();
                    let j = from.j.to_rational();
                    let e = if sign > 0 { &lam1 * (&j - &g) } else { -&lam1 * (&j + &g) };
                    out.push(DeltaEntry {
                        from,
                        to: want,
                        coefficient: d[(*t, c)].clone(),
                        expected: ExactScalar::from_rational(e),
                        rescaled: ExactScalar::zero(),
                    });
                }
                [] => {
                    block_structure = false;
                    problems.push(format!("{from} annihilated away from the boundary"));
                }
                _ => {
                    block_structure = false;
                    problems.push(format!("{from} maps outside its (J, M) block"));
                }
            }
        }
        out
    };
    let dp = delta_j_matrix(r, 1);
    let dm = delta_j_matrix(r, -1);
    let mut raising = collect(&dp, 1, &mut problems);
    let mut lowering = collect(&dm, -1, &mut problems);

    // Level scales s with s_{γ+1} = s_γ · expected / coefficient, s = 1 at γ = −J.
    let mut rescaling: BTreeMap<String, ExactScalar> = BTreeMap::new();
    let mut consistent = true;
    let mut levels: Vec<(HalfInt, HalfInt)> = r.basis.iter().map(|l| (l.j, l.gamma)).collect();
    levels.sort();
    levels.dedup();
    for &(j, g) in &levels {
        if g == -j {
            rescaling.insert(level_key(j, g), ExactScalar::one());
        }
    }
    for &(j, g) in &levels {
        let Some(s) = rescaling.get(&level_key(j, g)).cloned() else { continue };
        let ratios: Vec<ExactScalar> = raising
            .iter()
            .filter(|e| e.from.j == j && e.from.gamma == g)
            .map(|e| e.expected.checked_div(&e.coefficient).expect("nonzero coefficient"))
            .collect();
        let Some(first) = ratios.first() else { continue };
        if ratios.iter().any(|x| x != first) {
            consistent = false;
            problems.push(format!("Delta+ coefficients vary with M at J={j}, gamma={g}"));
        }
        if !(first.is_real() && first.re.signum() > 0) {
            consistent = false;
            problems.push(format!("rescaling at J={j}, gamma={g} is not a positive real"));
        }
        rescaling.insert(level_key(j, g + HalfInt::ONE), &s * first);
    }
    let scale_of = |l: &SpinorLabel| rescaling.get(&level_key(l.j, l.gamma)).cloned();
    for e in raising.iter_mut().chain(lowering.iter_mut()) {
        if let (Some(sf), Some(st)) = (scale_of(&e.from), scale_of(&e.to)) {
            e.rescaled = &(&e.coefficient * &st) * &sf.inv().expect("nonzero scale");
            if e.rescaled != e.expected {
                consistent = false;
                problems.push(format!("{} -> {}: {} vs expected {}", e.from, e.to, e.rescaled, e.expected));
            }
        }
    }
    let unit_rescaling = rescaling.values().all(ExactScalar::is_one);
    let ok = block_structure && boundary && consistent;
    DeltaReport {
        status: Status::from_bool(ok),
        block_structure,
        boundary_annihilation: boundary,
        rescaling,
        unit_rescaling,
        raising,
        lowering,
        problems,
    }
}

fn pseudo_hermiticity(r: &Representation) -> PseudoHermiticity {
    let g = r.metric_matrix();
    let mut residuals = BTreeMap::new();
    let mut holds = true;
    for (id, x) in r.mats.generators() {
        let d = &(&g * x) - &(&x.adjoint() * &g);
        holds &= d.is_zero();
        residuals.insert(id, Residual::exact(d.max_abs(), d.is_zero()));
    }
    PseudoHermiticity { residuals, holds, restoring_metric: restoring_metric(r) }
}

/// Propagates `h_b = h_a X_ab / conj(X_ba)` over the nonzero entries of all
/// generators; fails when a ratio is not real or two paths disagree.
pub fn restoring_metric(r: &Representation) -> Option<Vec<ExactScalar>> {
    let n = r.dim();
    let mats: Vec<&ExactMatrix> = r.mats.generators().map(|(_, m)| m).collect();
    let mut h: Vec<Option<ExactScalar>> = vec![None; n];
    for seed in 0..n {
        if h[seed].is_some() {
            continue;
        }
        h[seed] = Some(if r.metric.get(seed).is_some_and(|x| x.re.signum() < 0) {
            ExactScalar::from_i64(-1)
        } else {
            ExactScalar::one()
        });
        let mut stack = vec![seed];
        while let Some(a) = stack.pop() {
            let ha = h[a].clone().expect("visited");
            for m in &mats {
                for b in 0..n {
                    let (xab, xba) = (&m[(a, b)], &m[(b, a)]);
                    if xab.is_zero() && xba.is_zero() {
                        continue;
                    }
                    if xab.is_zero() != xba.is_zero() {
                        return None;
                    }
                    let hb = (&ha * xab).checked_div(&xba.conj()).ok()?;
                    if !hb.is_real() {
                        return None;
                    }
                    match &h[b] {
                        Some(old) if *old != hb => return None,
                        Some(_) => {}
                        None => {
                            h[b] = Some(hb);
                            stack.push(b);
                        }
                    }
                }
            }
        }
    }
    h.into_iter().collect()
}
