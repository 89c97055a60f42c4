//! The verification battery behind `epalg all` and the `check` subcommands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{
    abelian, adjoint_rep, build_algebra, check_casimir_commutators, check_central_extensions, check_jacobi, group_metric, su2,
    without_gamma_p_bracket, GeneratorId,
};
use crate::error::Result;
use crate::numerics::{exact_rank, ExactMatrix, ExactScalar, HalfInt};
use crate::poincare::{
    cocycle_defect, random_four_velocity, random_lorentz, wigner_d, wigner_d_axis_angle, wigner_rotation,
};
use crate::reps::{dirac_rep, invariant_form, lambda1_rep, validate_rep, Representation};
use crate::report::{fmt_float, CheckReport, Residual, Status};
use crate::spinor::{apply_ladder, build_state, gram_matrix, multiplet_labels, spinor_metric, LadderOp};
use crate::transforms::{
    affine_defect, mixing_identity_defect, nilpotency_defects, periodicity_defect, sweep, truncation_defect, OmegaParameter,
    SweepKind,
};
use crate::wave::{
    boost_momentum, convergence_slope, ConvergenceFit, current_divergence, eigenspace_alignment, plane_waves, spectrum_invariance,
    FourVector, GridSpec,
};

/// Float tolerances, overridable per run.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub transform: f64,
    pub drift: f64,
    pub subspace: f64,
    pub rotation: f64,
    pub cocycle: f64,
    pub unitarity: f64,
    pub slope: f64,
    pub machine: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            transform: 1e-10,
            drift: 1e-10,
            subspace: 1e-8,
            rotation: 1e-10,
            cocycle: 1e-9,
            unitarity: 1e-10,
            slope: 0.2,
            machine: 1e-12,
        }
    }
}

impl Tolerances {
    /// Every float tolerance except the slope window replaced by `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self { transform: tol, drift: tol, subspace: tol, rotation: tol, cocycle: tol, unitarity: tol, machine: tol, slope: 0.2 }
    }
}

fn exact_residual(m: &ExactMatrix) -> Residual {
    Residual::exact(m.max_abs(), m.is_zero())
}

fn count_residual(n: usize) -> Residual {
    Residual::exact(n as f64, n == 0)
}

pub fn jacobi() -> Vec<CheckReport> {
    let full = check_jacobi(&build_algebra());
    let ok = full.is_clean() && full.triples == 455;
    let mut out = vec![CheckReport::new(
        "jacobi: full algebra",
        Status::from_bool(ok),
        count_residual(full.failures.len()),
        json!({ "summary": full.summary(), "failures": full.failures }),
    )];
    let cut = check_jacobi(&without_gamma_p_bracket());
    let hits: Vec<&[String; 3]> = cut
        .failures
        .iter()
        .map(|f| &f.triple)
        .filter(|t| {
            let count = |names: &[&str]| t.iter().filter(|n| names.contains(&n.as_str())).count();
            count(&["P1", "P2", "P3"]) == 1 && count(&["Gam0"]) == 1 && count(&["Gam1", "Gam2", "Gam3"]) == 1
        })
        .collect();
    out.push(CheckReport::new(
        "jacobi: [Gam, P] bracket removed breaks (Pj, Gam0, Gamk)",
        Status::from_bool(!hits.is_empty()),
        count_residual(cut.failures.len()),
        json!({ "summary": cut.summary(), "triples_hit": hits }),
    ));
    out
}

/// `η_ab` expected block values: `J` −8, `K` +8, `Γ` 8·diag(−1,1,1,1), zero elsewhere.
pub fn expected_metric_diagonal(g: GeneratorId) -> i64 {
    use GeneratorId::*;
    match g {
        J1 | J2 | J3 => -8,
        K1 | K2 | K3 => 8,
        Gam0 => -8,
        Gam1 | Gam2 | Gam3 => 8,
        _ => 0,
    }
}

pub fn metric() -> Vec<CheckReport> {
    let m = group_metric(&build_algebra());
    let want = ExactMatrix::diagonal(&GeneratorId::ALL.map(|g| ExactScalar::from_i64(expected_metric_diagonal(g))));
    let d = &m - &want;
    let table: Vec<String> = GeneratorId::ALL
        .iter()
        .map(|g| format!("{:>4} {}", g.name(), m[(g.index(), g.index())]))
        .collect();
    vec![CheckReport::new(
        "metric: group metric table",
        Status::from_bool(d.is_zero()),
        exact_residual(&d),
        json!({ "diagonal": table, "offdiagonal_zero": (0..15).all(|a| (0..15).all(|b| a == b || m[(a, b)].is_zero())) }),
    )]
}

fn rep_casimir(name: &str, r: &Representation) -> CheckReport {
    let v = validate_rep(r);
    match v.casimir {
        Some(c) => CheckReport::new(name, c.status, c.residual, json!({ "expected": c.expected })),
        None => CheckReport::new(name, Status::Fail, Residual::Float(f64::NAN), json!({ "error": "no Lambda tag" })),
    }
}

pub fn casimir() -> Result<Vec<CheckReport>> {
    let mut out = vec![
        rep_casimir("casimir: C_lambda on Lambda = 1 is 6 I", &lambda1_rep()),
        rep_casimir("casimir: C_lambda on the Dirac multiplet is 5/2 I", &dirac_rep()?),
    ];
    let adj = adjoint_rep(&build_algebra())?;
    for c in check_casimir_commutators(&adj).checks {
        let details = json!({ "printed_residual": c.printed_residual, "note": c.note });
        out.push(CheckReport::new(format!("casimir (adjoint): {}", c.name), c.status, c.residual, details));
    }
    Ok(out)
}

pub fn cohomology() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (name, sc, want) in [
        ("cohomology: extended Poincare algebra has dim H2 = 0", build_algebra(), 0),
        ("cohomology: 2-dim abelian control has dim H2 = 1", abelian(2), 1),
        ("cohomology: su(2) control has dim H2 = 0", su2(), 0),
    ] {
        let r = check_central_extensions(&sc);
        let ok = r.dim_h2 == want && r.rank_d2 == r.rank_d2_reverse;
        out.push(CheckReport::new(name, Status::from_bool(ok), count_residual(r.dim_h2.abs_diff(want)), serde_json::to_value(&r).unwrap_or(Value::Null)));
    }
    out
}

pub fn lambda1() -> Vec<CheckReport> {
    let r = lambda1_rep();
    let v = validate_rep(&r);
    let manifest = serde_json::to_value(&r.manifest).unwrap_or(Value::Null);
    let mut out = vec![CheckReport::new(
        "lambda1: closure of all 45 bracket pairs",
        if v.closure.is_exact() { v.status } else { Status::Fail },
        v.closure_residual,
        json!({ "pairs": v.closure.pairs, "manifest": manifest }),
    )];
    let g0 = r.mat(GeneratorId::Gam0);
    let want: Vec<ExactScalar> = [0, 1, 1, 1, 0, 0, 0, -1, -1, -1].map(ExactScalar::from_i64).to_vec();
    let d = &g0 - &ExactMatrix::diagonal(&want);
    out.push(CheckReport::new("lambda1: Gam0 spectrum {1 x3, 0 x4, -1 x3}", Status::from_bool(d.is_zero()), exact_residual(&d), json!({})));
    let printed: Vec<ExactScalar> = [-1, 1, 1, 1, -1, -1, -1, 1, 1, 1].map(ExactScalar::from_i64).to_vec();
    let labels: Vec<ExactScalar> = r.basis.iter().map(|l| spinor_metric(l).unwrap_or_default()).collect();
    let ok = r.metric == printed && r.metric == labels;
    out.push(CheckReport::new(
        "lambda1: metric matches the displayed g and (-1)^(Lambda - gamma)",
        Status::from_bool(ok),
        count_residual(r.metric.iter().zip(&printed).filter(|(a, b)| a != b).count()),
        json!({ "metric": r.metric }),
    ));
    if let Some(dj) = v.delta_j {
        out.push(CheckReport::new(
            "lambda1: Delta_J coefficients against the label table",
            dj.status,
            count_residual(dj.problems.len()),
            json!({ "rescaling": dj.rescaling, "unit_rescaling": dj.unit_rescaling, "boundary_annihilation": dj.boundary_annihilation }),
        ));
    }
    out
}

pub fn spinor() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (t, dim) in [(0, 1), (1, 4), (2, 10)] {
        let lam = HalfInt::from_twice(t);
        let labels = multiplet_labels(lam);
        let rank = exact_rank(&gram_matrix(lam)?);
        let mut bad_degree = 0;
        for l in &labels {
            if build_state(l)?.poly.homogeneous_degree() != Some(t as u32) {
                bad_degree += 1;
            }
        }
        let ok = labels.len() == dim && rank == dim && bad_degree == 0;
        out.push(CheckReport::new(
            format!("spinor: Lambda = {lam} has {dim} states, full Gram rank, degree {t}"),
            Status::from_bool(ok),
            count_residual(dim.abs_diff(rank) + bad_degree),
            json!({ "states": labels.len(), "gram_rank": rank }),
        ));
        let mut survivors = Vec::new();
        for l in &labels {
            let ops: &[LadderOp] = if l.j == HalfInt::ZERO {
                &[LadderOp::DeltaJplus, LadderOp::DeltaJminus]
            } else if l.gamma == l.j {
                &[LadderOp::DeltaJplus]
            } else if l.gamma == -l.j {
                &[LadderOp::DeltaJminus]
            } else {
                &[]
            };
            for &op in ops {
                if !apply_ladder(op, l).is_annihilated() {
                    survivors.push(format!("{} on {l}", op.name()));
                }
            }
        }
        out.push(CheckReport::new(
            format!("spinor: Lambda = {lam} Delta boundary annihilation"),
            Status::from_bool(survivors.is_empty()),
            count_residual(survivors.len()),
            json!({ "survivors": survivors }),
        ));
    }
    Ok(out)
}

pub fn transforms(seed: u64, draws: usize, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (kind, label) in [
        (SweepKind::GByGamma, "G under exp(i omega.Gam)"),
        (SweepKind::PByGamma, "P under exp(i omega.Gam)"),
        (SweepKind::GammaByG, "Gam under exp(i alpha G)"),
        (SweepKind::GammaByP, "Gam under exp(i a.P)"),
    ] {
        let r = sweep(kind, draws, seed)?;
        let status = if r.max_residual < tol.transform { r.status } else { Status::Fail };
        out.push(CheckReport::new(
            format!("transform: {label}, {draws} seeded draws"),
            status,
            Residual::Float(r.max_residual),
            json!({
                "timelike": r.timelike,
                "spacelike": r.spacelike,
                "max_printed_residual": r.max_printed_residual.map(crate::report::fmt_float),
                "max_outside_span": crate::report::fmt_float(r.max_outside_span),
            }),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a11);
    let mut period: f64 = 0.0;
    let mut mixing: f64 = 0.0;
    for _ in 0..10 {
        let s: f64 = rng.gen_range(0.0..0.9);
        let u = FourVector::new(1.0, s * rng.gen_range(-1.0..1.0), 0.0, s * rng.gen_range(-0.5..0.5));
        period = period.max(periodicity_defect(u)?);
        mixing = mixing.max(mixing_identity_defect(&OmegaParameter::new(u.scale(rng.gen_range(0.1..3.0))))?);
        let w = FourVector::new(rng.gen_range(-0.5..0.5), 1.0, rng.gen_range(-1.0..1.0), 0.0);
        mixing = mixing.max(mixing_identity_defect(&OmegaParameter::new(w.scale(rng.gen_range(0.1..2.0))))?);
    }
    out.push(CheckReport::within("transform: period 2 pi on span{G, P} for timelike omega", Residual::Float(period), tol.transform, json!({})));
    out.push(CheckReport::within("transform: cos^2 + sin^2 mixing identity", Residual::Float(mixing), tol.transform, json!({})));
    let mut affine: f64 = 0.0;
    let mut trunc: f64 = 0.0;
    for mu in 0..4 {
        let a = [0, 1, 2, 3].map(|_| rng.gen_range(-2.0..2.0));
        affine = affine.max(affine_defect(true, rng.gen_range(-2.0..2.0), 0.3, a, mu)?);
        affine = affine.max(affine_defect(false, rng.gen_range(-2.0..2.0), 0.3, a, mu)?);
        trunc = trunc.max(truncation_defect(&[(GeneratorId::G, rng.gen_range(-3.0..3.0))], GeneratorId::gamma(mu)));
        let ap: Vec<(GeneratorId, f64)> = GeneratorId::P.iter().zip(a).map(|(&g, c)| (g, c)).collect();
        trunc = trunc.max(truncation_defect(&ap, GeneratorId::gamma(mu)));
    }
    out.push(CheckReport::within("transform: Gam shifts are affine in alpha and a", Residual::Float(affine), tol.machine, json!({})));
    out.push(CheckReport::within("transform: second-order series equals the exponential", Residual::Float(trunc), 1e-13_f64.max(tol.machine / 10.0), json!({})));
    let (g_bad, p_bad) = nilpotency_defects();
    out.push(CheckReport::new(
        "transform: (ad G)^2 Gam = 0 and (ad P)^2 Gam = 0",
        Status::from_bool(g_bad + p_bad == 0),
        count_residual(g_bad + p_bad),
        json!({}),
    ));
    Ok(out)
}

/// Two modes at small velocities with the largest `γ`, used for the current checks.
pub fn two_mode_setup(rep: &Representation) -> Result<Vec<crate::wave::PlaneWaveSolution>> {
    let top = rep.basis.iter().map(|l| l.gamma).max().unwrap_or(HalfInt::ZERO).to_f64();
    let mut sols = Vec::new();
    for v in [[0.3, 0.0, 0.1], [-0.2, 0.25, 0.0]] {
        let p = boost_momentum(FourVector::rest(1.0), v)?;
        sols.push(plane_waves(rep, p, top)?.swap_remove(0));
    }
    Ok(sols)
}

pub const SLOPE_SPACINGS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];
pub const SLOPE_CENTER: [f64; 4] = [0.3, -0.2, 0.1, 0.7];

pub fn wave(seed: u64, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3a7e);
    let velocities: Vec<[f64; 3]> = (0..20)
        .map(|_| {
            let v: [f64; 3] = [0, 1, 2].map(|_| rng.gen_range(-1.0..1.0));
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
            let s = rng.gen_range(0.0..0.9);
            v.map(|x| x * s / n)
        })
        .collect();
    for (name, rep) in [("Lambda = 1", lambda1_rep()), ("Dirac", dirac_rep()?)] {
        let inv = spectrum_invariance(&rep, 1.0, &velocities)?;
        out.push(CheckReport::new(
            format!("wave ({name}): rest spectrum is gamma mu with multiplicity 2J+1"),
            Status::from_bool(inv.rest_matches),
            Residual::Float(0.0),
            json!({ "rest": inv.rest_spectrum, "expected": inv.expected_rest_spectrum }),
        ));
        out.push(CheckReport::within(
            format!("wave ({name}): spectral drift over 20 seeded boosts"),
            Residual::Float(inv.max_drift),
            tol.drift,
            json!({}),
        ));
        let mut angle: f64 = 0.0;
        for v in velocities.iter().take(5) {
            angle = angle.max(eigenspace_alignment(&rep, 1.0, *v)?);
        }
        out.push(CheckReport::within(format!("wave ({name}): boosted eigenspaces align"), Residual::Float(angle), tol.subspace, json!({})));
        let sols = two_mode_setup(&rep)?;
        let single = current_divergence(&rep, &sols[..1], GridSpec { h: 0.05, n: 4, origin: SLOPE_CENTER })?;
        out.push(CheckReport::within(
            format!("wave ({name}): single plane-wave current divergence"),
            Residual::Float(single.max_divergence / single.scale.max(1.0)),
            tol.machine,
            json!({}),
        ));
        let fit = convergence_slope(&rep, &sols, &SLOPE_SPACINGS, 3, SLOPE_CENTER)?;
        let (status, note) = match &fit.diagnostic {
            Some(d) => (Status::Fail, Some(d.clone())),
            None => (Status::from_bool((fit.slope - 2.0).abs() <= tol.slope), None),
        };
        out.push(CheckReport::new(
            format!("wave ({name}): two-mode divergence converges as h^2"),
            status,
            Residual::Float((fit.slope - 2.0).abs()),
            slope_details(&fit, note),
        ));
        if fit.diagnostic.is_some() {
            if let Some(h) = invariant_form(&rep) {
                let reweighted = Representation { metric: h.clone(), ..rep.clone() };
                let fit = convergence_slope(&reweighted, &sols, &SLOPE_SPACINGS, 3, SLOPE_CENTER)?;
                let ok = fit.diagnostic.is_none() && (fit.slope - 2.0).abs() <= tol.slope;
                let mut details = slope_details(&fit, fit.diagnostic.clone());
                details["form"] = json!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                out.push(CheckReport::new(
                    format!("wave ({name}): two-mode divergence under the invariant hermitian form converges as h^2"),
                    Status::from_bool(ok),
                    Residual::Float((fit.slope - 2.0).abs()),
                    details,
                ));
            }
        }
    }
    Ok(out)
}

fn slope_details(fit: &ConvergenceFit, note: Option<String>) -> Value {
    json!({
        "slope": fmt_float(fit.slope),
        "diagnostic": note,
        "maxima": fit.maxima.iter().map(|m| fmt_float(*m)).collect::<Vec<_>>(),
    })
}

pub fn wigner(seed: u64, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3161);
    let mut fix: f64 = 0.0;
    let mut cocycle: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    for _ in 0..100 {
        let (l2, l1, u) = (random_lorentz(&mut rng), random_lorentz(&mut rng), random_four_velocity(&mut rng));
        let rw = wigner_rotation(&l1, &u)?;
        let (f, o) = rw.rotation_defects();
        fix = fix.max(f).max(o);
        cocycle = cocycle.max(cocycle_defect(&l2, &l1, &u)?);
        for t in 1..=4 {
            unitarity = unitarity.max(wigner_d(HalfInt::from_twice(t), &rw)?.unitarity_defect());
        }
    }
    let full = wigner_d_axis_angle(HalfInt::HALF, [0.0, 0.0, 1.0], 2.0 * std::f64::consts::PI)?;
    let minus = (&full.matrix + &crate::numerics::FloatMatrix::identity(2)).max_abs();
    Ok(vec![
        CheckReport::within("wigner: R_W fixes the standard vector and is orthogonal", Residual::Float(fix), tol.rotation, json!({ "draws": 100 })),
        CheckReport::within("wigner: cocycle over 100 random triples", Residual::Float(cocycle), tol.cocycle, json!({})),
        CheckReport::within("wigner: D^(J) unitary for J = 1/2 .. 2", Residual::Float(unitarity), tol.unitarity, json!({})),
        CheckReport::within("wigner: D^(1/2)(2 pi) = -I", Residual::Float(minus), tol.unitarity, json!({})),
    ])
}

/// Every check, in a fixed order.
pub fn all(seed: u64, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let mut out = jacobi();
    out.extend(metric());
    out.extend(casimir()?);
    out.extend(lambda1());
    out.extend(spinor()?);
    out.extend(cohomology());
    out.extend(transforms(seed, 100, tol)?);
    out.extend(wave(seed, tol)?);
    out.extend(wigner(seed, tol)?);
    Ok(out)
}
