//! The `epalg` command line: argument parsing, dispatch and report output.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::checks::{self, Tolerances};
use crate::error::{Error, Result};
use crate::numerics::HalfInt;
use crate::poincare::{euler_zyz, four_velocity, transform_state, wigner_d, wigner_rotation, LorentzMatrix, StateLabel};
use crate::reps::{build_rep, invariant_form, validate_rep, RepSource, Representation};
use crate::report::{fmt_float, CheckReport, Residual, Status};
use crate::spinor::{build_state, gram_matrix, multiplet_dimension, multiplet_labels};
use crate::transforms::{
    conjugate_g_by_gamma, conjugate_gamma_by_g, conjugate_gamma_by_p, conjugate_p_by_gamma, sweep, OmegaParameter, SweepKind,
    TransformCheck,
};
use crate::wave::{
    boost_momentum, current_divergence, eigenspace_alignment, parse_floats, parse_three, plane_waves, slash, spectrum_invariance,
    FourVector, GridSpec,
};

pub const SCHEMA: &str = "epalg/1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "epalg", version, about = "Exact verification of an extended Poincare algebra and its representations")]
struct Cli {
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replaces the float tolerances of the sweeps.
    #[arg(long, global = true, value_parser = positive)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure-constant checks.
    Check {
        #[arg(value_enum)]
        which: CheckWhich,
    },
    /// Build or verify a matrix representation file.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Spinor-polynomial states.
    #[command(subcommand)]
    Spinor(SpinorCmd),
    /// The operator Gam^mu p_mu.
    #[command(subcommand)]
    Wave(WaveCmd),
    /// Finite conjugations in the adjoint representation.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Wigner rotation of a boosted state.
    Wigner(WignerArgs),
    /// The full verification battery.
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckWhich {
    Jacobi,
    Metric,
    Casimir,
    Cohomology,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Paper,
    Dirac,
    Synthesize,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    Build {
        #[arg(long)]
        lambda: HalfInt,
        #[arg(long, value_enum)]
        source: SourceArg,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SpinorCmd {
    Basis {
        #[arg(long)]
        lambda: HalfInt,
    },
}

#[derive(Subcommand, Debug)]
enum WaveCmd {
    Spectrum {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        mass: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = three)]
        velocity: [f64; 3],
    },
    Current {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        mass: f64,
        /// Mode velocities `vx,vy,vz;vx,vy,vz;...`.
        #[arg(long, allow_hyphen_values = true)]
        modes: String,
        /// `h,N`: spacing and points per axis.
        #[arg(long)]
        grid: String,
        /// The `γ` whose eigenvalue `γ·mass` every mode shares (default: the largest).
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<HalfInt>,
        /// Which hermitian form defines the adjoint spinor.
        #[arg(long, value_enum, default_value_t = MetricChoice::Stored)]
        metric: MetricChoice,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricChoice {
    /// The metric stored with the representation.
    Stored,
    /// The unique diagonal form with `h·X = X†·h` for every generator.
    Invariant,
}

#[derive(Subcommand, Debug)]
enum TransformCmd {
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        omega: FourVector,
        #[arg(long)]
        sweep: Option<usize>,
    },
    G {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    P {
        #[arg(long, allow_hyphen_values = true, value_parser = four)]
        a: [f64; 4],
    },
}

#[derive(Args, Debug)]
struct WignerArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = three)]
    boost: [f64; 3],
    #[arg(long, allow_hyphen_values = true, value_parser = three)]
    velocity: [f64; 3],
    #[arg(long)]
    spin: HalfInt,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn three(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_three(s).map_err(|e| e.to_string())
}

fn four(s: &str) -> std::result::Result<[f64; 4], String> {
    let v = parse_floats(s).map_err(|e| e.to_string())?;
    v.try_into().map_err(|_| format!("expected 4 components in {s:?}"))
}

/// Output settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub tolerances: Tolerances,
}

/// What a subcommand produced.
enum Output {
    Reports(Vec<CheckReport>),
    /// Raw CSV plus the reports that decide the exit code.
    Csv(String, Vec<CheckReport>),
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::InvalidLabel(_) | Error::SuperluminalVelocity(_) | Error::InvalidVelocity(_) | Error::Io(_) | Error::Json(_)
    )
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let threads = match std::env::var("EPALG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                let _ = writeln!(err, "EPALG_THREADS must be a positive integer, got {v:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => None,
    };
    let format = if cli.json { Format::Json } else { cli.format.unwrap_or(Format::Table) };
    let cfg = RunConfig { format, seed: cli.seed, tolerances: cli.tol.map_or_else(Tolerances::default, Tolerances::uniform) };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.cmd, &cfg)),
            Err(e) => Err(Error::ConvergenceFailure(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.cmd, &cfg),
    };
    match result {
        Ok(Output::Reports(r)) => {
            let (text, code) = emit_report(&r, &cfg);
            let _ = out.write_all(text.as_bytes());
            code
        }
        Ok(Output::Csv(csv, r)) => {
            let (text, code) = emit_report(&r, &cfg);
            if cfg.format == Format::Csv {
                let _ = out.write_all(csv.as_bytes());
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            code
        }
        Err(e) if is_usage(&e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "internal error: {e}");
            EXIT_INTERNAL
        }
    }
}

/// Recursively rebuilds every object with its keys in sorted order.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, sorted(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Renders `reports` (failures first) and the exit code they imply.
pub fn emit_report(reports: &[CheckReport], cfg: &RunConfig) -> (String, i32) {
    if reports.is_empty() {
        return ("no checks run\n".into(), EXIT_USAGE);
    }
    let mut ordered: Vec<&CheckReport> = reports.iter().filter(|r| !r.status.is_pass()).collect();
    ordered.extend(reports.iter().filter(|r| r.status.is_pass()));
    let failed = ordered.iter().filter(|r| !r.status.is_pass()).count();
    let code = if failed == 0 { EXIT_PASS } else { EXIT_FAIL };
    let text = match cfg.format {
        Format::Json => {
            let v = json!({
                "schema": SCHEMA,
                "seed": cfg.seed,
                "status": if failed == 0 { "pass" } else { "fail" },
                "summary": { "checks": ordered.len(), "failed": failed },
                "reports": ordered,
            });
            let mut s = serde_json::to_string_pretty(&sorted(v)).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("status,residual,name\n");
            for r in &ordered {
                s.push_str(&format!("{},{},\"{}\"\n", status_word(r.status), r.residual, r.name.replace('"', "'")));
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for r in &ordered {
                s.push_str(&format!("{:<8} {:<20} {}\n", status_word(r.status), r.residual.to_string(), r.name));
                if let Some(Value::Array(rows)) = r.details.get("table").or_else(|| r.details.get("diagonal")) {
                    for row in rows {
                        if let Value::String(t) = row {
                            s.push_str(&format!("{:<30}{t}\n", ""));
                        }
                    }
                }
                if let Some(Value::String(d)) = r.details.get("summary") {
                    s.push_str(&format!("{:<30}{d}\n", ""));
                }
            }
            s.push_str(&format!("{} checks, {} failed\n", ordered.len(), failed));
            s
        }
    };
    (text, code)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Amended => "AMENDED",
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    let tol = &cfg.tolerances;
    Ok(Output::Reports(match cmd {
        Command::Check { which } => match which {
            CheckWhich::Jacobi => checks::jacobi(),
            CheckWhich::Metric => checks::metric(),
            CheckWhich::Casimir => checks::casimir()?,
            CheckWhich::Cohomology => checks::cohomology(),
        },
        Command::Rep(RepCmd::Build { lambda, source, out }) => {
            let src = match source {
                SourceArg::Paper => RepSource::Paper,
                SourceArg::Dirac => RepSource::Dirac,
                SourceArg::Synthesize => RepSource::Synthesize,
            };
            let rep = build_rep(*lambda, src)?;
            let v = validate_rep(&rep);
            rep.write(out)?;
            vec![validation_report(&format!("rep build: Lambda = {lambda} from {}", rep.source), &rep, &v, Some(out))]
        }
        Command::Rep(RepCmd::Verify { input }) => {
            let rep = Representation::read(input)?;
            let v = validate_rep(&rep);
            vec![validation_report(&format!("rep verify: {}", input.display()), &rep, &v, None)]
        }
        Command::Spinor(SpinorCmd::Basis { lambda }) => spinor_basis(*lambda)?,
        Command::Wave(WaveCmd::Spectrum { rep, mass, velocity }) => wave_spectrum(rep, *mass, *velocity, tol)?,
        Command::Wave(WaveCmd::Current { rep, mass, modes, grid, gamma, metric }) => {
            return wave_current(rep, *mass, modes, grid, *gamma, *metric)
        }
        Command::Transform(t) => transform(t, cfg)?,
        Command::Wigner(w) => wigner(w, tol)?,
        Command::All => checks::all(cfg.seed, tol)?,
    }))
}

fn validation_report(name: &str, rep: &Representation, v: &crate::reps::ValidationReport, out: Option<&PathBuf>) -> CheckReport {
    let mut details = serde_json::to_value(v).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut details {
        m.insert("dim".into(), json!(rep.dim()));
        m.insert("manifest".into(), serde_json::to_value(&rep.manifest).unwrap_or(Value::Null));
        if let Some(p) = out {
            m.insert("file".into(), json!(p.display().to_string()));
        }
        m.insert("summary".into(), json!(format!("dim {}, {} bracket pairs, {} amendments", rep.dim(), v.closure.pairs, rep.manifest.len())));
    }
    CheckReport::new(name, v.status, v.closure_residual, details)
}

fn spinor_basis(lambda: HalfInt) -> Result<Vec<CheckReport>> {
    if lambda < HalfInt::ZERO {
        return Err(Error::InvalidLabel(format!("Lambda = {lambda} must be nonnegative")));
    }
    let labels = multiplet_labels(lambda);
    let mut table = Vec::new();
    let mut states = Vec::new();
    for l in &labels {
        let s = build_state(l)?;
        table.push(format!("J={} gamma={} M={}: {} * ({})", l.j, l.gamma, l.m, s.prefactor, s.poly));
        states.push(json!({ "label": l, "origin": s.origin, "prefactor": s.prefactor, "poly": s.poly.to_string() }));
    }
    let dim = multiplet_dimension(lambda);
    let rank = if lambda <= HalfInt::from_int(3) { Some(crate::numerics::exact_rank(&gram_matrix(lambda)?)) } else { None };
    let ok = labels.len() == dim && rank.is_none_or(|r| r == dim);
    Ok(vec![CheckReport::new(
        format!("spinor basis: Lambda = {lambda}, {dim} states"),
        Status::from_bool(ok),
        Residual::exact(rank.map_or(0, |r| dim.abs_diff(r)) as f64, rank.is_none_or(|r| r == dim)),
        json!({ "table": table, "states": states, "gram_rank": rank }),
    )])
}

fn wave_spectrum(path: &Path, mass: f64, velocity: [f64; 3], tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let rep = Representation::read(path)?;
    let inv = spectrum_invariance(&rep, mass, &[velocity])?;
    let p = boost_momentum(FourVector::rest(mass), velocity)?;
    let spec = crate::numerics::eig_spectrum(&slash(&rep, &p))?;
    let table: Vec<String> = spec.multiset().iter().map(|(z, k)| format!("{} x{k}", fmt_float(z.re))).collect();
    let angle = eigenspace_alignment(&rep, mass, velocity)?;
    Ok(vec![
        CheckReport::new(
            "wave spectrum: rest frame equals gamma mu",
            Status::from_bool(inv.rest_matches),
            Residual::Float(0.0),
            json!({ "rest": inv.rest_spectrum, "expected": inv.expected_rest_spectrum }),
        ),
        CheckReport::within(
            "wave spectrum: boosted spectrum equals the rest spectrum",
            Residual::Float(inv.max_drift),
            tol.drift,
            json!({ "momentum": p, "table": table }),
        ),
        CheckReport::within("wave spectrum: boosted eigenspaces align", Residual::Float(angle), tol.subspace, json!({})),
    ])
}

fn wave_current(path: &Path, mass: f64, modes: &str, grid: &str, gamma: Option<HalfInt>, metric: MetricChoice) -> Result<Output> {
    let mut rep = Representation::read(path)?;
    if metric == MetricChoice::Invariant {
        rep.metric = invariant_form(&rep).ok_or_else(|| Error::NoClosure("no unique diagonal invariant hermitian form".into()))?;
    }
    if !(mass > 0.0) {
        return Err(Error::Parse(format!("mass must be positive, got {mass}")));
    }
    let g = parse_floats(grid)?;
    let (h, n) = match g.as_slice() {
        [h, n] if *n >= 3.0 && n.fract() == 0.0 => (*h, *n as usize),
        _ => return Err(Error::Parse(format!("--grid expects h,N with N >= 3, got {grid:?}"))),
    };
    let gamma = gamma.or_else(|| rep.basis.iter().map(|l| l.gamma).max()).unwrap_or(HalfInt::ZERO);
    let lambda = gamma.to_f64() * mass;
    let mut sols = Vec::new();
    for m in modes.split(';').filter(|m| !m.trim().is_empty()) {
        let p = boost_momentum(FourVector::rest(mass), parse_three(m)?)?;
        let mut s = plane_waves(&rep, p, lambda)?;
        if s.is_empty() {
            return Err(Error::Parse(format!("no plane wave with eigenvalue {lambda} at velocity {m}")));
        }
        sols.push(s.swap_remove(0));
    }
    let sample = current_divergence(&rep, &sols, GridSpec { h, n, origin: [0.0; 4] })?;
    let rel = sample.max_divergence / sample.scale.max(f64::MIN_POSITIVE);
    let report = CheckReport::new(
        "wave current: max |div j| relative to the current scale",
        Status::from_bool(rel < 1e-6 && sample.diagnostic.is_none()),
        Residual::Float(rel),
        json!({
            "points": sample.points.len(),
            "scale": fmt_float(sample.scale),
            "diagnostic": sample.diagnostic,
            "metric": rep.metric.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
    );
    Ok(Output::Csv(sample.to_csv(), vec![report]))
}

fn transform_report(c: TransformCheck, tol: f64) -> CheckReport {
    let details = serde_json::to_value(&c).unwrap_or(Value::Null);
    let status = if c.residual <= tol { c.status } else { Status::Fail };
    CheckReport::new(format!("transform: {}", c.name), status, Residual::Float(c.residual), details)
}

fn transform(t: &TransformCmd, cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    match t {
        TransformCmd::Gamma { omega, sweep: n } => {
            let w = OmegaParameter::new(*omega);
            out.push(transform_report(conjugate_g_by_gamma(&w)?, cfg.tolerances.transform));
            for b in 0..4 {
                out.push(transform_report(conjugate_p_by_gamma(&w, b)?, cfg.tolerances.transform));
            }
            if let Some(n) = n {
                for kind in [SweepKind::GByGamma, SweepKind::PByGamma] {
                    let r = sweep(kind, *n, cfg.seed)?;
                    let status = if r.max_residual < cfg.tolerances.transform { r.status } else { Status::Fail };
                    out.push(CheckReport::new(
                        format!("transform sweep: {kind:?}, {n} draws"),
                        status,
                        Residual::Float(r.max_residual),
                        serde_json::to_value(&r).unwrap_or(Value::Null),
                    ));
                }
            }
        }
        TransformCmd::G { alpha } => {
            for mu in 0..4 {
                out.push(transform_report(conjugate_gamma_by_g(*alpha, mu)?, cfg.tolerances.transform));
            }
        }
        TransformCmd::P { a } => {
            for mu in 0..4 {
                out.push(transform_report(conjugate_gamma_by_p(*a, mu)?, cfg.tolerances.transform));
            }
        }
    }
    Ok(out)
}

fn wigner(w: &WignerArgs, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    if w.spin < HalfInt::ZERO {
        return Err(Error::InvalidLabel(format!("spin {} must be nonnegative", w.spin)));
    }
    let lam = LorentzMatrix::boost(w.boost)?;
    let u = four_velocity(w.velocity)?;
    let rw = wigner_rotation(&lam, &u)?;
    let (fix, orth) = rw.rotation_defects();
    let euler = euler_zyz(&rw)?;
    let d = wigner_d(w.spin, &rw)?;
    let gamma = HalfInt::from_twice(w.spin.twice().rem_euclid(2));
    let state = StateLabel::new(u, 1.0, gamma, w.spin, w.spin)?;
    let (moved, _) = transform_state(&lam, &state)?;
    Ok(vec![CheckReport::within(
        format!("wigner: J = {}", w.spin),
        Residual::Float(fix.max(orth).max(d.unitarity_defect())),
        tol.rotation,
        json!({ "rotation": rw, "euler_zyz": euler, "D": d, "u_out": moved.u }),
    )])
}
