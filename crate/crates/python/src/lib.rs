//! Python bindings: the `epalg` command line plus a few direct entry points.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use epalg_core::algebra::{build_algebra, check_jacobi, group_metric, GeneratorId};
use epalg_core::numerics::HalfInt;
use epalg_core::poincare::wigner_d_axis_angle;
use epalg_core::reps::{build_rep, RepSource};

fn value_err(e: epalg_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, String, String)> {
    let argv: Vec<String> = std::iter::once("epalg".to_string()).chain(args).collect();
    py.detach(|| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = epalg_core::cli::run(&argv, &mut out, &mut err);
        let text = |b: Vec<u8>| String::from_utf8(b).map_err(|e| PyRuntimeError::new_err(e.to_string()));
        Ok((code, text(out)?, text(err)?))
    })
}

/// `(triples, failures)` of the Jacobi check on the full algebra.
#[pyfunction]
fn jacobi() -> (usize, usize) {
    let r = check_jacobi(&build_algebra());
    (r.triples, r.failures.len())
}

/// Generator names in the order used by every matrix.
#[pyfunction]
fn generators() -> Vec<&'static str> {
    GeneratorId::ALL.iter().map(|g| g.name()).collect()
}

/// The group metric as exact rational strings.
#[pyfunction]
fn metric() -> Vec<Vec<String>> {
    let m = group_metric(&build_algebra());
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect()).collect()
}

/// A representation's generator matrices as complex floats, keyed by name.
#[pyfunction]
#[pyo3(signature = (lambda_, source = "synthesize"))]
fn representation(lambda_: &str, source: &str) -> PyResult<Vec<(String, Vec<Vec<Complex64>>)>> {
    let lambda: HalfInt = lambda_.parse().map_err(value_err)?;
    let source = match source {
        "paper" => RepSource::Paper,
        "dirac" => RepSource::Dirac,
        "synthesize" => RepSource::Synthesize,
        other => return Err(PyValueError::new_err(format!("unknown source {other:?}"))),
    };
    let rep = build_rep(lambda, source).map_err(value_err)?;
    Ok(GeneratorId::LORENTZ
        .iter()
        .map(|&g| {
            let m = rep.mat(g);
            (g.name().to_string(), (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].to_complex()).collect()).collect())
        })
        .collect())
}

/// `D^(J)` for a rotation by `angle` about `axis`, rows and columns in descending `M`.
#[pyfunction]
fn wigner_d(j: &str, axis: [f64; 3], angle: f64) -> PyResult<Vec<Vec<Complex64>>> {
    let j: HalfInt = j.parse().map_err(value_err)?;
    let d = wigner_d_axis_angle(j, axis, angle).map_err(value_err)?.matrix;
    Ok((0..d.rows()).map(|r| (0..d.cols()).map(|c| d[(r, c)]).collect()).collect())
}

#[pymodule]
fn epalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(metric, m)?)?;
    m.add_function(wrap_pyfunction!(representation, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_d, m)?)?;
    Ok(())
}
