//! Python module `curveinv_py`. Dict results use the same keys as the CLI's JSON,
//! with infinite values spelled `"inf"`; scalar results are `int` or `math.inf`.

use curveinv::catalog::{entry_by_id, family_matches, table_entries, table_row, verify_entry, Table};
use curveinv::cli::output::error_kind;
use curveinv::cli::parse::{parse_poly, parse_tpoly};
use curveinv::intersection::{intersection_multiplicity, milnor_number};
use curveinv::invariants::{eq_invariants as eq_report, param_invariants as param_report, Trunc};
use curveinv::{ExtendedNat, ParamCurve};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(
    curveinv_py,
    CurveError,
    PyValueError,
    "Raised for parse, range and mathematical errors."
);

fn err(e: curveinv::CurveError) -> PyErr {
    CurveError::new_err(format!("{}: {}", error_kind(&e), e))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn number<'py>(py: Python<'py>, n: ExtendedNat) -> PyResult<Bound<'py, PyAny>> {
    match n.finite() {
        Some(k) => Ok(k.into_pyobject(py)?.into_any()),
        None => Ok(f64::INFINITY.into_pyobject(py)?.into_any()),
    }
}

fn trunc(start: usize, max: usize) -> Trunc {
    Trunc { start, max }
}

/// Multiplicity, Milnor number, `I_f` and `V_f` of the germ `f = 0` at the origin.
#[pyfunction]
#[pyo3(signature = (f, branches = None))]
fn eq_invariants<'py>(py: Python<'py>, f: &str, branches: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_poly(f).map_err(err)?;
    to_py(py, &eq_report(&f, branches).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (x, y, trunc = 64, max_trunc = 1024))]
fn param_invariants<'py>(
    py: Python<'py>,
    x: &str,
    y: &str,
    trunc: usize,
    max_trunc: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let g = ParamCurve::from_polys(parse_tpoly(x).map_err(err)?, parse_tpoly(y).map_err(err)?, trunc).map_err(err)?;
    to_py(py, &param_report(&g, self::trunc(trunc, max_trunc)).map_err(err)?)
}

#[pyfunction]
fn intersect<'py>(py: Python<'py>, f: &str, g: &str) -> PyResult<Bound<'py, PyAny>> {
    let (f, g) = (parse_poly(f).map_err(err)?, parse_poly(g).map_err(err)?);
    number(py, intersection_multiplicity(&f, &g).map_err(err)?)
}

#[pyfunction]
fn milnor<'py>(py: Python<'py>, f: &str) -> PyResult<Bound<'py, PyAny>> {
    number(py, milnor_number(&parse_poly(f).map_err(err)?).map_err(err)?)
}

/// Stored against recomputed values for a catalog entry such as `"simple:E6"`.
#[pyfunction]
#[pyo3(signature = (entry, seed = 0))]
fn verify<'py>(py: Python<'py>, entry: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let e = entry_by_id(entry).map_err(err)?;
    to_py(py, &verify_entry(&e, Trunc::default(), seed).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (table, k_max = 4, family = None))]
fn table<'py>(py: Python<'py>, table: &str, k_max: u32, family: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let t: Table = table.parse().map_err(CurveError::new_err)?;
    let rows = table_entries(t, k_max)
        .iter()
        .filter(|e| family.is_none_or(|p| family_matches(p, e.family)))
        .map(table_row)
        .collect::<curveinv::Result<Vec<_>>>()
        .map_err(err)?;
    to_py(py, &rows)
}

/// Runs the command line with `args` (without the program name); returns `(code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = curveinv::cli::run(std::iter::once("curveinv".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn curveinv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CurveError", m.py().get_type::<CurveError>())?;
    m.add_function(wrap_pyfunction!(eq_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(param_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(milnor, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
