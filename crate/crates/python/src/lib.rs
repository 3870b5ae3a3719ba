//! Python extension module exposing the main hvkit operations on plain
//! lists of floats: exact hypervolume, per-point contributions, the
//! least contributor, single-point updates, subset selection, and local
//! upper bounds. All objectives are minimized and every box is bounded
//! by the reference point.

use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hvkit::{AlgorithmId, Front, HsspMethod, HsspSolution, Point, ReferencePoint, UpdateMode};

fn value_error(message: impl ToString) -> PyErr {
    PyValueError::new_err(message.to_string())
}

fn build_inputs(points: &[Vec<f64>], reference: &[f64]) -> PyResult<(Front, ReferencePoint)> {
    let r = ReferencePoint::new(reference.to_vec()).map_err(value_error)?;
    let front = Front::from_coords(points, reference.len()).map_err(value_error)?;
    Ok((front, r))
}

/// Exact hypervolume of `points` with respect to `reference`.
///
/// `algorithm` picks a specific computation path by name ("auto", "2d",
/// "3d", "4d", "wfg", "hso", "ie", "grid"); the default dispatches on
/// the dimension.
#[pyfunction]
#[pyo3(signature = (points, reference, algorithm=None))]
fn hypervolume(
    points: Vec<Vec<f64>>,
    reference: Vec<f64>,
    algorithm: Option<&str>,
) -> PyResult<f64> {
    let (front, r) = build_inputs(&points, &reference)?;
    let result = match algorithm {
        None => hvkit::hv(&front, &r),
        Some(name) => {
            let id = AlgorithmId::from_str(name).map_err(value_error)?;
            hvkit::hv_with_algorithm(&front, &r, id, hvkit::DEFAULT_GRID_BUDGET)
        }
    };
    Ok(result.map_err(value_error)?.value)
}

/// Exclusive contribution of every point: total hypervolume minus the
/// hypervolume without that point. Duplicates contribute zero.
#[pyfunction]
fn contributions(points: Vec<Vec<f64>>, reference: Vec<f64>) -> PyResult<Vec<f64>> {
    let (front, r) = build_inputs(&points, &reference)?;
    Ok(hvkit::all_contributions(&front, &r)
        .map_err(value_error)?
        .values)
}

/// Index and contribution of the point whose removal loses the least
/// hypervolume (lowest index on ties).
#[pyfunction]
fn least_contributor(points: Vec<Vec<f64>>, reference: Vec<f64>) -> PyResult<(usize, f64)> {
    let (front, r) = build_inputs(&points, &reference)?;
    hvkit::least_contributor(&front, &r).map_err(value_error)
}

/// Hypervolume after adding `point` to `points` (or removing it, with
/// `remove=True`), given the current value — without recomputing from
/// scratch.
#[pyfunction]
#[pyo3(signature = (points, reference, value, point, remove=false))]
fn updated_hypervolume(
    points: Vec<Vec<f64>>,
    reference: Vec<f64>,
    value: f64,
    point: Vec<f64>,
    remove: bool,
) -> PyResult<f64> {
    let (front, r) = build_inputs(&points, &reference)?;
    let p = Point::new(point).map_err(value_error)?;
    let mode = if remove {
        UpdateMode::Decremental
    } else {
        UpdateMode::Incremental
    };
    hvkit::update_hv(&front, &r, value, &p, mode).map_err(value_error)
}

fn solve(
    front: &Front,
    r: &ReferencePoint,
    k: usize,
    method: HsspMethod,
    seed: u64,
    iterations: Option<u64>,
) -> hvkit::Result<HsspSolution> {
    let n = front.len();
    match method {
        HsspMethod::Exact2d => hvkit::hssp_exact_2d(front, r, k),
        HsspMethod::Exhaustive => hvkit::hssp_exhaustive(front, r, k, hvkit::DEFAULT_SUBSET_BUDGET),
        HsspMethod::GreedyIncremental => hvkit::hssp_greedy_incremental(front, r, k),
        HsspMethod::GreedyDecremental => hvkit::hssp_greedy_decremental(front, r, k),
        HsspMethod::LocalSearch => {
            let iters = iterations.unwrap_or(((n * k.max(1)).max(64)) as u64);
            hvkit::hssp_local_search(front, r, k, 1, iters, seed)
        }
        HsspMethod::Gsemo => {
            let iters = iterations.unwrap_or_else(|| hvkit::gsemo_default_budget(n, k));
            hvkit::hssp_gsemo(front, r, k, iters, seed)
        }
    }
}

/// Select at most `k` of the points maximizing hypervolume. Returns the
/// chosen indices (ascending) and their hypervolume.
///
/// Methods: "exact2d", "exhaustive", "greedy-inc", "greedy-dec",
/// "local-search" (alias "ls"), "gsemo".
#[pyfunction]
#[pyo3(signature = (points, reference, k, method="greedy-inc", seed=0, iterations=None))]
fn subset_selection(
    points: Vec<Vec<f64>>,
    reference: Vec<f64>,
    k: usize,
    method: &str,
    seed: u64,
    iterations: Option<u64>,
) -> PyResult<(Vec<usize>, f64)> {
    let (front, r) = build_inputs(&points, &reference)?;
    let method = HsspMethod::from_str(method).map_err(value_error)?;
    let solution = solve(&front, &r, k, method, seed, iterations).map_err(value_error)?;
    Ok((solution.selected, solution.hypervolume))
}

/// The local upper bounds of the region not dominated by `points`
/// inside the reference box: one coordinate list per bound, sorted
/// lexicographically.
#[pyfunction]
fn local_upper_bounds(points: Vec<Vec<f64>>, reference: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    let (front, r) = build_inputs(&points, &reference)?;
    let bounds = hvkit::local_upper_bounds(&front, &r).map_err(value_error)?;
    Ok(bounds.iter().map(|p| p.coords().to_vec()).collect())
}

#[pymodule]
fn _hvkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(contributions, m)?)?;
    m.add_function(wrap_pyfunction!(least_contributor, m)?)?;
    m.add_function(wrap_pyfunction!(updated_hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(subset_selection, m)?)?;
    m.add_function(wrap_pyfunction!(local_upper_bounds, m)?)?;
    Ok(())
}
