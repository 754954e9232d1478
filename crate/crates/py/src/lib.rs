//! Python bindings: thin wrappers over the core protocol runners, taking
//! text inputs (bitstrings, edge lists, vector files) and returning plain
//! objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qsmp::graph::{classify, embed_l1, embed_partial_cube, DisConfig, GraphClass};
use qsmp::ladder::LadderConfig;
use qsmp::reduction::{ModOracle, OracleMode};
use qsmp::report::parse_graph;
use qsmp::unary::QuantizedVector;
use qsmp::BitString;

fn err(e: qsmp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Outcome of one protocol run.
#[pyclass(frozen)]
struct Outcome {
    #[pyo3(get)]
    estimate: f64,
    #[pyo3(get)]
    true_distance: f64,
    #[pyo3(get)]
    relative_error: f64,
    #[pyo3(get)]
    succeeded: bool,
    #[pyo3(get)]
    qubits_total: u64,
    #[pyo3(get)]
    copies_total: u64,
}

#[pymethods]
impl Outcome {
    fn __repr__(&self) -> String {
        format!(
            "Outcome(estimate={}, true_distance={}, succeeded={})",
            self.estimate, self.true_distance, self.succeeded
        )
    }
}

fn outcome(r: qsmp::ProtocolResult) -> Outcome {
    Outcome {
        estimate: r.estimate,
        true_distance: r.true_distance.unwrap_or(f64::NAN),
        relative_error: r.relative_error.unwrap_or(f64::NAN),
        succeeded: r.succeeded.unwrap_or(false),
        qubits_total: r.cost.qubits_total,
        copies_total: r.cost.copies_total,
    }
}

/// Hamming distance of two 0/1 strings.
#[pyfunction]
fn hamming_distance(x: &str, y: &str) -> PyResult<usize> {
    let a = BitString::parse(x).map_err(err)?;
    let b = BitString::parse(y).map_err(err)?;
    qsmp::hamming_distance(&a, &b).map_err(err)
}

/// Runs the relative-error Hamming protocol on two 0/1 strings.
#[pyfunction]
#[pyo3(signature = (x, y, eps, seed=0))]
fn run_hamming(x: &str, y: &str, eps: f64, seed: u64) -> PyResult<Outcome> {
    let a = BitString::parse(x).map_err(err)?;
    let b = BitString::parse(y).map_err(err)?;
    qsmp::run_ham_epsilon(&a, &b, eps, &LadderConfig::default(), seed)
        .map(outcome)
        .map_err(err)
}

/// Classifies a graph given as edge-list or adjacency text:
/// "partial-cube", "l1", or "not-l1".
#[pyfunction]
fn recognize(graph_text: &str) -> PyResult<String> {
    let g = parse_graph(graph_text).map_err(err)?;
    Ok(match classify(&g).map_err(err)? {
        GraphClass::PartialCube => "partial-cube",
        GraphClass::L1Only => "l1",
        GraphClass::NotL1 => "not-l1",
    }
    .to_string())
}

/// Hypercube embedding of a graph as text ("scale k dimension m" header
/// plus one labeled row per vertex). Scale 1 when the graph is a partial
/// cube, scale 2 otherwise.
#[pyfunction]
fn embed(graph_text: &str) -> PyResult<String> {
    let g = parse_graph(graph_text).map_err(err)?;
    let emb = match embed_partial_cube(&g) {
        Ok(e) => e,
        Err(qsmp::Error::NotPartialCube) => embed_l1(&g).map_err(err)?,
        Err(e) => return Err(err(e)),
    };
    Ok(emb.to_text(&g))
}

/// Runs the vertex-distance protocol between two vertices of a graph.
#[pyfunction]
#[pyo3(signature = (graph_text, v, w, eps, seed=0))]
fn run_graph_distance(graph_text: &str, v: usize, w: usize, eps: f64, seed: u64) -> PyResult<Outcome> {
    let g = parse_graph(graph_text).map_err(err)?;
    let emb = match embed_partial_cube(&g) {
        Ok(e) => e,
        Err(qsmp::Error::NotPartialCube) => embed_l1(&g).map_err(err)?,
        Err(e) => return Err(err(e)),
    };
    qsmp::graph::run_dis_epsilon(&g, &emb, v, w, eps, &DisConfig::default(), seed)
        .map(outcome)
        .map_err(err)
}

/// Runs the l1 distance protocol on two vector files given as text
/// ("dim d bits k scale M" header plus one entry per line).
#[pyfunction]
#[pyo3(signature = (vector_a_text, vector_b_text, eps, seed=0))]
fn run_l1(vector_a_text: &str, vector_b_text: &str, eps: f64, seed: u64) -> PyResult<Outcome> {
    let a = QuantizedVector::parse(vector_a_text).map_err(err)?;
    let b = QuantizedVector::parse(vector_b_text).map_err(err)?;
    qsmp::unary::run_l1_epsilon(&a, &b, eps, &LadderConfig::default(), seed)
        .map(outcome)
        .map_err(err)
}

/// Decides x >= y with two queries to an approximate distance oracle.
/// Modes: "exact", "random", "low", "high". Requires eps < 1/4.
#[pyfunction]
#[pyo3(signature = (x, y, eps, mode="exact", seed=0))]
fn gt_via_mod(x: f64, y: f64, eps: f64, mode: &str, seed: u64) -> PyResult<bool> {
    let mode: OracleMode = mode.parse().map_err(err)?;
    let mut oracle = ModOracle::new(mode, eps, seed).map_err(err)?;
    qsmp::reduction::gt_via_mod(x, y, &mut oracle).map_err(err)
}

#[pymodule]
fn qsmp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Outcome>()?;
    m.add_function(wrap_pyfunction!(hamming_distance, m)?)?;
    m.add_function(wrap_pyfunction!(run_hamming, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(run_graph_distance, m)?)?;
    m.add_function(wrap_pyfunction!(run_l1, m)?)?;
    m.add_function(wrap_pyfunction!(gt_via_mod, m)?)?;
    Ok(())
}
