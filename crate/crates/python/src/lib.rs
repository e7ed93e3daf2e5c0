use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use loccodes::bounds::{self, format_rational, Rational};
use loccodes::check;
use loccodes::codes::{self as core_codes, Admissibility, ClassKind, Code, CodeClass, Failure};
use loccodes::constructions::linear::{self, WordCode};
use loccodes::constructions::patterns::{self, PeriodicPattern};
use loccodes::constructions::explicit as explicit_code;
use loccodes::graph::{Graph, GridFamily, TorusSpec};
use loccodes::io;
use loccodes::solver::{self, SolveBudget};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn class(name: &str, r: usize) -> PyResult<CodeClass> {
    let kind: ClassKind = name.parse().map_err(err)?;
    CodeClass::new(kind, r).map_err(err)
}

fn family(name: &str) -> PyResult<GridFamily> {
    GridFamily::parse(name).ok_or_else(|| err(format!("unknown grid family `{name}`")))
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(q),))
}

/// A finite simple graph with vertex labels.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// `hypercube:4`, `torus:king:8x8`, `fig:1`, `file:<path>`, ...
    #[staticmethod]
    fn from_uri(uri: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::graph_from_uri(uri).map_err(err)? })
    }

    #[staticmethod]
    fn hypercube(dim: u32) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::hypercube(dim).map_err(err)? })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::cycle(n).map_err(err)? })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::path(n).map_err(err)? })
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::complete_bipartite(a, b).map_err(err)? })
    }

    #[staticmethod]
    fn torus(grid: &str, px: usize, py: usize) -> PyResult<Self> {
        let spec = TorusSpec::new(family(grid)?, px, py).map_err(err)?;
        Ok(PyGraph { inner: Graph::torus(spec).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, edges, labels=None))]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let inner = Graph::from_edges(n, edges, labels, loccodes::graph::Family::Custom).map_err(err)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.check_vertex(v).map_err(err)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn to_text(&self) -> String {
        io::format_graph(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

fn code<'g>(graph: &'g PyGraph, labels: &[String]) -> PyResult<Code<'g>> {
    Code::from_labels(&graph.inner, labels).map_err(err)
}

fn failure_dict<'py>(py: Python<'py>, g: &Graph, failure: &Failure) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match failure {
        Failure::UncoveredVertex { v } => {
            d.set_item("kind", "uncovered_vertex")?;
            d.set_item("vertex", g.label(*v))?;
        }
        Failure::UnseparatedPair { u, v, shared } => {
            d.set_item("kind", "unseparated_pair")?;
            d.set_item("u", g.label(*u))?;
            d.set_item("v", g.label(*v))?;
            d.set_item("shared", shared.iter().map(|&x| g.label(x)).collect::<Vec<_>>())?;
        }
    }
    Ok(d)
}

/// Checks `code` (a list of vertex labels) against a class such as `"lid"`.
#[pyfunction]
#[pyo3(signature = (graph, code_labels, kind, r=1))]
fn verify<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    code_labels: Vec<String>,
    kind: &str,
    r: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let c = code(graph, &code_labels)?;
    let report = c.verify(class(kind, r)?);
    let d = PyDict::new(py);
    d.set_item("valid", report.valid)?;
    d.set_item("class", report.class.to_string())?;
    match &report.failure {
        Some(f) => d.set_item("failure", failure_dict(py, &graph.inner, f)?)?,
        None => d.set_item("failure", py.None())?,
    }
    Ok(d)
}

/// `None` when a (local) identifying code exists, else a pair of twins.
#[pyfunction]
#[pyo3(signature = (graph, kind, r=1))]
fn admits(graph: &PyGraph, kind: &str, r: usize) -> PyResult<Option<(String, String)>> {
    let c = class(kind, r)?;
    Ok(match core_codes::admits(&graph.inner, c.kind, r) {
        Admissibility::Admits => None,
        Admissibility::Twins { u, v } => Some((graph.inner.label(u).into(), graph.inner.label(v).into())),
    })
}

/// Minimum code size by exact search.
#[pyfunction]
#[pyo3(signature = (graph, kind, r=1, max_nodes=None, size_hint=None))]
fn solve<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    kind: &str,
    r: usize,
    max_nodes: Option<u64>,
    size_hint: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let budget = SolveBudget { max_nodes, size_hint, ..SolveBudget::default() };
    let res = py.detach(|| solver::solve_min(&graph.inner, class(kind, r)?, &budget).map_err(err))?;
    let d = PyDict::new(py);
    d.set_item("size", res.optimal_size)?;
    d.set_item("optimal", res.exhausted_below)?;
    d.set_item("witness", res.witness.iter().map(|&v| graph.inner.label(v)).collect::<Vec<_>>())?;
    d.set_item("nodes_explored", res.nodes_explored)?;
    d.set_item("proven_lower_bound", res.proven_lower_bound)?;
    Ok(d)
}

/// Exact share of one codeword, as a `fractions.Fraction`.
#[pyfunction]
fn share<'py>(py: Python<'py>, graph: &PyGraph, code_labels: Vec<String>, vertex: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = code(graph, &code_labels)?;
    let v = graph.inner.vertex_by_label(vertex).ok_or_else(|| err(format!("unknown vertex `{vertex}`")))?;
    fraction(py, &bounds::share(&c, v).map_err(err)?)
}

/// Shares of every codeword, keyed by label.
#[pyfunction]
fn share_profile<'py>(py: Python<'py>, graph: &PyGraph, code_labels: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let c = code(graph, &code_labels)?;
    let profile = bounds::share_profile(&c).map_err(err)?;
    let d = PyDict::new(py);
    for (v, s) in &profile.shares {
        d.set_item(graph.inner.label(*v), fraction(py, s)?)?;
    }
    Ok(d)
}

#[pyfunction]
fn lid_lower_bound(n: u32) -> PyResult<u64> {
    bounds::hypercube_lid_lower_bound(n).map_err(err)
}

#[pyfunction]
fn lid_upper_bound(s: u32, k: u32) -> PyResult<u64> {
    bounds::hypercube_lid_upper_bound(s, k).map_err(err)
}

/// Codewords of the Hamming code of length `2^s - 1`, as binary words.
#[pyfunction]
fn hamming(s: u32) -> PyResult<Vec<String>> {
    let code = linear::hamming(s).map_err(err)?;
    if code.length > loccodes::graph::MAX_HYPERCUBE_DIM {
        return Err(err(format!("hamming({s}) is too long to list")));
    }
    Ok(code.codewords().labels())
}

#[pyfunction]
fn hamming_lift(s: u32, k: u32) -> PyResult<Vec<String>> {
    Ok(linear::hamming_lift(s, k).map_err(err)?.codewords().labels())
}

#[pyfunction]
fn lift_covering_to_lid(words: Vec<String>) -> PyResult<Vec<String>> {
    let code = WordCode::from_labels(&words).map_err(err)?;
    Ok(linear::lift_covering_to_lid(&code).map_err(err)?.labels())
}

#[pyfunction]
fn dimension_lift_valid(words: Vec<String>) -> PyResult<bool> {
    linear::dimension_lift_valid(&WordCode::from_labels(&words).map_err(err)?).map_err(err)
}

/// A named code: `{"id", "graph", "labels", "class", "size"}`.
#[pyfunction]
fn explicit<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
    let e = explicit_code(id).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("id", e.id)?;
    d.set_item("graph", e.graph_uri)?;
    d.set_item("labels", e.labels.clone())?;
    d.set_item("class", e.class.to_string())?;
    d.set_item("size", e.size)?;
    Ok(d)
}

/// A lattice-periodic code in an infinite grid.
#[pyclass(name = "Pattern", frozen)]
struct PyPattern {
    inner: PeriodicPattern,
}

#[pymethods]
impl PyPattern {
    #[new]
    fn new(grid: &str, v1: (i64, i64), v2: (i64, i64), residues: Vec<(i64, i64)>) -> PyResult<Self> {
        Ok(PyPattern { inner: PeriodicPattern::new(family(grid)?, v1, v2, residues).map_err(err)? })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family.name()
    }

    #[getter]
    fn v1(&self) -> (i64, i64) {
        self.inner.v1
    }

    #[getter]
    fn v2(&self) -> (i64, i64) {
        self.inner.v2
    }

    #[getter]
    fn residues(&self) -> Vec<(i64, i64)> {
        self.inner.residues.clone()
    }

    #[getter]
    fn density<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.density())
    }

    fn base_torus(&self) -> (usize, usize) {
        self.inner.base_torus()
    }

    /// The torus graph and the codeword labels for periods `px x py`.
    fn realize(&self, px: usize, py: usize) -> PyResult<(PyGraph, Vec<String>)> {
        let graph = self.inner.torus(px, py).map_err(err)?;
        let labels = self.inner.code_on(&graph).map_err(err)?.labels();
        Ok((PyGraph { inner: graph }, labels))
    }

    fn to_text(&self) -> String {
        io::format_pattern(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Pattern({}, v1={:?}, v2={:?}, residues={:?})",
            self.inner.family.name(),
            self.inner.v1,
            self.inner.v2,
            self.inner.residues
        )
    }
}

/// A shipped pattern and the class it realises.
#[pyfunction]
fn builtin_pattern(id: &str) -> PyResult<(PyPattern, String)> {
    let named = patterns::builtin_pattern(id).map_err(err)?;
    Ok((PyPattern { inner: named.pattern }, named.class.to_string()))
}

/// First valid residue set of size `count` over all lattices of determinant `det`.
#[pyfunction]
fn search_lattices(py: Python<'_>, grid: &str, det: i64, count: usize, kind: &str) -> PyResult<Option<PyPattern>> {
    let (f, c) = (family(grid)?, class(kind, 1)?);
    let found = py.detach(|| patterns::search_lattices(f, det, count, c)).map_err(err)?;
    Ok(found.map(|inner| PyPattern { inner }))
}

/// Runs the reproduction matrix; one dict per row.
#[pyfunction]
#[pyo3(signature = (only=None, seed=0))]
fn paper_check<'py>(py: Python<'py>, only: Option<String>, seed: u64) -> PyResult<Bound<'py, PyList>> {
    let rows = py.detach(|| check::run(only.as_deref(), seed));
    let list = PyList::empty(py);
    for row in rows {
        let d = PyDict::new(py);
        d.set_item("id", row.id)?;
        d.set_item("group", row.group)?;
        d.set_item("passed", row.passed)?;
        d.set_item("detail", row.detail)?;
        list.append(d)?;
    }
    Ok(list)
}

#[pymodule]
#[pyo3(name = "loccodes")]
fn loccodes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPattern>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(admits, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(share, m)?)?;
    m.add_function(wrap_pyfunction!(share_profile, m)?)?;
    m.add_function(wrap_pyfunction!(lid_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lid_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hamming, m)?)?;
    m.add_function(wrap_pyfunction!(hamming_lift, m)?)?;
    m.add_function(wrap_pyfunction!(lift_covering_to_lid, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_lift_valid, m)?)?;
    m.add_function(wrap_pyfunction!(explicit, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(search_lattices, m)?)?;
    m.add_function(wrap_pyfunction!(paper_check, m)?)?;
    Ok(())
}
