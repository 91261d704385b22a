//! Python bindings for `specdist`.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use specdist::distance::{build_density, DensityParams};
use specdist::generators::regular_tree_size as tree_size;
use specdist::graph::{edge_list_string, read_any_edge_list};
use specdist::{EditOp, Error, GraphSpec, Spectrum, DEFAULT_SIGMA};

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        1 => PyValueError::new_err(e.to_string()),
        3 => PyRuntimeError::new_err(e.to_string()),
        _ => match e {
            Error::Io(io) => PyIOError::new_err(io.to_string()),
            other => PyValueError::new_err(other.to_string()),
        },
    }
}

fn params(sigma: f64, grid_step: Option<f64>) -> PyResult<DensityParams> {
    let mut p = DensityParams::new(sigma);
    if let Some(h) = grid_step {
        p = p.with_step(h);
    }
    p.validate().map_err(to_py)?;
    Ok(p)
}

/// Simple undirected graph.
#[pyclass(name = "Graph", module = "specdist_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: specdist::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = specdist::Graph::new(n, edges).map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    /// Builds a graph from a spec string such as "cycle:n=10".
    #[staticmethod]
    #[pyo3(signature = (spec, seed = 1))]
    fn from_spec(spec: &str, seed: u64) -> PyResult<Self> {
        let spec: GraphSpec = spec.parse().map_err(to_py)?;
        Ok(PyGraph { inner: spec.generate(seed).map_err(to_py)? })
    }

    /// Parses edge-list text (indexed or labeled).
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let (inner, _) = read_any_edge_list(text).map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
        Self::from_edge_list(&text)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn average_degree(&self) -> PyResult<f64> {
        self.inner.average_degree().map_err(to_py)
    }

    fn component_count(&self) -> usize {
        self.inner.connected_components().count
    }

    fn insert_edge(&self, u: usize, v: usize) -> PyResult<Self> {
        self.edit(EditOp::InsertEdge(u, v))
    }

    fn delete_edge(&self, u: usize, v: usize) -> PyResult<Self> {
        self.edit(EditOp::DeleteEdge(u, v))
    }

    fn insert_isolated_vertex(&self) -> PyResult<Self> {
        self.edit(EditOp::InsertIsolatedVertex)
    }

    fn delete_isolated_vertex(&self, v: usize) -> PyResult<Self> {
        self.edit(EditOp::DeleteIsolatedVertex(v))
    }

    fn to_edge_list(&self) -> String {
        edge_list_string(&self.inner)
    }

    /// Sorted normalized-Laplacian eigenvalues.
    fn spectrum(&self) -> PyResult<Vec<f64>> {
        Ok(specdist::spectrum(&self.inner).map_err(to_py)?.values().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl PyGraph {
    fn edit(&self, op: EditOp) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.apply_edit(op).map_err(to_py)? })
    }
}

fn spectrum_of(values: Vec<f64>) -> PyResult<Spectrum> {
    Spectrum::new(values).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (spec, seed = 1))]
fn generate(spec: &str, seed: u64) -> PyResult<PyGraph> {
    PyGraph::from_spec(spec, seed)
}

#[pyfunction]
fn spectrum(g: &PyGraph) -> PyResult<Vec<f64>> {
    g.spectrum()
}

/// Spectral distance between two graphs.
#[pyfunction]
#[pyo3(signature = (a, b, sigma = DEFAULT_SIGMA, grid_step = None))]
fn distance(py: Python<'_>, a: &PyGraph, b: &PyGraph, sigma: f64, grid_step: Option<f64>) -> PyResult<f64> {
    let p = params(sigma, grid_step)?;
    let (a, b) = (a.inner.clone(), b.inner.clone());
    py.detach(|| {
        let sa = specdist::spectrum(&a)?;
        let sb = specdist::spectrum(&b)?;
        specdist::spectral_distance(&sa, &sb, p)
    })
    .map_err(to_py)
}

/// Spectral distance between two eigenvalue lists.
#[pyfunction]
#[pyo3(signature = (a, b, sigma = DEFAULT_SIGMA, grid_step = None))]
fn spectra_distance(a: Vec<f64>, b: Vec<f64>, sigma: f64, grid_step: Option<f64>) -> PyResult<f64> {
    let p = params(sigma, grid_step)?;
    specdist::spectral_distance(&spectrum_of(a)?, &spectrum_of(b)?, p).map_err(to_py)
}

/// Density grid and values `(xs, rho)` for an eigenvalue list.
#[pyfunction]
#[pyo3(signature = (values, sigma = DEFAULT_SIGMA, grid_step = None))]
fn density(values: Vec<f64>, sigma: f64, grid_step: Option<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let d = build_density(&spectrum_of(values)?, params(sigma, grid_step)?).map_err(to_py)?;
    Ok((d.xs().to_vec(), d.values().to_vec()))
}

/// `(template, distance)` pairs, closest first.
#[pyfunction]
#[pyo3(signature = (g, sigma = DEFAULT_SIGMA))]
fn classify(g: &PyGraph, sigma: f64) -> PyResult<Vec<(String, f64)>> {
    let s = specdist::spectrum(&g.inner).map_err(to_py)?;
    let avg = g.inner.average_degree().map_err(to_py)?;
    let ranked = specdist::distance::classify(&s, params(sigma, None)?, Some(avg)).map_err(to_py)?;
    Ok(ranked.into_iter().map(|c| (c.template.name(), c.distance)).collect())
}

/// Whether `b` interlaces `a` with shift `shift`.
#[pyfunction]
#[pyo3(signature = (a, b, shift = 1))]
fn interlaces(a: Vec<f64>, b: Vec<f64>, shift: usize) -> PyResult<bool> {
    Ok(specdist::distance::check_interlacing(&spectrum_of(a)?, &spectrum_of(b)?, shift).holds)
}

/// Pairwise distance matrix as nested lists.
#[pyfunction]
#[pyo3(signature = (graphs, sigma = DEFAULT_SIGMA))]
fn distance_matrix(py: Python<'_>, graphs: Vec<PyGraph>, sigma: f64) -> PyResult<Vec<Vec<f64>>> {
    let p = params(sigma, None)?;
    let graphs: Vec<specdist::Graph> = graphs.into_iter().map(|g| g.inner).collect();
    let m = py
        .detach(|| {
            let dens = specdist::experiments::densities(&graphs, p)?;
            let labels = (0..graphs.len()).map(|i| i.to_string()).collect();
            specdist::DistanceMatrix::from_densities(labels, &dens)
        })
        .map_err(to_py)?;
    Ok((0..m.len()).map(|i| (0..m.len()).map(|j| m.get(i, j)).collect()).collect())
}

#[pyfunction]
fn regular_tree_size(k: usize, depth: u32) -> usize {
    tree_size(k, depth)
}

#[pyfunction]
#[pyo3(signature = (d, sigma = DEFAULT_SIGMA))]
fn cube_erf_bound(d: u32, sigma: f64) -> PyResult<f64> {
    specdist::distance::cube_erf_bound(d, sigma).map_err(to_py)
}

#[pymodule]
fn specdist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(spectra_distance, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(interlaces, m)?)?;
    m.add_function(wrap_pyfunction!(distance_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(regular_tree_size, m)?)?;
    m.add_function(wrap_pyfunction!(cube_erf_bound, m)?)?;
    m.add("DEFAULT_SIGMA", DEFAULT_SIGMA)?;
    Ok(())
}
