//! Python module `gyroloop_py`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use gyroloop::corpus::{Corpus, CorpusEntry};
use gyroloop::enumeration::enumerate_left_bol;
use gyroloop::gyration::{gyr, gyration_table, is_gyrocommutative, is_gyrogroup};
use gyroloop::morphisms::{are_isomorphic, automorphism_group, canonical_key};
use gyroloop::report::{classify, render_csv, render_json};
use gyroloop::structure::derived_subgyrogroup;
use gyroloop::table::{CayleyTable, Loop};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Loop", module = "gyroloop_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyLoop {
    inner: Loop,
}

#[pymethods]
impl PyLoop {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        Loop::from_rows(&rows).map(|inner| PyLoop { inner }).map_err(value_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.table().to_rows()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.inner.mul(a, b).map_err(value_err)
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        if a >= self.inner.order() {
            return Err(value_err(format!("element {a} out of range")));
        }
        Ok(self.inner.inv(a))
    }

    fn is_left_bol(&self) -> bool {
        self.inner.is_left_bol()
    }

    fn is_moufang(&self) -> bool {
        self.inner.is_moufang()
    }

    fn is_group(&self) -> bool {
        self.inner.is_associative()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    /// `None` when the loop is a gyrogroup, otherwise the failure reason.
    fn gyrogroup_failure(&self) -> Option<String> {
        is_gyrogroup(&self.inner).err().map(|f| f.to_string())
    }

    fn is_gyrogroup(&self) -> bool {
        is_gyrogroup(&self.inner).is_ok()
    }

    fn is_gyrocommutative(&self) -> PyResult<bool> {
        is_gyrocommutative(&self.inner).map_err(value_err)
    }

    /// `gyr[a,b]` in 1-based cycle notation.
    fn gyr(&self, a: usize, b: usize) -> PyResult<String> {
        let n = self.inner.order();
        if a >= n || b >= n {
            return Err(value_err(format!("pair ({a},{b}) out of range")));
        }
        gyr(&self.inner, a, b)
            .to_perm()
            .map(|p| p.format_cycles(true))
            .ok_or_else(|| value_err(format!("gyr[{a},{b}] is not a bijection")))
    }

    /// Distinct non-identity gyrators, 1-based cycle notation.
    fn gyrators(&self) -> Vec<String> {
        gyration_table(&self.inner).gyrators.iter().map(|p| p.format_cycles(true)).collect()
    }

    fn gyrators_closed(&self) -> bool {
        gyration_table(&self.inner).gyrators_closed
    }

    fn gyration_table(&self) -> String {
        gyration_table(&self.inner).render_table()
    }

    fn canonical_digest(&self) -> String {
        canonical_key(&self.inner).digest()
    }

    fn automorphism_group_order(&self) -> usize {
        automorphism_group(&self.inner).len()
    }

    /// Members of the derived subgyrogroup.
    fn derived_subgyrogroup(&self) -> PyResult<Vec<usize>> {
        derived_subgyrogroup(&self.inner).map(|d| d.members().to_vec()).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Loop(order={})", self.inner.order())
    }
}

/// The order-16 gyrogroup with non-closed gyrator set.
#[pyfunction]
fn g16() -> PyLoop {
    PyLoop { inner: gyroloop::fixtures::g16() }
}

/// An isomorphism as 1-based cycle notation, or `None`.
#[pyfunction]
fn isomorphism(a: &PyLoop, b: &PyLoop) -> Option<String> {
    are_isomorphic(&a.inner, &b.inner).map(|p| p.format_cycles(true))
}

#[pyfunction]
#[pyo3(signature = (order, non_associative = false))]
fn enumerate_bol(py: Python<'_>, order: usize, non_associative: bool) -> PyResult<Vec<PyLoop>> {
    let loops = py
        .detach(|| enumerate_left_bol(order, non_associative))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(loops.into_iter().map(|inner| PyLoop { inner }).collect())
}

/// Classification report of named tables as CSV or JSON text.
#[pyfunction]
#[pyo3(signature = (tables, format = "csv"))]
fn classify_tables(tables: Vec<(String, Vec<Vec<usize>>)>, format: &str) -> PyResult<String> {
    let mut corpus = Corpus::default();
    for (i, (name, rows)) in tables.into_iter().enumerate() {
        let table = CayleyTable::from_rows(&rows).map_err(value_err)?;
        corpus.push(CorpusEntry { name, table, source: "<python>".into(), index: i, line: 0 });
    }
    let report = classify(&corpus);
    match format {
        "csv" => Ok(render_csv(&report)),
        "json" => Ok(render_json(&report)),
        other => Err(value_err(format!("unknown format {other:?}"))),
    }
}

#[pymodule]
fn gyroloop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLoop>()?;
    m.add_function(wrap_pyfunction!(g16, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_bol, m)?)?;
    m.add_function(wrap_pyfunction!(classify_tables, m)?)?;
    Ok(())
}
