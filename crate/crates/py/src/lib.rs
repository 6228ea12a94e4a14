//! Python bindings: `import fatpoints`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fatpoints_core as core;
use fatpoints_core::{BiDegree, Coordinates, FieldConfig, GridScheme, Partition, ProjPoint};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn points(v: Vec<(i64, i64)>) -> Vec<ProjPoint> {
    v.into_iter().map(|(a, b)| ProjPoint::new(a, b)).collect()
}

fn field(prime: Option<u64>, exact: bool) -> PyResult<FieldConfig> {
    match (prime, exact) {
        (Some(_), true) => Err(PyValueError::new_err("prime and exact are mutually exclusive")),
        (_, true) => Ok(FieldConfig::Exact),
        (Some(p), false) => FieldConfig::modular(p).map_err(value_err),
        (None, false) => Ok(FieldConfig::default()),
    }
}

type Bidegrees = Vec<(usize, usize)>;

fn pairs(set: &std::collections::BTreeSet<BiDegree>) -> Bidegrees {
    set.iter().map(|b| (b.i, b.j)).collect()
}

/// A fat point scheme given by its multiplicity grid.
#[pyclass(name = "Scheme", frozen)]
struct PyScheme {
    inner: GridScheme,
}

impl PyScheme {
    /// The scheme with coordinates: its own, else `[1:i]`, `[1:j]`.
    fn located(&self) -> PyResult<GridScheme> {
        if self.inner.coords().is_some() {
            Ok(self.inner.clone())
        } else {
            self.inner
                .attach_coords(Coordinates::standard(self.inner.rows(), self.inner.cols()))
                .map_err(value_err)
        }
    }

    fn window(&self, window: Option<(usize, usize)>) -> BiDegree {
        window.map_or_else(
            || {
                let ab = core::alpha_beta(&self.inner);
                BiDegree::new(ab.m(), ab.m_prime())
            },
            |(i, j)| BiDegree::new(i, j),
        )
    }
}

#[pymethods]
impl PyScheme {
    #[new]
    #[pyo3(signature = (mult, row_coords=None, col_coords=None))]
    fn new(mult: Vec<Vec<usize>>, row_coords: Option<Vec<(i64, i64)>>, col_coords: Option<Vec<(i64, i64)>>) -> PyResult<Self> {
        let inner = match (row_coords, col_coords) {
            (None, None) => GridScheme::new(mult),
            (Some(r), Some(c)) => GridScheme::with_coords(mult, points(r), points(c)),
            _ => return Err(PyValueError::new_err("give both row_coords and col_coords or neither")),
        }
        .map_err(value_err)?;
        Ok(PyScheme { inner })
    }

    /// Deletes zero rows and columns first.
    #[staticmethod]
    fn normalize(mult: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyScheme {
            inner: GridScheme::normalize(&mult).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyScheme {
            inner: core::parse_scheme(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn mult(&self) -> Vec<Vec<usize>> {
        self.inner.grid().to_vec()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn support(&self) -> Self {
        PyScheme {
            inner: self.inner.support(),
        }
    }

    fn transpose(&self) -> Self {
        PyScheme {
            inner: self.inner.transpose(),
        }
    }

    /// `(raw row tuples, sorted α)`.
    fn alpha(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let ab = core::alpha_beta(&self.inner);
        (ab.alpha_raw, ab.alpha.parts().to_vec())
    }

    /// `(raw column tuples, sorted β)`.
    fn beta(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let ab = core::alpha_beta(&self.inner);
        (ab.beta_raw, ab.beta.parts().to_vec())
    }

    /// `(B_C, B_R)`.
    fn border(&self) -> (Vec<usize>, Vec<usize>) {
        let b = core::border(&self.inner);
        (b.bc, b.br)
    }

    fn is_acm(&self) -> PyResult<bool> {
        Ok(core::is_acm(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))?.acm)
    }

    fn acm_certificate(&self) -> PyResult<String> {
        Ok(core::is_acm(&self.inner)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?
            .to_string())
    }

    /// Hilbert table on `window = (I, J)`; `None` marks entries the
    /// combinatorial route cannot determine.
    #[pyo3(signature = (window=None, oracle=false, prime=None, exact=false))]
    fn hilbert(
        &self,
        window: Option<(usize, usize)>,
        oracle: bool,
        prime: Option<u64>,
        exact: bool,
    ) -> PyResult<Vec<Vec<Option<usize>>>> {
        let w = self.window(window);
        let table = if oracle {
            core::oracle_hilbert_table(&self.located()?, w, field(prime, exact)?).map_err(value_err)?
        } else {
            core::combinatorial_table(&self.inner, w).map_err(|e| PyRuntimeError::new_err(e.to_string()))?
        };
        Ok(table.values)
    }

    #[pyo3(signature = (i, j, prime=None, exact=false))]
    fn oracle_value(&self, i: usize, j: usize, prime: Option<u64>, exact: bool) -> PyResult<usize> {
        core::oracle_hilbert_value(&self.located()?, i, j, field(prime, exact)?).map_err(value_err)
    }

    /// `(C, V)` as lists of bidegrees; raises for non-ACM schemes.
    fn resolution(&self) -> PyResult<(Bidegrees, Bidegrees)> {
        let r = core::resolution(&self.inner).map_err(value_err)?;
        Ok((pairs(&r.corners), pairs(&r.vertices)))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = core::classify(&self.inner);
        let d = PyDict::new(py);
        d.set_item("homogeneous", c.homogeneous)?;
        d.set_item("almost_homogeneous", c.almost_homogeneous)?;
        d.set_item("quasi_homogeneous", c.quasi_homogeneous)?;
        d.set_item("support_ci", c.support_ci)?;
        d.set_item("support_acm", c.support_acm)?;
        Ok(d)
    }

    /// Checks the classification theorems; raises `RuntimeError` on a
    /// violation and returns the report text otherwise.
    fn check_classification(&self) -> PyResult<String> {
        core::check_theorems(&self.inner)
            .map(|r| r.to_string())
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Number of mismatches between the oracle and the border.
    #[pyo3(signature = (prime=None, exact=false))]
    fn verify_border(&self, prime: Option<u64>, exact: bool) -> PyResult<usize> {
        Ok(core::verify_border(&self.located()?, field(prime, exact)?)
            .map_err(value_err)?
            .mismatches
            .len())
    }

    fn __repr__(&self) -> String {
        format!("Scheme({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn conjugate(parts: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(Partition::new(parts).map_err(value_err)?.conjugate().parts().to_vec())
}

/// Whether `a` majorizes `b`; both must have the same weight.
#[pyfunction]
fn majorizes(a: Vec<usize>, b: Vec<usize>) -> PyResult<bool> {
    let a = Partition::new(a).map_err(value_err)?;
    let b = Partition::new(b).map_err(value_err)?;
    a.majorizes(&b).map_err(value_err)
}

#[pymodule]
pub fn fatpoints(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScheme>()?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    Ok(())
}
