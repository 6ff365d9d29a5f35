//! Python module `ellgen`: descriptors, cusp expansions, rigidity and verdicts.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use core::catalog::{
    catalog, catalog_entry, parse_descriptor, serialize_descriptor, Descriptor as CoreDescriptor,
};
use core::classes::QSeries;
use core::equivariant::rigidity_check;
use core::genera::{ahat_cusp_series, pole_order, witten_series};
use core::ring::Rational;
use core::series::QExponent;
use core::theorems::{verdict_cyclic, verdict_involution};
use ellgen as core;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, num: String, den: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format!("{num}/{den}"),))
}

fn rational<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, r.numer().to_string(), r.denom().to_string())
}

fn exponent<'py>(py: Python<'py>, e: QExponent) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, e.numer().to_string(), e.denom().to_string())
}

/// A truncated q-series with exact rational coefficients.
#[pyclass(frozen)]
struct Series {
    inner: QSeries,
    pole: String,
}

#[pymethods]
impl Series {
    /// `[(exponent, coefficient), ...]` as `Fraction`s.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        self.inner
            .terms()
            .map(|(e, c)| PyTuple::new(py, [exponent(py, e)?, rational(py, c)?]))
            .collect()
    }

    /// The exponent of the error term, `None` for exact series.
    fn error_term<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.trunc().map(|t| exponent(py, t)).transpose()
    }

    /// Coefficient of `q^{num/den}`; `None` beyond the known range.
    #[pyo3(signature = (num, den=1))]
    fn coeff<'py>(
        &self,
        py: Python<'py>,
        num: i64,
        den: i64,
    ) -> PyResult<Option<Bound<'py, PyAny>>> {
        if den == 0 {
            return Err(value_err("zero denominator"));
        }
        self.inner
            .coeff(QExponent::new(num, den))
            .map(|c| rational(py, &c))
            .transpose()
    }

    #[getter]
    fn pole_order(&self) -> String {
        self.pole.clone()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.pretty()
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.inner.pretty())
    }
}

/// A manifold descriptor, optionally with circle-action data.
#[pyclass(frozen)]
struct Descriptor {
    inner: CoreDescriptor,
}

#[pymethods]
impl Descriptor {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_descriptor(text.as_bytes())
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog_entry(name)
            .map(|e| Self {
                inner: e.descriptor(),
            })
            .map_err(|e| PyKeyError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serialize_descriptor(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dimension(&self) -> u32 {
        self.inner.manifold().dim
    }

    #[getter]
    fn has_action(&self) -> bool {
        self.inner.action().is_some()
    }

    /// Cusp expansion: `cusp` is `"sign"` or `"ahat"`.
    #[pyo3(signature = (cusp="sign", truncate=4))]
    fn genus(&self, cusp: &str, truncate: i64) -> PyResult<Series> {
        if truncate < 1 {
            return Err(value_err("truncate must be at least 1"));
        }
        let m = self.inner.manifold();
        let g = match cusp {
            "sign" => witten_series(m, truncate),
            "ahat" => ahat_cusp_series(m, truncate),
            other => return Err(value_err(format!("unknown cusp `{other}`"))),
        }
        .map_err(value_err)?;
        Ok(Series {
            pole: pole_order(&g).to_string(),
            inner: g.series,
        })
    }

    /// True when the Lefschetz sum is constant and equals the Â-cusp expansion.
    #[pyo3(signature = (truncate=4))]
    fn rigidity(&self, truncate: i64) -> PyResult<bool> {
        let a = self
            .inner
            .action()
            .ok_or_else(|| value_err("descriptor has no circle action"))?;
        rigidity_check(a, truncate)
            .map(|r| r.passed())
            .map_err(value_err)
    }

    /// Whether every fired vanishing rule agrees with the computed expansion.
    #[pyo3(signature = (order=None, r=0, truncate=4))]
    fn verdict_consistent(&self, order: Option<i64>, r: u32, truncate: i64) -> PyResult<bool> {
        let a = self
            .inner
            .action()
            .ok_or_else(|| value_err("descriptor has no circle action"))?;
        let rep = match order {
            None => verdict_involution(a, r, truncate),
            Some(o) => verdict_cyclic(a, o, r, truncate),
        }
        .map_err(value_err)?;
        Ok(rep.consistent())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

#[pyfunction]
fn normalize_rotation(k: i64, order: i64) -> PyResult<(i64, i64)> {
    if order < 2 || k == 0 {
        return Err(value_err("need order >= 2 and k != 0"));
    }
    Ok(core::equivariant::normalize_rotation(k, order))
}

/// Runs the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = core::cli::run(std::iter::once("ellgen".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "ellgen")]
pub fn ellgen_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Descriptor>()?;
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_rotation, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
