//! Python bindings for the `siegel-ring` crate.
//!
//! Coefficients cross the boundary as `fractions.Fraction`, so nothing is
//! rounded on either side.
//!
//! ```python
//! import pysiegel
//! g = pysiegel.generators(8)
//! g["chi5a"].coeff(6, 0, -3)    # Fraction(81, 1)
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use siegel_ring::cli::{ExpansionRecord, Session};
use siegel_ring::eisenstein::EisensteinParams;
use siegel_ring::ring::GeneratorSet;
use siegel_ring::{diffop, dims, exactnum, fourier, lattice};
use siegel_ring::{EtaIndex, FourierSeries, Rational};

fn value_error(e: siegel_ring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.to_string(),))
}

/// A truncated Fourier expansion with exact rational coefficients.
#[pyclass(name = "Series", module = "pysiegel", frozen)]
struct Series {
    inner: FourierSeries,
}

impl From<FourierSeries> for Series {
    fn from(inner: FourierSeries) -> Self {
        Series { inner }
    }
}

#[pymethods]
impl Series {
    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    #[getter]
    fn prec(&self) -> u32 {
        self.inner.prec()
    }

    /// Coefficient at `(x, y, z)`; zero outside the stored support.
    fn coeff<'py>(&self, py: Python<'py>, x: i64, y: i64, z: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.coeff_at(x, y, z))
    }

    /// Nonzero coefficients as `((x, y, z), Fraction)` pairs in canonical order.
    fn items<'py>(&self, py: Python<'py>) -> PyResult<Vec<((i64, i64, i64), Bound<'py, PyAny>)>> {
        self.inner
            .iter()
            .map(|(eta, q)| Ok(((eta.x, eta.y, eta.z), fraction(py, q)?)))
            .collect()
    }

    fn truncate(&self, prec: u32) -> Series {
        self.inner.truncate(prec).into()
    }

    /// CSV with columns `x,y,z,m,coeff` over the closed cone up to `prec`.
    #[pyo3(signature = (form = "series"))]
    fn to_csv(&self, form: &str) -> PyResult<String> {
        ExpansionRecord::from_series(form, &self.inner)
            .to_csv()
            .map_err(value_error)
    }

    fn is_cusp(&self) -> bool {
        self.inner.is_cusp()
    }

    fn __add__(&self, other: &Series) -> PyResult<Series> {
        Ok(self.inner.add(&other.inner).map_err(value_error)?.into())
    }

    fn __sub__(&self, other: &Series) -> PyResult<Series> {
        Ok(self.inner.sub(&other.inner).map_err(value_error)?.into())
    }

    fn __mul__(&self, other: &Series) -> Series {
        fourier::multiply(&self.inner, &other.inner).into()
    }

    fn __eq__(&self, other: &Series) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.support_len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(weight={}, prec={}, terms={})",
            self.inner.weight(),
            self.inner.prec(),
            self.inner.support_len()
        )
    }
}

/// The Eisenstein series of even weight `k >= 2` up to grade `prec`.
#[pyfunction]
fn eisenstein_series(k: i64, prec: u32) -> PyResult<Series> {
    let params = EisensteinParams::gamma_1_6(k).map_err(value_error)?;
    Ok(siegel_ring::eisenstein::eisenstein_series(&params, prec)
        .map_err(value_error)?
        .into())
}

/// All named generators and auxiliary forms, keyed by name.
#[pyfunction]
fn generators(prec: u32) -> PyResult<BTreeMap<&'static str, Series>> {
    let gens = GeneratorSet::build(prec).map_err(value_error)?;
    Ok(GeneratorSet::NAMES
        .iter()
        .filter_map(|&name| gens.get(name).map(|f| (name, f.clone().into())))
        .collect())
}

/// A monomial in the generators, such as `"E4*chi5a^2"`. With `cache_dir`
/// the result is read from and written to the expansion cache.
#[pyfunction]
#[pyo3(signature = (form, prec, cache_dir = None))]
fn expand(form: &str, prec: u32, cache_dir: Option<PathBuf>) -> PyResult<Series> {
    let mut session = Session::new(cache_dir).map_err(value_error)?;
    Ok(session.expansion(form, prec).map_err(value_error)?.into())
}

#[pyfunction]
fn multiply(f: &Series, g: &Series) -> Series {
    fourier::multiply(&f.inner, &g.inner).into()
}

/// The alternating bracket of four forms, of weight `k1 + k2 + k3 + k4 + 3`.
#[pyfunction]
fn bracket(f1: &Series, f2: &Series, f3: &Series, f4: &Series) -> Series {
    diffop::bracket(&f1.inner, &f2.inner, &f3.inner, &f4.inner).into()
}

#[pyfunction]
#[pyo3(signature = (k, p = 3))]
fn dim_cusp(k: i64, p: i64) -> PyResult<i64> {
    dims::dim_cusp(k, p).map_err(value_error)
}

#[pyfunction]
fn dim_modular(k: i64) -> i64 {
    dims::dim_modular(k)
}

#[pyfunction]
fn genfun_coeff(k: i64) -> i64 {
    dims::genfun_coeff(k)
}

#[pyfunction]
fn norm_m(x: i64, y: i64, z: i64) -> i64 {
    EtaIndex::new(x, y, z).norm_m()
}

/// `(a, d, f)` for a positive index: content, fundamental discriminant and
/// conductor.
#[pyfunction]
fn quad_invariants(x: i64, y: i64, z: i64) -> PyResult<(i64, i64, i64)> {
    let q = lattice::quad_invariants(&EtaIndex::new(x, y, z)).map_err(value_error)?;
    Ok((q.a, q.d, q.f))
}

#[pyfunction]
fn kronecker_symbol(a: i64, n: i64) -> i32 {
    exactnum::kronecker_symbol(a, n)
}

/// `B_m` with `B_1 = -1/2`.
#[pyfunction]
fn bernoulli_number(py: Python<'_>, m: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &exactnum::bernoulli_number(m))
}

#[pymodule]
fn pysiegel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(eisenstein_series, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(dim_cusp, m)?)?;
    m.add_function(wrap_pyfunction!(dim_modular, m)?)?;
    m.add_function(wrap_pyfunction!(genfun_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(norm_m, m)?)?;
    m.add_function(wrap_pyfunction!(quad_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_number, m)?)?;
    Ok(())
}
