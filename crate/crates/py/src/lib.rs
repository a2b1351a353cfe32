//! Python bindings: the main types and metric operations of secperf-core.
//!
//! Build with `cargo build -p secperf-py --release`, then copy or symlink
//! `target/release/libsecperf.so` next to your script as `secperf.so`
//! (see python/smoke_test.py).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use secperf_core::channel::WiretapParams as CoreParams;
use secperf_core::copula::{self, CopulaSpec as CoreCopula, RhoMethod, UnitPair};
use secperf_core::error::Error;
use secperf_core::metrics::{self, MetricEstimate as CoreEstimate, TargetRate};
use secperf_core::secrecy::{self, SecrecyRegime};
use secperf_core::specfun;
use secperf_core::sweep;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_regime(regime: u8) -> PyResult<SecrecyRegime> {
    match regime {
        1 => Ok(SecrecyRegime::Corollary1),
        2 => Ok(SecrecyRegime::Corollary2),
        other => Err(PyValueError::new_err(format!(
            "regime must be 1 or 2, got {other}"
        ))),
    }
}

/// Average channel parameters, all linear.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Params {
    inner: CoreParams,
}

#[pymethods]
impl Params {
    /// Params(gbar_m, gbar_e, gbar_ms, gbar_es) in linear units.
    #[new]
    fn new(gbar_m: f64, gbar_e: f64, gbar_ms: f64, gbar_es: f64) -> PyResult<Self> {
        CoreParams::from_average_snrs(gbar_m, gbar_e, gbar_ms, gbar_es)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    /// Params from dB values.
    #[staticmethod]
    fn from_db(gbar_m_db: f64, gbar_e_db: f64, gbar_ms_db: f64, gbar_es_db: f64) -> PyResult<Self> {
        CoreParams::from_average_snrs_db(gbar_m_db, gbar_e_db, gbar_ms_db, gbar_es_db)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn gbar_m(&self) -> f64 {
        self.inner.gbar_m
    }

    #[getter]
    fn gbar_e(&self) -> f64 {
        self.inner.gbar_e
    }

    #[getter]
    fn gbar_ms(&self) -> f64 {
        self.inner.gbar_ms
    }

    #[getter]
    fn gbar_es(&self) -> f64 {
        self.inner.gbar_es
    }

    fn __repr__(&self) -> String {
        format!(
            "Params(gbar_m={}, gbar_e={}, gbar_ms={}, gbar_es={})",
            self.inner.gbar_m, self.inner.gbar_e, self.inner.gbar_ms, self.inner.gbar_es
        )
    }
}

/// Copula family plus dependence parameter.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Copula {
    inner: CoreCopula,
}

#[pymethods]
impl Copula {
    /// Copula("fgm", 1.0), Copula("frank", -35.0), Copula("independence"),
    /// Copula("frechet_lower"), Copula("frechet_upper").
    #[new]
    #[pyo3(signature = (family, param=None))]
    fn new(family: &str, param: Option<f64>) -> PyResult<Self> {
        let inner = match (family, param) {
            ("fgm", Some(t)) => CoreCopula::fgm(t).map_err(py_err)?,
            ("frank", Some(z)) => CoreCopula::frank(z).map_err(py_err)?,
            ("independence", None) => CoreCopula::independence(),
            ("frechet_lower", None) => CoreCopula::frechet_lower(),
            ("frechet_upper", None) => CoreCopula::frechet_upper(),
            _ => {
                return Err(PyValueError::new_err(format!(
                    "bad copula: {family} with param {param:?}"
                )))
            }
        };
        Ok(Self { inner })
    }

    fn cdf(&self, u1: f64, u2: f64) -> PyResult<f64> {
        let p = UnitPair::new(u1, u2).map_err(py_err)?;
        copula::copula_cdf(&self.inner, &p).map_err(py_err)
    }

    fn density(&self, u1: f64, u2: f64) -> PyResult<f64> {
        let p = UnitPair::new(u1, u2).map_err(py_err)?;
        copula::copula_density(&self.inner, &p).map_err(py_err)
    }

    fn conditional_quantile(&self, u1: f64, p: f64) -> PyResult<f64> {
        copula::conditional_quantile(&self.inner, u1, p).map_err(py_err)
    }

    /// Pearson correlation of exponential marginals under this copula.
    #[pyo3(signature = (tol=1e-8))]
    fn pearson_rho(&self, tol: f64) -> PyResult<f64> {
        let method = if self.inner.has_density() {
            RhoMethod::Quadrature { tol }
        } else {
            RhoMethod::MonteCarlo {
                n: 10_000_000,
                seed: 1,
            }
        };
        copula::pearson_rho(&self.inner, 1.0, 1.0, method)
            .map(|e| e.rho)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        if self.inner.param().is_nan() {
            format!("Copula({:?})", self.inner.family().label())
        } else {
            format!(
                "Copula({:?}, {})",
                self.inner.family().label(),
                self.inner.param()
            )
        }
    }
}

fn estimate_to_dict(py: Python<'_>, est: &CoreEstimate) -> PyResult<Py<pyo3::types::PyDict>> {
    let d = pyo3::types::PyDict::new(py);
    d.set_item("value", est.value)?;
    d.set_item("method", est.method.label())?;
    d.set_item("error_bound", est.error_bound)?;
    d.set_item("n_samples", est.n_samples)?;
    d.set_item("seed", est.seed)?;
    d.set_item("validity", est.validity.label())?;
    Ok(d.unbind())
}

/// e^x * E1(x), overflow-free.
#[pyfunction]
fn exp_e1_scaled(x: f64) -> PyResult<f64> {
    specfun::exp_e1_scaled(x).map_err(py_err)
}

/// Exponential integral E1(x).
#[pyfunction]
fn exp_integral_e1(x: f64) -> PyResult<f64> {
    specfun::exp_integral_e1(x).map_err(py_err)
}

/// Instantaneous secrecy capacity in bits for regime 1 or 2.
#[pyfunction]
fn secrecy_capacity(
    regime: u8,
    gamma_m: f64,
    gamma_e: f64,
    gbar_ms: f64,
    gbar_es: f64,
) -> PyResult<f64> {
    let pair = secperf_core::channel::SnrPair::new(gamma_m, gamma_e).map_err(py_err)?;
    secrecy::secrecy_capacity(parse_regime(regime)?, &pair, gbar_ms, gbar_es).map_err(py_err)
}

/// Dirty-paper alpha thresholds (alpha_neg0, alpha_0) for (P, Q, N_e).
#[pyfunction]
fn alpha_thresholds(p: f64, q: f64, n_e: f64) -> PyResult<(f64, f64)> {
    secrecy::alpha_thresholds(p, q, n_e)
        .map(|t| (t.alpha_neg0, t.alpha_0))
        .map_err(py_err)
}

/// FGM closed-form ASC in bits.
#[pyfunction]
fn asc_closed_form(py: Python<'_>, params: &Params, theta: f64, regime: u8) -> PyResult<Py<pyo3::types::PyDict>> {
    let est = metrics::asc_closed_form(&params.inner, theta, parse_regime(regime)?)
        .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// ASC by adaptive double quadrature.
#[pyfunction]
#[pyo3(signature = (params, copula, regime, tol=1e-7))]
fn asc_quadrature(
    py: Python<'_>,
    params: &Params,
    copula: &Copula,
    regime: u8,
    tol: f64,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let est = metrics::asc_quadrature(&params.inner, &copula.inner, parse_regime(regime)?, tol)
        .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// ASC by seeded Monte-Carlo.
#[pyfunction]
#[pyo3(signature = (params, copula, regime, n=1_000_000, seed=1))]
fn asc_monte_carlo(
    py: Python<'_>,
    params: &Params,
    copula: &Copula,
    regime: u8,
    n: u64,
    seed: u64,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let est = metrics::asc_monte_carlo(&params.inner, &copula.inner, parse_regime(regime)?, n, seed)
        .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// FGM closed-form SOP.
#[pyfunction]
fn sop_closed_form(
    py: Python<'_>,
    params: &Params,
    theta: f64,
    r_s: f64,
    regime: u8,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let rate = TargetRate::new(r_s).map_err(py_err)?;
    let est = metrics::sop_closed_form(&params.inner, theta, &rate, parse_regime(regime)?)
        .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// SOP by adaptive double quadrature.
#[pyfunction]
#[pyo3(signature = (params, copula, r_s, regime, tol=1e-7))]
fn sop_quadrature(
    py: Python<'_>,
    params: &Params,
    copula: &Copula,
    r_s: f64,
    regime: u8,
    tol: f64,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let rate = TargetRate::new(r_s).map_err(py_err)?;
    let est = metrics::sop_quadrature(&params.inner, &copula.inner, &rate, parse_regime(regime)?, tol)
        .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// SOP by seeded Monte-Carlo.
#[pyfunction]
#[pyo3(signature = (params, copula, r_s, regime, n=1_000_000, seed=1))]
fn sop_monte_carlo(
    py: Python<'_>,
    params: &Params,
    copula: &Copula,
    r_s: f64,
    regime: u8,
    n: u64,
    seed: u64,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let rate = TargetRate::new(r_s).map_err(py_err)?;
    let est = metrics::sop_monte_carlo(
        &params.inner,
        &copula.inner,
        &rate,
        parse_regime(regime)?,
        n,
        seed,
    )
    .map_err(py_err)?;
    estimate_to_dict(py, &est)
}

/// CSV text of one of the shipped figure presets (fig2..fig6).
#[pyfunction]
#[pyo3(signature = (name, seed=None, mc_n=None))]
fn run_figure(name: &str, seed: Option<u64>, mc_n: Option<u64>) -> PyResult<String> {
    let mut spec = sweep::preset_figure(name).map_err(py_err)?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(n) = mc_n {
        spec.mc_n = n;
    }
    sweep::run_sweep(&spec)
        .map(|t| t.to_csv())
        .map_err(py_err)
}

#[pymodule]
fn secperf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_class::<Copula>()?;
    m.add_function(wrap_pyfunction!(exp_integral_e1, m)?)?;
    m.add_function(wrap_pyfunction!(exp_e1_scaled, m)?)?;
    m.add_function(wrap_pyfunction!(secrecy_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(asc_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(asc_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(asc_monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(sop_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(sop_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(sop_monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(run_figure, m)?)?;
    Ok(())
}
