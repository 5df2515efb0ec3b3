//! Python bindings. Structured results are returned as plain dicts and
//! lists; scenarios are built from keyword arguments or JSON text using
//! the same keys as scenario files.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use framerisk::study::scenario_file::scenario_from_value;
use framerisk::{DesignFactors, Error};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serializes through JSON into native Python objects.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    let text: String = py.import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A validated scenario.
#[pyclass(name = "Scenario", frozen, from_py_object)]
#[derive(Clone)]
struct PyScenario {
    inner: framerisk::Scenario,
}

#[pymethods]
impl PyScenario {
    /// Keyword arguments mirror the top-level scenario keys, e.g.
    /// `Scenario(geometry={"n_s": 16, "n_c": 5}, p_LD=0.01)`.
    #[new]
    #[pyo3(signature = (**kwargs))]
    fn new(py: Python<'_>, kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let doc = match kwargs {
            Some(k) => from_py(py, k.as_any())?,
            None => serde_json::Value::Object(Default::default()),
        };
        let inner = scenario_from_value(&doc, "kwargs").map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = framerisk::study::parse_scenario_str(text, "json").map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Reference parameters on a catalog frame such as "16x4".
    #[staticmethod]
    #[pyo3(signature = (frame, damage = None))]
    fn catalog(frame: &str, damage: Option<&str>) -> PyResult<Self> {
        let g = framerisk::study::catalog::parse_frame(frame).map_err(to_py_err)?;
        let mut inner = framerisk::Scenario::for_geometry(g);
        if let Some(d) = damage {
            inner.damage = framerisk::study::catalog::parse_damage(d).map_err(to_py_err)?;
        }
        let inner = inner.validate().map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Copy with top-level keys replaced.
    #[pyo3(signature = (**kwargs))]
    fn replace(&self, py: Python<'_>, kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let mut doc = serde_json::to_value(self.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
        if let (Some(k), Some(obj)) = (kwargs, doc.as_object_mut()) {
            if let serde_json::Value::Object(over) = from_py(py, k.as_any())? {
                for (key, v) in over {
                    match (obj.get_mut(&key), v) {
                        (Some(serde_json::Value::Object(slot)), serde_json::Value::Object(sub)) => {
                            slot.extend(sub);
                        }
                        (_, v) => {
                            obj.insert(key, v);
                        }
                    }
                }
            }
        }
        let inner = scenario_from_value(&doc, "kwargs").map_err(to_py_err)?;
        Ok(Self { inner })
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn p_ld(&self) -> f64 {
        self.inner.p_ld
    }

    #[getter]
    fn psi(&self) -> f64 {
        self.inner.psi
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario(frame={}, damage={}, p_LD={})",
            self.inner.geometry, self.inner.damage, self.inner.p_ld
        )
    }
}

/// Member capacities of the normal-loading and strengthened designs.
#[pyclass(name = "MemberDesign", frozen, from_py_object)]
#[derive(Clone)]
struct PyMemberDesign {
    inner: framerisk::MemberDesign,
}

#[pymethods]
impl PyMemberDesign {
    #[getter]
    fn beam_moment_nlc(&self) -> f64 {
        self.inner.beam_moment_nlc
    }
    #[getter]
    fn column_crush_nlc(&self) -> f64 {
        self.inner.column_crush_nlc
    }
    #[getter]
    fn beam_moment(&self) -> f64 {
        self.inner.beam_moment
    }
    #[getter]
    fn column_crush(&self) -> f64 {
        self.inner.column_crush
    }
    #[getter]
    fn beam_sf(&self) -> f64 {
        self.inner.beam_sf
    }
    #[getter]
    fn column_sf(&self) -> f64 {
        self.inner.column_sf
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "MemberDesign(B_y={:.4}, R_c={:.4}, B_sf={:.4}, R_sf={:.4})",
            self.inner.beam_moment, self.inner.column_crush, self.inner.beam_sf, self.inner.column_sf
        )
    }
}

fn factors(lambda_b: f64, lambda_c: f64) -> PyResult<DesignFactors> {
    DesignFactors::new(lambda_b, lambda_c).validate().map_err(to_py_err)
}

fn strengthened(s: &PyScenario) -> PyResult<framerisk::MemberDesign> {
    framerisk::MemberDesign::strengthened(&s.inner).map_err(to_py_err)
}

/// Strengthened design, or the normal-loading design when `normal`.
#[pyfunction]
#[pyo3(signature = (scenario, normal = false))]
fn design(scenario: &PyScenario, normal: bool) -> PyResult<PyMemberDesign> {
    let inner = if normal {
        framerisk::MemberDesign::normal(&scenario.inner)
    } else {
        framerisk::MemberDesign::strengthened(&scenario.inner)
    }
    .map_err(to_py_err)?;
    Ok(PyMemberDesign { inner })
}

/// Intact (50-year) and damaged (apt) reliability indexes.
#[pyfunction]
#[pyo3(signature = (scenario, lambda_b = 1.0, lambda_c = 1.0))]
fn betas<'py>(py: Python<'py>, scenario: &PyScenario, lambda_b: f64, lambda_c: f64) -> PyResult<Bound<'py, PyAny>> {
    use framerisk::reliability::{damaged_betas, intact_betas, LoadHorizon};
    let d = strengthened(scenario)?;
    let f = factors(lambda_b, lambda_c)?;
    let intact = intact_betas(&scenario.inner, &d, f, LoadHorizon::FiftyYear).map_err(to_py_err)?;
    let damaged = damaged_betas(&scenario.inner, &d, f, LoadHorizon::Apt).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("intact_50", to_py(py, &intact)?)?;
    out.set_item("damaged_apt", to_py(py, &damaged)?)?;
    Ok(out.into_any())
}

#[pyfunction]
#[pyo3(signature = (scenario, lambda_b = 1.0, lambda_c = 1.0))]
fn total_expected_cost<'py>(py: Python<'py>, scenario: &PyScenario, lambda_b: f64, lambda_c: f64) -> PyResult<Bound<'py, PyAny>> {
    let d = strengthened(scenario)?;
    let c = framerisk::total_expected_cost(&scenario.inner, &d, factors(lambda_b, lambda_c)?).map_err(to_py_err)?;
    to_py(py, &c)
}

#[pyfunction]
#[pyo3(signature = (scenario, lambda_b = 1.0, lambda_c = 1.0))]
fn progression_trace<'py>(py: Python<'py>, scenario: &PyScenario, lambda_b: f64, lambda_c: f64) -> PyResult<Bound<'py, PyAny>> {
    let d = strengthened(scenario)?;
    let rows = framerisk::progression_trace(&scenario.inner, &d, factors(lambda_b, lambda_c)?).map_err(to_py_err)?;
    to_py(py, &rows)
}

#[pyfunction]
fn minimize_total_cost<'py>(py: Python<'py>, scenario: &PyScenario) -> PyResult<Bound<'py, PyAny>> {
    let d = strengthened(scenario)?;
    let r = framerisk::minimize_total_cost(&scenario.inner, &d).map_err(to_py_err)?;
    to_py(py, &r)
}

#[pyfunction]
fn threshold_probability<'py>(py: Python<'py>, scenario: &PyScenario) -> PyResult<Bound<'py, PyAny>> {
    let d = strengthened(scenario)?;
    let r = framerisk::threshold_probability(&scenario.inner, &d).map_err(to_py_err)?;
    to_py(py, &r)
}

#[pyfunction]
fn annual_from_lifetime(p_ld: f64) -> PyResult<f64> {
    framerisk::annual_from_lifetime(p_ld).map_err(to_py_err)
}

#[pyfunction]
fn std_normal_cdf(x: f64) -> f64 {
    framerisk::std_normal_cdf(x)
}

#[pymodule]
fn framerisk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScenario>()?;
    m.add_class::<PyMemberDesign>()?;
    m.add_function(wrap_pyfunction!(design, m)?)?;
    m.add_function(wrap_pyfunction!(betas, m)?)?;
    m.add_function(wrap_pyfunction!(total_expected_cost, m)?)?;
    m.add_function(wrap_pyfunction!(progression_trace, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_total_cost, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_probability, m)?)?;
    m.add_function(wrap_pyfunction!(annual_from_lifetime, m)?)?;
    m.add_function(wrap_pyfunction!(std_normal_cdf, m)?)?;
    Ok(())
}
