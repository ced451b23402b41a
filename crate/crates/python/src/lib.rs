use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wachspress::exactalg::{format_rational, parse_rational, MultiPoly, QVector, Rational};
use wachspress::{adjoint, fixtures, invariants3d, moments, polytope, residual, segre, wachspress as wp, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Violation(_) | Error::KernelDimension { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Accepts ints and "p/q" strings.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(i.into()));
    }
    let s: String = obj.extract()?;
    parse_rational(&s).map_err(err)
}

fn vector(items: &[Bound<'_, PyAny>]) -> PyResult<QVector> {
    items.iter().map(rational).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn homogeneous(p: &polytope::Polytope, f: &MultiPoly) -> String {
    f.display_with(&MultiPoly::variable_names("x", p.dim() + 1, 0))
}

/// A convex polytope with exact rational coordinates.
#[pyclass(frozen, module = "wachspress_py")]
struct Polytope(polytope::Polytope);

#[pymethods]
impl Polytope {
    #[new]
    fn new(vertices: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let vs = vertices.iter().map(|v| vector(v)).collect::<PyResult<Vec<_>>>()?;
        polytope::Polytope::from_vertices(vs).map(Polytope).map_err(err)
    }

    /// Facet forms `[c0, c1, ..., cn]` meaning `c0 + c·t >= 0`.
    #[staticmethod]
    fn from_inequalities(forms: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let fs = forms.iter().map(|v| vector(v)).collect::<PyResult<Vec<_>>>()?;
        polytope::Polytope::from_inequalities(&fs).map(Polytope).map_err(err)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::build(name).map(Polytope).map_err(err)
    }

    #[staticmethod]
    fn fixture_names() -> Vec<&'static str> {
        fixtures::ALL_FIXTURES.to_vec()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        polytope::Polytope::from_json_str(text).map(Polytope).map_err(err)
    }

    #[pyo3(signature = (name=None))]
    fn to_json(&self, name: Option<&str>) -> String {
        self.0.to_json_string(name)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn vertices(&self) -> Vec<Vec<String>> {
        self.0.vertices().iter().map(|v| strings(v)).collect()
    }

    fn facets(&self) -> Vec<Vec<String>> {
        self.0.facets().iter().map(|v| strings(v)).collect()
    }

    fn facet_sizes(&self) -> Vec<usize> {
        self.0.facet_sizes()
    }

    fn volume(&self) -> String {
        format_rational(&self.0.volume())
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple_polytope()
    }

    fn is_simple_arrangement(&self) -> bool {
        self.0.is_simple_arrangement()
    }

    fn __len__(&self) -> usize {
        self.0.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={}, facets={})",
            self.0.dim(),
            self.0.vertex_count(),
            self.0.facet_count()
        )
    }
}

/// Adjoint through the residual arrangement, in `x0..xn`.
#[pyfunction]
fn adjoint_kernel(p: &Polytope) -> PyResult<String> {
    adjoint::adjoint_kernel(&p.0).map(|a| homogeneous(&p.0, &a)).map_err(err)
}

/// Adjoint from a triangulation of the dual, in `x0..xn`.
#[pyfunction]
fn adjoint_via_dual(p: &Polytope) -> PyResult<String> {
    adjoint::adjoint_via_dual(&p.0).map(|a| homogeneous(&p.0, &a)).map_err(err)
}

/// Warren's adjoint of `p` itself, in the dual variables `t1..tn`.
#[pyfunction]
fn adjoint_warren(p: &Polytope) -> String {
    adjoint::adjoint_warren(&p.0).to_string()
}

#[pyfunction]
fn adjoints_agree(p: &Polytope) -> PyResult<bool> {
    let a = adjoint::adjoint_kernel(&p.0).map_err(err)?;
    let b = adjoint::adjoint_via_dual(&p.0).map_err(err)?;
    Ok(a.is_proportional(&b))
}

/// Residual arrangement as a JSON string.
#[pyfunction]
fn residual_arrangement(p: &Polytope) -> String {
    residual::residual_arrangement(&p.0).to_json().to_string()
}

#[pyfunction]
fn wachspress_coords(p: &Polytope, point: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    let t = vector(&point)?;
    let w = wp::Wachspress::new(&p.0).map_err(err)?;
    w.coords_general(&t).map(|b| strings(&b)).map_err(err)
}

/// `(adjoint, denominator, numerator)` for the Newton region of the points.
#[pyfunction]
fn segre_expression(points: Vec<Vec<i64>>) -> PyResult<(String, String, String)> {
    let e = segre::segre_expr(&points).map_err(err)?;
    Ok((e.adjoint_text(), e.denominator_text(), e.symbolic_numerator()))
}

#[pyfunction]
fn moment(p: &Polytope, index: Vec<u32>) -> PyResult<String> {
    moments::moment(&p.0, &index).map(|m| format_rational(&m)).map_err(err)
}

#[pyfunction]
fn verify_moment_identity(p: &Polytope, max_degree: u32) -> PyResult<bool> {
    moments::verify_generating_identity(&p.0, max_degree)
        .map(|c| c.passed)
        .map_err(err)
}

/// Invariants of a simple 3-polytope as a JSON string.
#[pyfunction]
#[pyo3(signature = (p, gamma=false))]
fn invariants3d_report(py: Python<'_>, p: &Polytope, gamma: bool) -> PyResult<String> {
    let (st, rep) = py
        .detach(|| invariants3d::invariant_report(&p.0, gamma))
        .map_err(err)?;
    Ok(serde_json::json!({ "stats": st, "invariants": rep }).to_string())
}

#[pyfunction]
fn gamma_dimension(py: Python<'_>, p: &Polytope) -> PyResult<i64> {
    py.detach(|| invariants3d::gamma_dimension(&p.0)).map_err(err)
}

/// `(passes, forced facet indices)` for a multiset of facet sizes.
#[pyfunction]
fn irred_filter(facet_sizes: Vec<usize>) -> PyResult<(bool, Vec<usize>)> {
    let ct = invariants3d::CombinatorialType3::new(facet_sizes).map_err(err)?;
    let v = invariants3d::irred_filter(&ct);
    Ok((v.passes, v.forced_facets))
}

#[pymodule]
fn wachspress_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_function(wrap_pyfunction!(adjoint_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(adjoint_via_dual, m)?)?;
    m.add_function(wrap_pyfunction!(adjoint_warren, m)?)?;
    m.add_function(wrap_pyfunction!(adjoints_agree, m)?)?;
    m.add_function(wrap_pyfunction!(residual_arrangement, m)?)?;
    m.add_function(wrap_pyfunction!(wachspress_coords, m)?)?;
    m.add_function(wrap_pyfunction!(segre_expression, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(verify_moment_identity, m)?)?;
    m.add_function(wrap_pyfunction!(invariants3d_report, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(irred_filter, m)?)?;
    Ok(())
}
