//! Python bindings for `equimatch`.
//!
//! Exact coefficients come back as `fractions.Fraction`, polynomials as
//! coefficient lists (index = power), Laurent polynomials as
//! `{exponent: Fraction}` dicts.

use std::collections::BTreeMap;

use equimatch::algebra::laurent::LaurentPoly;
use equimatch::algebra::rational::Rational;
use equimatch::algebra::ratpoly::RatPoly;
use equimatch::atiyah::{self, PointConfig};
use equimatch::conventions::{ConfLift, Conventions, LabelConvention, Metric};
use equimatch::ktheory::{self, KMatchingMatrix};
use equimatch::matching::{self, MatchingMatrix, Side};
use equimatch::series;
use equimatch::symgroup;
use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(equimatch_py, EquimatchError, PyValueError, "Raised when a computation or check fails.");

fn err(e: equimatch::Error) -> PyErr {
    EquimatchError::new_err(e.to_string())
}

fn fraction(py: Python<'_>, r: &Rational) -> PyResult<PyObject> {
    let f = py.import("fractions")?.getattr("Fraction")?;
    Ok(f.call1((r.numer().clone(), r.denom().clone()))?.unbind())
}

fn coeff_list(py: Python<'_>, p: &RatPoly) -> PyResult<Vec<PyObject>> {
    p.coeffs().iter().map(|c| fraction(py, c)).collect()
}

fn laurent_dict(py: Python<'_>, p: &LaurentPoly) -> PyResult<BTreeMap<i64, PyObject>> {
    p.terms().map(|(e, c)| Ok((e, fraction(py, c)?))).collect()
}

fn series_list(s: &series::PoincareSeries) -> Vec<BigInt> {
    s.t_coeffs()
}

#[pyclass(name = "Permutation", frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(symgroup::Permutation);

#[pymethods]
impl PyPermutation {
    /// One-line notation on `1..n`.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        symgroup::Permutation::from_one_line(&images).map(PyPermutation).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyPermutation(symgroup::Permutation::identity(n))
    }

    fn one_line(&self) -> Vec<usize> {
        self.0.one_line()
    }

    /// `(self o other)(i) = self(other(i))`
    fn compose(&self, other: &Self) -> PyResult<Self> {
        if self.0.len() != other.0.len() {
            return Err(PyValueError::new_err("permutations of different size"));
        }
        Ok(PyPermutation(self.0.compose(&other.0)))
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    fn sign(&self) -> i64 {
        self.0.sign()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type().parts().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.one_line())
    }
}

#[pyclass(name = "Conventions", frozen)]
#[derive(Clone)]
struct PyConventions(Conventions);

#[pymethods]
impl PyConventions {
    #[new]
    #[pyo3(signature = (metric = "apolar", label = "inverse", lift = "orthogonal"))]
    fn new(metric: &str, label: &str, lift: &str) -> PyResult<Self> {
        Ok(PyConventions(Conventions {
            metric: metric.parse::<Metric>().map_err(err)?,
            label: label.parse::<LabelConvention>().map_err(err)?,
            lift: lift.parse::<ConfLift>().map_err(err)?,
        }))
    }

    #[getter]
    fn metric(&self) -> String {
        self.0.metric.to_string()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label.to_string()
    }

    #[getter]
    fn lift(&self) -> String {
        self.0.lift.to_string()
    }

    /// Every sign, unit and labeling convention in force.
    fn ledger(&self) -> BTreeMap<&'static str, String> {
        self.0.ledger().into_iter().collect()
    }

    fn __repr__(&self) -> String {
        format!("Conventions(metric={:?}, label={:?}, lift={:?})", self.metric(), self.label(), self.lift())
    }
}

fn conventions_or_default(c: Option<&PyConventions>) -> Conventions {
    c.map(|c| c.0).unwrap_or_default()
}

/// Poincaré series by degree in `t`: `{"conf", "flag", "phi", "psi"}`.
#[pyfunction]
fn poincare(n: usize) -> PyResult<BTreeMap<&'static str, Vec<BigInt>>> {
    let (phi, psi) = series::phi_psi(n).map_err(err)?;
    Ok(BTreeMap::from([
        ("conf", series_list(&series::poincare_conf(n).map_err(err)?)),
        ("flag", series_list(&series::poincare_flag(n).map_err(err)?)),
        ("phi", series_list(&phi)),
        ("psi", series_list(&psi)),
    ]))
}

/// Gaussian binomial `[r + s, r]` by degree in `t`.
#[pyfunction]
fn poincare_grassmann(r: usize, s: usize) -> PyResult<Vec<BigInt>> {
    Ok(series_list(&series::poincare_grassmann(r, s).map_err(err)?))
}

#[pyclass(name = "MatchingMatrix", frozen)]
struct PyMatchingMatrix(MatchingMatrix);

#[pymethods]
impl PyMatchingMatrix {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.a.rows(), self.0.a.cols())
    }

    #[getter]
    fn row_degrees(&self) -> Vec<i64> {
        self.0.row_degrees.clone()
    }

    #[getter]
    fn col_degrees(&self) -> Vec<i64> {
        self.0.col_degrees.clone()
    }

    /// Admissible monomials labeling the rows.
    #[getter]
    fn row_basis(&self) -> Vec<String> {
        self.0.conf.basis.iter().map(|b| b.to_string()).collect()
    }

    /// Harmonic polynomials labeling the columns.
    #[getter]
    fn col_basis(&self) -> Vec<String> {
        self.0.flag.basis.elements.iter().map(|h| h.poly.display()).collect()
    }

    #[getter]
    fn matched_flags(&self) -> Vec<PyPermutation> {
        self.0.matched_flags.iter().cloned().map(PyPermutation).collect()
    }

    /// Coefficients of entry `(i, j)` in `t'`.
    fn entry(&self, py: Python<'_>, i: usize, j: usize) -> PyResult<Vec<PyObject>> {
        let (r, c) = self.shape();
        if i >= r || j >= c {
            return Err(PyValueError::new_err(format!("index ({i}, {j}) outside {r}x{c}")));
        }
        coeff_list(py, &self.0.a[(i, j)])
    }

    /// Coefficient matrix `A_k` of `t'^(2k)`.
    fn shift_part(&self, py: Python<'_>, k: usize) -> PyResult<Vec<Vec<PyObject>>> {
        let m = matching::extract_ak(&self.0, k);
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|c| fraction(py, c)).collect())
            .collect()
    }

    /// `(coefficient, degree)` with `det A = coefficient * t'^degree`.
    fn det(&self, py: Python<'_>) -> PyResult<(PyObject, usize)> {
        Ok((fraction(py, &self.0.det_coeff)?, self.0.det_degree))
    }

    /// Graded Smith form: `{"exponents", "series", "psi", "certified"}`.
    fn cokernel(&self, py: Python<'_>) -> PyResult<PyObject> {
        let c = matching::cokernel_report(&self.0).map_err(err)?;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("exponents", c.exponents.clone())?;
        d.set_item("series", series_list(&c.series_in_x()))?;
        d.set_item("psi", series_list(&c.psi))?;
        d.set_item("certified", c.certified)?;
        Ok(d.into_any().unbind())
    }

    /// Runs the equivariance audit; raises on the first violation.
    fn check_equivariance(&self) -> PyResult<usize> {
        matching::equivariance_audit(&self.0).map(|r| r.checked).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("MatchingMatrix(n={}, det={})", self.0.n, self.0.det().display("t'"))
    }
}

#[pyfunction]
#[pyo3(signature = (n, conventions = None))]
fn matching_matrix(py: Python<'_>, n: usize, conventions: Option<&PyConventions>) -> PyResult<PyMatchingMatrix> {
    let conv = conventions_or_default(conventions);
    py.allow_threads(|| matching::compute_matching_matrix(n, conv))
        .map(PyMatchingMatrix)
        .map_err(err)
}

/// Matching matrix for an explicit list of fixed flags, one per component
/// in lexicographic order.
#[pyfunction]
#[pyo3(signature = (n, flags, conventions = None))]
fn matching_matrix_with_bijection(
    n: usize,
    flags: Vec<PyPermutation>,
    conventions: Option<&PyConventions>,
) -> PyResult<PyMatchingMatrix> {
    let flags = flags.into_iter().map(|p| p.0).collect();
    matching::compute_matching_matrix_with_bijection(n, conventions_or_default(conventions), flags)
        .map(PyMatchingMatrix)
        .map_err(err)
}

#[pyclass(name = "KMatchingMatrix", frozen)]
struct PyKMatchingMatrix(KMatchingMatrix);

#[pymethods]
impl PyKMatchingMatrix {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn is_laurent(&self) -> bool {
        self.0.a_laurent.is_some()
    }

    #[getter]
    fn integral(&self) -> bool {
        self.0.integral
    }

    #[getter]
    fn q_inversion_symmetric(&self) -> bool {
        self.0.q_inversion_symmetric
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Entry `(i, j)` as `{exponent: Fraction}`; raises if not Laurent.
    fn entry(&self, py: Python<'_>, i: usize, j: usize) -> PyResult<BTreeMap<i64, PyObject>> {
        let l = self
            .0
            .a_laurent
            .as_ref()
            .ok_or_else(|| EquimatchError::new_err("entries are not Laurent polynomials"))?;
        if i >= l.rows() || j >= l.cols() {
            return Err(PyValueError::new_err(format!("index ({i}, {j}) out of range")));
        }
        laurent_dict(py, &l[(i, j)])
    }

    /// `{"unit", "shift", "factors": {d: multiplicity}, "fully_cyclotomic"}`
    /// for `det A_K`.
    fn det_ratio(&self, py: Python<'_>) -> PyResult<PyObject> {
        let r = &self.0.ratio;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("unit", fraction(py, &r.unit)?)?;
        d.set_item("shift", r.shift)?;
        let factors: BTreeMap<usize, i64> = r.factors.iter().filter(|(_, &m)| m != 0).map(|(&k, &m)| (k, m)).collect();
        d.set_item("factors", factors)?;
        d.set_item("fully_cyclotomic", r.is_fully_cyclotomic())?;
        d.set_item("display", r.display())?;
        Ok(d.into_any().unbind())
    }

    fn observed_indices(&self) -> Vec<usize> {
        self.0.observed_indices()
    }

    fn within_rotation_bound(&self) -> bool {
        self.0.within_rotation_bound()
    }

    fn within_spin_bound(&self) -> bool {
        self.0.within_spin_bound()
    }

    fn __repr__(&self) -> String {
        format!("KMatchingMatrix(n={}, det={})", self.0.n, self.0.ratio.display())
    }
}

#[pyfunction]
#[pyo3(signature = (n, label = "inverse"))]
fn k_matching_matrix(py: Python<'_>, n: usize, label: &str) -> PyResult<PyKMatchingMatrix> {
    let label = label.parse::<LabelConvention>().map_err(err)?;
    py.allow_threads(|| ktheory::compute_k_matching(n, label))
        .map(PyKMatchingMatrix)
        .map_err(err)
}

/// Graded characters as `{degree: {partition: multiplicity}}`.
#[pyfunction]
#[pyo3(signature = (n, side, conventions = None))]
fn graded_characters(n: usize, side: &str, conventions: Option<&PyConventions>) -> PyResult<BTreeMap<i64, BTreeMap<String, u64>>> {
    let side = match side {
        "conf" => Side::Conf,
        "flag" => Side::Flag,
        other => return Err(PyValueError::new_err(format!("side must be 'conf' or 'flag', got {other:?}"))),
    };
    let t = matching::graded_character_table(n, side, conventions_or_default(conventions)).map_err(err)?;
    Ok(t.into_iter()
        .map(|(d, row)| (d, row.into_iter().map(|(p, m)| (p.to_string(), m)).collect()))
        .collect())
}

/// `(count, n!/(r!s!))` for the fixed components of the two-cluster space.
#[pyfunction]
fn component_count(r: usize, s: usize) -> PyResult<(usize, BigInt)> {
    matching::grassmann_component_count(r, s).map_err(err)
}

/// Determinant of the `r = 1` matching matrix (a nonzero constant).
#[pyfunction]
#[pyo3(signature = (n, metric = "apolar"))]
fn grassmann_line_det(py: Python<'_>, n: usize, metric: &str) -> PyResult<PyObject> {
    let t = matching::theorem2_r1_matrix(n, metric.parse::<Metric>().map_err(err)?).map_err(err)?;
    fraction(py, &t.det.coeff(0))
}

fn point_config(points: Vec<[f64; 3]>) -> PyResult<PointConfig> {
    PointConfig::new(points).map_err(err)
}

/// Orthonormal lines (rows, unitary monomial basis) and diagnostics.
#[pyfunction]
fn atiyah_flag(py: Python<'_>, points: Vec<[f64; 3]>) -> PyResult<(Vec<Vec<Complex64>>, PyObject)> {
    let f = atiyah::atiyah_flag(&point_config(points)?).map_err(err)?;
    let n = f.lines.nrows();
    let lines = (0..n).map(|i| (0..n).map(|k| f.lines[(i, k)]).collect()).collect();
    let d = pyo3::types::PyDict::new(py);
    d.set_item("condition_number", f.diagnostics.condition_number)?;
    d.set_item("min_singular_value", f.diagnostics.min_singular_value)?;
    d.set_item("polar_residual", f.diagnostics.polar_residual)?;
    Ok((lines, d.into_any().unbind()))
}

/// Worst residuals over a seeded Monte-Carlo run.
#[pyfunction]
#[pyo3(signature = (n, samples = 100, seed = 0))]
fn map_suite(py: Python<'_>, n: usize, samples: usize, seed: u64) -> PyResult<BTreeMap<&'static str, f64>> {
    let r = py.allow_threads(|| atiyah::map_suite(n, samples, seed)).map_err(err)?;
    Ok(BTreeMap::from([
        ("permutation", r.permutation),
        ("rotation", r.rotation),
        ("similarity", r.similarity),
        ("polar", r.polar),
        ("max_condition", r.max_condition),
        ("diagram", r.diagram),
        ("diagram_min_cosine", r.diagram_min_cosine),
        ("diagram_on_axis", r.diagram_on_axis),
    ]))
}

/// `[(component, fixed_flag, min_overlap)]` read off on-axis configurations.
#[pyfunction]
fn calibrate(n: usize) -> PyResult<Vec<(PyPermutation, PyPermutation, f64)>> {
    Ok(atiyah::calibrate_fixed_labels(n)
        .map_err(err)?
        .into_iter()
        .map(|e| (PyPermutation(e.component), PyPermutation(e.fixed_flag), e.min_overlap))
        .collect())
}

#[pymodule]
fn equimatch_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EquimatchError", m.py().get_type::<EquimatchError>())?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyConventions>()?;
    m.add_class::<PyMatchingMatrix>()?;
    m.add_class::<PyKMatchingMatrix>()?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_grassmann, m)?)?;
    m.add_function(wrap_pyfunction!(matching_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(matching_matrix_with_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(k_matching_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(graded_characters, m)?)?;
    m.add_function(wrap_pyfunction!(component_count, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_line_det, m)?)?;
    m.add_function(wrap_pyfunction!(atiyah_flag, m)?)?;
    m.add_function(wrap_pyfunction!(map_suite, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    Ok(())
}
