//! Python module `nijenhuis`: operators, algebras, normal forms and the
//! linearization tools, with polynomials passed as canonical strings.

use nijenhuis::linearize::{
    brjuno, formal_linearize, gen_counterexample, verdict, BrjunoOutcome, CFrac, Category, LinearizationReport,
};
use nijenhuis::nij::{cofactor_residual, from_determinant, is_nijenhuis, isotropy_algebra, torsion, DeterminantSolution};
use nijenhuis::quad::parse_rat;
use nijenhuis::{classify, Error, Lsa, NormalForm, OperatorField, Poly, Quad, Vars};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::InvalidNormalForm(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn vars_of(names: Option<Vec<String>>, n: usize) -> Vars {
    match names {
        Some(v) => Vars::new(v),
        None if n == 2 => Vars::xy(),
        None => Vars::indexed(n),
    }
}

#[pyclass(name = "Operator", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOperator {
    inner: OperatorField,
}

#[pymethods]
impl PyOperator {
    /// Rows of polynomial strings; row `k` holds `R^k_1, …, R^k_n`.
    #[new]
    #[pyo3(signature = (rows, vars = None))]
    fn new(rows: Vec<Vec<String>>, vars: Option<Vec<String>>) -> PyResult<Self> {
        let vars = vars_of(vars, rows.len());
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(s, &vars)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PyOperator {
            inner: OperatorField::new(&vars, entries).map_err(err)?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyOperator {
            inner: OperatorField::parse(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn counterexample(form: &str) -> PyResult<Self> {
        let nf: NormalForm = form.parse().map_err(err)?;
        Ok(PyOperator {
            inner: gen_counterexample(&nf).map_err(err)?,
        })
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner.to_rows_string()
    }

    fn is_nijenhuis(&self) -> bool {
        is_nijenhuis(&self.inner)
    }

    /// Nonzero components as `(k, i, j, poly)` with 1-based indices.
    fn torsion(&self) -> Vec<(usize, usize, usize, String)> {
        torsion(&self.inner)
            .components()
            .filter(|(_, _, _, p)| !p.is_zero())
            .map(|(k, i, j, p)| (k + 1, i + 1, j + 1, p.to_string()))
            .collect()
    }

    fn cofactor_residual(&self) -> PyResult<(String, String)> {
        let (a, b) = cofactor_residual(&self.inner).map_err(err)?;
        Ok((a.to_string(), b.to_string()))
    }

    fn trace(&self) -> String {
        self.inner.trace().to_string()
    }

    fn det(&self) -> String {
        self.inner.det().to_string()
    }

    /// Isotropy algebra at a point given as coordinate strings.
    fn isotropy(&self, point: Vec<String>) -> PyResult<PyLsa> {
        let p = point
            .iter()
            .map(|s| s.parse::<Quad>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PyLsa {
            inner: isotropy_algebra(&self.inner, &p).map_err(err)?,
        })
    }

    /// Linearization report as a dict: `status`, `maxdeg`, and `map` or `obstruction`.
    #[pyo3(signature = (maxdeg = 6))]
    fn linearize<'py>(&self, py: Python<'py>, maxdeg: u32) -> PyResult<Bound<'py, PyDict>> {
        let report = LinearizationReport::new(maxdeg, &formal_linearize(&self.inner, maxdeg));
        let d = PyDict::new(py);
        d.set_item("status", format!("{:?}", report.status).to_lowercase())?;
        d.set_item("maxdeg", report.maxdeg)?;
        if let Some(map) = report.map {
            d.set_item("map", map)?;
        }
        if let Some(o) = report.obstruction {
            let od = PyDict::new(py);
            od.set_item("degree", o.degree)?;
            od.set_item("component", o.component)?;
            od.set_item("column", o.column)?;
            od.set_item("monomial", o.monomial_text)?;
            od.set_item("coefficient", o.coefficient)?;
            d.set_item("obstruction", od)?;
        }
        if let Some(e) = report.error {
            d.set_item("error", e)?;
        }
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Operator({:?})", self.inner.to_rows_string())
    }

    fn __eq__(&self, other: &PyOperator) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "Lsa", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLsa {
    inner: Lsa,
}

#[pymethods]
impl PyLsa {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyLsa {
            inner: Lsa::parse(text).map_err(err)?,
        })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_left_symmetric(&self) -> bool {
        self.inner.is_left_symmetric()
    }

    /// `(L, R)` as rows of polynomial strings.
    fn mult_matrices(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let (l, r) = self.inner.mult_matrices();
        (l.to_rows_string(), r.to_rows_string())
    }

    fn linear_operator(&self) -> PyOperator {
        PyOperator {
            inner: self.inner.linear_operator_field(),
        }
    }

    /// `(normal form, witness rows)`.
    fn classify(&self) -> PyResult<(PyNormalForm, Vec<Vec<String>>)> {
        let res = classify(&self.inner).map_err(err)?;
        let w = res
            .witness
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        Ok((PyNormalForm { inner: res.form }, w))
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __eq__(&self, other: &PyLsa) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "NormalForm", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNormalForm {
    inner: NormalForm,
}

#[pymethods]
impl PyNormalForm {
    /// `NormalForm("b1,1/2")` or `NormalForm("b1", "1/2")`.
    #[new]
    #[pyo3(signature = (label, alpha = None))]
    fn new(label: &str, alpha: Option<&str>) -> PyResult<Self> {
        let inner = match alpha {
            Some(a) => {
                NormalForm::new(label.parse().map_err(err)?, Some(parse_rat(a).map_err(err)?)).map_err(err)?
            }
            None => label.parse().map_err(err)?,
        };
        Ok(PyNormalForm { inner })
    }

    #[getter]
    fn label(&self) -> &'static str {
        self.inner.label.as_str()
    }

    #[getter]
    fn alpha(&self) -> Option<String> {
        self.inner.alpha.as_ref().map(nijenhuis::quad::fmt_rat)
    }

    fn algebra(&self) -> PyLsa {
        PyLsa {
            inner: self.inner.algebra(),
        }
    }

    /// `(value, justification)` for `"smooth"` or `"analytic"`.
    #[pyo3(signature = (category = "smooth"))]
    fn verdict(&self, category: &str) -> PyResult<(String, String)> {
        let c: Category = category.parse().map_err(err)?;
        let v = verdict(&self.inner, c);
        Ok((v.value.to_string(), v.justification))
    }

    fn counterexample(&self) -> PyResult<PyOperator> {
        Ok(PyOperator {
            inner: gen_counterexample(&self.inner).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NormalForm('{}')", self.inner)
    }

    fn __eq__(&self, other: &PyNormalForm) -> bool {
        self.inner == other.inner
    }
}

/// `(outcome, partial_sum, depth)`; the sum is `None` for rational input.
#[pyfunction(name = "brjuno")]
#[pyo3(signature = (cf, depth = 50))]
fn py_brjuno(cf: &str, depth: usize) -> PyResult<(String, Option<f64>, Option<usize>)> {
    let cf: CFrac = cf.parse().map_err(err)?;
    Ok(match brjuno(&cf, depth).map_err(err)? {
        BrjunoOutcome::BrjunoYes { partial_sum, depth } => ("BrjunoYes".into(), Some(partial_sum), Some(depth)),
        BrjunoOutcome::Undetermined { partial_sum, depth } => {
            ("Undetermined".into(), Some(partial_sum), Some(depth))
        }
        BrjunoOutcome::NotIrrational => ("NotIrrational".into(), None, None),
    })
}

/// Operator with `tr R = αy` and `det R = D`; `None` when not polynomial.
/// Raises when the solution is not unique.
#[pyfunction(name = "from_determinant")]
fn py_from_determinant(alpha: &str, det: &str) -> PyResult<Option<PyOperator>> {
    let d = Poly::parse(det, &Vars::xy()).map_err(err)?;
    match from_determinant(&parse_rat(alpha).map_err(err)?, &d).map_err(err)? {
        DeterminantSolution::Unique(inner) => Ok(Some(PyOperator { inner })),
        DeterminantSolution::NotUnique { .. } => Err(PyValueError::new_err("R^1_2 is not determined")),
        DeterminantSolution::NotPolynomial => Ok(None),
    }
}

#[pymodule]
#[pyo3(name = "nijenhuis")]
fn nijenhuis_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperator>()?;
    m.add_class::<PyLsa>()?;
    m.add_class::<PyNormalForm>()?;
    m.add_function(wrap_pyfunction!(py_brjuno, m)?)?;
    m.add_function(wrap_pyfunction!(py_from_determinant, m)?)?;
    Ok(())
}
