//! Python bindings: `import comvar`.

use com_varchenko::constructions::{self, RandomBudget};
use com_varchenko::varchenko::{self as var, ElementOrder};
use com_varchenko::{FinitePoset, SignSystem as CoreSystem, SignVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: com_varchenko::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn order_of(sys: &CoreSystem, order: Option<&str>) -> PyResult<ElementOrder> {
    match order {
        Some(text) => ElementOrder::parse(sys.ground(), text).map_err(err),
        None => Ok(ElementOrder::natural(sys.num_elements())),
    }
}

/// A set of sign vectors on a named ground set.
#[pyclass(name = "SignSystem", module = "comvar", frozen)]
struct SignSystem {
    inner: CoreSystem,
}

#[pymethods]
impl SignSystem {
    /// `SignSystem(["a", "b"], ["00", "+-", ...])`
    #[new]
    fn new(ground: Vec<String>, covectors: Vec<String>) -> PyResult<Self> {
        let g = com_varchenko::GroundSet::new(ground).map_err(err)?;
        Ok(SignSystem { inner: CoreSystem::parse(g, covectors).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(SignSystem { inner: CoreSystem::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn ground(&self) -> Vec<String> {
        self.inner.ground().names().to_vec()
    }

    fn covectors(&self) -> Vec<String> {
        self.inner.covectors().iter().map(SignVector::to_string).collect()
    }

    fn topes(&self) -> Vec<String> {
        self.inner.topes().iter().map(SignVector::to_string).collect()
    }

    fn is_com(&self) -> bool {
        self.inner.check_axioms().is_com()
    }

    fn is_om(&self) -> bool {
        self.inner.check_axioms().is_om()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    /// Axiom report as JSON.
    fn check(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.check_axioms().to_json(self.inner.ground()))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Rows of the Varchenko matrix as polynomial strings, in tope order.
    #[pyo3(signature = (signed = true))]
    fn matrix(&self, signed: bool) -> PyResult<Vec<Vec<String>>> {
        let v = if signed { var::build_signed(&self.inner) } else { var::build_unsigned(&self.inner) }.map_err(err)?;
        Ok(v.matrix.rows().map(|row| row.iter().map(|p| p.to_string_with(&v.ground)).collect()).collect())
    }

    /// Expanded determinant of the Varchenko matrix.
    #[pyo3(signature = (signed = true))]
    fn det(&self, signed: bool) -> PyResult<String> {
        let v = if signed { var::build_signed(&self.inner) } else { var::build_unsigned(&self.inner) }.map_err(err)?;
        Ok(v.det().map_err(err)?.to_string_with(&v.ground))
    }

    /// Factored closed form of the determinant.
    #[pyo3(signature = (signed = true, order = None))]
    fn closed_form(&self, signed: bool, order: Option<&str>) -> PyResult<String> {
        let o = order_of(&self.inner, order)?;
        let f = var::closed_form_det_with_order(&self.inner, signed, &o).map_err(err)?;
        Ok(f.to_string_with(self.inner.ground()))
    }

    /// `(covector, b)` for every covector with a positive exponent.
    #[pyo3(signature = (order = None))]
    fn exponents(&self, order: Option<&str>) -> PyResult<Vec<(String, u32)>> {
        let o = order_of(&self.inner, order)?;
        let e = var::exponents(&self.inner, &o).map_err(err)?;
        Ok(e.into_iter().map(|(y, b)| (y.to_string(), b)).collect())
    }

    /// Factor chain, block and closed-form report as JSON.
    #[pyo3(signature = (signed = true, order = None))]
    fn verify(&self, signed: bool, order: Option<&str>) -> PyResult<String> {
        let opts = var::VerifyOptions { signed, order: Some(order_of(&self.inner, order)?), ..Default::default() };
        let r = var::verify(&self.inner, &opts).map_err(err)?;
        serde_json::to_string(&r.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.covectors().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "SignSystem(ground={:?}, covectors={}, topes={})",
            self.inner.ground().names(),
            self.inner.covectors().len(),
            self.inner.topes().len()
        )
    }
}

fn poset(text: &str) -> PyResult<FinitePoset> {
    FinitePoset::from_json(text).map_err(err)
}

#[pyfunction]
fn cycle_om(n: usize) -> PyResult<SignSystem> {
    Ok(SignSystem { inner: constructions::cycle_om(n).map_err(err)? })
}

#[pyfunction]
fn full_cube(n: usize) -> PyResult<SignSystem> {
    if n > 10 {
        return Err(PyValueError::new_err("full_cube is limited to 10 elements"));
    }
    Ok(SignSystem { inner: constructions::full_cube(n) })
}

/// Ideals COM of a poset given as JSON `{"elements": [...], "relations": [[a, b], ...]}`.
#[pyfunction]
fn ideals_com(poset_json: &str) -> PyResult<SignSystem> {
    Ok(SignSystem { inner: constructions::ideals_com(&poset(poset_json)?).map_err(err)? })
}

#[pyfunction]
fn ranking_com(poset_json: &str) -> PyResult<SignSystem> {
    Ok(SignSystem { inner: constructions::ranking_com(&poset(poset_json)?, None).map_err(err)? })
}

#[pyfunction]
fn random_com(seed: u64) -> PyResult<SignSystem> {
    Ok(SignSystem { inner: constructions::random_com(seed, RandomBudget::default()).map_err(err)? })
}

/// Determinant of the unsigned Varchenko matrix of the K4 subdivision topes.
#[pyfunction]
fn k4_subdivision_det() -> PyResult<String> {
    let (g, t) = constructions::k4_subdivision_topes();
    let v = var::build_unsigned_from_topes(g, t).map_err(err)?;
    Ok(v.det().map_err(err)?.to_string_with(&v.ground))
}

#[pymodule]
fn comvar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SignSystem>()?;
    m.add_function(wrap_pyfunction!(cycle_om, m)?)?;
    m.add_function(wrap_pyfunction!(full_cube, m)?)?;
    m.add_function(wrap_pyfunction!(ideals_com, m)?)?;
    m.add_function(wrap_pyfunction!(ranking_com, m)?)?;
    m.add_function(wrap_pyfunction!(random_com, m)?)?;
    m.add_function(wrap_pyfunction!(k4_subdivision_det, m)?)?;
    Ok(())
}
