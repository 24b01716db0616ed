//! Python module `pypolarcone`: cones, convex sets, projections, the pair
//! checks, face separation and the fixture catalog.
//!
//! Vectors cross the boundary as lists of floats.

use polarcone::theorems::{
    check_pair as check_pair_core, fixture, separate_face as separate_face_core, PairVerdict,
    Sampler, SearchBudget, Theorem, FIXTURE_NAMES,
};
use polarcone::{moreau_decompose, project as project_core, GeomError, Subspace, Vector};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: GeomError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vector(c: Vec<f64>) -> PyResult<Vector> {
    Vector::new(c).map_err(err)
}

fn vectors(list: Vec<Vec<f64>>) -> PyResult<Vec<Vector>> {
    list.into_iter().map(vector).collect()
}

fn lists(vs: &[Vector]) -> Vec<Vec<f64>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

/// Polyhedral cone kept in both generator and constraint form.
#[pyclass(frozen, module = "pypolarcone")]
pub struct Cone {
    inner: polarcone::PolyhedralCone,
}

#[pymethods]
impl Cone {
    /// `{Σ aᵢ rᵢ + l : aᵢ ≥ 0, l ∈ span(lineality)}`
    #[staticmethod]
    #[pyo3(signature = (dim, rays, lineality = Vec::new()))]
    fn from_generators(
        dim: usize,
        rays: Vec<Vec<f64>>,
        lineality: Vec<Vec<f64>>,
    ) -> PyResult<Self> {
        let inner =
            polarcone::PolyhedralCone::from_generators(dim, &vectors(rays)?, &vectors(lineality)?)
                .map_err(err)?;
        Ok(Cone { inner })
    }

    /// `{x : nᵢ·x ≤ 0, eⱼ·x = 0}`
    #[staticmethod]
    #[pyo3(signature = (dim, normals, equalities = Vec::new()))]
    fn from_constraints(
        dim: usize,
        normals: Vec<Vec<f64>>,
        equalities: Vec<Vec<f64>>,
    ) -> PyResult<Self> {
        let inner = polarcone::PolyhedralCone::from_constraints(
            dim,
            &vectors(normals)?,
            &vectors(equalities)?,
        )
        .map_err(err)?;
        Ok(Cone { inner })
    }

    #[staticmethod]
    fn orthant(dim: usize) -> Self {
        Cone {
            inner: polarcone::PolyhedralCone::nonnegative_orthant(dim),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<f64>> {
        lists(self.inner.rays())
    }

    #[getter]
    fn lineality(&self) -> Vec<Vec<f64>> {
        lists(self.inner.lineality().basis())
    }

    #[getter]
    fn facet_normals(&self) -> Vec<Vec<f64>> {
        lists(self.inner.facet_normals())
    }

    #[getter]
    fn equalities(&self) -> Vec<Vec<f64>> {
        lists(self.inner.equalities().basis())
    }

    fn polar(&self) -> Self {
        Cone {
            inner: self.inner.polar(),
        }
    }

    #[pyo3(signature = (u, tol = 1e-9))]
    fn contains(&self, u: Vec<f64>, tol: f64) -> PyResult<bool> {
        self.inner.contains(&vector(u)?, tol).map_err(err)
    }

    #[pyo3(signature = (other, tol = 1e-8))]
    fn equals(&self, other: &Cone, tol: f64) -> PyResult<bool> {
        self.inner.cones_equal(&other.inner, tol).map_err(err)
    }

    fn is_subspace(&self) -> bool {
        self.inner.is_subspace()
    }

    fn project(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        let set = polarcone::ConvexSet::cone(self.inner.clone());
        Ok(project_core(&set, &vector(u)?).map_err(err)?.into_coords())
    }

    /// `(y, z)` with `u = y + z`, `y` in the cone, `z` in the polar, `y ⊥ z`.
    fn moreau(&self, u: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let d = moreau_decompose(&self.inner, &vector(u)?).map_err(err)?;
        Ok((d.y.into_coords(), d.z.into_coords()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Cone(dim={}, rays={}, lineality={}, facets={})",
            self.inner.ambient_dim(),
            self.inner.rays().len(),
            self.inner.lineality().rank(),
            self.inner.facet_normals().len()
        )
    }
}

/// Closed convex set with an exact projection.
#[pyclass(frozen, module = "pypolarcone")]
pub struct ConvexSet {
    inner: polarcone::ConvexSet,
}

fn wrap(r: polarcone::Result<polarcone::ConvexSet>) -> PyResult<ConvexSet> {
    r.map(|inner| ConvexSet { inner }).map_err(err)
}

#[pymethods]
impl ConvexSet {
    #[staticmethod]
    fn cone(c: &Cone) -> Self {
        ConvexSet {
            inner: polarcone::ConvexSet::cone(c.inner.clone()),
        }
    }

    /// `point + span(directions)`
    #[staticmethod]
    #[pyo3(signature = (point, directions = Vec::new()))]
    fn plane(point: Vec<f64>, directions: Vec<Vec<f64>>) -> PyResult<Self> {
        let point = vector(point)?;
        let span = Subspace::span(point.dim(), &vectors(directions)?).map_err(err)?;
        wrap(polarcone::ConvexSet::plane(point, span))
    }

    /// `{x : normal·x ≤ offset}`
    #[staticmethod]
    fn halfspace(normal: Vec<f64>, offset: f64) -> PyResult<Self> {
        wrap(polarcone::ConvexSet::halfspace(vector(normal)?, offset))
    }

    #[staticmethod]
    fn ball(center: Vec<f64>, radius: f64) -> PyResult<Self> {
        wrap(polarcone::ConvexSet::ball(vector(center)?, radius))
    }

    #[staticmethod]
    fn polytope(vertices: Vec<Vec<f64>>) -> PyResult<Self> {
        wrap(polarcone::ConvexSet::polytope(vectors(vertices)?))
    }

    #[staticmethod]
    fn segment(a: Vec<f64>, b: Vec<f64>) -> PyResult<Self> {
        wrap(polarcone::ConvexSet::segment(vector(a)?, vector(b)?))
    }

    #[staticmethod]
    fn shifted_cone(c: &Cone, translation: Vec<f64>) -> PyResult<Self> {
        wrap(polarcone::ConvexSet::shifted_cone(
            c.inner.clone(),
            vector(translation)?,
        ))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[pyo3(signature = (u, tol = 1e-9))]
    fn contains(&self, u: Vec<f64>, tol: f64) -> PyResult<bool> {
        self.inner.contains(&vector(u)?, tol).map_err(err)
    }

    fn project(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(project_core(&self.inner, &vector(u)?)
            .map_err(err)?
            .into_coords())
    }

    /// Projection by the slow projected-gradient oracle: `(point, converged)`.
    fn project_oracle(&self, u: Vec<f64>) -> PyResult<(Vec<f64>, bool)> {
        let r = polarcone::project_oracle(&self.inner, &vector(u)?).map_err(err)?;
        Ok((r.point.into_coords(), !r.not_converged))
    }

    fn __repr__(&self) -> String {
        format!(
            "ConvexSet(kind={}, dim={})",
            self.inner.kind(),
            self.inner.ambient_dim()
        )
    }
}

fn verdict_dict<'py>(py: Python<'py>, v: &PairVerdict) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("theorem", v.theorem.number())?;
    d.set_item("holds", v.property_holds)?;
    d.set_item("witness", v.witness.as_ref().map(|w| w.coords().to_vec()))?;
    d.set_item("witness_code", v.witness_detail.map(|c| c.as_str()))?;
    d.set_item("samples_tested", v.samples_tested)?;
    d.set_item("polar_pair", v.classified_polar_pair)?;
    d.set_item("complementary_planes", v.classified_complementary_planes)?;
    let evidence: Vec<(Vec<f64>, Vec<f64>)> = v
        .evidence
        .iter()
        .map(|(y, z)| (y.coords().to_vec(), z.coords().to_vec()))
        .collect();
    d.set_item("evidence", evidence)?;
    Ok(d)
}

/// Sampled check of one of the four pair characterizations (numbered 2 to 5
/// as on the command line).
#[pyfunction]
#[pyo3(signature = (theorem, e, f, samples = 200, seed = 0))]
fn check_pair<'py>(
    py: Python<'py>,
    theorem: u8,
    e: &ConvexSet,
    f: &ConvexSet,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let theorem = Theorem::from_number(theorem)
        .ok_or_else(|| PyValueError::new_err(format!("theorem must be 2..=5, got {theorem}")))?;
    let budget = SearchBudget {
        seed,
        ..SearchBudget::default()
    };
    let v = check_pair_core(
        theorem,
        &e.inner,
        &f.inner,
        &Sampler::new(seed),
        samples,
        &budget,
    )
    .map_err(err)?;
    verdict_dict(py, &v)
}

/// Hyperplane through the face `b` of `c` separating `c` from the part of
/// its polar orthogonal to `b`.
#[pyfunction]
fn separate_face<'py>(py: Python<'py>, c: &Cone, b: &Cone) -> PyResult<Bound<'py, PyDict>> {
    let s = separate_face_core(&c.inner, &b.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("normal", s.normal.coords().to_vec())?;
    d.set_item("subspace", lists(s.subspace.basis()))?;
    d.set_item("complement", Cone { inner: s.d })?;
    d.set_item("contains_face", s.contains_b)?;
    d.set_item("strict_sides", s.strict_sides)?;
    d.set_item("margin", s.margin)?;
    Ok(d)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    FIXTURE_NAMES.to_vec()
}

/// Runs a named fixture; one dict per recorded expectation.
#[pyfunction]
#[pyo3(signature = (name, samples = 100, seed = 0))]
fn run_fixture<'py>(
    py: Python<'py>,
    name: &str,
    samples: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let fx = fixture(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
    let budget = SearchBudget {
        seed,
        ..SearchBudget::default()
    };
    let checks = fx.run(&Sampler::new(seed), samples, &budget).map_err(err)?;
    checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("expectation", c.expectation.label())?;
            d.set_item("passed", c.passed)?;
            d.set_item("observed", &c.observed)?;
            if let Some(v) = &c.verdict {
                d.set_item("verdict", verdict_dict(py, v)?)?;
            }
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn pypolarcone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cone>()?;
    m.add_class::<ConvexSet>()?;
    m.add_function(wrap_pyfunction!(check_pair, m)?)?;
    m.add_function(wrap_pyfunction!(separate_face, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_fixture, m)?)?;
    Ok(())
}
