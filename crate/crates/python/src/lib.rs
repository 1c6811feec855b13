//! Python bindings: the `subsetsum` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use subsetsum::polyspace::PolyspaceConfig;
use subsetsum::solver::MAX_DELTA;
use subsetsum::{Rng, SumSet as CoreSumSet};

/// A set of non-negative integers up to a cap.
#[pyclass(name = "SumSet", module = "subsetsum", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct SumSet(CoreSumSet);

#[pymethods]
impl SumSet {
    #[new]
    #[pyo3(signature = (cap, elems = Vec::new()))]
    fn new(cap: usize, elems: Vec<usize>) -> PyResult<Self> {
        if let Some(&e) = elems.iter().find(|&&e| e > cap) {
            return Err(PyValueError::new_err(format!("element {e} exceeds cap {cap}")));
        }
        Ok(SumSet(CoreSumSet::from_elems(cap, elems)))
    }

    #[getter]
    fn cap(&self) -> usize {
        self.0.cap()
    }

    fn to_list(&self) -> Vec<usize> {
        self.0.to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, e: usize) -> bool {
        self.0.contains(e)
    }

    fn __repr__(&self) -> String {
        let elems = self.0.to_vec();
        if elems.len() <= 16 {
            format!("SumSet(cap={}, {:?})", self.0.cap(), elems)
        } else {
            format!("SumSet(cap={}, {} elements)", self.0.cap(), elems.len())
        }
    }
}

/// A multiset of positive integers and a target.
#[pyclass(name = "Instance", module = "subsetsum", eq, skip_from_py_object)]
#[derive(Clone)]
struct Instance {
    inner: subsetsum::Instance,
    #[pyo3(get)]
    dropped_zeros: usize,
    #[pyo3(get)]
    dropped_over_target: usize,
}

/// Equal when items and target agree; the drop counts are provenance only.
impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl Instance {
    fn wrap((inner, dropped): (subsetsum::Instance, subsetsum::instance::Dropped)) -> Self {
        Instance {
            inner,
            dropped_zeros: dropped.zeros,
            dropped_over_target: dropped.over_target,
        }
    }
}

#[pymethods]
impl Instance {
    /// Zeros and items above `target` are dropped and counted.
    #[new]
    fn new(items: Vec<u64>, target: usize) -> PyResult<Self> {
        if target == 0 {
            return Err(PyValueError::new_err("target must be positive"));
        }
        Ok(Self::wrap(subsetsum::Instance::new(items, target)))
    }

    /// Parses the text format: an "n t" line followed by the items.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        subsetsum::Instance::parse(text)
            .map(Self::wrap)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn items(&self) -> Vec<usize> {
        self.inner.items().to_vec()
    }

    #[getter]
    fn target(&self) -> usize {
        self.inner.target()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Instance(items={:?}, target={})", self.inner.items(), self.inner.target())
    }
}

fn check_delta(delta: f64) -> PyResult<()> {
    if delta > 0.0 && delta <= MAX_DELTA {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!("delta must lie in (0, {MAX_DELTA}], got {delta}")))
    }
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(Rng::entropy_seed)
}

/// Sorted distinct items in `[1, t]`.
fn as_set(items: &[usize], t: usize) -> Vec<usize> {
    let mut z: Vec<usize> = items.iter().copied().filter(|&v| v > 0 && v <= t).collect();
    z.sort_unstable();
    z.dedup();
    z
}

/// Decides whether some sub-multiset sums to the target. Returns
/// `(answer, error_bound)`; a `True` answer is always correct.
#[pyfunction]
#[pyo3(signature = (inst, delta = 0.01, seed = None))]
fn decide(py: Python<'_>, inst: &Instance, delta: f64, seed: Option<u64>) -> PyResult<(bool, f64)> {
    check_delta(delta)?;
    let seed = seed_or_entropy(seed);
    let d = py.detach(|| subsetsum::solver::decide(&inst.inner, delta, seed));
    Ok((d.answer, d.error_bound))
}

/// Every sum up to the target, each found with probability `1 - delta`.
#[pyfunction]
#[pyo3(signature = (inst, delta = 0.01, seed = None))]
fn all_sums(py: Python<'_>, inst: &Instance, delta: f64, seed: Option<u64>) -> PyResult<SumSet> {
    check_delta(delta)?;
    let seed = seed_or_entropy(seed);
    Ok(SumSet(py.detach(|| subsetsum::solver::all_sums(&inst.inner, delta, seed))))
}

/// Subset sums of a set of items up to `t`. Duplicates, zeros and items
/// above `t` are ignored.
#[pyfunction]
#[pyo3(signature = (items, t, delta = 0.01, seed = None))]
fn faster_subset_sum(py: Python<'_>, items: Vec<usize>, t: usize, delta: f64, seed: Option<u64>) -> PyResult<SumSet> {
    check_delta(delta)?;
    let z = as_set(&items, t);
    let mut rng = Rng::new(seed_or_entropy(seed));
    Ok(SumSet(py.detach(|| subsetsum::solver::faster_subset_sum(&z, t, delta, &mut rng))))
}

/// All sums up to `t` of items used any number of times (exact).
#[pyfunction]
fn unbounded_subset_sum(py: Python<'_>, items: Vec<usize>, t: usize) -> SumSet {
    let z = as_set(&items, t);
    SumSet(py.detach(|| subsetsum::unbounded::unbounded_subset_sum(&z, t)))
}

/// Every sum up to the target by the textbook dynamic program (exact).
#[pyfunction]
fn bellman_all_sums(py: Python<'_>, inst: &Instance) -> SumSet {
    SumSet(py.detach(|| subsetsum::oracle::bellman_all_sums(&inst.inner)))
}

/// Low-space decision through modular circuit evaluation; `True` is always
/// correct.
#[pyfunction]
#[pyo3(signature = (inst, seed = None, pool_size = None, repetitions = None))]
fn polyspace_decide(
    py: Python<'_>,
    inst: &Instance,
    seed: Option<u64>,
    pool_size: Option<usize>,
    repetitions: Option<usize>,
) -> PyResult<bool> {
    let seed = seed_or_entropy(seed);
    let config = PolyspaceConfig {
        repetitions,
        pool_size,
    };
    py.detach(|| subsetsum::polyspace::polyspace_decide(&inst.inner, seed, config))
        .map(|o| o.answer)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// `{a + b : a ∈ A ∪ {0}, b ∈ B ∪ {0}, a + b <= cap}`.
#[pyfunction]
fn capped_sumset(py: Python<'_>, a: &SumSet, b: &SumSet, cap: usize) -> SumSet {
    SumSet(py.detach(|| subsetsum::capped_sumset(&a.0, &b.0, cap)))
}

#[pymodule]
#[pyo3(name = "subsetsum")]
fn subsetsum_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SumSet>()?;
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(all_sums, m)?)?;
    m.add_function(wrap_pyfunction!(faster_subset_sum, m)?)?;
    m.add_function(wrap_pyfunction!(unbounded_subset_sum, m)?)?;
    m.add_function(wrap_pyfunction!(bellman_all_sums, m)?)?;
    m.add_function(wrap_pyfunction!(polyspace_decide, m)?)?;
    m.add_function(wrap_pyfunction!(capped_sumset, m)?)?;
    Ok(())
}
