//! Python bindings: parse, solve, check with the oracle, and inspect the
//! guess program.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use pyo3::create_exception;
use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;

use epiworld::cli::{self, Mode};
use epiworld::epistemic::{self, expand_world_view, guess_program, Semantics, Solution, SolveOptions};
use epiworld::grounder::ground_program;
use epiworld::syntax;

create_exception!(epiworld, EpiworldError, PyValueError);

fn py_err(e: epiworld::Error) -> PyErr {
    match e {
        epiworld::Error::Timeout => PyTimeoutError::new_err(e.to_string()),
        e => EpiworldError::new_err(e.to_string()),
    }
}

fn semantics(name: &str) -> PyResult<Semantics> {
    match name.to_ascii_lowercase().as_str() {
        "g91" => Ok(Semantics::G91),
        "k15" => Ok(Semantics::K15),
        other => Err(PyValueError::new_err(format!(
            "unknown semantics {other:?}, expected g91 or k15"
        ))),
    }
}

/// A parsed, not yet ground, epistemic logic program.
#[pyclass(module = "epiworld", frozen)]
struct Program {
    inner: syntax::Program,
}

#[pymethods]
impl Program {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        syntax::Program::parse(text)
            .map(|inner| Program { inner })
            .map_err(py_err)
    }

    #[getter]
    fn has_subjective(&self) -> bool {
        self.inner.has_subjective()
    }

    fn __len__(&self) -> usize {
        self.inner.rules.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", self.inner.to_string())
    }
}

/// A world view: the valuation of the subjective atoms and the answer sets
/// it collects, restricted to visible atoms.
#[pyclass(module = "epiworld", frozen, get_all)]
struct WorldView {
    valuation: BTreeMap<String, bool>,
    answer_sets: Vec<Vec<String>>,
    /// The printed form used in transcripts, `#show` applied.
    shown: Vec<String>,
}

#[pymethods]
impl WorldView {
    #[getter]
    fn true_atoms(&self) -> Vec<String> {
        self.valuation
            .iter()
            .filter(|&(_, &v)| v)
            .map(|(k, _)| k.clone())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("WorldView({})", self.shown.join(" "))
    }
}

fn world_views(solution: &Solution) -> Vec<WorldView> {
    let p = &solution.program;
    solution
        .world_views
        .iter()
        .map(|v| WorldView {
            valuation: v
                .valuation
                .iter()
                .map(|(&s, &b)| (p.display_subjective(s), b))
                .collect(),
            answer_sets: expand_world_view(p, v)
                .iter()
                .map(|s| s.iter().map(|id| p.atom(id).to_string()).collect())
                .collect(),
            shown: cli::apply_show(p, v, &solution.directives),
        })
        .collect()
}

fn options(
    semantics_name: &str,
    max_models: usize,
    constraints: bool,
    wfm: bool,
    timeout: Option<f64>,
) -> PyResult<SolveOptions> {
    let deadline = match timeout {
        Some(t) if t.is_finite() && t >= 0.0 => Some(Instant::now() + Duration::from_secs_f64(t)),
        Some(t) => {
            return Err(PyValueError::new_err(format!(
                "timeout must be a non-negative number, got {t}"
            )))
        }
        None => None,
    };
    Ok(SolveOptions {
        semantics: semantics(semantics_name)?,
        max_models,
        constraints,
        wfm,
        deadline,
        ..Default::default()
    })
}

/// World views of `program`; `max_models = 0` returns all of them.
#[pyfunction]
#[pyo3(signature = (program, semantics = "g91", max_models = 0, constraints = true, wfm = true, timeout = None))]
fn solve(
    py: Python<'_>,
    program: &Program,
    semantics: &str,
    max_models: usize,
    constraints: bool,
    wfm: bool,
    timeout: Option<f64>,
) -> PyResult<Vec<WorldView>> {
    let options = options(semantics, max_models, constraints, wfm, timeout)?;
    let solution = py
        .detach(|| epistemic::solve(&program.inner, &options))
        .map_err(py_err)?;
    Ok(world_views(&solution))
}

/// World views by trying every valuation of the subjective atoms.
#[pyfunction]
fn oracle(py: Python<'_>, program: &Program) -> PyResult<Vec<WorldView>> {
    let options = SolveOptions::default();
    let solution = py
        .detach(|| cli::compute(&program.inner, &options, Mode::Oracle))
        .map_err(py_err)?;
    Ok(world_views(&solution))
}

/// The solver's output as the command line prints it.
#[pyfunction]
#[pyo3(signature = (program, semantics = "g91", max_models = 1))]
fn transcript(py: Python<'_>, program: &Program, semantics: &str, max_models: usize) -> PyResult<String> {
    let options = options(semantics, max_models, true, true, None)?;
    let solution = py
        .detach(|| epistemic::solve(&program.inner, &options))
        .map_err(py_err)?;
    Ok(cli::transcript(&solution))
}

/// The ground guess program, with consistency constraints and propagation
/// when requested.
#[pyfunction]
#[pyo3(signature = (program, constraints = false, wfm = false))]
fn guess(program: &Program, constraints: bool, wfm: bool) -> PyResult<String> {
    let ground = ground_program(&program.inner).map_err(py_err)?;
    let options = SolveOptions {
        constraints,
        wfm,
        ..Default::default()
    };
    Ok(guess_program(&ground, &options).program.to_string())
}

/// The program rewritten so that G91 world views are its K15 world views.
#[pyfunction]
fn k15_transform(program: &Program) -> Program {
    Program {
        inner: epistemic::k15_transform(&program.inner),
    }
}

/// The scholarship eligibility program for `n` students.
#[pyfunction]
#[pyo3(signature = (n, seed = 0))]
fn gen_eligibility(n: usize, seed: u64) -> PyResult<Program> {
    cli::gen_eligibility(n, seed)
        .map(|inner| Program { inner })
        .map_err(py_err)
}

#[pymodule]
#[pyo3(name = "epiworld")]
fn epiworld_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EpiworldError", m.py().get_type::<EpiworldError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Program>()?;
    m.add_class::<WorldView>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(transcript, m)?)?;
    m.add_function(wrap_pyfunction!(guess, m)?)?;
    m.add_function(wrap_pyfunction!(k15_transform, m)?)?;
    m.add_function(wrap_pyfunction!(gen_eligibility, m)?)?;
    Ok(())
}
