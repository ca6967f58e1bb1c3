//! Python bindings: models, lattices, signals, time-frequency transforms,
//! frame diagnostics, the twisted-convolution algebra and theta reports.
//!
//! Build `libgabortorus_py.so` with cargo and import it as `gabortorus_py`
//! (rename/copy the shared object; see python/smoke_test.py).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gabortorus::config::WindowSpec;
use gabortorus::phase_space::{self, ModelOrder, SeparableLattice, TFPoint};
use gabortorus::{gabor, nctorus, theta, transforms, verify};

fn err(e: gabortorus::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Signal domain: the cyclic group `Z_L` or a sampled line.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Model {
    inner: ModelOrder,
}

#[pymethods]
impl Model {
    #[staticmethod]
    fn finite(len: usize) -> PyResult<Self> {
        Ok(Model { inner: ModelOrder::finite(len).map_err(err)? })
    }

    #[staticmethod]
    fn continuum(extent: f64, step: f64) -> PyResult<Self> {
        Ok(Model { inner: ModelOrder::continuum(1, extent, step).map_err(err)? })
    }

    fn grid(&self) -> Vec<f64> {
        self.inner.grid()
    }

    fn __len__(&self) -> usize {
        self.inner.grid_len()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Separable time-frequency lattice `aZ x bZ` with its adjoint.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Lattice {
    inner: SeparableLattice,
}

#[pymethods]
impl Lattice {
    #[staticmethod]
    fn finite(len: usize, a: usize, b: usize) -> PyResult<Self> {
        Ok(Lattice { inner: SeparableLattice::finite(len, a, b).map_err(err)? })
    }

    #[staticmethod]
    fn continuum(model: &Model, a: f64, b: f64) -> PyResult<Self> {
        Ok(Lattice { inner: SeparableLattice::continuum(model.inner, a, b).map_err(err)? })
    }

    fn adjoint(&self) -> PyResult<Self> {
        Ok(Lattice { inner: self.inner.adjoint().map_err(err)? })
    }

    fn volume(&self) -> f64 {
        self.inner.volume()
    }

    fn model(&self) -> Model {
        Model { inner: self.inner.model }
    }

    fn __repr__(&self) -> String {
        format!("Lattice(a={}, b={})", self.inner.a, self.inner.b)
    }
}

/// A complex signal sampled on its model's grid.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Signal {
    inner: phase_space::Signal,
}

impl Signal {
    fn point(&self, x: f64, omega: f64) -> TFPoint {
        if self.inner.model.is_finite() {
            TFPoint::finite(x.round() as i64, omega.round() as i64)
        } else {
            TFPoint::cont(x, omega)
        }
    }
}

#[pymethods]
impl Signal {
    #[new]
    fn new(model: &Model, values: Vec<Complex64>) -> PyResult<Self> {
        Ok(Signal { inner: phase_space::Signal::new(model.inner, values).map_err(err)? })
    }

    #[staticmethod]
    fn delta(model: &Model, idx: usize) -> Self {
        Signal { inner: phase_space::Signal::delta(model.inner, idx) }
    }

    /// Gaussian atom `e^{-decay t^2}` (periodized on finite models).
    #[staticmethod]
    fn gaussian(model: &Model, decay: f64) -> PyResult<Self> {
        Ok(Signal { inner: WindowSpec::Gaussian { t: decay }.build(&model.inner).map_err(err)? })
    }

    fn values(&self) -> Vec<Complex64> {
        self.inner.values.clone()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn inner_product(&self, other: &Signal) -> PyResult<Complex64> {
        self.inner.inner(&other.inner).map_err(err)
    }

    /// Time-frequency shift: modulate by `omega` after translating by `x`.
    fn shift(&self, x: f64, omega: f64) -> PyResult<Signal> {
        let p = self.point(x, omega);
        Ok(Signal { inner: phase_space::tf_shift(&self.inner, &p).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.values.len()
    }
}

/// Coefficients on a lattice, multiplied by twisted convolution.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct TwistedSequence {
    inner: nctorus::TwistedSequence,
}

#[pymethods]
impl TwistedSequence {
    #[new]
    fn new(lattice: &Lattice) -> Self {
        TwistedSequence { inner: nctorus::TwistedSequence::zero(lattice.inner.clone(), 0.0) }
    }

    fn get(&self, m: i64, n: i64) -> Complex64 {
        self.inner.get(m, n)
    }

    fn set(&mut self, m: i64, n: i64, v: Complex64) {
        self.inner.set(m, n, v);
    }

    fn items(&self) -> Vec<((i64, i64), Complex64)> {
        self.inner.coeffs.iter().map(|(&k, &v)| (k, v)).collect()
    }

    fn convolve(&self, other: &TwistedSequence) -> PyResult<TwistedSequence> {
        Ok(TwistedSequence {
            inner: nctorus::twisted_convolution(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn involution(&self) -> TwistedSequence {
        TwistedSequence { inner: nctorus::involution(&self.inner) }
    }

    fn weighted_norm(&self, s: f64) -> f64 {
        nctorus::weighted_norm(&self.inner, s)
    }

    /// Apply the represented operator `sum_h a_h pi(h)` to a signal.
    fn apply(&self, f: &Signal) -> PyResult<Signal> {
        Ok(Signal { inner: nctorus::integrated_rep(&self.inner, &f.inner).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs.len()
    }
}

#[pyfunction]
fn dft(f: &Signal) -> Signal {
    Signal { inner: transforms::dft(&f.inner) }
}

/// Full short-time Fourier transform; returns (xs, omegas, values) with the
/// value list in row-major order over (x, omega).
#[pyfunction]
fn stft(f: &Signal, g: &Signal) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Complex64>)> {
    let m = transforms::stft(&f.inner, &g.inner).map_err(err)?;
    Ok((m.xs.clone(), m.omegas.clone(), m.values.clone()))
}

/// Sharpest frame constants (A, B) of the Gabor system over the lattice.
#[pyfunction]
fn frame_bounds(atom: &Signal, lattice: &Lattice) -> PyResult<(f64, f64)> {
    let sys = gabor::GaborSystem::new(atom.inner.clone(), lattice.inner.clone()).map_err(err)?;
    let b = gabor::frame_bounds(&sys).map_err(err)?;
    Ok((b.lower, b.upper))
}

/// Canonical dual (or tight) window of a finite Gabor frame.
#[pyfunction]
#[pyo3(signature = (atom, lattice, tight = false))]
fn dual_window(atom: &Signal, lattice: &Lattice, tight: bool) -> PyResult<Signal> {
    let sys = gabor::GaborSystem::new(atom.inner.clone(), lattice.inner.clone()).map_err(err)?;
    let mode = if tight { gabor::WindowMode::Tight } else { gabor::WindowMode::Dual };
    Ok(Signal { inner: gabor::dual_window(&sys, mode).map_err(err)? })
}

/// Analysis coefficients of `f` against the Gabor system.
#[pyfunction]
fn analysis(atom: &Signal, lattice: &Lattice, f: &Signal) -> PyResult<TwistedSequence> {
    let sys = gabor::GaborSystem::new(atom.inner.clone(), lattice.inner.clone()).map_err(err)?;
    Ok(TwistedSequence { inner: gabor::analysis(&sys, &f.inner).map_err(err)? })
}

/// Synthesis of coefficients back into a signal.
#[pyfunction]
fn synthesis(atom: &Signal, lattice: &Lattice, c: &TwistedSequence) -> PyResult<Signal> {
    let sys = gabor::GaborSystem::new(atom.inner.clone(), lattice.inner.clone()).map_err(err)?;
    Ok(Signal { inner: gabor::synthesis(&sys, &c.inner).map_err(err)? })
}

/// Expansion of the frame operator over the adjoint lattice (finite model).
#[pyfunction]
fn janssen_coefficients(atom: &Signal, lattice: &Lattice) -> PyResult<TwistedSequence> {
    let sys = gabor::GaborSystem::new(atom.inner.clone(), lattice.inner.clone()).map_err(err)?;
    let j = gabor::janssen_operator(&sys, &sys.atom.clone(), None).map_err(err)?;
    Ok(TwistedSequence { inner: j.coeffs })
}

/// Module-valued inner product; `side` is "left" (lattice) or "right"
/// (adjoint lattice). Continuum models need a truncation radius.
#[pyfunction]
#[pyo3(signature = (side, f, g, lattice, radius = None))]
fn rieffel_inner(
    side: &str,
    f: &Signal,
    g: &Signal,
    lattice: &Lattice,
    radius: Option<f64>,
) -> PyResult<TwistedSequence> {
    let which = match side {
        "left" => nctorus::InnerSide::Left,
        "right" => nctorus::InnerSide::Right,
        other => return Err(PyValueError::new_err(format!("side must be left/right, got {other}"))),
    };
    Ok(TwistedSequence {
        inner: nctorus::rieffel_inner(which, &f.inner, &g.inner, &lattice.inner, radius)
            .map_err(err)?,
    })
}

/// Theta element with Gaussian coefficients on the adjoint lattice; returns
/// the JSON report (radius, tail bound, value at 0, functional-equation
/// residual).
#[pyfunction]
fn theta_report(decay: f64, lattice: &Lattice, radius: f64) -> PyResult<String> {
    let t = theta::SiegelMatrix::scalar(Complex64::new(decay, 0.0), theta::PositivityTag::Decay)
        .map_err(err)?;
    let q = theta::quantum_theta(&t, &lattice.inner, radius).map_err(err)?;
    let residual =
        theta::functional_equation_residual(&t, &lattice.inner, &TFPoint::cont(0.0, 0.0), radius)
            .map_err(err)?;
    Ok(theta::theta_report(&q, residual).to_string())
}

/// Scalar theta series at the point (x, omega).
#[pyfunction]
fn theta_series(decay: f64, lattice: &Lattice, x: f64, omega: f64, radius: f64) -> PyResult<Complex64> {
    let t = theta::SiegelMatrix::scalar(Complex64::new(decay, 0.0), theta::PositivityTag::Decay)
        .map_err(err)?;
    theta::theta_series(&t, &lattice.inner, &TFPoint::cont(x, omega), radius).map_err(err)
}

/// Frame-bound sweep over densities on `Z_len`; returns JSON rows with the
/// invertibility verdict per density.
#[pyfunction]
fn invertibility_sweep(len: usize, densities: Vec<f64>) -> PyResult<String> {
    let rows = theta::invertibility_sweep(len, &densities).map_err(err)?;
    Ok(serde_json::to_string(&rows).expect("serializable"))
}

/// Run every verification criterion; returns (name, passed, detail) triples.
#[pyfunction]
fn verify_all(seed: u64) -> PyResult<Vec<(String, bool, String)>> {
    let results = verify::run_all(seed).map_err(err)?;
    Ok(results.into_iter().map(|r| (r.name.to_string(), r.passed, r.detail)).collect())
}

#[pymodule]
fn gabortorus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Lattice>()?;
    m.add_class::<Signal>()?;
    m.add_class::<TwistedSequence>()?;
    m.add_function(wrap_pyfunction!(dft, m)?)?;
    m.add_function(wrap_pyfunction!(stft, m)?)?;
    m.add_function(wrap_pyfunction!(frame_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(dual_window, m)?)?;
    m.add_function(wrap_pyfunction!(analysis, m)?)?;
    m.add_function(wrap_pyfunction!(synthesis, m)?)?;
    m.add_function(wrap_pyfunction!(janssen_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(rieffel_inner, m)?)?;
    m.add_function(wrap_pyfunction!(theta_report, m)?)?;
    m.add_function(wrap_pyfunction!(theta_series, m)?)?;
    m.add_function(wrap_pyfunction!(invertibility_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
