//! Phase-space models, lattices, cocycles and time-frequency shifts.
//!
//! A signal lives either on the finite cyclic group `Z_L` or on a uniform
//! symmetric grid sampling `R`. Time-frequency shifts act by
//! `(pi(x,w) f)(t) = e^{2 pi i t.w} f(t - x)` (finite model: phases mod `L`),
//! so operator composition carries the phase
//! `pi(h) pi(k) = e^{-2 pi i h_x . k_w} pi(h + k)`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Which phase-space model a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelOrder {
    /// Finite cyclic model on `Z_L`, `L >= 2`.
    Finite { len: usize },
    /// Uniform grid of `extent/step` points symmetric about 0, sampling `R^dim`.
    /// Signals are supported for `dim == 1`; `dim == 2` appears only in theta
    /// lattice sums.
    Continuum { dim: usize, extent: f64, step: f64 },
}

impl ModelOrder {
    pub fn finite(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidModel(format!("finite model needs L >= 2, got {len}")));
        }
        Ok(ModelOrder::Finite { len })
    }

    pub fn continuum(dim: usize, extent: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(extent > 0.0) {
            return Err(Error::InvalidModel("extent and step must be positive".into()));
        }
        let n = extent / step;
        let rounded = n.round();
        if (n - rounded).abs() > 1e-9 || rounded < 2.0 || (rounded as u64) % 2 != 0 {
            return Err(Error::InvalidModel(format!(
                "extent/step must be a positive even integer, got {n}"
            )));
        }
        if dim == 0 || dim > 2 {
            return Err(Error::InvalidModel(format!("dimension must be 1 or 2, got {dim}")));
        }
        Ok(ModelOrder::Continuum { dim, extent, step })
    }

    /// Number of grid points of the signal backend (finite: `L`).
    pub fn grid_len(&self) -> usize {
        match *self {
            ModelOrder::Finite { len } => len,
            ModelOrder::Continuum { extent, step, .. } => (extent / step).round() as usize,
        }
    }

    /// Sample positions. Finite: `0, 1, ..., L-1`. Continuum: `(j - n/2) * step`.
    pub fn grid(&self) -> Vec<f64> {
        match *self {
            ModelOrder::Finite { len } => (0..len).map(|t| t as f64).collect(),
            ModelOrder::Continuum { extent, step, .. } => {
                let n = (extent / step).round() as i64;
                (0..n).map(|j| (j - n / 2) as f64 * step).collect()
            }
        }
    }

    /// Quadrature weight of one sample: 1 for the finite model, `step` otherwise.
    pub fn sample_weight(&self) -> f64 {
        match *self {
            ModelOrder::Finite { .. } => 1.0,
            ModelOrder::Continuum { step, .. } => step,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ModelOrder::Finite { .. })
    }

    pub(crate) fn require_same(&self, other: &ModelOrder) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModelMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    pub(crate) fn require_dim1(&self) -> Result<()> {
        if let ModelOrder::Continuum { dim, .. } = self {
            if *dim != 1 {
                return Err(Error::Unsupported(
                    "signal backend supports continuum dimension 1 only".into(),
                ));
            }
        }
        Ok(())
    }
}

/// A point of time-frequency space.
#[derive(Debug, Clone, PartialEq)]
pub enum TFPoint {
    Finite { x: i64, omega: i64 },
    Continuum { x: Vec<f64>, omega: Vec<f64> },
}

impl TFPoint {
    pub fn finite(x: i64, omega: i64) -> Self {
        TFPoint::Finite { x, omega }
    }

    /// One-dimensional continuum point.
    pub fn cont(x: f64, omega: f64) -> Self {
        TFPoint::Continuum { x: vec![x], omega: vec![omega] }
    }

    /// Canonical residues in `[0, L)` for the finite model; identity otherwise.
    pub fn canonical(&self, model: &ModelOrder) -> TFPoint {
        match (self, model) {
            (TFPoint::Finite { x, omega }, ModelOrder::Finite { len }) => {
                let l = *len as i64;
                TFPoint::Finite { x: x.rem_euclid(l), omega: omega.rem_euclid(l) }
            }
            _ => self.clone(),
        }
    }

    /// Euclidean norm of the point, with finite residues taken in the
    /// symmetric range `[-L/2, L/2)`.
    pub fn norm(&self, model: &ModelOrder) -> f64 {
        match (self, model) {
            (TFPoint::Finite { x, omega }, ModelOrder::Finite { len }) => {
                let l = *len as i64;
                let sym = |v: i64| {
                    let r = v.rem_euclid(l);
                    if 2 * r >= l { r - l } else { r }
                };
                let (x, w) = (sym(*x) as f64, sym(*omega) as f64);
                (x * x + w * w).sqrt()
            }
            (TFPoint::Continuum { x, omega }, _) => {
                let s: f64 = x.iter().chain(omega).map(|v| v * v).sum();
                s.sqrt()
            }
            _ => f64::NAN,
        }
    }

    fn dot_omega_x(&self, other: &TFPoint, model: &ModelOrder) -> Result<f64> {
        // self_omega . other_x, divided by L in the finite model
        match (self, other, model) {
            (
                TFPoint::Finite { omega, .. },
                TFPoint::Finite { x, .. },
                ModelOrder::Finite { len },
            ) => Ok((omega * x) as f64 / *len as f64),
            (TFPoint::Continuum { omega, .. }, TFPoint::Continuum { x, .. }, _) => {
                if omega.len() != x.len() {
                    return Err(Error::ModelMismatch("point dimensions differ".into()));
                }
                Ok(omega.iter().zip(x).map(|(a, b)| a * b).sum())
            }
            _ => Err(Error::ModelMismatch("mixed finite/continuum points".into())),
        }
    }
}

/// A complex number of unit modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPhase(Complex64);

impl UnitPhase {
    pub fn new(value: Complex64) -> Result<Self> {
        if (value.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Numerical(format!("phase has modulus {}", value.norm())));
        }
        Ok(UnitPhase(value))
    }

    pub fn from_angle(turns: f64) -> Self {
        // reduce modulo one turn first: whole turns are exact in f64 for the
        // integer-valued lattice phases, so large angles lose no precision
        UnitPhase(Complex64::from_polar(1.0, TAU * turns.rem_euclid(1.0)))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// The 2-cocycle `alpha(h,k) = e^{2 pi i h_omega . k_x}` (finite: `/L`).
pub fn cocycle(model: &ModelOrder, h: &TFPoint, k: &TFPoint) -> Result<UnitPhase> {
    Ok(UnitPhase::from_angle(h.dot_omega_x(k, model)?))
}

/// Phase of the operator product: `pi(h) pi(k) = psi(h,k) pi(h+k)` with
/// `psi(h,k) = e^{-2 pi i h_x . k_omega}`.
pub fn composition_phase(model: &ModelOrder, h: &TFPoint, k: &TFPoint) -> Result<UnitPhase> {
    Ok(UnitPhase::from_angle(-k.dot_omega_x(h, model)?))
}

/// Commutator phase `epsilon(h,k)` with `pi(h) pi(k) = epsilon(h,k) pi(k) pi(h)`.
pub fn commutator_phase(model: &ModelOrder, h: &TFPoint, k: &TFPoint) -> Result<UnitPhase> {
    let hx_kw = k.dot_omega_x(h, model)?;
    let kx_hw = h.dot_omega_x(k, model)?;
    Ok(UnitPhase::from_angle(kx_hw - hx_kw))
}

/// A signal: complex samples over the model grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub model: ModelOrder,
    pub values: Vec<Complex64>,
}

impl Signal {
    pub fn new(model: ModelOrder, values: Vec<Complex64>) -> Result<Self> {
        model.require_dim1()?;
        if values.len() != model.grid_len() {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                model.grid_len(),
                values.len()
            )));
        }
        Ok(Signal { model, values })
    }

    pub fn zeros(model: ModelOrder) -> Self {
        let n = model.grid_len();
        Signal { model, values: vec![Complex64::ZERO; n] }
    }

    /// Unit impulse at grid index `idx`.
    pub fn delta(model: ModelOrder, idx: usize) -> Self {
        let mut s = Signal::zeros(model);
        s.values[idx] = Complex64::ONE;
        s
    }

    /// Samples of a function of the grid position.
    pub fn from_fn(model: ModelOrder, f: impl Fn(f64) -> Complex64) -> Self {
        let values = model.grid().into_iter().map(f).collect();
        Signal { model, values }
    }

    /// `<f, g> = sum f conj(g) * weight` (continuum weight: `step`).
    pub fn inner(&self, other: &Signal) -> Result<Complex64> {
        self.model.require_same(&other.model)?;
        let w = self.model.sample_weight();
        let s: Complex64 =
            self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * w)
    }

    pub fn norm(&self) -> f64 {
        let w = self.model.sample_weight();
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * w).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm() == 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal {
            model: self.model,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.model.require_same(&other.model)?;
        Ok(Signal {
            model: self.model,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        Ok(self.add(&other.scale(-Complex64::ONE))?)
    }

    /// Reflection `f~(t) = f(-t)`.
    pub fn reflect(&self) -> Signal {
        let n = self.values.len();
        let values = match self.model {
            ModelOrder::Finite { .. } => {
                (0..n).map(|t| self.values[(n - t) % n]).collect()
            }
            ModelOrder::Continuum { .. } => {
                // grid index j holds t = (j - n/2) step; -t sits at n - j, with
                // the boundary sample (j = 0) having no mirror on the grid
                (0..n)
                    .map(|j| if j == 0 { Complex64::ZERO } else { self.values[n - j] })
                    .collect()
            }
        };
        Signal { model: self.model, values }
    }
}

/// Time-frequency shift `pi(p) f`, with `(pi(x,w) f)(t) = e^{2 pi i t.w} f(t-x)`.
///
/// Continuum shifts must be grid-commensurate in `x`; samples shifted past the
/// grid boundary are dropped (zero fill).
pub fn tf_shift(f: &Signal, p: &TFPoint) -> Result<Signal> {
    match (&f.model, p) {
        (ModelOrder::Finite { len }, TFPoint::Finite { x, omega }) => {
            let l = *len as i64;
            let mut values = vec![Complex64::ZERO; *len];
            for t in 0..l {
                let src = (t - x).rem_euclid(l) as usize;
                let phase = Complex64::from_polar(1.0, TAU * (t * omega) as f64 / l as f64);
                values[t as usize] = phase * f.values[src];
            }
            Ok(Signal { model: f.model, values })
        }
        (ModelOrder::Continuum { step, .. }, TFPoint::Continuum { x, omega }) => {
            if x.len() != 1 || omega.len() != 1 {
                return Err(Error::Unsupported("continuum shifts are 1-dimensional".into()));
            }
            let shift = x[0] / step;
            let shift_idx = shift.round();
            if (shift - shift_idx).abs() > 1e-9 {
                return Err(Error::IncommensurateShift(format!(
                    "x = {} is not a multiple of step {}",
                    x[0], step
                )));
            }
            let shift_idx = shift_idx as i64;
            let n = f.values.len() as i64;
            let grid = f.model.grid();
            let mut values = vec![Complex64::ZERO; n as usize];
            for j in 0..n {
                let src = j - shift_idx;
                if src < 0 || src >= n {
                    continue;
                }
                let phase = Complex64::from_polar(1.0, TAU * grid[j as usize] * omega[0]);
                values[j as usize] = phase * f.values[src as usize];
            }
            Ok(Signal { model: f.model, values })
        }
        _ => Err(Error::ModelMismatch("signal and point in different models".into())),
    }
}

/// A separable time-frequency lattice `D = a Z x b Z` (finite: `a Z_L x b Z_L`
/// with `a | L`, `b | L`), optionally carrying a generator matrix for
/// non-separable continuum lattices (theta sums only).
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableLattice {
    pub model: ModelOrder,
    pub a: f64,
    pub b: f64,
    /// Row-major 2N x 2N generator; points are `G k` for integer `k`.
    pub generator: Option<Vec<f64>>,
}

impl SeparableLattice {
    pub fn finite(len: usize, a: usize, b: usize) -> Result<Self> {
        let model = ModelOrder::finite(len)?;
        if a == 0 || b == 0 || len % a != 0 || len % b != 0 {
            return Err(Error::UnsupportedLattice(format!(
                "steps ({a}, {b}) must divide L = {len}"
            )));
        }
        Ok(SeparableLattice { model, a: a as f64, b: b as f64, generator: None })
    }

    pub fn continuum(model: ModelOrder, a: f64, b: f64) -> Result<Self> {
        if !model.is_finite() {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::UnsupportedLattice("steps must be positive".into()));
            }
            Ok(SeparableLattice { model, a, b, generator: None })
        } else {
            Err(Error::InvalidModel("use SeparableLattice::finite for finite models".into()))
        }
    }

    pub fn with_generator(model: ModelOrder, generator: Vec<f64>) -> Result<Self> {
        let dim = match model {
            ModelOrder::Continuum { dim, .. } => dim,
            _ => return Err(Error::Unsupported("generator lattices are continuum-only".into())),
        };
        let m = 2 * dim;
        if generator.len() != m * m {
            return Err(Error::InvalidInput(format!("generator must be {m}x{m}")));
        }
        let det = det_small(&generator, m);
        if det.abs() < 1e-14 {
            return Err(Error::UnsupportedLattice("generator matrix is singular".into()));
        }
        Ok(SeparableLattice { model, a: 1.0, b: 1.0, generator: Some(generator) })
    }

    /// The adjoint lattice `D^!` of all points whose shifts commute with every
    /// `pi(h)`, `h` in `D`.
    pub fn adjoint(&self) -> Result<SeparableLattice> {
        if self.generator.is_some() {
            return Err(Error::UnsupportedLattice(
                "adjoint of a generator-matrix lattice is not implemented".into(),
            ));
        }
        match self.model {
            ModelOrder::Finite { len } => {
                let (a, b) = (self.a as usize, self.b as usize);
                SeparableLattice::finite(len, len / b, len / a)
            }
            ModelOrder::Continuum { .. } => {
                SeparableLattice::continuum(self.model, 1.0 / self.b, 1.0 / self.a)
            }
        }
    }

    /// Volume of a fundamental domain: `a b` in the continuum, `a b / L` in the
    /// finite model (the normalization that makes the Janssen identity exact).
    pub fn volume(&self) -> f64 {
        if let Some(g) = &self.generator {
            let m = 2 * self.dim();
            return det_small(g, m).abs();
        }
        match self.model {
            ModelOrder::Finite { len } => self.a * self.b / len as f64,
            ModelOrder::Continuum { .. } => self.a * self.b,
        }
    }

    pub fn dim(&self) -> usize {
        match self.model {
            ModelOrder::Finite { .. } => 1,
            ModelOrder::Continuum { dim, .. } => dim,
        }
    }

    /// Lattice point with index `(m, n)`, canonical in the finite model.
    pub fn point(&self, m: i64, n: i64) -> TFPoint {
        match self.model {
            ModelOrder::Finite { len } => {
                let l = len as i64;
                TFPoint::Finite {
                    x: (m * self.a as i64).rem_euclid(l),
                    omega: (n * self.b as i64).rem_euclid(l),
                }
            }
            ModelOrder::Continuum { .. } => {
                TFPoint::cont(m as f64 * self.a, n as f64 * self.b)
            }
        }
    }

    /// Periods of the index lattice in the finite model: `(L/a, L/b)`.
    pub fn periods(&self) -> Result<(i64, i64)> {
        match self.model {
            ModelOrder::Finite { len } => {
                Ok((len as i64 / self.a as i64, len as i64 / self.b as i64))
            }
            _ => Err(Error::Unsupported("periods exist only in the finite model".into())),
        }
    }

    /// All finite-model lattice points with their canonical indices.
    pub fn points(&self) -> Result<Vec<((i64, i64), TFPoint)>> {
        let (p, q) = self.periods()?;
        let mut out = Vec::with_capacity((p * q) as usize);
        for m in 0..p {
            for n in 0..q {
                out.push(((m, n), self.point(m, n)));
            }
        }
        Ok(out)
    }

    /// Continuum lattice points with Euclidean norm at most `radius`
    /// (finite model: all points). Deterministic index order.
    pub fn points_within(&self, radius: f64) -> Result<Vec<((i64, i64), TFPoint)>> {
        if self.model.is_finite() {
            return self.points();
        }
        let mmax = (radius / self.a).floor() as i64;
        let nmax = (radius / self.b).floor() as i64;
        let mut out = Vec::new();
        for m in -mmax..=mmax {
            for n in -nmax..=nmax {
                let p = self.point(m, n);
                if p.norm(&self.model) <= radius + 1e-12 {
                    out.push(((m, n), p));
                }
            }
        }
        Ok(out)
    }

    /// Canonicalize a coefficient index in the finite model.
    pub fn canonical_index(&self, m: i64, n: i64) -> (i64, i64) {
        match self.periods() {
            Ok((p, q)) => (m.rem_euclid(p), n.rem_euclid(q)),
            Err(_) => (m, n),
        }
    }
}

fn det_small(mat: &[f64], m: usize) -> f64 {
    // LU with partial pivoting; m is at most 4 here
    let mut a = mat.to_vec();
    let mut det = 1.0;
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if a[r * m + col].abs() > a[piv * m + col].abs() {
                piv = r;
            }
        }
        if a[piv * m + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..m {
                a.swap(col * m + c, piv * m + c);
            }
            det = -det;
        }
        det *= a[col * m + col];
        for r in col + 1..m {
            let f = a[r * m + col] / a[col * m + col];
            for c in col..m {
                a[r * m + c] -= f * a[col * m + c];
            }
        }
    }
    det
}
