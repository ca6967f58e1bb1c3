//! The twisted group algebra of a time-frequency lattice: twisted convolution,
//! involution, weighted norms, the integrated representation, module inner
//! products and actions over the adjoint lattice, and element inversion.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::config::LatticeSpec;
use crate::error::{Error, Result};
use crate::phase_space::{
    cocycle, composition_phase, tf_shift, ModelOrder, SeparableLattice, Signal, TFPoint,
};

/// A finitely supported coefficient sequence on a lattice, the concrete form
/// of an element of the twisted group algebra. Keys are canonical lattice
/// indices `(m, n)` for the point `(m a, n b)`.
#[derive(Debug, Clone)]
pub struct TwistedSequence {
    pub lattice: SeparableLattice,
    /// Weight order of the ambient algebra (`v_s` norms).
    pub s: f64,
    pub coeffs: BTreeMap<(i64, i64), Complex64>,
}

impl TwistedSequence {
    pub fn zero(lattice: SeparableLattice, s: f64) -> Self {
        TwistedSequence { lattice, s, coeffs: BTreeMap::new() }
    }

    /// The algebra unit: coefficient 1 at the lattice origin.
    pub fn delta(lattice: SeparableLattice, s: f64) -> Self {
        let mut seq = TwistedSequence::zero(lattice, s);
        seq.set(0, 0, Complex64::ONE);
        seq
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        let key = self.lattice.canonical_index(m, n);
        self.coeffs.get(&key).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn set(&mut self, m: i64, n: i64, v: Complex64) {
        let key = self.lattice.canonical_index(m, n);
        if v.norm() == 0.0 {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
    }

    pub fn add_to(&mut self, m: i64, n: i64, v: Complex64) {
        let cur = self.get(m, n);
        self.set(m, n, cur + v);
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&k, &v)| (k, v * c)).collect();
        TwistedSequence { lattice: self.lattice.clone(), s: self.s, coeffs }
    }

    pub fn sub(&self, other: &TwistedSequence) -> Result<TwistedSequence> {
        require_same_lattice(self, other)?;
        let mut out = self.clone();
        for (&(m, n), &v) in &other.coeffs {
            out.add_to(m, n, -v);
        }
        Ok(out)
    }

    /// `max_h |a_h - b_h|` over the union of supports.
    pub fn max_diff(&self, other: &TwistedSequence) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.coeffs.values().map(|v| v.norm()).fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<CoeffJson> = self
            .coeffs
            .iter()
            .map(|(&(m, n), &v)| {
                let (hx, hw) = match self.lattice.point(m, n) {
                    TFPoint::Finite { x, omega } => (x as f64, omega as f64),
                    TFPoint::Continuum { x, omega } => (x[0], omega[0]),
                };
                CoeffJson { h: [hx, hw], re: v.re, im: v.im }
            })
            .collect();
        serde_json::json!({
            "lattice": LatticeSpec::from_lattice(&self.lattice),
            "s": self.s,
            "coeffs": coeffs,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<TwistedSequence> {
        let parsed: SeqJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("twisted sequence JSON: {e}")))?;
        let lattice = parsed.lattice.to_lattice()?;
        let mut seq = TwistedSequence::zero(lattice, parsed.s);
        for c in parsed.coeffs {
            let (m, n) = (c.h[0] / seq.lattice.a, c.h[1] / seq.lattice.b);
            if (m - m.round()).abs() > 1e-9 || (n - n.round()).abs() > 1e-9 {
                return Err(Error::InvalidInput(format!(
                    "coefficient location ({}, {}) is off the lattice",
                    c.h[0], c.h[1]
                )));
            }
            seq.set(m.round() as i64, n.round() as i64, Complex64::new(c.re, c.im));
        }
        Ok(seq)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    h: [f64; 2],
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct SeqJson {
    lattice: LatticeSpec,
    s: f64,
    coeffs: Vec<CoeffJson>,
}

fn require_same_lattice(a: &TwistedSequence, b: &TwistedSequence) -> Result<()> {
    if a.lattice == b.lattice {
        Ok(())
    } else {
        Err(Error::ModelMismatch("sequences live on different lattices".into()))
    }
}

/// Twisted convolution, the coefficient-level image of the operator product:
/// `pi(a # b) = pi(a) pi(b)`, so the phase on each term is the composition
/// phase `psi(l, h - l)`.
pub fn twisted_convolution(a: &TwistedSequence, b: &TwistedSequence) -> Result<TwistedSequence> {
    require_same_lattice(a, b)?;
    let model = &a.lattice.model;
    let mut out = TwistedSequence::zero(a.lattice.clone(), a.s);
    for (&(ma, na), &va) in &a.coeffs {
        let pa = a.lattice.point(ma, na);
        for (&(mb, nb), &vb) in &b.coeffs {
            let pb = b.lattice.point(mb, nb);
            let phase = composition_phase(model, &pa, &pb)?;
            out.add_to(ma + mb, na + nb, va * vb * phase.value());
        }
    }
    Ok(out)
}

/// Involution `a*_h = conj(alpha(h, h) a_{-h})`, the coefficient-level adjoint:
/// `pi(a*) = pi(a)^dagger`.
pub fn involution(a: &TwistedSequence) -> TwistedSequence {
    let model = &a.lattice.model;
    let mut out = TwistedSequence::zero(a.lattice.clone(), a.s);
    for (&(m, n), &v) in &a.coeffs {
        let key = a.lattice.canonical_index(-m, -n);
        let h = a.lattice.point(key.0, key.1);
        let alpha = cocycle(model, &h, &h).expect("same-kind points");
        out.set(key.0, key.1, (alpha.value() * v).conj());
    }
    out
}

/// Weighted l1 norm `sum_h |a_h| (1 + |h|^2)^{s/2}`; finite lattice points are
/// measured by their symmetric residues.
pub fn weighted_norm(a: &TwistedSequence, s: f64) -> f64 {
    a.coeffs
        .iter()
        .map(|(&(m, n), &v)| {
            let r = a.lattice.point(m, n).norm(&a.lattice.model);
            v.norm() * (1.0 + r * r).powf(s / 2.0)
        })
        .sum()
}

/// The integrated representation `pi(a) f = sum_h a_h pi(h) f`.
pub fn integrated_rep(a: &TwistedSequence, f: &Signal) -> Result<Signal> {
    a.lattice.model.require_same(&f.model)?;
    let mut out = Signal::zeros(f.model);
    for (&(m, n), &v) in &a.coeffs {
        let shifted = tf_shift(f, &a.lattice.point(m, n))?;
        out = out.add(&shifted.scale(v))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSide {
    Left,
    Right,
}

/// Module-valued inner products. `Left` takes values in the algebra of `d`
/// with coefficients `<f, pi(h) g>`; `Right` in the algebra of the adjoint
/// lattice with coefficients `<pi(h!) f, g>` (the placement that makes the
/// module associativity identity exact on every divisor lattice). Continuum
/// lattices need a truncation radius.
pub fn rieffel_inner(
    side: InnerSide,
    f: &Signal,
    g: &Signal,
    d: &SeparableLattice,
    radius: Option<f64>,
) -> Result<TwistedSequence> {
    f.model.require_same(&g.model)?;
    d.model.require_same(&f.model)?;
    let lattice = match side {
        InnerSide::Left => d.clone(),
        InnerSide::Right => d.adjoint()?,
    };
    let points = if lattice.model.is_finite() {
        lattice.points()?
    } else {
        let r = radius.ok_or_else(|| {
            Error::InsufficientRadius("continuum inner products need a truncation radius".into())
        })?;
        lattice.points_within(r)?
    };
    let mut out = TwistedSequence::zero(lattice, 0.0);
    for ((m, n), p) in points {
        let v = match side {
            InnerSide::Left => f.inner(&tf_shift(g, &p)?)?,
            InnerSide::Right => tf_shift(f, &p)?.inner(g)?,
        };
        if v.norm() > 0.0 {
            out.set(m, n, v);
        }
    }
    Ok(out)
}

/// Right action of a sequence on the adjoint lattice:
/// `f . b = vol(D)^{-1} sum_{h!} pi(h!) f conj(b_{h!})`, normalized so the
/// module associativity identity is exact in the finite model. `vol(D)^{-1}`
/// equals the volume of `b`'s own (adjoint) lattice.
pub fn right_action(f: &Signal, b: &TwistedSequence) -> Result<Signal> {
    b.lattice.model.require_same(&f.model)?;
    let scale = b.lattice.volume();
    let mut out = Signal::zeros(f.model);
    for (&(m, n), &v) in &b.coeffs {
        let shifted = tf_shift(f, &b.lattice.point(m, n))?;
        out = out.add(&shifted.scale(v.conj()))?;
    }
    Ok(out.scale(Complex64::new(scale, 0.0)))
}

/// `|| pi(<f,g>_D) k - f . <g,k>_{D!} ||_2`, the module associativity
/// residual; exact (1e-10) in the finite model.
pub fn associativity_residual(
    f: &Signal,
    g: &Signal,
    k: &Signal,
    d: &SeparableLattice,
    radius: Option<f64>,
) -> Result<f64> {
    let left = rieffel_inner(InnerSide::Left, f, g, d, radius)?;
    let lhs = integrated_rep(&left, k)?;
    let right = rieffel_inner(InnerSide::Right, g, k, d, radius)?;
    let rhs = right_action(f, &right)?;
    Ok(lhs.sub(&rhs)?.norm())
}

/// Dense matrix of `pi(p)` in the finite model: `M[t, t-x] = e^{2 pi i t w/L}`.
pub fn shift_matrix(model: &ModelOrder, p: &TFPoint) -> Result<DMatrix<Complex64>> {
    let len = match model {
        ModelOrder::Finite { len } => *len,
        _ => return Err(Error::Unsupported("dense matrices exist only in the finite model".into())),
    };
    let (x, w) = match p {
        TFPoint::Finite { x, omega } => (*x, *omega),
        _ => return Err(Error::ModelMismatch("finite model needs finite points".into())),
    };
    let l = len as i64;
    let mut m = DMatrix::zeros(len, len);
    for t in 0..l {
        let phase = Complex64::from_polar(1.0, TAU * (t * w) as f64 / l as f64);
        m[(t as usize, (t - x).rem_euclid(l) as usize)] = phase;
    }
    Ok(m)
}

/// Dense matrix of the integrated representation (finite model).
pub fn rep_matrix(a: &TwistedSequence) -> Result<DMatrix<Complex64>> {
    let len = a.lattice.model.grid_len();
    let mut m = DMatrix::zeros(len, len);
    for (&(mm, nn), &v) in &a.coeffs {
        let p = a.lattice.point(mm, nn);
        m += shift_matrix(&a.lattice.model, &p)? * v;
    }
    Ok(m)
}

/// Coefficients of `a^{-1}` in the same algebra, recovered from the inverse of
/// the representation matrix by the trace pairing `a_h = tr(M pi(h)^dagger)/L`.
pub fn invert_element(a: &TwistedSequence) -> Result<TwistedSequence> {
    let m = rep_matrix(a)?;
    let len = m.nrows();
    let svd = m.clone().svd(false, false);
    let min_sv = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_sv <= 1e-8 {
        return Err(Error::NotInvertible(format!("minimum singular value {min_sv:.3e}")));
    }
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible("matrix inversion failed".into()))?;
    let mut out = TwistedSequence::zero(a.lattice.clone(), a.s);
    let l = len as i64;
    for ((mm, nn), p) in a.lattice.points()? {
        let (x, w) = match p {
            TFPoint::Finite { x, omega } => (x, omega),
            _ => unreachable!(),
        };
        let mut tr = Complex64::ZERO;
        for t in 0..l {
            let phase = Complex64::from_polar(1.0, -TAU * (t * w) as f64 / l as f64);
            tr += inv[(t as usize, (t - x).rem_euclid(l) as usize)] * phase;
        }
        let c = tr / len as f64;
        if c.norm() > 1e-14 {
            out.set(mm, nn, c);
        }
    }
    Ok(out)
}
