//! Time-frequency transforms: DFT, STFT, cross-Wigner, symplectic Fourier
//! transform, Moyal residuals and modulation-norm estimates.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;
use std::io::Write;

use crate::error::{Error, Result};
use crate::phase_space::{tf_shift, ModelOrder, Signal, TFPoint};

/// A function on the time-frequency grid, row-major over `(x, omega)`.
#[derive(Debug, Clone)]
pub struct TFMatrix {
    pub model: ModelOrder,
    pub xs: Vec<f64>,
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl TFMatrix {
    pub fn new(model: ModelOrder, xs: Vec<f64>, omegas: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != xs.len() * omegas.len() {
            return Err(Error::InvalidInput("TF matrix shape mismatch".into()));
        }
        Ok(TFMatrix { model, xs, omegas, values })
    }

    /// Grid for the model: finite `L x L`; continuum positions x centered
    /// frequencies `k / extent`.
    pub fn grid_for(model: &ModelOrder) -> (Vec<f64>, Vec<f64>) {
        match *model {
            ModelOrder::Finite { len } => {
                let ax: Vec<f64> = (0..len).map(|v| v as f64).collect();
                (ax.clone(), ax)
            }
            ModelOrder::Continuum { extent, .. } => {
                let xs = model.grid();
                let n = xs.len() as i64;
                let omegas = (0..n).map(|k| (k - n / 2) as f64 / extent).collect();
                (xs, omegas)
            }
        }
    }

    pub fn zeros(model: ModelOrder) -> Self {
        let (xs, omegas) = Self::grid_for(&model);
        let values = vec![Complex64::ZERO; xs.len() * omegas.len()];
        TFMatrix { model, xs, omegas, values }
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn nomega(&self) -> usize {
        self.omegas.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.omegas.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.values[i * self.omegas.len() + j] = v;
    }

    /// Measure of one TF grid cell (finite: `1/L`; continuum: `step / extent`).
    pub fn cell_measure(&self) -> f64 {
        match self.model {
            ModelOrder::Finite { len } => 1.0 / len as f64,
            ModelOrder::Continuum { extent, step, .. } => step / extent,
        }
    }

    /// Indices of the grid node at a TF point, if the point is on the grid.
    pub fn index_of(&self, p: &TFPoint) -> Result<(usize, usize)> {
        match (&self.model, p) {
            (ModelOrder::Finite { len }, TFPoint::Finite { x, omega }) => {
                let l = *len as i64;
                Ok((x.rem_euclid(l) as usize, omega.rem_euclid(l) as usize))
            }
            (ModelOrder::Continuum { extent, step, .. }, TFPoint::Continuum { x, omega }) => {
                let n = self.xs.len() as i64;
                let xi = x[0] / step + (n / 2) as f64;
                let oi = omega[0] * extent + (n / 2) as f64;
                let (xr, or) = (xi.round(), oi.round());
                if (xi - xr).abs() > 1e-6 || (oi - or).abs() > 1e-6 {
                    return Err(Error::IncommensurateShift(format!(
                        "TF point ({}, {}) is off the grid",
                        x[0], omega[0]
                    )));
                }
                if xr < 0.0 || xr >= n as f64 || or < 0.0 || or >= n as f64 {
                    return Err(Error::InvalidInput("TF point outside the grid".into()));
                }
                Ok((xr as usize, or as usize))
            }
            _ => Err(Error::ModelMismatch("point/model kind mismatch".into())),
        }
    }

    pub fn at(&self, p: &TFPoint) -> Result<Complex64> {
        let (i, j) = self.index_of(p)?;
        Ok(self.get(i, j))
    }

    /// CSV export with header `x,omega,re,im`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "x,omega,re,im")?;
        for (i, x) in self.xs.iter().enumerate() {
            for (j, om) in self.omegas.iter().enumerate() {
                let v = self.get(i, j);
                writeln!(w, "{x},{om},{},{}", v.re, v.im)?;
            }
        }
        Ok(())
    }

    /// Magnitude grid as binary PGM (rows: omega from high to low, columns: x).
    pub fn write_pgm(&self, mut w: impl Write) -> std::io::Result<()> {
        let (nx, no) = (self.nx(), self.nomega());
        let max = self.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        writeln!(w, "P5")?;
        writeln!(w, "{nx} {no}")?;
        writeln!(w, "255")?;
        let mut buf = Vec::with_capacity(nx * no);
        for j in (0..no).rev() {
            for i in 0..nx {
                let v = self.get(i, j).norm();
                let px = if max > 0.0 { (v / max * 255.0).round() as u8 } else { 0 };
                buf.push(px);
            }
        }
        w.write_all(&buf)
    }
}

/// Polynomial weight order for `v_s(x, w) = (1 + |x|^2 + |w|^2)^{s/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    pub s: f64,
}

impl WeightSpec {
    pub fn new(s: f64) -> Result<Self> {
        if s < 0.0 {
            return Err(Error::InvalidInput(format!("weight order must be >= 0, got {s}")));
        }
        Ok(WeightSpec { s })
    }

    pub fn eval(&self, x: f64, omega: f64) -> f64 {
        (1.0 + x * x + omega * omega).powf(self.s / 2.0)
    }
}

/// Fourier transform with the `e^{-2 pi i t.w}` kernel. Finite model: unitary
/// (`1/sqrt(L)`), so four applications are the identity. Continuum: Riemann
/// approximation sampled on the centered frequency grid `k/extent`.
pub fn dft(f: &Signal) -> Signal {
    match f.model {
        ModelOrder::Finite { len } => {
            let mut planner = FftPlanner::new();
            let fft = planner.plan_fft_forward(len);
            let mut buf = f.values.clone();
            fft.process(&mut buf);
            let scale = 1.0 / (len as f64).sqrt();
            for v in &mut buf {
                *v *= scale;
            }
            Signal { model: f.model, values: buf }
        }
        ModelOrder::Continuum { step, .. } => {
            // centered-grid DFT: fftshift(FFT(ifftshift(f))) * step
            let n = f.values.len();
            let mut planner = FftPlanner::new();
            let fft = planner.plan_fft_forward(n);
            let mut buf: Vec<Complex64> =
                (0..n).map(|j| f.values[(j + n / 2) % n]).collect();
            fft.process(&mut buf);
            let values = (0..n)
                .map(|k| buf[(k + n / 2) % n] * step)
                .collect();
            Signal { model: f.model, values }
        }
    }
}

/// Inverse of `dft` (finite model only needs it for round trips).
pub fn idft(f: &Signal) -> Signal {
    let conj = Signal {
        model: f.model,
        values: f.values.iter().map(|v| v.conj()).collect(),
    };
    let fw = dft(&conj);
    let scale = match f.model {
        ModelOrder::Finite { .. } => 1.0,
        ModelOrder::Continuum { extent, step, .. } => {
            // forward carries `step`; inverse needs the dual measure `1/extent`
            1.0 / (extent * step)
        }
    };
    Signal {
        model: fw.model,
        values: fw.values.iter().map(|v| v.conj() * scale).collect(),
    }
}

/// Single-point STFT value `V_g f(p) = <f, pi(p) g>`.
pub fn stft_at(f: &Signal, g: &Signal, p: &TFPoint) -> Result<Complex64> {
    f.inner(&tf_shift(g, p)?)
}

/// Full-grid STFT `V_g f(x, w) = <f, pi(x, w) g>`.
pub fn stft(f: &Signal, g: &Signal) -> Result<TFMatrix> {
    f.model.require_same(&g.model)?;
    if g.is_zero() {
        return Err(Error::DegenerateWindow);
    }
    let mut out = TFMatrix::zeros(f.model);
    let n = f.values.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    match f.model {
        ModelOrder::Finite { len } => {
            let l = len as i64;
            let mut buf = vec![Complex64::ZERO; len];
            for x in 0..l {
                for t in 0..l {
                    let src = (t - x).rem_euclid(l) as usize;
                    buf[t as usize] = f.values[t as usize] * g.values[src].conj();
                }
                fft.process(&mut buf);
                for w in 0..len {
                    out.set(x as usize, w, buf[w]);
                }
            }
        }
        ModelOrder::Continuum { step, .. } => {
            let ni = n as i64;
            let mut buf = vec![Complex64::ZERO; n];
            for xi in 0..ni {
                for j in 0..ni {
                    let src = j - (xi - ni / 2);
                    let gv = if src >= 0 && src < ni {
                        g.values[src as usize].conj()
                    } else {
                        Complex64::ZERO
                    };
                    // ifftshift so index 0 holds t = 0
                    buf[((j + ni / 2) % ni) as usize] = f.values[j as usize] * gv;
                }
                fft.process(&mut buf);
                for k in 0..n {
                    out.set(xi as usize, k, buf[(k + n / 2) % n] * step);
                }
            }
        }
    }
    Ok(out)
}

/// Cross-Wigner distribution through the STFT identity
/// `W(f, g)(x, w) = 2^N e^{4 pi i x.w} V_{g~} f(2x, 2w)`.
///
/// Finite model: requires even `L` and uses index doubling mod `L`.
pub fn cross_wigner(f: &Signal, g: &Signal) -> Result<TFMatrix> {
    f.model.require_same(&g.model)?;
    let gr = g.reflect();
    let mut out = TFMatrix::zeros(f.model);
    match f.model {
        ModelOrder::Finite { len } => {
            if len % 2 != 0 {
                return Err(Error::Unsupported(
                    "finite cross-Wigner needs even L (half-integer grid)".into(),
                ));
            }
            let l = len as i64;
            let v = stft(f, &gr)?;
            for x in 0..l {
                for w in 0..l {
                    let phase = Complex64::from_polar(1.0, 2.0 * TAU * (x * w) as f64 / l as f64);
                    let val = v.get(((2 * x) % l) as usize, ((2 * w) % l) as usize);
                    out.set(x as usize, w as usize, 2.0 * phase * val);
                }
            }
        }
        ModelOrder::Continuum { .. } => {
            let xs = out.xs.clone();
            let omegas = out.omegas.clone();
            let half = xs.len() / 2;
            for (i, &x) in xs.iter().enumerate() {
                for (j, &w) in omegas.iter().enumerate() {
                    // 2x falls outside the grid for |x| >= extent/4; the atom
                    // classes used here vanish there
                    let (dx, dw) = (2.0 * x, 2.0 * w);
                    let in_x = i >= half / 2 && i < half + half / 2;
                    let in_w = j >= half / 2 && j < half + half / 2;
                    let val = if in_x && in_w {
                        stft_at(f, &gr, &TFPoint::cont(dx, dw))?
                    } else {
                        Complex64::ZERO
                    };
                    let phase = Complex64::from_polar(1.0, 2.0 * TAU * x * w);
                    out.set(i, j, 2.0 * phase * val);
                }
            }
        }
    }
    Ok(out)
}

/// Symplectic Fourier transform with kernel `e^{2 pi i (y.w - x.eta)}`,
/// normalized so that it is involutive and makes the symplectic Poisson
/// summation formula exact in the finite model.
pub fn symplectic_fourier(f: &TFMatrix) -> Result<TFMatrix> {
    if f.nx() != f.nomega() {
        return Err(Error::InvalidInput("symplectic transform needs a square TF grid".into()));
    }
    let n = f.nx();
    let mut out = TFMatrix {
        model: f.model,
        xs: f.xs.clone(),
        omegas: f.omegas.clone(),
        values: vec![Complex64::ZERO; n * n],
    };
    let (dy, deta, scale) = match f.model {
        ModelOrder::Finite { len } => (1.0 / len as f64, 1.0 / len as f64, 1.0 / len as f64),
        ModelOrder::Continuum { extent, step, .. } => (1.0, 1.0, step / extent * {
            let _ = extent;
            1.0
        }),
    };
    let _ = (dy, deta);
    // separable: first transform over eta for each y, then over y
    let mut mid = vec![Complex64::ZERO; n * n];
    for yi in 0..n {
        for xi in 0..n {
            let mut s = Complex64::ZERO;
            for ei in 0..n {
                let arg = -TAU * f.xs[xi] * f.omegas[ei] * pair_scale(&f.model);
                s += f.get(yi, ei) * Complex64::from_polar(1.0, arg);
            }
            mid[yi * n + xi] = s;
        }
    }
    for xi in 0..n {
        for wi in 0..n {
            let mut s = Complex64::ZERO;
            for yi in 0..n {
                let arg = TAU * f.xs[yi] * f.omegas[wi] * pair_scale(&f.model);
                s += mid[yi * n + xi] * Complex64::from_polar(1.0, arg);
            }
            out.values[xi * n + wi] = s * scale;
        }
    }
    Ok(out)
}

/// `F_s F` evaluated at a single TF point by direct Riemann summation.
pub fn symplectic_fourier_at(f: &TFMatrix, p: &TFPoint) -> Result<Complex64> {
    let (px, pw) = match p {
        TFPoint::Finite { x, omega } => (*x as f64, *omega as f64),
        TFPoint::Continuum { x, omega } => (x[0], omega[0]),
    };
    let scale = match f.model {
        ModelOrder::Finite { len } => 1.0 / len as f64,
        ModelOrder::Continuum { extent, step, .. } => step / extent,
    };
    let ps = pair_scale(&f.model);
    let n = f.nomega();
    let mut s = Complex64::ZERO;
    for (yi, &y) in f.xs.iter().enumerate() {
        let mut row = Complex64::ZERO;
        for (ei, &eta) in f.omegas.iter().enumerate() {
            let arg = TAU * (y * pw - px * eta) * ps;
            row += f.values[yi * n + ei] * Complex64::from_polar(1.0, arg);
        }
        s += row;
    }
    Ok(s * scale)
}

fn pair_scale(model: &ModelOrder) -> f64 {
    match model {
        ModelOrder::Finite { len } => 1.0 / *len as f64,
        ModelOrder::Continuum { .. } => 1.0,
    }
}

/// Residual of the orthogonality relation
/// `sum_p V_{g1}f1(p) conj(V_{g2}f2(p)) w = <f1,f2> conj(<g1,g2>)`.
pub fn moyal_residual(f1: &Signal, f2: &Signal, g1: &Signal, g2: &Signal) -> Result<f64> {
    let v1 = stft(f1, g1)?;
    let v2 = stft(f2, g2)?;
    let w = v1.cell_measure();
    let lhs: Complex64 = v1
        .values
        .iter()
        .zip(&v2.values)
        .map(|(a, b)| a * b.conj())
        .sum::<Complex64>()
        * w;
    let rhs = f1.inner(f2)? * g1.inner(g2)?.conj();
    Ok((lhs - rhs).norm())
}

/// Mixed-norm Riemann-sum estimate of the modulation norm
/// `||f||_{M_{p,q}^{v_s}}` with window `g`. `f64::INFINITY` exponents take the
/// grid maximum.
pub fn modulation_norm(
    f: &Signal,
    g: &Signal,
    p: f64,
    q: f64,
    weight: WeightSpec,
) -> Result<f64> {
    if p < 1.0 || q < 1.0 {
        return Err(Error::InvalidExponent(p.min(q)));
    }
    let v = stft(f, g)?;
    let (mu_x, mu_w) = match f.model {
        ModelOrder::Finite { len } => {
            let r = 1.0 / (len as f64).sqrt();
            (r, r)
        }
        ModelOrder::Continuum { extent, step, .. } => (step, 1.0 / extent),
    };
    let sym = |v: f64, len: usize| {
        if v >= len as f64 / 2.0 { v - len as f64 } else { v }
    };
    let mut outer: Vec<f64> = Vec::with_capacity(v.nomega());
    for (j, &om) in v.omegas.iter().enumerate() {
        let mut inner_acc = 0.0f64;
        let mut inner_max = 0.0f64;
        for (i, &x) in v.xs.iter().enumerate() {
            let (wx, ww) = match f.model {
                ModelOrder::Finite { len } => (sym(x, len), sym(om, len)),
                _ => (x, om),
            };
            let term = v.get(i, j).norm() * weight.eval(wx, ww);
            if p.is_infinite() {
                inner_max = inner_max.max(term);
            } else {
                inner_acc += term.powf(p) * mu_x;
            }
        }
        outer.push(if p.is_infinite() { inner_max } else { inner_acc.powf(1.0 / p) });
    }
    if q.is_infinite() {
        Ok(outer.into_iter().fold(0.0, f64::max))
    } else {
        let s: f64 = outer.into_iter().map(|v| v.powf(q) * mu_w).sum();
        Ok(s.powf(1.0 / q))
    }
}
