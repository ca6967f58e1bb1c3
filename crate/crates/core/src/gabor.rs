//! Gabor systems over separable lattices: analysis/synthesis, frame and
//! frame-type operators, frame bounds, canonical dual and tight windows,
//! the Janssen representation over the adjoint lattice, and the duality
//! residuals (orthogonality-sum and Poisson-summation identities).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nctorus::{integrated_rep, rieffel_inner, InnerSide, TwistedSequence};
use crate::phase_space::{tf_shift, ModelOrder, SeparableLattice, Signal};
use crate::transforms::{stft_at, symplectic_fourier_at, TFMatrix};

/// Relative threshold below which the lower frame bound counts as zero.
pub const FRAME_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct GaborSystem {
    pub atom: Signal,
    pub lattice: SeparableLattice,
}

impl GaborSystem {
    pub fn new(atom: Signal, lattice: SeparableLattice) -> Result<Self> {
        lattice.model.require_same(&atom.model)?;
        if atom.is_zero() {
            return Err(Error::DegenerateWindow);
        }
        Ok(GaborSystem { atom, lattice })
    }

    fn truncation(&self) -> Option<f64> {
        match self.lattice.model {
            ModelOrder::Finite { .. } => None,
            ModelOrder::Continuum { extent, .. } => Some(extent),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_frame(&self) -> bool {
        self.lower > FRAME_TOLERANCE * self.upper
    }
}

/// Analysis coefficients `c_h = <f, pi(h) g>` over the system lattice
/// (continuum: truncated at the grid extent).
pub fn analysis(sys: &GaborSystem, f: &Signal) -> Result<TwistedSequence> {
    rieffel_inner(InnerSide::Left, f, &sys.atom, &sys.lattice, sys.truncation())
}

/// Synthesis `sum_h c_h pi(h) g`, the adjoint of analysis.
pub fn synthesis(sys: &GaborSystem, c: &TwistedSequence) -> Result<Signal> {
    if c.lattice != sys.lattice {
        return Err(Error::ModelMismatch("coefficients indexed by a different lattice".into()));
    }
    integrated_rep(c, &sys.atom)
}

/// Frame operator `S f = sum_h <f, pi(h) g> pi(h) g`.
pub fn frame_operator(sys: &GaborSystem, f: &Signal) -> Result<Signal> {
    synthesis(sys, &analysis(sys, f)?)
}

/// Frame-type operator `S_{g,h} f = sum_h <f, pi(l) h_atom> pi(l) g`; with
/// `h_atom` the canonical dual this is the identity.
pub fn frame_type_operator(sys: &GaborSystem, h_atom: &Signal, f: &Signal) -> Result<Signal> {
    let c = rieffel_inner(InnerSide::Left, f, h_atom, &sys.lattice, sys.truncation())?;
    integrated_rep(&c, &sys.atom)
}

/// Dense matrix of the frame operator (finite model).
pub fn frame_matrix(sys: &GaborSystem) -> Result<DMatrix<Complex64>> {
    let len = match sys.lattice.model {
        ModelOrder::Finite { len } => len,
        _ => return Err(Error::Unsupported("dense frame matrices are finite-model only".into())),
    };
    let mut m = DMatrix::zeros(len, len);
    for j in 0..len {
        let col = frame_operator(sys, &Signal::delta(sys.lattice.model, j))?;
        for i in 0..len {
            m[(i, j)] = col.values[i];
        }
    }
    Ok(m)
}

/// Extreme eigenvalues of the frame operator (finite model, dense Hermitian
/// eigensolve).
pub fn frame_bounds(sys: &GaborSystem) -> Result<FrameBounds> {
    let m = frame_matrix(sys)?;
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for &v in eig.eigenvalues.iter() {
        lower = lower.min(v);
        upper = upper.max(v);
    }
    if !lower.is_finite() || !upper.is_finite() || upper <= 0.0 {
        return Err(Error::Numerical(format!("eigensolve produced bounds [{lower}, {upper}]")));
    }
    Ok(FrameBounds { lower: lower.max(0.0), upper })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// Canonical dual `S^{-1} g`.
    Dual,
    /// Canonical tight `S^{-1/2} g`.
    Tight,
}

/// Canonical dual or tight window via the Hermitian eigendecomposition of the
/// frame operator (finite model).
pub fn dual_window(sys: &GaborSystem, mode: WindowMode) -> Result<Signal> {
    let m = frame_matrix(sys)?;
    let eig = nalgebra::SymmetricEigen::new(m);
    let upper = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let lower = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if lower <= FRAME_TOLERANCE * upper {
        return Err(Error::NotAFrame(format!("frame bounds [{lower:.3e}, {upper:.3e}]")));
    }
    let len = eig.eigenvalues.len();
    // S^p g = U diag(lambda^p) U* g
    let p = match mode {
        WindowMode::Dual => -1.0,
        WindowMode::Tight => -0.5,
    };
    let u = &eig.eigenvectors;
    let g = nalgebra::DVector::from_column_slice(&sys.atom.values);
    let mut y = u.adjoint() * g;
    for i in 0..len {
        y[i] *= Complex64::new(eig.eigenvalues[i].powf(p), 0.0);
    }
    let out = u * y;
    Signal::new(sys.atom.model, out.iter().cloned().collect())
}

/// Janssen coefficients of the frame-type operator `S_{g,h}` over the adjoint
/// lattice: `c_{h!} = vol(D)^{-1} <g, pi(h!) h_atom>`, so that the integrated
/// element reproduces the operator.
#[derive(Debug, Clone)]
pub struct JanssenResult {
    pub coeffs: TwistedSequence,
    /// Largest coefficient magnitude on the outermost truncation shell
    /// (continuum); 0 in the finite model.
    pub tail_bound: f64,
    /// False when the truncation tail is not demonstrably below 1e-12.
    pub certified: bool,
}

pub fn janssen_operator(
    sys: &GaborSystem,
    h_atom: &Signal,
    radius: Option<f64>,
) -> Result<JanssenResult> {
    sys.atom.model.require_same(&h_atom.model)?;
    let adj = sys.lattice.adjoint()?;
    let volume = sys.lattice.volume();
    let points = if adj.model.is_finite() {
        adj.points()?
    } else {
        let r = radius.ok_or_else(|| {
            Error::InsufficientRadius("continuum Janssen sums need a truncation radius".into())
        })?;
        adj.points_within(r)?
    };
    let mut coeffs = TwistedSequence::zero(adj.clone(), 0.0);
    let mut tail_bound = 0.0f64;
    let shell = radius.map(|r| r - adj.a.max(adj.b)).unwrap_or(0.0);
    for ((m, n), p) in points {
        let v = sys.atom.inner(&tf_shift(h_atom, &p)?)? / volume;
        if !adj.model.is_finite() && p.norm(&adj.model) > shell {
            tail_bound = tail_bound.max(v.norm());
        }
        if v.norm() > 0.0 {
            coeffs.set(m, n, v);
        }
    }
    let certified = adj.model.is_finite() || tail_bound < 1e-12;
    Ok(JanssenResult { coeffs, tail_bound, certified })
}

/// Residual of the duality identity relating lattice sums of short-time
/// Fourier products over `D` and its adjoint:
/// `sum_D V_{g1}f1 conj(V_{g2}f2) = vol^{-1} sum_{D!} V_{g1}g2 conj(V_{f1}f2)`.
pub fn figa_residual(
    f1: &Signal,
    f2: &Signal,
    g1: &Signal,
    g2: &Signal,
    d: &SeparableLattice,
    radius: Option<f64>,
) -> Result<f64> {
    let adj = d.adjoint()?;
    let (points, adj_points) = if d.model.is_finite() {
        (d.points()?, adj.points()?)
    } else {
        let r = radius.ok_or_else(|| {
            Error::InsufficientRadius("continuum lattice sums need a truncation radius".into())
        })?;
        (d.points_within(r)?, adj.points_within(r)?)
    };
    let mut lhs = Complex64::ZERO;
    for (_, p) in &points {
        lhs += stft_at(f1, g1, p)? * stft_at(f2, g2, p)?.conj();
    }
    let mut rhs = Complex64::ZERO;
    for (_, p) in &adj_points {
        rhs += stft_at(g2, g1, p)? * stft_at(f2, f1, p)?.conj();
    }
    Ok((lhs - rhs / d.volume()).norm())
}

/// Residual of the symplectic Poisson summation formula
/// `sum_D F(h) = vol^{-1} sum_{D!} (F_s F)(h!)`.
pub fn poisson_residual(f: &TFMatrix, d: &SeparableLattice, radius: Option<f64>) -> Result<f64> {
    f.model.require_same(&d.model)?;
    let adj = d.adjoint()?;
    let (points, adj_points) = if d.model.is_finite() {
        (d.points()?, adj.points()?)
    } else {
        let r = radius.unwrap_or(match d.model {
            ModelOrder::Continuum { extent, .. } => extent / 2.0,
            _ => unreachable!(),
        });
        (d.points_within(r)?, adj.points_within(r)?)
    };
    let mut lhs = Complex64::ZERO;
    for (_, p) in &points {
        lhs += f.at(p)?;
    }
    let mut rhs = Complex64::ZERO;
    for (_, p) in &adj_points {
        rhs += symplectic_fourier_at(f, p)?;
    }
    Ok((lhs - rhs / d.volume()).norm())
}

/// Frame diagnostics serialized for reports (finite model).
pub fn frame_report(sys: &GaborSystem, atom_descriptor: &str) -> Result<serde_json::Value> {
    let bounds = frame_bounds(sys)?;
    let janssen = janssen_operator(sys, &sys.atom, None)?;
    Ok(serde_json::json!({
        "lattice": crate::config::LatticeSpec::from_lattice(&sys.lattice),
        "atom_descriptor": atom_descriptor,
        "A": bounds.lower,
        "B": bounds.upper,
        "redundancy": 1.0 / sys.lattice.volume(),
        "is_frame": bounds.is_frame(),
        "janssen_tail": janssen.tail_bound,
        "truncation_radius": serde_json::Value::Null,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::periodized_gaussian;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_signal(model: ModelOrder, rng: &mut ChaCha8Rng) -> Signal {
        let values = (0..model.grid_len())
            .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        Signal { model, values }
    }

    fn divisors(l: usize) -> Vec<usize> {
        (1..=l).filter(|d| l % d == 0).collect()
    }

    #[test]
    fn analysis_of_the_atom_itself() {
        let lat = SeparableLattice::finite(4, 2, 2).unwrap();
        let g = Signal::delta(lat.model, 0);
        let sys = GaborSystem::new(g.clone(), lat.clone()).unwrap();
        let coeffs = analysis(&sys, &g).unwrap();
        for ((m, n), _) in lat.points().unwrap() {
            // modulations fix the impulse at 0, so every (0, n) coefficient is 1;
            // time-shifted copies are orthogonal to it
            let expect = if m == 0 { Complex64::ONE } else { Complex64::ZERO };
            assert!((coeffs.get(m, n) - expect).norm() < 1e-14);
        }
        // a shifted atom reports its own lattice position with weight ||g||^2
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g.clone(), lat.clone()).unwrap();
        let shifted = tf_shift(&g, &lat.point(1, 1)).unwrap();
        let coeffs = analysis(&sys, &shifted).unwrap();
        assert!((coeffs.get(1, 1) - c(g.norm().powi(2), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn analysis_energy_between_frame_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let lat = SeparableLattice::finite(8, 2, 2).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g, lat).unwrap();
        let bounds = frame_bounds(&sys).unwrap();
        for _ in 0..10 {
            let f = random_signal(sys.atom.model, &mut rng);
            let energy: f64 =
                analysis(&sys, &f).unwrap().coeffs.values().map(|v| v.norm_sqr()).sum();
            let n2 = f.norm().powi(2);
            assert!(bounds.lower * n2 - 1e-10 <= energy && energy <= bounds.upper * n2 + 1e-10);
        }
    }

    #[test]
    fn synthesis_unit_and_adjointness() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let lat = SeparableLattice::finite(8, 4, 2).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g.clone(), lat.clone()).unwrap();
        let e = TwistedSequence::delta(lat.clone(), 0.0);
        assert!(synthesis(&sys, &e).unwrap().sub(&g).unwrap().norm() < 1e-14);
        // <synthesis(c), f> = sum_h c_h conj(analysis(f)_h)
        for _ in 0..5 {
            let f = random_signal(lat.model, &mut rng);
            let mut cseq = TwistedSequence::zero(lat.clone(), 0.0);
            for ((m, n), _) in lat.points().unwrap() {
                cseq.set(m, n, c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            }
            let lhs = synthesis(&sys, &cseq).unwrap().inner(&f).unwrap();
            let af = analysis(&sys, &f).unwrap();
            let rhs: Complex64 = lat
                .points()
                .unwrap()
                .iter()
                .map(|((m, n), _)| cseq.get(*m, *n) * af.get(*m, *n).conj())
                .sum();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn full_lattice_frame_operator_is_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let lat = SeparableLattice::finite(4, 1, 1).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g.clone(), lat).unwrap();
        let scale = 4.0 * g.norm().powi(2);
        for j in 0..4 {
            let d = Signal::delta(sys.atom.model, j);
            let out = frame_operator(&sys, &d).unwrap();
            assert!(out.sub(&d.scale(c(scale, 0.0))).unwrap().norm() < 1e-10);
        }
        let bounds = frame_bounds(&sys).unwrap();
        assert!((bounds.lower - scale).abs() < 1e-10 && (bounds.upper - scale).abs() < 1e-10);
    }

    #[test]
    fn frame_operator_commutes_with_lattice_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let lat = SeparableLattice::finite(8, 2, 4).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g, lat.clone()).unwrap();
        let f = random_signal(lat.model, &mut rng);
        for ((m, n), p) in lat.points().unwrap() {
            let a = frame_operator(&sys, &tf_shift(&f, &p).unwrap()).unwrap();
            let b = tf_shift(&frame_operator(&sys, &f).unwrap(), &p).unwrap();
            assert!(a.sub(&b).unwrap().norm() < 1e-12, "shift ({m},{n})");
        }
    }

    #[test]
    fn frame_operator_positive_and_self_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let lat = SeparableLattice::finite(8, 2, 2).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g, lat).unwrap();
        let m = frame_matrix(&sys).unwrap();
        assert!((&m - m.adjoint()).norm() < 1e-12);
        assert!(frame_bounds(&sys).unwrap().lower >= -1e-10);
    }

    #[test]
    fn frame_type_reduces_to_frame_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let lat = SeparableLattice::finite(8, 4, 4).unwrap();
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g.clone(), lat.clone()).unwrap();
        let f = random_signal(lat.model, &mut rng);
        let a = frame_type_operator(&sys, &g, &f).unwrap();
        let b = frame_operator(&sys, &f).unwrap();
        assert!(a.sub(&b).unwrap().norm() < 1e-12);
    }

    #[test]
    fn reconstruction_with_dual_and_tight_windows() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let lat = SeparableLattice::finite(12, 2, 2).unwrap();
        let g = periodized_gaussian(12, PI);
        let sys = GaborSystem::new(g, lat.clone()).unwrap();
        let dual = dual_window(&sys, WindowMode::Dual).unwrap();
        let tight = dual_window(&sys, WindowMode::Tight).unwrap();
        let tight_sys = GaborSystem::new(tight, lat.clone()).unwrap();
        for _ in 0..5 {
            let f = random_signal(lat.model, &mut rng);
            let rec = frame_type_operator(&sys, &dual, &f).unwrap();
            assert!(rec.sub(&f).unwrap().norm() < 1e-10, "dual reconstruction");
            let rec = frame_operator(&tight_sys, &f).unwrap();
            assert!(rec.sub(&f).unwrap().norm() < 1e-10, "tight reconstruction");
        }
    }

    #[test]
    fn tight_system_dual_is_scaled_atom() {
        // a=b=1 makes any unit atom tight with S = L I
        let lat = SeparableLattice::finite(4, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        let g0 = random_signal(lat.model, &mut rng);
        let g = g0.scale(c(1.0 / g0.norm(), 0.0));
        let sys = GaborSystem::new(g.clone(), lat).unwrap();
        let dual = dual_window(&sys, WindowMode::Dual).unwrap();
        assert!(dual.sub(&g.scale(c(0.25, 0.0))).unwrap().norm() < 1e-12);
    }

    #[test]
    fn rank_deficient_system_is_not_a_frame() {
        let lat = SeparableLattice::finite(4, 4, 4).unwrap(); // single lattice point
        let g = Signal::delta(lat.model, 0);
        let sys = GaborSystem::new(g, lat).unwrap();
        assert!(!frame_bounds(&sys).unwrap().is_frame());
        assert!(matches!(dual_window(&sys, WindowMode::Dual), Err(Error::NotAFrame(_))));
    }

    #[test]
    fn frame_bounds_monotone_on_denser_lattices() {
        let g = periodized_gaussian(8, PI);
        let mut last_lower = 0.0;
        for &a in &[4usize, 2, 1] {
            let lat = SeparableLattice::finite(8, a, 4).unwrap();
            let sys = GaborSystem::new(g.clone(), lat).unwrap();
            let b = frame_bounds(&sys).unwrap();
            assert!(b.lower >= last_lower - 1e-12);
            last_lower = b.lower;
        }
    }

    #[test]
    fn janssen_impulse_case_and_full_lattice() {
        // g = h = delta_0, L=4, a=b=2: both operator forms agree exactly
        let lat = SeparableLattice::finite(4, 2, 2).unwrap();
        let g = Signal::delta(lat.model, 0);
        let sys = GaborSystem::new(g.clone(), lat).unwrap();
        let j = janssen_operator(&sys, &g, None).unwrap();
        assert!(j.certified);
        let m = crate::nctorus::rep_matrix(&j.coeffs).unwrap();
        let s = frame_matrix(&sys).unwrap();
        assert!((m - s).norm() < 1e-12);

        // a=b=1: adjoint is trivial mod L; sum is vol^{-1} ||g||^2 delta_0
        let lat = SeparableLattice::finite(4, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let g = random_signal(lat.model, &mut rng);
        let sys = GaborSystem::new(g.clone(), lat.clone()).unwrap();
        let j = janssen_operator(&sys, &g, None).unwrap();
        let expect = TwistedSequence::delta(lat.adjoint().unwrap(), 0.0)
            .scale(c(4.0 * g.norm().powi(2), 0.0));
        assert!(j.coeffs.max_diff(&expect).unwrap() < 1e-10);
    }

    #[test]
    fn janssen_equality_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for l in [4usize, 8, 12] {
            for &a in &divisors(l) {
                for &b in &divisors(l) {
                    let lat = SeparableLattice::finite(l, a, b).unwrap();
                    let g = random_signal(lat.model, &mut rng);
                    let h = random_signal(lat.model, &mut rng);
                    let f = random_signal(lat.model, &mut rng);
                    let sys = GaborSystem::new(g, lat).unwrap();
                    let direct = frame_type_operator(&sys, &h, &f).unwrap();
                    let j = janssen_operator(&sys, &h, None).unwrap();
                    let via = integrated_rep(&j.coeffs, &f).unwrap();
                    let r = direct.sub(&via).unwrap().norm();
                    assert!(r < 1e-10, "L={l} a={a} b={b}: residual {r}");
                }
            }
        }
    }

    #[test]
    fn duality_sum_identity_finite() {
        let lat = SeparableLattice::finite(4, 2, 2).unwrap();
        let d0 = Signal::delta(lat.model, 0);
        assert!(figa_residual(&d0, &d0, &d0, &d0, &lat, None).unwrap() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let lat = SeparableLattice::finite(16, 4, 4).unwrap();
        for _ in 0..5 {
            let [f1, f2, g1, g2] =
                std::array::from_fn(|_| random_signal(lat.model, &mut rng));
            let r = figa_residual(&f1, &f2, &g1, &g2, &lat, None).unwrap();
            assert!(r < 1e-10, "residual {r}");
        }
    }

    #[test]
    fn duality_sum_identity_continuum_gaussians() {
        let model = ModelOrder::continuum(1, 16.0, 0.05).unwrap();
        let lat = SeparableLattice::continuum(model, 0.8, 0.8).unwrap();
        let gauss = |decay: f64, shift: f64| {
            Signal::from_fn(model, move |t| c((-decay * (t - shift).powi(2)).exp(), 0.0))
        };
        let f1 = gauss(PI, 0.0);
        let f2 = gauss(PI, 0.4);
        let g1 = gauss(1.5 * PI, 0.0);
        let g2 = gauss(PI, -0.4);
        let r = figa_residual(&f1, &f2, &g1, &g2, &lat, Some(8.0)).unwrap();
        assert!(r < 1e-8, "residual {r}");
        assert!(figa_residual(&f1, &f2, &g1, &g2, &lat, None).is_err());
    }

    #[test]
    fn poisson_summation_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let model = ModelOrder::finite(8).unwrap();
        let lat = SeparableLattice::finite(8, 2, 2).unwrap();
        for _ in 0..5 {
            let mut f = TFMatrix::zeros(model);
            for v in &mut f.values {
                *v = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
            let r = poisson_residual(&f, &lat, None).unwrap();
            assert!(r < 1e-10, "residual {r}");
        }
    }

    #[test]
    fn poisson_summation_continuum_gaussian() {
        // F(z) = e^{-pi |z|^2} over the integer lattice: both sides are the
        // same classical theta value
        let model = ModelOrder::continuum(1, 16.0, 1.0 / 16.0).unwrap();
        let lat = SeparableLattice::continuum(model, 1.0, 1.0).unwrap();
        let mut f = TFMatrix::zeros(model);
        let (xs, omegas) = (f.xs.clone(), f.omegas.clone());
        for (i, &x) in xs.iter().enumerate() {
            for (j, &w) in omegas.iter().enumerate() {
                f.set(i, j, c((-PI * (x * x + w * w)).exp(), 0.0));
            }
        }
        let r = poisson_residual(&f, &lat, Some(7.0)).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn frame_report_contents() {
        let lat = SeparableLattice::finite(12, 2, 2).unwrap();
        let g = periodized_gaussian(12, PI);
        let sys = GaborSystem::new(g, lat).unwrap();
        let report = frame_report(&sys, "gaussian").unwrap();
        assert_eq!(report["is_frame"], serde_json::json!(true));
        assert!((report["redundancy"].as_f64().unwrap() - 3.0).abs() < 1e-12);
        assert!(report["A"].as_f64().unwrap() > 0.0);
    }
}
