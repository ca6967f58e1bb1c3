//! End-to-end identity verification: each checker exercises one headline
//! identity at its frozen tolerances and reports a pass/fail verdict with the
//! worst observed residual. Shared by the acceptance test suite and the
//! `verify-all` command.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::config::periodized_gaussian;
use crate::error::Result;
use crate::gabor::{
    self, figa_residual, frame_matrix, frame_type_operator, janssen_operator, poisson_residual,
    GaborSystem, WindowMode,
};
use crate::nctorus::{
    associativity_residual, integrated_rep, involution, rep_matrix, twisted_convolution,
    TwistedSequence,
};
use crate::phase_space::{ModelOrder, SeparableLattice, Signal, TFPoint};
use crate::theta::{
    functional_equation_residual, gaussian_ambiguity, gaussian_window, gt_matrix,
    invertibility_sweep, quantum_theta, PositivityTag, SiegelMatrix, DENSITY_SWEEP,
};
use crate::transforms::{moyal_residual, stft_at, TFMatrix};

#[derive(Debug, Clone, serde::Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn from_residual(name: &'static str, residual: f64, tolerance: f64) -> Self {
        CriterionResult {
            name,
            passed: residual <= tolerance,
            detail: format!("worst residual {residual:.3e} (tolerance {tolerance:.0e})"),
        }
    }
}

fn random_signal(model: ModelOrder, rng: &mut ChaCha8Rng) -> Signal {
    let values = (0..model.grid_len())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    Signal { model, values }
}

fn divisors(l: usize) -> Vec<usize> {
    (1..=l).filter(|d| l % d == 0).collect()
}

/// Continuum grid whose step is commensurate with both the 0.8-lattice and
/// its 1.25-adjoint (the spec-level default step 1/16 is not).
fn shift_grid() -> ModelOrder {
    ModelOrder::continuum(1, 16.0, 0.05).unwrap()
}

fn default_grid() -> ModelOrder {
    ModelOrder::continuum(1, 16.0, 1.0 / 16.0).unwrap()
}

fn gaussian_on(model: ModelOrder, decay: f64, shift: f64) -> Signal {
    Signal::from_fn(model, move |t| {
        Complex64::new((-decay * (t - shift) * (t - shift)).exp(), 0.0)
    })
}

/// Orthogonality relations of the short-time Fourier transform.
pub fn check_orthogonality(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for l in [4usize, 8, 16, 32] {
        let model = ModelOrder::finite(l)?;
        for _ in 0..100 {
            let [f1, f2, g1, g2] = std::array::from_fn(|_| random_signal(model, &mut rng));
            worst = worst.max(moyal_residual(&f1, &f2, &g1, &g2)?);
        }
    }
    Ok(CriterionResult::from_residual("STFT orthogonality relations", worst, 1e-10))
}

/// Lattice duality of STFT product sums over a lattice and its adjoint.
pub fn check_duality_sums(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1);
    let mut worst = 0.0f64;
    for l in [4usize, 8, 12, 16] {
        for &a in &divisors(l) {
            for &b in &divisors(l) {
                let lat = SeparableLattice::finite(l, a, b)?;
                let [f1, f2, g1, g2] =
                    std::array::from_fn(|_| random_signal(lat.model, &mut rng));
                worst = worst.max(figa_residual(&f1, &f2, &g1, &g2, &lat, None)?);
            }
        }
    }
    if worst > 1e-10 {
        return Ok(CriterionResult::from_residual("lattice duality of STFT sums", worst, 1e-10));
    }
    let model = shift_grid();
    let lat = SeparableLattice::continuum(model, 0.8, 0.8)?;
    let f1 = gaussian_on(model, PI, 0.0);
    let f2 = gaussian_on(model, PI, 0.4);
    let g1 = gaussian_on(model, 1.5 * PI, 0.0);
    let g2 = gaussian_on(model, PI, -0.4);
    let cont = figa_residual(&f1, &f2, &g1, &g2, &lat, Some(8.0))?;
    let passed = cont <= 1e-8;
    Ok(CriterionResult {
        name: "lattice duality of STFT sums",
        passed,
        detail: format!("finite worst {worst:.3e} (tol 1e-10), continuum {cont:.3e} (tol 1e-8)"),
    })
}

/// Frame-type operators against their adjoint-lattice series form, plus the
/// two independent computation paths for the Gaussian theta coefficients.
pub fn check_adjoint_series(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let mut worst = 0.0f64;
    for l in 2..=16usize {
        for &a in &divisors(l) {
            for &b in &divisors(l) {
                let lat = SeparableLattice::finite(l, a, b)?;
                let g = random_signal(lat.model, &mut rng);
                let h = random_signal(lat.model, &mut rng);
                let sys = GaborSystem::new(g, lat)?;
                let direct = frame_matrix(&GaborSystem::new(
                    sys.atom.clone(),
                    sys.lattice.clone(),
                )?)?;
                let j = janssen_operator(&sys, &sys.atom, None)?;
                worst = worst.max((direct - rep_matrix(&j.coeffs)?).norm());
                // mixed-window variant, column by column
                let jm = janssen_operator(&sys, &h, None)?;
                for t in 0..l {
                    let e = Signal::delta(sys.atom.model, t);
                    let d = frame_type_operator(&sys, &h, &e)?;
                    let v = integrated_rep(&jm.coeffs, &e)?;
                    worst = worst.max(d.sub(&v)?.norm());
                }
            }
        }
    }
    let t = SiegelMatrix::standard();
    let model = default_grid();
    let d = SeparableLattice::continuum(model, 0.8, 0.8)?;
    let theta = quantum_theta(&t, &d, 8.0)?;
    let g = gaussian_window(&t, &model)?;
    let sys = GaborSystem::new(g.clone(), d)?;
    let j = janssen_operator(&sys, &g, Some(8.0))?;
    let cross = theta.coeffs.max_diff(&j.coeffs)?;
    let passed = worst <= 1e-10 && cross <= 1e-8;
    Ok(CriterionResult {
        name: "adjoint-lattice series of frame operators",
        passed,
        detail: format!(
            "finite worst {worst:.3e} (tol 1e-10), theta coefficient paths {cross:.3e} (tol 1e-8)"
        ),
    })
}

/// Module associativity between the lattice algebra and its adjoint.
pub fn check_associativity(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut worst = 0.0f64;
    for l in [4usize, 8] {
        for &a in &divisors(l) {
            for &b in &divisors(l) {
                let lat = SeparableLattice::finite(l, a, b)?;
                let f = random_signal(lat.model, &mut rng);
                let g = random_signal(lat.model, &mut rng);
                let k = random_signal(lat.model, &mut rng);
                worst = worst.max(associativity_residual(&f, &g, &k, &lat, None)?);
            }
        }
    }
    let model = shift_grid();
    let lat = SeparableLattice::continuum(model, 0.8, 0.8)?;
    let f = gaussian_on(model, PI, 0.0);
    let cont = associativity_residual(&f, &f, &f, &lat, Some(8.0))?;
    let passed = worst <= 1e-10 && cont <= 1e-7;
    Ok(CriterionResult {
        name: "module associativity",
        passed,
        detail: format!("finite worst {worst:.3e} (tol 1e-10), continuum {cont:.3e} (tol 1e-7)"),
    })
}

/// Homomorphism and adjoint axioms of the integrated representation.
pub fn check_representation_axioms(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let lat = SeparableLattice::finite(4, 1, 1)?;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut a = TwistedSequence::zero(lat.clone(), 0.0);
        let mut b = TwistedSequence::zero(lat.clone(), 0.0);
        for ((m, n), _) in lat.points()? {
            a.set(m, n, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            b.set(m, n, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        }
        let (ma, mb) = (rep_matrix(&a)?, rep_matrix(&b)?);
        worst = worst.max((rep_matrix(&twisted_convolution(&a, &b)?)? - &ma * &mb).norm());
        worst = worst.max((rep_matrix(&involution(&a))? - ma.adjoint()).norm());
    }
    Ok(CriterionResult::from_residual("twisted-algebra representation axioms", worst, 1e-12))
}

/// Structure of the Gaussian phase-space form and the closed-form ambiguity.
pub fn check_gaussian_structure(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let mut worst_fact = 0.0f64;
    let mut worst_sympl = 0.0f64;
    for _ in 0..100 {
        for n in [1usize, 2] {
            let mut t = nalgebra::DMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                    t[(i, j)] = v;
                    t[(j, i)] = v;
                }
                t[(i, i)] += Complex64::new(2.0 + rng.random::<f64>(), 0.0);
            }
            let t = SiegelMatrix::new(t, PositivityTag::Decay)?;
            let (g, s) = gt_matrix(&t)?;
            worst_fact = worst_fact.max((&g - s.transpose() * &s).norm());
            let mut j = nalgebra::DMatrix::zeros(2 * n, 2 * n);
            for i in 0..n {
                j[(i, n + i)] = 1.0;
                j[(n + i, i)] = -1.0;
            }
            worst_sympl = worst_sympl.max((g.transpose() * &j * g - j).norm());
        }
    }
    let mut worst_amb = 0.0f64;
    let model = default_grid();
    let adj = SeparableLattice::continuum(model, 1.25, 1.25)?;
    for tau in [Complex64::new(PI, 0.0), Complex64::new(2.0, 1.0)] {
        let t = SiegelMatrix::scalar(tau, PositivityTag::Decay)?;
        let g = gaussian_window(&t, &model)?;
        for (_, p) in adj.points_within(6.0)? {
            let direct = stft_at(&g, &g, &p)?;
            worst_amb = worst_amb.max((direct - gaussian_ambiguity(&t, &p)?).norm());
        }
    }
    let passed = worst_fact <= 1e-12 && worst_sympl <= 1e-10 && worst_amb <= 1e-8;
    Ok(CriterionResult {
        name: "Gaussian phase-space structure",
        passed,
        detail: format!(
            "factorization {worst_fact:.3e} (tol 1e-12), symplectic {worst_sympl:.3e} (tol 1e-10), ambiguity {worst_amb:.3e} (tol 1e-8)"
        ),
    })
}

/// Poisson-type functional equation of the Gaussian theta series.
pub fn check_theta_functional_equation(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let t = SiegelMatrix::standard();
    let d = SeparableLattice::continuum(default_grid(), 0.8, 0.8)?;
    let mut worst = functional_equation_residual(&t, &d, &TFPoint::cont(0.0, 0.0), 8.0)?;
    for _ in 0..10 {
        let x = TFPoint::cont(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
        worst = worst.max(functional_equation_residual(&t, &d, &x, 8.0)?);
    }
    Ok(CriterionResult::from_residual("theta functional equation", worst, 1e-8))
}

/// Invertibility of the Gaussian frame operator across the density sweep.
pub fn check_invertibility_frontier() -> Result<CriterionResult> {
    let reports = invertibility_sweep(144, &DENSITY_SWEEP)?;
    let verdicts_ok = reports.iter().all(|r| r.invertible == (r.ab < 1.0));
    let r081 = reports[2].ratio;
    let r100 = reports[3].ratio.max(0.0);
    let margin_ok = r081 >= 20.0 * r100;
    let table: Vec<String> = reports
        .iter()
        .map(|r| format!("ab={:.2}:{}", r.ab, if r.invertible { "inv" } else { "non" }))
        .collect();
    Ok(CriterionResult {
        name: "critical-density invertibility frontier",
        passed: verdicts_ok && margin_ok,
        detail: format!("{} | A/B at 0.81 = {r081:.3e}, at 1.0 = {r100:.3e}", table.join(" ")),
    })
}

/// Reconstruction from canonical dual and tight windows.
pub fn check_reconstruction(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let lat = SeparableLattice::finite(12, 2, 2)?;
    let g = periodized_gaussian(12, PI);
    let sys = GaborSystem::new(g, lat.clone())?;
    let dual = gabor::dual_window(&sys, WindowMode::Dual)?;
    let tight = gabor::dual_window(&sys, WindowMode::Tight)?;
    let tight_sys = GaborSystem::new(tight, lat.clone())?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_signal(lat.model, &mut rng);
        worst = worst.max(frame_type_operator(&sys, &dual, &f)?.sub(&f)?.norm());
        worst = worst.max(gabor::frame_operator(&tight_sys, &f)?.sub(&f)?.norm());
    }
    Ok(CriterionResult::from_residual("dual/tight window reconstruction", worst, 1e-10))
}

/// Symplectic Poisson summation over a lattice and its adjoint.
pub fn check_poisson_summation(seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let model = ModelOrder::finite(8)?;
    let lat = SeparableLattice::finite(8, 2, 2)?;
    let mut worst_finite = 0.0f64;
    for _ in 0..20 {
        let mut f = TFMatrix::zeros(model);
        for v in &mut f.values {
            *v = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        worst_finite = worst_finite.max(poisson_residual(&f, &lat, None)?);
    }
    let cm = default_grid();
    let clat = SeparableLattice::continuum(cm, 1.0, 1.0)?;
    let mut f = TFMatrix::zeros(cm);
    let (xs, omegas) = (f.xs.clone(), f.omegas.clone());
    for (i, &x) in xs.iter().enumerate() {
        for (j, &w) in omegas.iter().enumerate() {
            f.set(i, j, Complex64::new((-PI * (x * x + w * w)).exp(), 0.0));
        }
    }
    let cont = poisson_residual(&f, &clat, Some(7.0))?;
    let passed = worst_finite <= 1e-10 && cont <= 1e-8;
    Ok(CriterionResult {
        name: "symplectic Poisson summation",
        passed,
        detail: format!(
            "finite worst {worst_finite:.3e} (tol 1e-10), continuum {cont:.3e} (tol 1e-8)"
        ),
    })
}

/// Run every identity check with a shared base seed.
pub fn run_all(seed: u64) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        check_orthogonality(seed)?,
        check_duality_sums(seed)?,
        check_adjoint_series(seed)?,
        check_associativity(seed)?,
        check_representation_axioms(seed)?,
        check_gaussian_structure(seed)?,
        check_theta_functional_equation(seed)?,
        check_invertibility_frontier()?,
        check_reconstruction(seed)?,
        check_poisson_summation(seed)?,
    ])
}
