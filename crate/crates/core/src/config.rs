//! Serializable descriptors for models, lattices and windows, shared by the
//! JSON report formats and the command-line front end.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{ModelOrder, SeparableLattice, Signal};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Finite { len: usize },
    Continuum { dim: usize, extent: f64, step: f64 },
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<ModelOrder> {
        match *self {
            ModelSpec::Finite { len } => ModelOrder::finite(len),
            ModelSpec::Continuum { dim, extent, step } => ModelOrder::continuum(dim, extent, step),
        }
    }

    pub fn from_model(model: &ModelOrder) -> Self {
        match *model {
            ModelOrder::Finite { len } => ModelSpec::Finite { len },
            ModelOrder::Continuum { dim, extent, step } => {
                ModelSpec::Continuum { dim, extent, step }
            }
        }
    }

    /// Sampled continuum line at the defaults that make Gaussian quadrature
    /// accurate to ~1e-10 (extent 16, step 1/16).
    pub fn default_continuum() -> Self {
        ModelSpec::Continuum { dim: 1, extent: 16.0, step: 1.0 / 16.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LatticeSpec {
    pub model: ModelSpec,
    pub a: f64,
    pub b: f64,
}

impl LatticeSpec {
    pub fn to_lattice(&self) -> Result<SeparableLattice> {
        let model = self.model.to_model()?;
        if model.is_finite() {
            let len = match model {
                ModelOrder::Finite { len } => len,
                _ => unreachable!(),
            };
            if self.a.fract() != 0.0 || self.b.fract() != 0.0 {
                return Err(Error::UnsupportedLattice(
                    "finite lattice steps must be integers".into(),
                ));
            }
            SeparableLattice::finite(len, self.a as usize, self.b as usize)
        } else {
            SeparableLattice::continuum(model, self.a, self.b)
        }
    }

    pub fn from_lattice(l: &SeparableLattice) -> Self {
        LatticeSpec { model: ModelSpec::from_model(&l.model), a: l.a, b: l.b }
    }
}

/// Window descriptor: a sampled Gaussian `e^{-t T t}` (decay parameter `t`,
/// standard Gaussian at `t = pi`), an impulse at the grid origin, or samples
/// loaded from a CSV file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum WindowSpec {
    Gaussian { t: f64 },
    Delta,
    File { path: String },
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec::Gaussian { t: std::f64::consts::PI }
    }
}

impl WindowSpec {
    /// Materialize the window on a model. `File` windows are resolved by the
    /// caller (the CLI), not here.
    pub fn build(&self, model: &ModelOrder) -> Result<Signal> {
        match self {
            WindowSpec::Delta => {
                let idx = match model {
                    ModelOrder::Finite { .. } => 0,
                    // continuum grid origin sits at index n/2
                    ModelOrder::Continuum { .. } => model.grid_len() / 2,
                };
                Ok(Signal::delta(*model, idx))
            }
            WindowSpec::Gaussian { t } => {
                if *t <= 0.0 {
                    return Err(Error::NonDecaying(format!("decay parameter {t} <= 0")));
                }
                let decay = *t;
                Ok(match model {
                    ModelOrder::Finite { len } => periodized_gaussian(*len, decay),
                    ModelOrder::Continuum { .. } => Signal::from_fn(*model, |x| {
                        num_complex::Complex64::new((-decay * x * x).exp(), 0.0)
                    }),
                })
            }
            WindowSpec::File { path } => {
                Err(Error::InvalidInput(format!("window file {path} must be loaded by the caller")))
            }
        }
    }
}

/// Gaussian adapted to `Z_L`: `g[t] = sum_j e^{-decay (t' + jL)^2 / L}` with
/// `t'` the symmetric residue. Scale `1/L` inside the exponent keeps the atom
/// spread proportional to `sqrt(L)`, matching critical-density behavior.
pub fn periodized_gaussian(len: usize, decay: f64) -> Signal {
    let model = ModelOrder::finite(len).expect("len validated by caller");
    let l = len as f64;
    let values = (0..len)
        .map(|t| {
            let mut s = 0.0;
            for j in -8i64..=8 {
                let u = t as f64 + j as f64 * l;
                s += (-decay * u * u / l).exp();
            }
            num_complex::Complex64::new(s, 0.0)
        })
        .collect();
    Signal { model, values }
}

fn default_radius() -> f64 {
    8.0
}

fn default_tolerance() -> f64 {
    1e-10
}

/// Top-level CLI configuration. Commands read the fields they need and ignore
/// the rest; every field has a default so a minimal config stays minimal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: Option<ModelSpec>,
    pub lattice: Option<LatticeSpec>,
    #[serde(default)]
    pub window: WindowSpec,
    /// Input signal CSV ("index,re,im" finite / "t,re,im" continuum).
    pub signal: Option<String>,
    /// Gaussian decay parameter for theta runs (standard Gaussian: pi).
    pub decay: Option<f64>,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Densities for the invertibility sweep.
    pub sweep: Option<Vec<f64>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: None,
            lattice: None,
            window: WindowSpec::default(),
            signal: None,
            decay: None,
            radius: default_radius(),
            tolerance: default_tolerance(),
            sweep: None,
        }
    }
}
