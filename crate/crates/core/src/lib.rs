//! Numerical Gabor analysis over finite cyclic and sampled-continuum phase spaces,
//! with the twisted group algebra of a time-frequency lattice, Rieffel inner
//! products, and quantum theta functions over adjoint lattices.
//!
//! Two backends share one interface: the finite model on `Z_L` (where the
//! duality identities hold to machine precision) and a uniformly sampled
//! continuum model (where Gaussians and theta sums live).

pub mod config;
pub mod error;
pub mod gabor;
pub mod nctorus;
pub mod phase_space;
pub mod theta;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use phase_space::{ModelOrder, SeparableLattice, Signal, TFPoint, UnitPhase};
