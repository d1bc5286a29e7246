//! Dipole-dipole interaction shifts for three hydrogen-like atoms in different
//! Rydberg states (`ns`, `np`, `nd`), the blockade conditions they have to
//! satisfy, and pulse-level simulation of the three-qubit Toffoli and
//! ccphase protocols built on them.
//!
//! Internal computation is in atomic units (Hartree, Bohr radius). Gate
//! dynamics run in angular-frequency units of rad/µs with times in µs.
//!
//! Module map:
//!
//! - [`hydrogenics`]: radial wavefunctions, Laguerre polynomials, radial
//!   dipole integrals (exact closed form and quadrature), level energies.
//! - [`angular`]: spherical harmonics and the vector integrals of the unit
//!   radial vector between two harmonics.
//! - [`coupling`]: geometry, product bases, interaction matrices and their
//!   spectra.
//! - [`blockade`]: unwanted coupling channels and the negligibility check.
//! - [`gatesim`]: rotating-frame pulse simulation of the gate protocols.
//! - [`exec`]: sequential / rayon-parallel execution of independent work items.

pub mod angular;
pub mod blockade;
pub mod coupling;
pub mod error;
pub mod exec;
pub mod gatesim;
pub mod hydrogenics;
pub mod linalg;
pub mod units;

pub use error::{Error, Result};
pub use exec::Execution;
