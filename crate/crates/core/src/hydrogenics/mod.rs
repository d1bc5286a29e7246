//! Hydrogenic radial physics: wavefunctions, associated Laguerre polynomials
//! in the old (Messiah) normalization, radial dipole integrals, and
//! unperturbed level energies.
//!
//! Lengths are in units of the screened Bohr radius `a = a0 / Z`.

mod energy;
pub mod exact;
mod laguerre;
pub mod quadrature;
mod radial;
mod state;
mod wavefunction;

pub use energy::{energy_level, EnergyModel, EnergyModelKind};
pub use laguerre::{laguerre_coefficients, laguerre_eval, MAX_LAGUERRE_ORDER_SUM};
pub use radial::{
    radial_integral_closed, radial_integral_closed_with_budget, radial_integral_quadrature,
    RadialIntegral, RadialMethod, RadialModel, RadialSource, DEFAULT_BIGINT_BUDGET_BITS,
};
pub use state::{spectroscopic_letter, OrbitalState};
pub use wavefunction::{radial_wavefunction, RadialWavefunction};
