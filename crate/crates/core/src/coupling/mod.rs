//! Dipole-dipole interaction matrices over three-atom product bases and their
//! first-order shift spectra.
//!
//! Atoms are indexed 0, 1, 2. In the blockade configuration atom 0 is excited
//! to `ns`, atom 1 to `np` and atom 2 to `nd`. All energies are in Hartree,
//! lengths in Bohr radii.

mod basis;
mod dump;
mod geometry;
mod matrix;
mod spectrum;

pub use basis::{build_subspace_basis, ProductBasisState, Site, SubspaceKind};
pub use dump::write_matrix_dump;
pub use geometry::{Geometry, PairVector};
pub use matrix::{
    assemble_interaction_matrix, assemble_subspace, exchange_coupling_ratio, pair_matrix_element,
    subspace_prefactor, uncoupled_state_check, DegeneracyGuard, InteractionMatrix,
    UNCOUPLED_TOLERANCE,
};
pub use spectrum::{
    eigen_shifts, shifts_physical, subspace_spectra, subspace_spectrum, ShiftSpectrum,
    NONZERO_RELATIVE_THRESHOLD,
};
