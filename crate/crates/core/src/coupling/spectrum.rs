use serde::{Deserialize, Serialize};

use super::basis::SubspaceKind;
use super::geometry::Geometry;
use super::matrix::{assemble_subspace, DegeneracyGuard, InteractionMatrix};
use crate::error::Result;
use crate::exec::Execution;
use crate::hydrogenics::RadialSource;
use crate::linalg::eigh;
use crate::units::EnergyUnit;

/// `|λ| > NONZERO_RELATIVE_THRESHOLD · max|λ|` classifies λ as a nonzero shift.
pub const NONZERO_RELATIVE_THRESHOLD: f64 = 1e-8;

/// Sorted first-order shifts of one interaction matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftSpectrum {
    pub kind: Option<SubspaceKind>,
    /// Ascending, Hartree.
    pub eigenvalues: Vec<f64>,
    /// Ascending eigenvalues of the dimensionless matrix (`Sp` and `Pd`).
    pub dimensionless: Option<Vec<f64>>,
    pub prefactor: Option<f64>,
}

impl ShiftSpectrum {
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    fn nonzero(values: &[f64]) -> Vec<f64> {
        let norm = values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        values
            .iter()
            .copied()
            .filter(|x| x.abs() > NONZERO_RELATIVE_THRESHOLD * norm)
            .collect()
    }

    /// Nonzero eigenvalues (Hartree), ascending.
    pub fn nonzero_eigenvalues(&self) -> Vec<f64> {
        Self::nonzero(&self.eigenvalues)
    }

    pub fn zero_count(&self) -> usize {
        self.eigenvalues.len() - self.nonzero_eigenvalues().len()
    }

    /// `(min, max)` of `|λ|` over nonzero eigenvalues, Hartree.
    pub fn nonzero_magnitude_range(&self) -> Option<(f64, f64)> {
        magnitude_range(&self.nonzero_eigenvalues())
    }

    /// Same range for the dimensionless eigenvalues.
    pub fn dimensionless_magnitude_range(&self) -> Option<(f64, f64)> {
        self.dimensionless
            .as_ref()
            .and_then(|d| magnitude_range(&Self::nonzero(d)))
    }

    /// Nonzero eigenvalue of smallest magnitude (sign kept), Hartree.
    pub fn weakest_shift(&self) -> Option<f64> {
        self.nonzero_eigenvalues()
            .into_iter()
            .min_by(|a, b| a.abs().total_cmp(&b.abs()))
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

fn magnitude_range(values: &[f64]) -> Option<(f64, f64)> {
    let mags = values.iter().map(|x| x.abs());
    let min = mags.clone().fold(f64::INFINITY, f64::min);
    let max = mags.fold(0.0, f64::max);
    (!values.is_empty()).then_some((min, max))
}

/// Full spectrum of a Hermitian interaction matrix.
pub fn eigen_shifts(matrix: &InteractionMatrix) -> Result<ShiftSpectrum> {
    let eig = eigh(&matrix.entries, 1e-12)?;
    let dimensionless = match (matrix.prefactor, matrix.dimensionless()) {
        (Some(_), Some(d)) => Some(eigh(&d, 1e-12)?.values),
        _ => None,
    };
    Ok(ShiftSpectrum {
        kind: matrix.kind,
        eigenvalues: eig.values,
        dimensionless,
        prefactor: matrix.prefactor,
    })
}

/// Eigenvalues converted to `unit`.
pub fn shifts_physical(spectrum: &ShiftSpectrum, unit: EnergyUnit) -> Vec<f64> {
    spectrum
        .eigenvalues
        .iter()
        .map(|&e| unit.from_hartree(e))
        .collect()
}

/// Assemble and diagonalize one manifold.
pub fn subspace_spectrum(
    kind: SubspaceKind,
    n: u32,
    geometry: &Geometry,
    radial: &dyn RadialSource,
    guard: DegeneracyGuard<'_>,
) -> Result<ShiftSpectrum> {
    eigen_shifts(&assemble_subspace(kind, n, geometry, radial, guard)?)
}

/// One manifold's spectrum for each geometry, in input order.
pub fn subspace_spectra(
    kind: SubspaceKind,
    n: u32,
    geometries: &[Geometry],
    radial: &dyn RadialSource,
    exec: Execution,
) -> Result<Vec<ShiftSpectrum>> {
    exec.try_map(geometries, |g| {
        subspace_spectrum(kind, n, g, radial, DegeneracyGuard::Off)
    })
}
