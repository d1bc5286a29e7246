use num_complex::Complex64;

use super::basis::{build_subspace_basis, ProductBasisState, Site, SubspaceKind};
use super::geometry::{Geometry, PairVector};
use crate::angular::{angular_vector_integral, selection_rule_allowed};
use crate::error::{Error, Result};
use crate::hydrogenics::{energy_level, EnergyModel, EnergyModelKind, OrbitalState, RadialSource};
use crate::linalg::{hermiticity_defect, CMatrix};

/// Relative threshold below which an inter-manifold element counts as zero.
pub const UNCOUPLED_TOLERANCE: f64 = 1e-14;

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Dipole-dipole interaction restricted to a product basis.
#[derive(Debug, Clone)]
pub struct InteractionMatrix {
    pub basis: Vec<ProductBasisState>,
    /// Hartree.
    pub entries: CMatrix,
    pub kind: Option<SubspaceKind>,
    /// `R² / R_ij³` (Hartree) when the whole matrix shares one prefactor.
    pub prefactor: Option<f64>,
}

impl InteractionMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The matrix with the common radial/distance prefactor divided out.
    pub fn dimensionless(&self) -> Option<CMatrix> {
        self.prefactor.map(|p| self.entries.map(|z| z / p))
    }
}

/// `⟨a_i; a_j| V_ij |b_i; b_j⟩` in Hartree for one atom pair:
///
/// `R^{b_i}_{a_i} R^{b_j}_{a_j} / R³ · [A_i·A_j − 3 (A_i·u)(A_j·u)]`.
///
/// Exactly zero whenever either single-atom transition is dipole forbidden.
pub fn pair_matrix_element(
    bra_i: &OrbitalState,
    bra_j: &OrbitalState,
    ket_i: &OrbitalState,
    ket_j: &OrbitalState,
    pair: &PairVector,
    radial: &dyn RadialSource,
) -> Result<Complex64> {
    if !selection_rule_allowed(bra_i.l(), bra_i.m(), ket_i.l(), ket_i.m())
        || !selection_rule_allowed(bra_j.l(), bra_j.m(), ket_j.l(), ket_j.m())
    {
        return Ok(Complex64::default());
    }
    let ai = angular_vector_integral(bra_i.l(), bra_i.m(), ket_i.l(), ket_i.m());
    let aj = angular_vector_integral(bra_j.l(), bra_j.m(), ket_j.l(), ket_j.m());
    let angular = ai.dot(&aj) - 3.0 * ai.project(&pair.unit) * aj.project(&pair.unit);
    if angular == Complex64::default() {
        return Ok(angular);
    }
    let ri = radial.radial_bohr((bra_i.n(), bra_i.l()), (ket_i.n(), ket_i.l()))?;
    let rj = radial.radial_bohr((bra_j.n(), bra_j.l()), (ket_j.n(), ket_j.l()))?;
    Ok(angular * (ri * rj / pair.distance.powi(3)))
}

/// How the first-order degeneracy of a basis is enforced during assembly.
#[derive(Debug, Clone, Copy)]
pub enum DegeneracyGuard<'a> {
    /// No check.
    Off,
    /// Hydrogenic energies: a non-degenerate basis is an error. Quantum-defect
    /// energies: skipped for `Sp`/`Pd` (exchange-degenerate by symmetry), a
    /// warning otherwise.
    Energies(&'a EnergyModel),
}

fn check_degeneracy(
    basis: &[ProductBasisState],
    kind: Option<SubspaceKind>,
    guard: DegeneracyGuard<'_>,
) -> Result<()> {
    let DegeneracyGuard::Energies(model) = guard else {
        return Ok(());
    };
    if model.kind == EnergyModelKind::QuantumDefect
        && matches!(kind, Some(SubspaceKind::Sp | SubspaceKind::Pd))
    {
        return Ok(());
    }
    let total = |s: &ProductBasisState| -> Result<f64> {
        s.sites
            .iter()
            .filter_map(Site::rydberg)
            .map(|o| energy_level(o.n(), o.l(), model))
            .sum()
    };
    let Some(first) = basis.first() else {
        return Ok(());
    };
    let e0 = total(first)?;
    for s in basis {
        let e = total(s)?;
        if (e - e0).abs() > 1e-12 * e0.abs() {
            let msg = format!("{s} has unperturbed energy {e} Ha, {first} has {e0} Ha");
            if model.kind == EnergyModelKind::Hydrogenic {
                return Err(Error::Degeneracy(msg));
            }
            log::warn!("first-order treatment of a non-degenerate manifold: {msg}");
            return Ok(());
        }
    }
    Ok(())
}

/// `Σ_{i<j} V_ij` over `basis`. Pair terms require the third atom to be
/// identical in bra and ket; ground-state atoms carry no dipole.
pub fn assemble_interaction_matrix(
    basis: &[ProductBasisState],
    geometry: &Geometry,
    radial: &dyn RadialSource,
    guard: DegeneracyGuard<'_>,
) -> Result<InteractionMatrix> {
    check_degeneracy(basis, None, guard)?;
    build(basis, geometry, radial, None, None)
}

fn build(
    basis: &[ProductBasisState],
    geometry: &Geometry,
    radial: &dyn RadialSource,
    kind: Option<SubspaceKind>,
    prefactor: Option<f64>,
) -> Result<InteractionMatrix> {
    let pairs: Vec<PairVector> = PAIRS
        .iter()
        .map(|&(i, j)| geometry.pair(i, j))
        .collect::<Result<_>>()?;
    let dim = basis.len();
    let mut entries = CMatrix::zeros(dim, dim);
    for (r, bra) in basis.iter().enumerate() {
        for (c, ket) in basis.iter().enumerate() {
            let mut sum = Complex64::default();
            for (&(i, j), pv) in PAIRS.iter().zip(&pairs) {
                let k = 3 - i - j;
                if bra.sites[k] != ket.sites[k] {
                    continue;
                }
                let (Some(bi), Some(bj), Some(ki), Some(kj)) = (
                    bra.sites[i].rydberg(),
                    bra.sites[j].rydberg(),
                    ket.sites[i].rydberg(),
                    ket.sites[j].rydberg(),
                ) else {
                    continue;
                };
                sum += pair_matrix_element(bi, bj, ki, kj, pv, radial)?;
            }
            entries[(r, c)] = sum;
        }
    }
    let defect = hermiticity_defect(&entries);
    if defect > 1e-12 {
        return Err(Error::Validation(format!(
            "assembled matrix not Hermitian ({defect:e})"
        )));
    }
    Ok(InteractionMatrix {
        basis: basis.to_vec(),
        entries,
        kind,
        prefactor,
    })
}

/// `R(ns,np)² / R_01³` for `Sp`, `R(np,nd)² / R_12³` for `Pd`, none for `Spd`.
pub fn subspace_prefactor(
    kind: SubspaceKind,
    n: u32,
    geometry: &Geometry,
    radial: &dyn RadialSource,
) -> Result<Option<f64>> {
    Ok(match kind {
        SubspaceKind::Sp => {
            let r = radial.radial_bohr((n, 0), (n, 1))?;
            Some(r * r / geometry.pair(0, 1)?.distance.powi(3))
        }
        SubspaceKind::Pd => {
            let r = radial.radial_bohr((n, 1), (n, 2))?;
            Some(r * r / geometry.pair(1, 2)?.distance.powi(3))
        }
        SubspaceKind::Spd => None,
    })
}

/// Builds the canonical basis of `kind` and assembles `V_dd` on it.
pub fn assemble_subspace(
    kind: SubspaceKind,
    n: u32,
    geometry: &Geometry,
    radial: &dyn RadialSource,
    guard: DegeneracyGuard<'_>,
) -> Result<InteractionMatrix> {
    let basis = build_subspace_basis(kind, n)?;
    check_degeneracy(&basis, Some(kind), guard)?;
    let prefactor = subspace_prefactor(kind, n, geometry, radial)?;
    build(&basis, geometry, radial, Some(kind), prefactor)
}

/// Largest `|⟨n la m1; n lb m2| V |n lb m1'; n la m2'⟩|` over all sublevels,
/// relative to the `sp` coupling scale `R(ns,np)² / R³` of the same pair.
pub fn exchange_coupling_ratio(
    la: u32,
    lb: u32,
    n: u32,
    pair: &PairVector,
    radial: &dyn RadialSource,
) -> Result<f64> {
    let scale = radial.radial_bohr((n, 0), (n, 1))?.powi(2) / pair.distance.powi(3);
    let levels = |l: u32| -> Result<Vec<OrbitalState>> {
        (-(l as i32)..=l as i32)
            .map(|m| OrbitalState::new(n, l, m))
            .collect()
    };
    let (a, b) = (levels(la)?, levels(lb)?);
    let mut worst: f64 = 0.0;
    for bi in &a {
        for bj in &b {
            for ki in &b {
                for kj in &a {
                    let v = pair_matrix_element(bi, bj, ki, kj, pair, radial)?;
                    worst = worst.max(v.norm());
                }
            }
        }
    }
    Ok(worst / scale)
}

/// True iff `|n la; n lb⟩` and `|n lb; n la⟩` are not coupled by `V_dd` at
/// any sublevel (relative to the `sp` scale, below [`UNCOUPLED_TOLERANCE`]).
pub fn uncoupled_state_check(
    la: u32,
    lb: u32,
    n: u32,
    pair: &PairVector,
    radial: &dyn RadialSource,
) -> Result<bool> {
    Ok(exchange_coupling_ratio(la, lb, n, pair, radial)? < UNCOUPLED_TOLERANCE)
}
