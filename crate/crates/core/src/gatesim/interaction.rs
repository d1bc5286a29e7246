//! Blockade interaction between the Rydberg levels of the three sites.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::model::{GateModel, Level, ModelKind, Rydberg};
use crate::coupling::{pair_matrix_element, Geometry, ShiftSpectrum, SubspaceKind};
use crate::error::{Error, Result};
use crate::hydrogenics::{energy_level, EnergyModel, OrbitalState, RadialSource};
use crate::units::hartree_to_rad_per_us;

/// Diagonal shifts (rad/µs) of the multiply excited manifolds. An infinite
/// value removes the corresponding states from the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockadeShifts {
    pub sp: f64,
    pub pd: f64,
    pub spd: f64,
}

impl BlockadeShifts {
    pub fn new(sp: f64, pd: f64, spd: f64) -> Result<Self> {
        for (name, v) in [("sp", sp), ("pd", pd), ("spd", spd)] {
            if v.is_nan() {
                return Err(Error::Config(format!("{name} shift is NaN")));
            }
        }
        Ok(BlockadeShifts { sp, pd, spd })
    }

    pub fn uniform(delta: f64) -> Self {
        BlockadeShifts {
            sp: delta,
            pd: delta,
            spd: delta,
        }
    }

    pub fn zero() -> Self {
        Self::uniform(0.0)
    }

    /// Perfect blockade.
    pub fn infinite() -> Self {
        Self::uniform(f64::INFINITY)
    }

    /// Weakest (smallest `|λ|`, signed) nonzero eigenvalue of each manifold,
    /// converted from Hartree.
    pub fn from_spectra(spectra: &[ShiftSpectrum]) -> Result<Self> {
        let pick = |kind: SubspaceKind| -> Result<f64> {
            let s = spectra
                .iter()
                .find(|s| s.kind == Some(kind))
                .ok_or_else(|| Error::Config(format!("no {} spectrum supplied", kind.name())))?;
            s.weakest_shift().map(hartree_to_rad_per_us).ok_or_else(|| {
                Error::Config(format!("{} spectrum has no nonzero shift", kind.name()))
            })
        };
        Self::new(
            pick(SubspaceKind::Sp)?,
            pick(SubspaceKind::Pd)?,
            pick(SubspaceKind::Spd)?,
        )
    }

    /// Shift of a product state given its set of occupied Rydberg levels;
    /// `r1` with `r3` alone is not coupled.
    pub fn shift_for(&self, present: &BTreeSet<Rydberg>) -> f64 {
        let has = |r| present.contains(&r);
        match (has(Rydberg::R1), has(Rydberg::R2), has(Rydberg::R3)) {
            (true, true, true) => self.spd,
            (true, true, false) => self.sp,
            (false, true, true) => self.pd,
            _ => 0.0,
        }
    }
}

/// Which single-atom states stand in for `r1`, `r2`, `r3` in full-exchange mode.
///
/// In the rotating frame a site sitting in a Rydberg level other than the
/// one its laser addresses is detuned by the level difference taken from
/// `energies` (zero for hydrogenic energies).
#[derive(Debug, Clone)]
pub struct ExchangeSpec {
    pub n: u32,
    /// `m` of the `np` level used as `r2`.
    pub k2: i32,
    /// `m` of the `nd` level used as `r3`.
    pub k3: i32,
    pub geometry: Geometry,
    pub energies: EnergyModel,
}

impl ExchangeSpec {
    /// `E(r) − E(addressed)` in Hartree.
    pub fn frame_offset(&self, r: Rydberg, addressed: Rydberg) -> Result<f64> {
        if r == addressed {
            return Ok(0.0);
        }
        Ok(energy_level(self.n, r.l(), &self.energies)?
            - energy_level(self.n, addressed.l(), &self.energies)?)
    }

    pub fn orbital(&self, r: Rydberg) -> Result<OrbitalState> {
        let m = match r {
            Rydberg::R1 => 0,
            Rydberg::R2 => self.k2,
            Rydberg::R3 => self.k3,
        };
        OrbitalState::new(self.n, r.l(), m)
    }
}

#[derive(Debug, Clone)]
pub enum InteractionSpec {
    /// One scalar shift per manifold on the diagonal.
    EffectiveDiagonal(BlockadeShifts),
    /// `V_dd` projected onto the product states of the chosen orbitals,
    /// exchange couplings included. Only one sublevel per Rydberg level is
    /// kept, so some `(k2, k3)` choices leave a pair with no first-order
    /// coupling at all (e.g. `np, m=−1` with `nd, m=+1` along the axis).
    /// Atom model only.
    FullExchange(ExchangeSpec),
}

/// Interaction operator of a model in rad/µs.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionTerms {
    /// Possibly infinite diagonal shifts.
    pub diagonal: Vec<f64>,
    /// `(row, col, value)` with `row != col`, both triangles present.
    pub off_diagonal: Vec<(usize, usize, Complex64)>,
}

impl InteractionTerms {
    pub fn is_excluded(&self, state: usize) -> bool {
        self.diagonal[state].is_infinite()
    }
}

impl InteractionSpec {
    pub fn terms(&self, model: &GateModel, radial: &dyn RadialSource) -> Result<InteractionTerms> {
        let dim = model.dim();
        match self {
            InteractionSpec::EffectiveDiagonal(shifts) => {
                let diagonal = (0..dim)
                    .map(|s| {
                        let present: BTreeSet<Rydberg> = model.rydberg_content(s).into_iter().map(|(_, r)| r).collect();
                        if present.len() < 2 {
                            0.0
                        } else {
                            shifts.shift_for(&present)
                        }
                    })
                    .collect();
                Ok(InteractionTerms { diagonal, off_diagonal: Vec::new() })
            }
            InteractionSpec::FullExchange(_) if model.kind() == ModelKind::Registers => Err(Error::Config(
                "full-exchange interaction needs the atom model; registers have no room for exchange partners".into(),
            )),
            InteractionSpec::FullExchange(spec) => {
                let pairs = [(0, 1), (0, 2), (1, 2)]
                    .into_iter()
                    .map(|(i, j)| Ok((i, j, spec.geometry.pair(i, j)?)))
                    .collect::<Result<Vec<_>>>()?;
                let mut diagonal = vec![0.0; dim];
                let mut off_diagonal = Vec::new();
                for (s, slot) in diagonal.iter_mut().enumerate() {
                    let mut offset = 0.0;
                    for (site, r) in model.rydberg_content(s) {
                        offset += spec.frame_offset(r, model.addressed(site))?;
                    }
                    *slot = hartree_to_rad_per_us(offset);
                }
                let excited: Vec<usize> = (0..dim).filter(|&s| model.rydberg_content(s).len() >= 2).collect();
                for &a in &excited {
                    let la = model.state_levels(a);
                    for &b in &excited {
                        let lb = model.state_levels(b);
                        let mut sum = Complex64::default();
                        for (i, j, pair) in &pairs {
                            let k = 3 - i - j;
                            if la[k] != lb[k] {
                                continue;
                            }
                            let orb = |l: Level| match l {
                                Level::Rydberg(r) => spec.orbital(r).map(Some),
                                _ => Ok(None),
                            };
                            let (Some(bi), Some(bj), Some(ki), Some(kj)) =
                                (orb(la[*i])?, orb(la[*j])?, orb(lb[*i])?, orb(lb[*j])?)
                            else {
                                continue;
                            };
                            sum += pair_matrix_element(&bi, &bj, &ki, &kj, pair, radial)?;
                        }
                        let v = sum * hartree_to_rad_per_us(1.0);
                        if a == b {
                            diagonal[a] += v.re;
                        } else if v != Complex64::default() {
                            off_diagonal.push((a, b, v));
                        }
                    }
                }
                Ok(InteractionTerms { diagonal, off_diagonal })
            }
        }
    }
}
