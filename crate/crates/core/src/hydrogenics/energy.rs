use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::state::check_nl;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EnergyModelKind {
    #[default]
    Hydrogenic,
    QuantumDefect,
}

/// Unperturbed level energies: `-Z²/(2n²)` or `-Z²/(2(n-δ_l)²)` in Hartree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyModel {
    pub kind: EnergyModelKind,
    #[serde(default = "default_z")]
    pub z: f64,
    /// Quantum defects keyed by `l`; ignored in hydrogenic mode.
    #[serde(default)]
    pub defects: BTreeMap<u32, f64>,
}

fn default_z() -> f64 {
    1.0
}

impl Default for EnergyModel {
    fn default() -> Self {
        Self::hydrogenic()
    }
}

impl EnergyModel {
    pub fn hydrogenic() -> Self {
        EnergyModel {
            kind: EnergyModelKind::Hydrogenic,
            z: 1.0,
            defects: BTreeMap::new(),
        }
    }

    pub fn quantum_defect(defects: impl IntoIterator<Item = (u32, f64)>) -> Self {
        EnergyModel {
            kind: EnergyModelKind::QuantumDefect,
            z: 1.0,
            defects: defects.into_iter().collect(),
        }
    }

    pub fn defect(&self, l: u32) -> Result<f64> {
        self.defects
            .get(&l)
            .copied()
            .ok_or_else(|| Error::Config(format!("no quantum defect configured for l = {l}")))
    }
}

pub fn energy_level(n: u32, l: u32, model: &EnergyModel) -> Result<f64> {
    check_nl(n, l)?;
    let z2 = model.z * model.z;
    let n_eff = match model.kind {
        EnergyModelKind::Hydrogenic => n as f64,
        EnergyModelKind::QuantumDefect => {
            let d = model.defect(l)?;
            if !(0.0..n as f64).contains(&d) {
                return Err(Error::Config(format!(
                    "quantum defect {d} for l = {l} must lie in [0, n = {n})"
                )));
            }
            n as f64 - d
        }
    };
    Ok(-z2 / (2.0 * n_eff * n_eff))
}
