//! Unit conversions. Everything internal is in atomic units; these are the
//! only place the conversion constants live.

use serde::{Deserialize, Serialize};

/// Wavenumber of one Hartree, in cm⁻¹.
pub const HARTREE_IN_CM1: f64 = 219_474.631_4;
/// Frequency of one cm⁻¹, in MHz.
pub const CM1_IN_MHZ: f64 = 29_979.245_8;
/// Bohr radius in meters.
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;
/// Frequency of one Hartree, in MHz (E/h).
pub const HARTREE_IN_MHZ: f64 = HARTREE_IN_CM1 * CM1_IN_MHZ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyUnit {
    Hartree,
    #[serde(rename = "cm-1")]
    Wavenumber,
    #[serde(rename = "mhz")]
    MegaHertz,
}

impl EnergyUnit {
    pub fn from_hartree(self, e: f64) -> f64 {
        match self {
            EnergyUnit::Hartree => e,
            EnergyUnit::Wavenumber => e * HARTREE_IN_CM1,
            EnergyUnit::MegaHertz => e * HARTREE_IN_MHZ,
        }
    }

    pub fn to_hartree(self, v: f64) -> f64 {
        match self {
            EnergyUnit::Hartree => v,
            EnergyUnit::Wavenumber => v / HARTREE_IN_CM1,
            EnergyUnit::MegaHertz => v / HARTREE_IN_MHZ,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EnergyUnit::Hartree => "hartree",
            EnergyUnit::Wavenumber => "cm-1",
            EnergyUnit::MegaHertz => "MHz",
        }
    }
}

pub fn micrometers_to_bohr(um: f64) -> f64 {
    um * 1e-6 / BOHR_RADIUS_M
}

pub fn bohr_to_micrometers(a0: f64) -> f64 {
    a0 * BOHR_RADIUS_M * 1e6
}

/// Cyclic frequency in MHz to angular frequency in rad/µs.
pub fn mhz_to_rad_per_us(f: f64) -> f64 {
    f * std::f64::consts::TAU
}

/// Energy in Hartree to angular frequency in rad/µs.
pub fn hartree_to_rad_per_us(e: f64) -> f64 {
    mhz_to_rad_per_us(e * HARTREE_IN_MHZ)
}
