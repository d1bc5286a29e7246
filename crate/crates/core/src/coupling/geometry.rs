use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::micrometers_to_bohr;

/// Positions of the three nuclei, in Bohr radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    positions: [[f64; 3]; 3],
}

/// Separation `R_ij u_ij` from nucleus `i` to nucleus `j`, with
/// `u = (sin α cos β, sin α sin β, cos α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairVector {
    pub distance: f64,
    pub unit: [f64; 3],
    pub polar: f64,
    pub azimuth: f64,
}

impl PairVector {
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let distance = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if distance.is_nan() || distance <= 0.0 || !distance.is_finite() {
            return Err(Error::Geometry(format!(
                "pair separation {distance} must be positive"
            )));
        }
        let unit = [v[0] / distance, v[1] / distance, v[2] / distance];
        let polar = unit[2].clamp(-1.0, 1.0).acos();
        let azimuth = unit[1].atan2(unit[0]);
        Ok(PairVector {
            distance,
            unit,
            polar,
            azimuth,
        })
    }

    pub fn from_angles(distance: f64, polar: f64, azimuth: f64) -> Result<Self> {
        let (sa, ca) = polar.sin_cos();
        let (sb, cb) = azimuth.sin_cos();
        Self::from_vector([distance * sa * cb, distance * sa * sb, distance * ca])
    }

    /// Unit vector rebuilt from the stored angles.
    pub fn unit_from_angles(&self) -> [f64; 3] {
        let (sa, ca) = self.polar.sin_cos();
        let (sb, cb) = self.azimuth.sin_cos();
        [sa * cb, sa * sb, ca]
    }
}

impl Geometry {
    pub fn new(positions: [[f64; 3]; 3]) -> Result<Self> {
        let g = Geometry { positions };
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            g.pair(i, j)?;
        }
        Ok(g)
    }

    pub fn from_micrometers(positions: [[f64; 3]; 3]) -> Result<Self> {
        Self::new(positions.map(|p| p.map(micrometers_to_bohr)))
    }

    /// Atoms on the z axis with `R_01 = r01`, `R_12 = r12` (Bohr).
    pub fn collinear_z(r01: f64, r12: f64) -> Result<Self> {
        Self::new([[0.0, 0.0, 0.0], [0.0, 0.0, r01], [0.0, 0.0, r01 + r12]])
    }

    pub fn positions(&self) -> &[[f64; 3]; 3] {
        &self.positions
    }

    pub fn pair(&self, i: usize, j: usize) -> Result<PairVector> {
        let (a, b) = (self.positions[i], self.positions[j]);
        PairVector::from_vector([b[0] - a[0], b[1] - a[1], b[2] - a[2]])
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.positions.map(|p| p.map(|x| x * factor)))
    }

    /// Applies a 3x3 (row-major) rotation to every position.
    pub fn rotated(&self, rot: &[[f64; 3]; 3]) -> Result<Self> {
        Self::new(
            self.positions
                .map(|p| [0, 1, 2].map(|r| rot[r][0] * p[0] + rot[r][1] * p[1] + rot[r][2] * p[2])),
        )
    }
}
