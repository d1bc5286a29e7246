//! Level structure of the three-site systems: individual atoms (five levels
//! each, 125 states) and mesoscopic registers (three collective levels each,
//! 27 states). Sites are ordered `(C1, T, C2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONTROL_1: usize = 0;
pub const TARGET: usize = 1;
pub const CONTROL_2: usize = 2;

/// The three Rydberg levels: `r1 = ns`, `r2 = np`, `r3 = nd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rydberg {
    R1,
    R2,
    R3,
}

impl Rydberg {
    pub const ALL: [Rydberg; 3] = [Rydberg::R1, Rydberg::R2, Rydberg::R3];

    /// Orbital angular momentum of the level.
    pub fn l(self) -> u32 {
        match self {
            Rydberg::R1 => 0,
            Rydberg::R2 => 1,
            Rydberg::R3 => 2,
        }
    }

    /// The level driven on site `site` in the standard configuration.
    pub fn addressed_by(site: usize) -> Rydberg {
        Rydberg::ALL[site]
    }
}

/// One level of a site. For registers `Ground` is the empty collective state
/// `|g⟩`, `Qubit` is `|q_x¹⟩` and `Rydberg` is `|r_x¹⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Ground,
    Qubit,
    Rydberg(Rydberg),
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Ground => write!(f, "0"),
            Level::Qubit => write!(f, "1"),
            Level::Rydberg(r) => write!(f, "r{}", r.l() + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Individual atoms, levels `{0, 1, r1, r2, r3}` on every site.
    Atoms,
    /// Ensembles in the single-excitation symmetric subspace, levels
    /// `{g, q_x¹, r_x¹}` with the Rydberg level fixed by the register role.
    Registers,
}

/// Product space of three sites.
#[derive(Debug, Clone, PartialEq)]
pub struct GateModel {
    kind: ModelKind,
    levels: [Vec<Level>; 3],
    addressed: [Rydberg; 3],
}

impl GateModel {
    /// Atoms (1), (2), (3) addressing `r1`, `r2`, `r3`.
    pub fn atoms() -> Self {
        let all = vec![
            Level::Ground,
            Level::Qubit,
            Level::Rydberg(Rydberg::R1),
            Level::Rydberg(Rydberg::R2),
            Level::Rydberg(Rydberg::R3),
        ];
        GateModel {
            kind: ModelKind::Atoms,
            levels: [all.clone(), all.clone(), all],
            addressed: [Rydberg::R1, Rydberg::R2, Rydberg::R3],
        }
    }

    /// Registers `C1`, `T`, `C2` with Rydberg levels `r1`, `r2`, `r3`.
    pub fn registers() -> Self {
        let site = |r| vec![Level::Ground, Level::Qubit, Level::Rydberg(r)];
        GateModel {
            kind: ModelKind::Registers,
            levels: [site(Rydberg::R1), site(Rydberg::R2), site(Rydberg::R3)],
            addressed: [Rydberg::R1, Rydberg::R2, Rydberg::R3],
        }
    }

    /// Atom model with a custom addressing pattern. Only the standard
    /// configuration is accepted.
    pub fn atoms_addressing(addressed: [Rydberg; 3]) -> Result<Self> {
        if addressed != [Rydberg::R1, Rydberg::R2, Rydberg::R3] {
            return Err(Error::Config(format!(
                "atoms (1), (2), (3) must address r1, r2, r3; got {addressed:?}"
            )));
        }
        Ok(Self::atoms())
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn addressed(&self, site: usize) -> Rydberg {
        self.addressed[site]
    }

    pub fn levels(&self, site: usize) -> &[Level] {
        &self.levels[site]
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().map(Vec::len).product()
    }

    pub fn level_index(&self, site: usize, level: Level) -> Result<usize> {
        self.levels
            .get(site)
            .ok_or_else(|| Error::Schedule(format!("no site {site}")))?
            .iter()
            .position(|&l| l == level)
            .ok_or_else(|| Error::Schedule(format!("site {site} has no level {level}")))
    }

    /// Flat index of a product state given per-site level indices.
    pub fn index(&self, idx: [usize; 3]) -> usize {
        let d1 = self.levels[1].len();
        let d2 = self.levels[2].len();
        (idx[0] * d1 + idx[1]) * d2 + idx[2]
    }

    /// Per-site level indices of a flat index.
    pub fn split(&self, flat: usize) -> [usize; 3] {
        let d1 = self.levels[1].len();
        let d2 = self.levels[2].len();
        [flat / (d1 * d2), (flat / d2) % d1, flat % d2]
    }

    pub fn state_levels(&self, flat: usize) -> [Level; 3] {
        let s = self.split(flat);
        [
            self.levels[0][s[0]],
            self.levels[1][s[1]],
            self.levels[2][s[2]],
        ]
    }

    /// Flat indices of `|c1 c2 t⟩` in the order `4 c1 + 2 c2 + t`.
    pub fn computational_indices(&self) -> [usize; 8] {
        let q = |bit: usize| if bit == 0 { 0 } else { 1 };
        let mut out = [0; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            let (c1, c2, t) = (k >> 2 & 1, k >> 1 & 1, k & 1);
            *slot = self.index([q(c1), q(t), q(c2)]);
        }
        out
    }

    /// Rydberg levels occupied in a product state, one entry per excited site.
    pub fn rydberg_content(&self, flat: usize) -> Vec<(usize, Rydberg)> {
        self.state_levels(flat)
            .iter()
            .enumerate()
            .filter_map(|(site, l)| match l {
                Level::Rydberg(r) => Some((site, *r)),
                _ => None,
            })
            .collect()
    }

    pub fn label(&self, flat: usize) -> String {
        let l = self.state_levels(flat);
        format!("|{},{},{}>", l[0], l[1], l[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(GateModel::atoms().dim(), 125);
        assert_eq!(GateModel::registers().dim(), 27);
    }

    #[test]
    fn index_round_trip() {
        for m in [GateModel::atoms(), GateModel::registers()] {
            for flat in 0..m.dim() {
                assert_eq!(m.index(m.split(flat)), flat);
            }
        }
    }

    #[test]
    fn computational_ordering() {
        let m = GateModel::atoms();
        let idx = m.computational_indices();
        // |c1 c2 t> = |001> means only the target is in |1>
        assert_eq!(
            m.state_levels(idx[1]),
            [Level::Ground, Level::Qubit, Level::Ground]
        );
        assert_eq!(
            m.state_levels(idx[4]),
            [Level::Qubit, Level::Ground, Level::Ground]
        );
        assert_eq!(
            m.state_levels(idx[2]),
            [Level::Ground, Level::Ground, Level::Qubit]
        );
    }

    #[test]
    fn non_standard_addressing_is_rejected() {
        assert!(GateModel::atoms_addressing([Rydberg::R2, Rydberg::R1, Rydberg::R3]).is_err());
        assert!(GateModel::atoms_addressing([Rydberg::R1, Rydberg::R2, Rydberg::R3]).is_ok());
    }

    #[test]
    fn registers_only_reach_their_own_rydberg_level() {
        let m = GateModel::registers();
        assert!(m.level_index(0, Level::Rydberg(Rydberg::R2)).is_err());
        assert_eq!(m.level_index(1, Level::Rydberg(Rydberg::R2)).unwrap(), 2);
    }
}
