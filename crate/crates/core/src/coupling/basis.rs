use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogenics::OrbitalState;

/// One atom's state in a product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Site {
    Ground,
    Rydberg(OrbitalState),
}

impl Site {
    pub fn rydberg(&self) -> Option<&OrbitalState> {
        match self {
            Site::Ground => None,
            Site::Rydberg(s) => Some(s),
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Ground => write!(f, "g"),
            Site::Rydberg(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductBasisState {
    pub sites: [Site; 3],
}

impl fmt::Display for ProductBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{};{};{}>", self.sites[0], self.sites[1], self.sites[2])
    }
}

/// The three degenerate manifolds: `|ns;np;g⟩` and its exchange (`Sp`),
/// `|g;np;nd⟩` and its exchange (`Pd`), and all six assignments of
/// `ns, np, nd` to the three atoms (`Spd`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Sp,
    Pd,
    Spd,
}

impl SubspaceKind {
    pub const ALL: [SubspaceKind; 3] = [SubspaceKind::Sp, SubspaceKind::Pd, SubspaceKind::Spd];

    pub fn name(self) -> &'static str {
        match self {
            SubspaceKind::Sp => "sp",
            SubspaceKind::Pd => "pd",
            SubspaceKind::Spd => "spd",
        }
    }

    /// Orbital-`l` assignments per atom (`None` = ground), in canonical order.
    fn orderings(self) -> Vec<[Option<u32>; 3]> {
        match self {
            SubspaceKind::Sp => vec![[Some(0), Some(1), None], [Some(1), Some(0), None]],
            SubspaceKind::Pd => vec![[None, Some(1), Some(2)], [None, Some(2), Some(1)]],
            // permutations of (s, p, d) in lexicographic permutation order
            SubspaceKind::Spd => [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ]
            .iter()
            .map(|p| p.map(Some))
            .collect(),
        }
    }
}

impl std::str::FromStr for SubspaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp" => Ok(SubspaceKind::Sp),
            "pd" => Ok(SubspaceKind::Pd),
            "spd" => Ok(SubspaceKind::Spd),
            other => Err(Error::Config(format!("unknown subspace '{other}'"))),
        }
    }
}

/// Canonical basis of a degenerate manifold at principal number `n`:
/// orderings by permutation index, then magnetic numbers ascending
/// (lexicographic over atoms 0, 1, 2).
pub fn build_subspace_basis(kind: SubspaceKind, n: u32) -> Result<Vec<ProductBasisState>> {
    if n < 3 {
        return Err(Error::InvalidState(format!(
            "n = {n} has no d level; need n >= 3"
        )));
    }
    let mut out = Vec::new();
    for ordering in kind.orderings() {
        let ranges: Vec<Vec<Option<i32>>> = ordering
            .iter()
            .map(|l| match l {
                None => vec![None],
                Some(l) => (-(*l as i32)..=*l as i32).map(Some).collect(),
            })
            .collect();
        for m0 in &ranges[0] {
            for m1 in &ranges[1] {
                for m2 in &ranges[2] {
                    let ms = [*m0, *m1, *m2];
                    let mut sites = [Site::Ground; 3];
                    for a in 0..3 {
                        if let (Some(l), Some(m)) = (ordering[a], ms[a]) {
                            sites[a] = Site::Rydberg(OrbitalState::new(n, l, m)?);
                        }
                    }
                    out.push(ProductBasisState { sites });
                }
            }
        }
    }
    Ok(out)
}
