use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hydrogenic level `|n l m⟩`. Construction enforces `0 <= l < n`, `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub struct OrbitalState {
    n: u32,
    l: u32,
    m: i32,
}

#[derive(Serialize, Deserialize)]
struct RawState {
    n: u32,
    l: u32,
    m: i32,
}

impl TryFrom<RawState> for OrbitalState {
    type Error = Error;
    fn try_from(raw: RawState) -> Result<Self> {
        OrbitalState::new(raw.n, raw.l, raw.m)
    }
}

impl From<OrbitalState> for RawState {
    fn from(s: OrbitalState) -> Self {
        RawState {
            n: s.n,
            l: s.l,
            m: s.m,
        }
    }
}

impl OrbitalState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidState("n must be positive".into()));
        }
        if l >= n {
            return Err(Error::InvalidState(format!(
                "l = {l} must be below n = {n}"
            )));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidState(format!(
                "|m| = {} exceeds l = {l}",
                m.abs()
            )));
        }
        Ok(OrbitalState { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Validates an `(n, l)` pair without a magnetic number.
pub(crate) fn check_nl(n: u32, l: u32) -> Result<()> {
    OrbitalState::new(n, l, 0).map(|_| ())
}

pub fn spectroscopic_letter(l: u32) -> char {
    const LETTERS: &[u8] = b"spdfghiklmnoqrtuv";
    LETTERS.get(l as usize).map(|&c| c as char).unwrap_or('?')
}

impl fmt::Display for OrbitalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.n, spectroscopic_letter(self.l), self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_numbers() {
        assert!(OrbitalState::new(0, 0, 0).is_err());
        assert!(OrbitalState::new(2, 2, 0).is_err());
        assert!(OrbitalState::new(3, 1, -2).is_err());
        assert!(OrbitalState::new(42, 2, -2).is_ok());
    }

    #[test]
    fn labels() {
        let s = OrbitalState::new(42, 1, -1).unwrap();
        assert_eq!(s.to_string(), "42p-1");
    }

    #[test]
    fn raw_conversion_validates() {
        assert!(OrbitalState::try_from(RawState { n: 3, l: 2, m: 1 }).is_ok());
        assert!(OrbitalState::try_from(RawState { n: 3, l: 3, m: 0 }).is_err());
    }
}
