//! Unwanted (non-resonant) two-atom couplings out of the blockade manifolds,
//! their second-order shifts, and the negligibility condition
//!
//! `|⟨a;b|V|c;d⟩|² / |E_ab − E_cd| ≪ min |Δ⁽¹⁾|`.
//!
//! Radial integrals are hydrogenic at the nominal principal numbers while
//! detunings come from the configured [`EnergyModel`] (usually quantum
//! defects). This mirrors how the alkali feasibility numbers are normally
//! quoted, but it is a hybrid model: alkali radial integrals differ from the
//! hydrogenic ones at the tens-of-percent level.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coupling::{
    pair_matrix_element, subspace_spectrum, DegeneracyGuard, Geometry, SubspaceKind,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hydrogenics::{
    energy_level, spectroscopic_letter, EnergyModel, OrbitalState, RadialSource,
};
use crate::units::HARTREE_IN_MHZ;

/// Which pair of Rydberg atoms a channel starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `|ns; np⟩` on atoms 0, 1.
    Sp,
    /// `|np; nd⟩` on atoms 1, 2.
    Pd,
    /// `|ns; nd⟩` on atoms 0, 2.
    Sd,
}

impl PairKind {
    pub fn atoms(self) -> (usize, usize) {
        match self {
            PairKind::Sp => (0, 1),
            PairKind::Pd => (1, 2),
            PairKind::Sd => (0, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairKind::Sp => "sp",
            PairKind::Pd => "pd",
            PairKind::Sd => "sd",
        }
    }
}

/// One row of the unwanted-coupling table: `|n la, n lb⟩ ↔ |n1 l1, n2 l2⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelFamily {
    pub pair: PairKind,
    pub initial: (u32, u32),
    pub target: (u32, u32),
    /// Drop `(n1, n2) = (n, n)`, which is the resonant exchange itself.
    pub exclude_same_n: bool,
}

pub const CHANNEL_FAMILIES: [ChannelFamily; 8] = [
    ChannelFamily {
        pair: PairKind::Sp,
        initial: (0, 1),
        target: (1, 0),
        exclude_same_n: true,
    },
    ChannelFamily {
        pair: PairKind::Sp,
        initial: (0, 1),
        target: (1, 2),
        exclude_same_n: false,
    },
    ChannelFamily {
        pair: PairKind::Sd,
        initial: (0, 2),
        target: (1, 1),
        exclude_same_n: false,
    },
    ChannelFamily {
        pair: PairKind::Sd,
        initial: (0, 2),
        target: (1, 3),
        exclude_same_n: false,
    },
    ChannelFamily {
        pair: PairKind::Pd,
        initial: (1, 2),
        target: (0, 1),
        exclude_same_n: false,
    },
    ChannelFamily {
        pair: PairKind::Pd,
        initial: (1, 2),
        target: (0, 3),
        exclude_same_n: false,
    },
    ChannelFamily {
        pair: PairKind::Pd,
        initial: (1, 2),
        target: (2, 1),
        exclude_same_n: true,
    },
    ChannelFamily {
        pair: PairKind::Pd,
        initial: (1, 2),
        target: (2, 3),
        exclude_same_n: false,
    },
];

/// A concrete channel `|n la, n lb⟩ → |n1 l1, n2 l2⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingChannel {
    pub family: usize,
    pub pair: PairKind,
    pub initial: [(u32, u32); 2],
    pub target: [(u32, u32); 2],
}

impl fmt::Display for CouplingChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lbl = |(n, l): (u32, u32)| format!("{n}{}", spectroscopic_letter(l));
        write!(
            f,
            "|{},{}> -> |{},{}>",
            lbl(self.initial[0]),
            lbl(self.initial[1]),
            lbl(self.target[0]),
            lbl(self.target[1])
        )
    }
}

/// All channels of the eight families with `n1, n2 ∈ [n − window, n + window]`,
/// ordered by family, then `n1`, then `n2`. Levels with `l ≥ n` are skipped.
pub fn enumerate_channels(n: u32, window: u32) -> Result<Vec<CouplingChannel>> {
    if n < 4 {
        return Err(Error::InvalidState(format!(
            "n = {n}: channel table needs n >= 4"
        )));
    }
    if window == 0 {
        return Err(Error::Config("n window must be at least 1".into()));
    }
    let lo = n.saturating_sub(window).max(1);
    let hi = n + window;
    let mut out = Vec::new();
    for (idx, fam) in CHANNEL_FAMILIES.iter().enumerate() {
        for n1 in lo..=hi {
            for n2 in lo..=hi {
                if fam.exclude_same_n && n1 == n && n2 == n {
                    continue;
                }
                if fam.target.0 >= n1 || fam.target.1 >= n2 {
                    continue;
                }
                out.push(CouplingChannel {
                    family: idx,
                    pair: fam.pair,
                    initial: [(n, fam.initial.0), (n, fam.initial.1)],
                    target: [(n1, fam.target.0), (n2, fam.target.1)],
                });
            }
        }
    }
    Ok(out)
}

/// `E(target) − E(initial)`, Hartree.
pub fn channel_detuning(channel: &CouplingChannel, model: &EnergyModel) -> Result<f64> {
    let e = |(n, l): (u32, u32)| energy_level(n, l, model);
    Ok(e(channel.target[0])? + e(channel.target[1])?
        - e(channel.initial[0])?
        - e(channel.initial[1])?)
}

fn sublevels(n: u32, l: u32) -> Result<Vec<OrbitalState>> {
    (-(l as i32)..=l as i32)
        .map(|m| OrbitalState::new(n, l, m))
        .collect()
}

/// Second-order shift of the worst initial sublevel pair due to one channel:
/// `max_{m_a, m_b} Σ_{m_1, m_2} |⟨a;b|V|c;d⟩|² / |ΔE|`, Hartree.
///
/// A channel whose `|ΔE|` is below `resonance_threshold` is reported as a
/// resonance instead of being divided through.
pub fn second_order_estimate(
    channel: &CouplingChannel,
    geometry: &Geometry,
    model: &EnergyModel,
    radial: &dyn RadialSource,
    resonance_threshold: f64,
) -> Result<f64> {
    let detuning = channel_detuning(channel, model)?;
    if detuning.abs() < resonance_threshold {
        return Err(Error::Resonance {
            channels: vec![channel.to_string()],
        });
    }
    let (i, j) = channel.pair.atoms();
    let pair = geometry.pair(i, j)?;
    let (ia, ib) = (channel.initial[0], channel.initial[1]);
    let (ta, tb) = (channel.target[0], channel.target[1]);
    let finals_a = sublevels(ta.0, ta.1)?;
    let finals_b = sublevels(tb.0, tb.1)?;
    let mut worst: f64 = 0.0;
    for a in sublevels(ia.0, ia.1)? {
        for b in sublevels(ib.0, ib.1)? {
            let mut sum = 0.0;
            for c in &finals_a {
                for d in &finals_b {
                    sum += pair_matrix_element(&a, &b, c, d, &pair, radial)?.norm_sqr();
                }
            }
            worst = worst.max(sum);
        }
    }
    Ok(worst / detuning.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BlockadeOptions {
    /// Search `n1, n2` within `n ± window`.
    pub window: u32,
    /// Pass iff every summed margin stays below this.
    pub threshold: f64,
    /// Resonance if `|ΔE| < resonance_factor × max |Δ⁽¹⁾|`.
    pub resonance_factor: f64,
    /// `Ω_max = rabi_ratio × min |Δ_sp⁽¹⁾|`.
    pub rabi_ratio: f64,
}

impl Default for BlockadeOptions {
    fn default() -> Self {
        BlockadeOptions {
            window: 4,
            threshold: 0.1,
            resonance_factor: 10.0,
            rabi_ratio: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelReport {
    pub channel: String,
    pub family: usize,
    pub pair: PairKind,
    pub n1: u32,
    pub n2: u32,
    pub detuning_hartree: f64,
    pub detuning_mhz: f64,
    pub second_order_hartree: f64,
    pub second_order_mhz: f64,
    /// second-order shift / reference first-order shift
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub pair: PairKind,
    pub reference_shift_mhz: f64,
    pub channel_count: usize,
    pub max_margin: f64,
    pub summed_margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockadeReport {
    pub n: u32,
    pub options: BlockadeOptions,
    pub min_shift_sp_mhz: f64,
    pub min_shift_pd_mhz: f64,
    pub min_shift_spd_mhz: f64,
    pub max_shift_mhz: f64,
    pub resonance_threshold_mhz: f64,
    pub channels: Vec<ChannelReport>,
    pub groups: Vec<GroupSummary>,
    /// Channels whose own margin exceeds the threshold.
    pub flagged: Vec<String>,
    pub max_rabi_mhz: f64,
    /// Duration of a π pulse at `max_rabi_mhz`, µs.
    pub min_step_us: f64,
    pub passed: bool,
}

/// Evaluates every channel in the window against the first-order shifts of
/// the configuration.
///
/// Each channel is compared with the smallest nonzero first-order shift of
/// the manifold its initial pair blocks: `sp` channels against `Δ_sp`, `pd`
/// against `Δ_pd`. The `sd` pair is not shifted at first order (it must stay
/// accessible), so its channels are compared with the smallest shift of any
/// manifold. Margins are summed per group and the check passes iff every
/// group sum stays below the threshold.
pub fn check_negligibility(
    n: u32,
    geometry: &Geometry,
    model: &EnergyModel,
    radial: &dyn RadialSource,
    options: &BlockadeOptions,
    exec: Execution,
) -> Result<BlockadeReport> {
    let spectra = exec.try_map(&SubspaceKind::ALL, |&k| {
        subspace_spectrum(k, n, geometry, radial, DegeneracyGuard::Off)
    })?;
    let weakest = |i: usize| -> Result<f64> {
        spectra[i]
            .nonzero_magnitude_range()
            .map(|(lo, _)| lo)
            .ok_or_else(|| {
                Error::Validation(format!(
                    "{:?} manifold has no nonzero shift",
                    SubspaceKind::ALL[i]
                ))
            })
    };
    let (min_sp, min_pd, min_spd) = (weakest(0)?, weakest(1)?, weakest(2)?);
    let max_shift = spectra
        .iter()
        .map(|s| s.spectral_norm())
        .fold(0.0, f64::max);
    let resonance_threshold = options.resonance_factor * max_shift;

    let channels = enumerate_channels(n, options.window)?;
    let results = exec.map(&channels, |ch| {
        second_order_estimate(ch, geometry, model, radial, resonance_threshold)
            .and_then(|s| Ok((channel_detuning(ch, model)?, s)))
    });

    let mut resonant = Vec::new();
    let mut rows = Vec::with_capacity(channels.len());
    for (ch, res) in channels.iter().zip(results) {
        match res {
            Ok((det, shift)) => {
                let reference = match ch.pair {
                    PairKind::Sp => min_sp,
                    PairKind::Pd => min_pd,
                    PairKind::Sd => min_sp.min(min_pd).min(min_spd),
                };
                rows.push(ChannelReport {
                    channel: ch.to_string(),
                    family: ch.family,
                    pair: ch.pair,
                    n1: ch.target[0].0,
                    n2: ch.target[1].0,
                    detuning_hartree: det,
                    detuning_mhz: det * HARTREE_IN_MHZ,
                    second_order_hartree: shift,
                    second_order_mhz: shift * HARTREE_IN_MHZ,
                    margin: shift / reference,
                });
            }
            Err(Error::Resonance { channels }) => resonant.extend(channels),
            Err(e) => return Err(e),
        }
    }
    if !resonant.is_empty() {
        return Err(Error::Resonance { channels: resonant });
    }

    let groups: Vec<GroupSummary> = [PairKind::Sp, PairKind::Pd, PairKind::Sd]
        .into_iter()
        .map(|pair| {
            let members: Vec<&ChannelReport> = rows.iter().filter(|r| r.pair == pair).collect();
            let summed: f64 = members.iter().map(|r| r.margin).sum();
            let max = members.iter().map(|r| r.margin).fold(0.0, f64::max);
            let reference = match pair {
                PairKind::Sp => min_sp,
                PairKind::Pd => min_pd,
                PairKind::Sd => min_sp.min(min_pd).min(min_spd),
            };
            GroupSummary {
                pair,
                reference_shift_mhz: reference * HARTREE_IN_MHZ,
                channel_count: members.len(),
                max_margin: max,
                summed_margin: summed,
                passed: summed < options.threshold,
            }
        })
        .collect();
    let flagged = rows
        .iter()
        .filter(|r| r.margin > options.threshold)
        .map(|r| r.channel.clone())
        .collect();
    let max_rabi_mhz = options.rabi_ratio * min_sp * HARTREE_IN_MHZ;
    let passed = groups.iter().all(|g| g.passed);
    Ok(BlockadeReport {
        n,
        options: *options,
        min_shift_sp_mhz: min_sp * HARTREE_IN_MHZ,
        min_shift_pd_mhz: min_pd * HARTREE_IN_MHZ,
        min_shift_spd_mhz: min_spd * HARTREE_IN_MHZ,
        max_shift_mhz: max_shift * HARTREE_IN_MHZ,
        resonance_threshold_mhz: resonance_threshold * HARTREE_IN_MHZ,
        channels: rows,
        groups,
        flagged,
        max_rabi_mhz,
        // π pulse: Ω t = π with Ω = 2π f
        min_step_us: 1.0 / (2.0 * max_rabi_mhz),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::selection_rule_allowed;
    use crate::hydrogenics::RadialModel;
    use crate::units::micrometers_to_bohr;

    fn rb() -> EnergyModel {
        EnergyModel::quantum_defect([
            (0, 3.1311804),
            (1, 2.6548849),
            (2, 1.34646572),
            (3, 0.0165192),
        ])
    }

    #[test]
    fn exclusions() {
        let chans = enumerate_channels(42, 1).unwrap();
        let has = |fam: usize, n1: u32, n2: u32| {
            chans
                .iter()
                .any(|c| c.family == fam && c.target[0].0 == n1 && c.target[1].0 == n2)
        };
        assert!(!has(0, 42, 42));
        assert!(has(0, 41, 43));
        assert!(has(2, 42, 42));
        assert!(!has(6, 42, 42));
        for (fam, family) in CHANNEL_FAMILIES.iter().enumerate() {
            let count = chans.iter().filter(|c| c.family == fam).count();
            let expect = if family.exclude_same_n { 8 } else { 9 };
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn channels_obey_selection_rules() {
        for ch in enumerate_channels(42, 4).unwrap() {
            for k in 0..2 {
                assert!(
                    selection_rule_allowed(ch.initial[k].1, 0, ch.target[k].1, 0),
                    "{ch}"
                );
            }
        }
    }

    #[test]
    fn small_n_window_skips_invalid_levels() {
        let chans = enumerate_channels(4, 2).unwrap();
        assert!(chans.iter().all(|c| c.target.iter().all(|&(n, l)| l < n)));
        assert!(enumerate_channels(3, 1).is_err());
    }

    #[test]
    fn detunings() {
        let chans = enumerate_channels(42, 1).unwrap();
        let sd_pp = chans
            .iter()
            .find(|c| c.family == 2 && c.target == [(42, 1), (42, 1)])
            .unwrap();
        assert_eq!(
            channel_detuning(sd_pp, &EnergyModel::hydrogenic()).unwrap(),
            0.0
        );
        assert!(channel_detuning(sd_pp, &rb()).unwrap().abs() > 1e-7);
        let zero = EnergyModel::quantum_defect([(0, 0.0), (1, 0.0), (2, 0.0), (3, 0.0)]);
        for ch in &chans {
            assert_eq!(
                channel_detuning(ch, &zero).unwrap(),
                channel_detuning(ch, &EnergyModel::hydrogenic()).unwrap()
            );
        }
    }

    #[test]
    fn estimate_scales_as_inverse_sixth_power() {
        let radial = RadialModel::hydrogen();
        let r = micrometers_to_bohr(5.0);
        let ch = enumerate_channels(42, 1).unwrap()[0];
        let near = Geometry::collinear_z(r, r).unwrap();
        let far = near.scaled(2.0).unwrap();
        let a = second_order_estimate(&ch, &near, &rb(), &radial, 0.0).unwrap();
        let b = second_order_estimate(&ch, &far, &rb(), &radial, 0.0).unwrap();
        assert!(a > 0.0);
        assert!((a / b - 64.0).abs() < 1e-9);
    }

    #[test]
    fn resonant_channel_is_an_alarm() {
        let radial = RadialModel::hydrogen();
        let g = Geometry::collinear_z(1e5, 1e5).unwrap();
        let chans = enumerate_channels(42, 1).unwrap();
        let sd_pp = chans
            .iter()
            .find(|c| c.family == 2 && c.target == [(42, 1), (42, 1)])
            .unwrap();
        let err = second_order_estimate(sd_pp, &g, &EnergyModel::hydrogenic(), &radial, 1e-12)
            .unwrap_err();
        assert!(matches!(err, Error::Resonance { .. }));
    }
}
