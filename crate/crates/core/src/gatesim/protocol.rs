//! The three-step Toffoli protocol on individual atoms and the three-step
//! ccphase protocol on registers.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::evolve::propagate;
use super::fidelity::{fidelity, frame_adjusted_fidelity, leakage, worst_overlap};
use super::interaction::{BlockadeShifts, InteractionSpec};
use super::model::{GateModel, Level, ModelKind, Rydberg, CONTROL_1, CONTROL_2, TARGET};
use super::pulse::{PulseSpec, Schedule};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hydrogenics::{RadialModel, RadialSource};
use crate::linalg::{unitarity_defect, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Toffoli,
    Ccphase,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Toffoli => "toffoli",
            Protocol::Ccphase => "ccphase",
        })
    }
}

impl FromStr for Protocol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "toffoli" | "ccnot" => Ok(Protocol::Toffoli),
            "ccphase" => Ok(Protocol::Ccphase),
            other => Err(Error::Config(format!("unknown protocol '{other}'"))),
        }
    }
}

/// Laser phases of the returning pulses.
///
/// With `Literal` every pulse has phase 0: a π–π pair on one transition
/// returns the state with a factor −1, and the three target pulses of the
/// Toffoli step B give `−σ_x`. `Compensated` gives the second pulse of each
/// pair phase π, so each pair is an exact inverse and step B is `+σ_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    #[default]
    Compensated,
    Literal,
}

impl FromStr for PhaseConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "compensated" => Ok(PhaseConvention::Compensated),
            "literal" => Ok(PhaseConvention::Literal),
            other => Err(Error::Config(format!("unknown phase convention '{other}'"))),
        }
    }
}

impl PhaseConvention {
    fn returning(self) -> f64 {
        match self {
            PhaseConvention::Compensated => PI,
            PhaseConvention::Literal => 0.0,
        }
    }
}

/// Result of one protocol run, projected on `|c1 c2 t⟩` (index `4c1 + 2c2 + t`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub protocol: Protocol,
    pub model: ModelKind,
    pub rabi_rad_per_us: f64,
    pub duration_us: f64,
    /// Row-major `[re, im]` pairs of the projected 8×8 gate.
    pub gate: Vec<Vec<[f64; 2]>>,
    pub fidelity: f64,
    pub frame_fidelity: f64,
    pub worst_overlap: f64,
    pub leakage: f64,
    pub unitarity_defect: f64,
}

impl GateReport {
    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(8, 8, |r, c| {
            Complex64::new(self.gate[r][c][0], self.gate[r][c][1])
        })
    }

    /// Most likely output index for each input.
    pub fn truth_table(&self) -> [usize; 8] {
        let m = self.matrix();
        let mut out = [0; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = (0..8)
                .max_by(|&a, &b| m[(a, k)].norm().total_cmp(&m[(b, k)].norm()))
                .unwrap_or(k);
        }
        out
    }
}

/// `diag(I₆, σ_x)`.
pub fn toffoli_ideal() -> CMatrix {
    let mut u = CMatrix::identity(8, 8);
    u[(6, 6)] = Complex64::default();
    u[(7, 7)] = Complex64::default();
    u[(6, 7)] = Complex64::new(1.0, 0.0);
    u[(7, 6)] = Complex64::new(1.0, 0.0);
    u
}

/// Identity except −1 on `|001⟩`: the target phase flips iff both controls
/// hold `0`.
pub fn ccphase_ideal() -> CMatrix {
    let mut u = CMatrix::identity(8, 8);
    u[(1, 1)] = Complex64::new(-1.0, 0.0);
    u
}

fn ryd(r: Rydberg) -> Level {
    Level::Rydberg(r)
}

/// Steps A (π on `0↔r1`, `0↔r3` of both controls), B (π on target `0↔r2`,
/// `1↔r2`, `0↔r2`) and C (step A again).
pub fn toffoli_pulses(rabi: f64, convention: PhaseConvention) -> Result<Vec<PulseSpec>> {
    let tau = PI / rabi;
    let back = convention.returning();
    let control = |phase: f64, start: f64| -> Result<[PulseSpec; 2]> {
        Ok([
            PulseSpec::pi(
                CONTROL_1,
                (Level::Ground, ryd(Rydberg::R1)),
                rabi,
                phase,
                start,
            )?,
            PulseSpec::pi(
                CONTROL_2,
                (Level::Ground, ryd(Rydberg::R3)),
                rabi,
                phase,
                start,
            )?,
        ])
    };
    let mut pulses = Vec::with_capacity(7);
    pulses.extend(control(0.0, 0.0)?);
    pulses.push(PulseSpec::pi(
        TARGET,
        (Level::Ground, ryd(Rydberg::R2)),
        rabi,
        0.0,
        tau,
    )?);
    pulses.push(PulseSpec::pi(
        TARGET,
        (Level::Qubit, ryd(Rydberg::R2)),
        rabi,
        back,
        2.0 * tau,
    )?);
    pulses.push(PulseSpec::pi(
        TARGET,
        (Level::Ground, ryd(Rydberg::R2)),
        rabi,
        0.0,
        3.0 * tau,
    )?);
    pulses.extend(control(back, 4.0 * tau)?);
    Ok(pulses)
}

/// Steps A (π on `q_C1↔r1`, `q_C2↔r3`), B (2π on `q_T↔r2`) and C (step A
/// again). Without step B, C follows A directly.
pub fn ccphase_pulses(
    rabi: f64,
    convention: PhaseConvention,
    with_step_b: bool,
) -> Result<Vec<PulseSpec>> {
    let tau = PI / rabi;
    let control = |phase: f64, start: f64| -> Result<[PulseSpec; 2]> {
        Ok([
            PulseSpec::pi(
                CONTROL_1,
                (Level::Qubit, ryd(Rydberg::R1)),
                rabi,
                phase,
                start,
            )?,
            PulseSpec::pi(
                CONTROL_2,
                (Level::Qubit, ryd(Rydberg::R3)),
                rabi,
                phase,
                start,
            )?,
        ])
    };
    let mut pulses = Vec::with_capacity(5);
    pulses.extend(control(0.0, 0.0)?);
    let c_start = if with_step_b {
        pulses.push(PulseSpec::new(
            TARGET,
            (Level::Qubit, ryd(Rydberg::R2)),
            rabi,
            2.0 * PI,
            0.0,
            tau,
        )?);
        3.0 * tau
    } else {
        tau
    };
    pulses.extend(control(convention.returning(), c_start)?);
    Ok(pulses)
}

/// Simulates `pulses` on `model` and compares the projected gate with `ideal`.
pub fn run_schedule(
    protocol: Protocol,
    model: &GateModel,
    pulses: Vec<PulseSpec>,
    interaction: &InteractionSpec,
    radial: &dyn RadialSource,
    ideal: &CMatrix,
) -> Result<GateReport> {
    let rabi = pulses.first().map(|p| p.rabi).unwrap_or(0.0);
    let schedule = Schedule::new(model, pulses)?;
    let terms = interaction.terms(model, radial)?;
    let u = propagate(model, &schedule, &terms)?;
    let comp = model.computational_indices();
    let proj = CMatrix::from_fn(8, 8, |r, c| u[(comp[r], comp[c])]);
    Ok(GateReport {
        protocol,
        model: model.kind(),
        rabi_rad_per_us: rabi,
        duration_us: schedule.total_duration(),
        gate: (0..8)
            .map(|r| (0..8).map(|c| [proj[(r, c)].re, proj[(r, c)].im]).collect())
            .collect(),
        fidelity: fidelity(&proj, ideal)?,
        frame_fidelity: frame_adjusted_fidelity(&proj, ideal)?,
        worst_overlap: worst_overlap(&proj, ideal)?,
        leakage: leakage(&proj),
        unitarity_defect: unitarity_defect(&u),
    })
}

fn check_rabi(rabi: f64) -> Result<()> {
    if rabi.is_finite() && rabi > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "Rabi frequency must be positive, got {rabi}"
        )))
    }
}

pub fn run_toffoli_protocol(
    rabi: f64,
    interaction: &InteractionSpec,
    radial: &dyn RadialSource,
    convention: PhaseConvention,
) -> Result<GateReport> {
    check_rabi(rabi)?;
    run_schedule(
        Protocol::Toffoli,
        &GateModel::atoms(),
        toffoli_pulses(rabi, convention)?,
        interaction,
        radial,
        &toffoli_ideal(),
    )
}

pub fn run_ccphase_protocol(
    rabi: f64,
    interaction: &InteractionSpec,
    radial: &dyn RadialSource,
    convention: PhaseConvention,
) -> Result<GateReport> {
    check_rabi(rabi)?;
    run_schedule(
        Protocol::Ccphase,
        &GateModel::registers(),
        ccphase_pulses(rabi, convention, true)?,
        interaction,
        radial,
        &ccphase_ideal(),
    )
}

pub fn run_protocol(
    protocol: Protocol,
    rabi: f64,
    interaction: &InteractionSpec,
    radial: &dyn RadialSource,
    convention: PhaseConvention,
) -> Result<GateReport> {
    match protocol {
        Protocol::Toffoli => run_toffoli_protocol(rabi, interaction, radial, convention),
        Protocol::Ccphase => run_ccphase_protocol(rabi, interaction, radial, convention),
    }
}

/// Runs a protocol with a uniform shift `Δ = ratio × Ω` for every ratio.
pub fn sweep_shift_ratio(
    protocol: Protocol,
    rabi: f64,
    ratios: &[f64],
    convention: PhaseConvention,
    exec: Execution,
) -> Result<Vec<GateReport>> {
    let radial = RadialModel::hydrogen();
    exec.try_map(ratios, |&ratio| {
        let spec = InteractionSpec::EffectiveDiagonal(BlockadeShifts::uniform(ratio * rabi));
        run_protocol(protocol, rabi, &spec, &radial, convention)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radial() -> RadialModel {
        RadialModel::hydrogen()
    }

    fn diag(shifts: BlockadeShifts) -> InteractionSpec {
        InteractionSpec::EffectiveDiagonal(shifts)
    }

    #[test]
    fn perfect_blockade_gives_exact_toffoli() {
        let r = run_toffoli_protocol(
            1.0,
            &diag(BlockadeShifts::infinite()),
            &radial(),
            PhaseConvention::Compensated,
        )
        .unwrap();
        assert!((r.matrix() - toffoli_ideal()).norm() < 1e-10);
        assert!(r.leakage < 1e-12);
        assert!(r.unitarity_defect < 1e-10);
    }

    #[test]
    fn literal_phases_are_not_a_local_frame_for_toffoli() {
        let r = run_toffoli_protocol(
            1.0,
            &diag(BlockadeShifts::infinite()),
            &radial(),
            PhaseConvention::Literal,
        )
        .unwrap();
        assert_eq!(r.truth_table(), [0, 1, 2, 3, 4, 5, 7, 6]);
        assert!(r.frame_fidelity < 0.9);
    }

    #[test]
    fn no_shift_flips_target_unconditionally() {
        let r = run_toffoli_protocol(
            1.0,
            &diag(BlockadeShifts::zero()),
            &radial(),
            PhaseConvention::Compensated,
        )
        .unwrap();
        assert_eq!(r.truth_table(), [1, 0, 3, 2, 5, 4, 7, 6]);
        assert!(r.leakage < 1e-12);
    }

    #[test]
    fn perfect_blockade_gives_exact_ccphase_for_both_conventions() {
        for conv in [PhaseConvention::Compensated, PhaseConvention::Literal] {
            let r = run_ccphase_protocol(1.0, &diag(BlockadeShifts::infinite()), &radial(), conv)
                .unwrap();
            assert!((r.frame_fidelity - 1.0).abs() < 1e-12, "{conv:?}");
        }
        let r = run_ccphase_protocol(
            1.0,
            &diag(BlockadeShifts::infinite()),
            &radial(),
            PhaseConvention::Compensated,
        )
        .unwrap();
        assert!((r.matrix() - ccphase_ideal()).norm() < 1e-10);
    }

    #[test]
    fn unblocked_ccphase_flips_every_target_one() {
        let r = run_ccphase_protocol(
            1.0,
            &diag(BlockadeShifts::zero()),
            &radial(),
            PhaseConvention::Compensated,
        )
        .unwrap();
        let m = r.matrix();
        for k in 0..8 {
            let expect = if k & 1 == 1 { -1.0 } else { 1.0 };
            assert!((m[(k, k)] - Complex64::new(expect, 0.0)).norm() < 1e-10);
        }
        assert!(r.fidelity < 1.0 - 1e-3);
    }

    #[test]
    fn steps_a_then_c_return_identity() {
        let model = GateModel::registers();
        let id = CMatrix::identity(8, 8);
        let run = |conv| {
            run_schedule(
                Protocol::Ccphase,
                &model,
                ccphase_pulses(1.3, conv, false).unwrap(),
                &diag(BlockadeShifts::uniform(5.0)),
                &radial(),
                &id,
            )
            .unwrap()
        };
        let c = run(PhaseConvention::Compensated);
        assert!((c.matrix() - &id).norm() < 1e-8);
        let l = run(PhaseConvention::Literal);
        assert!((l.frame_fidelity - 1.0).abs() < 1e-8);
    }

    #[test]
    fn protocol_names_parse() {
        assert_eq!("Toffoli".parse::<Protocol>().unwrap(), Protocol::Toffoli);
        assert_eq!("ccphase".parse::<Protocol>().unwrap(), Protocol::Ccphase);
        assert!("cz".parse::<Protocol>().is_err());
        assert!(run_toffoli_protocol(
            0.0,
            &diag(BlockadeShifts::zero()),
            &radial(),
            PhaseConvention::Literal
        )
        .is_err());
    }
}
