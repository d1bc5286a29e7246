//! Square laser pulses and their piecewise-constant schedule.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::model::{GateModel, Level};
use crate::error::{Error, Result};

/// Relative slack when comparing pulse boundaries.
const TIME_EPS: f64 = 1e-12;

/// Resonant drive `(Ω/2)(|a⟩⟨b| e^{iφ} + h.c.)` on one site.
///
/// Times in µs, `rabi` in rad/µs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    pub target: usize,
    pub transition: (Level, Level),
    pub rabi: f64,
    pub area: f64,
    pub phase: f64,
    pub start: f64,
}

impl PulseSpec {
    pub fn new(
        target: usize,
        transition: (Level, Level),
        rabi: f64,
        area: f64,
        phase: f64,
        start: f64,
    ) -> Result<Self> {
        if !(rabi.is_finite() && rabi > 0.0) {
            return Err(Error::Schedule(format!(
                "Rabi frequency must be positive, got {rabi}"
            )));
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::Schedule(format!(
                "pulse area must be positive, got {area}"
            )));
        }
        if !(start.is_finite() && start >= 0.0) {
            return Err(Error::Schedule(format!(
                "start time must be >= 0, got {start}"
            )));
        }
        if transition.0 == transition.1 {
            return Err(Error::Schedule("pulse couples a level to itself".into()));
        }
        Ok(PulseSpec {
            target,
            transition,
            rabi,
            area,
            phase,
            start,
        })
    }

    pub fn pi(
        target: usize,
        transition: (Level, Level),
        rabi: f64,
        phase: f64,
        start: f64,
    ) -> Result<Self> {
        Self::new(target, transition, rabi, PI, phase, start)
    }

    pub fn duration(&self) -> f64 {
        self.area / self.rabi
    }

    pub fn end(&self) -> f64 {
        self.start + self.duration()
    }
}

/// Validated list of pulses for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pulses: Vec<PulseSpec>,
}

/// Interval with a fixed set of active pulses.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub duration: f64,
    pub active: Vec<usize>,
}

impl Schedule {
    /// Checks addressing and rejects overlapping pulses on one site.
    pub fn new(model: &GateModel, pulses: Vec<PulseSpec>) -> Result<Self> {
        for p in &pulses {
            model.level_index(p.target, p.transition.0)?;
            model.level_index(p.target, p.transition.1)?;
            for level in [p.transition.0, p.transition.1] {
                if let Level::Rydberg(r) = level {
                    if r != model.addressed(p.target) {
                        return Err(Error::Schedule(format!(
                            "site {} is addressed to {:?}, pulse drives {:?}",
                            p.target,
                            model.addressed(p.target),
                            r
                        )));
                    }
                }
            }
        }
        for (i, a) in pulses.iter().enumerate() {
            for b in &pulses[i + 1..] {
                if a.target != b.target {
                    continue;
                }
                let slack = TIME_EPS * a.end().max(b.end());
                if a.start < b.end() - slack && b.start < a.end() - slack {
                    return Err(Error::Schedule(format!(
                        "pulses on site {} overlap: [{}, {}] and [{}, {}] us",
                        a.target,
                        a.start,
                        a.end(),
                        b.start,
                        b.end()
                    )));
                }
            }
        }
        Ok(Schedule { pulses })
    }

    pub fn pulses(&self) -> &[PulseSpec] {
        &self.pulses
    }

    pub fn total_duration(&self) -> f64 {
        self.pulses.iter().map(PulseSpec::end).fold(0.0, f64::max)
    }

    /// Splits the schedule at every pulse boundary; idle gaps are kept.
    pub fn segments(&self) -> Vec<Segment> {
        let mut marks: Vec<f64> = self
            .pulses
            .iter()
            .flat_map(|p| [p.start, p.end()])
            .collect();
        marks.push(0.0);
        marks.sort_by(f64::total_cmp);
        let scale = self.total_duration().max(1.0);
        marks.dedup_by(|a, b| (*a - *b).abs() <= TIME_EPS * scale);
        marks
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                let active = (0..self.pulses.len())
                    .filter(|&k| self.pulses[k].start <= mid && mid < self.pulses[k].end())
                    .collect();
                Segment {
                    start: w[0],
                    duration: w[1] - w[0],
                    active,
                }
            })
            .collect()
    }
}
