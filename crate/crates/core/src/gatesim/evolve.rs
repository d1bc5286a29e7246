//! Piecewise-constant Hamiltonians and their propagators (rad/µs, µs).

use nalgebra::DVector;
use num_complex::Complex64;

use super::interaction::InteractionTerms;
use super::model::GateModel;
use super::pulse::{PulseSpec, Schedule};
use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, CMatrix};

/// `Σ (Ω/2)(|a⟩⟨b| e^{iφ} + h.c.)` over `active` pulses plus the interaction.
///
/// Couplings into states with an infinite shift are dropped, so those
/// states never become populated.
pub fn build_hamiltonian(
    model: &GateModel,
    pulses: &[&PulseSpec],
    terms: &InteractionTerms,
) -> Result<CMatrix> {
    let dim = model.dim();
    if terms.diagonal.len() != dim {
        return Err(Error::Dimension(format!(
            "interaction has {} states, model {dim}",
            terms.diagonal.len()
        )));
    }
    let mut h = CMatrix::zeros(dim, dim);
    for (s, &d) in terms.diagonal.iter().enumerate() {
        if d.is_finite() {
            h[(s, s)] = Complex64::new(d, 0.0);
        }
    }
    for &(a, b, v) in &terms.off_diagonal {
        if !terms.is_excluded(a) && !terms.is_excluded(b) {
            h[(a, b)] += v;
        }
    }
    for p in pulses {
        let ia = model.level_index(p.target, p.transition.0)?;
        let ib = model.level_index(p.target, p.transition.1)?;
        let coupling = Complex64::from_polar(0.5 * p.rabi, p.phase);
        for s in 0..dim {
            let mut levels = model.split(s);
            if levels[p.target] != ib {
                continue;
            }
            levels[p.target] = ia;
            let t = model.index(levels);
            if terms.is_excluded(s) || terms.is_excluded(t) {
                continue;
            }
            h[(t, s)] += coupling;
            h[(s, t)] += coupling.conj();
        }
    }
    Ok(h)
}

/// Full-space propagator of a schedule, latest segment leftmost.
pub fn propagate(
    model: &GateModel,
    schedule: &Schedule,
    terms: &InteractionTerms,
) -> Result<CMatrix> {
    let dim = model.dim();
    let mut u = CMatrix::identity(dim, dim);
    for seg in schedule.segments() {
        let active: Vec<&PulseSpec> = seg.active.iter().map(|&k| &schedule.pulses()[k]).collect();
        let h = build_hamiltonian(model, &active, terms)?;
        u = expm_hermitian(&h, seg.duration)? * u;
    }
    Ok(u)
}

/// `exp(-i H t) ψ`.
pub fn evolve_state(h: &CMatrix, psi: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
    if h.nrows() != psi.len() {
        return Err(Error::Dimension(format!(
            "state of length {} for {}x{} Hamiltonian",
            psi.len(),
            h.nrows(),
            h.ncols()
        )));
    }
    Ok(expm_hermitian(h, t)? * psi)
}
