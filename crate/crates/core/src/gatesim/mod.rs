//! Pulse-level simulation of the three-step gates: a Toffoli on three atoms
//! and a ccphase on three mesoscopic registers, with blockade shifts either
//! as scalar detunings or as the full projected dipole-dipole operator.

mod evolve;
mod fidelity;
mod interaction;
mod model;
mod protocol;
mod pulse;

pub use evolve::{build_hamiltonian, evolve_state, propagate};
pub use fidelity::{fidelity, frame_adjusted_fidelity, leakage, worst_overlap};
pub use interaction::{BlockadeShifts, ExchangeSpec, InteractionSpec, InteractionTerms};
pub use model::{GateModel, Level, ModelKind, Rydberg, CONTROL_1, CONTROL_2, TARGET};
pub use protocol::{
    ccphase_ideal, ccphase_pulses, run_ccphase_protocol, run_protocol, run_schedule,
    run_toffoli_protocol, sweep_shift_ratio, toffoli_ideal, toffoli_pulses, GateReport,
    PhaseConvention, Protocol,
};
pub use pulse::{PulseSpec, Schedule, Segment};
