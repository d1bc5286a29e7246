use nalgebra::DMatrix;
use num_complex::Complex64;

use rydberg_core::gatesim::{
    run_ccphase_protocol, run_toffoli_protocol, sweep_shift_ratio, toffoli_ideal, BlockadeShifts,
    InteractionSpec, PhaseConvention, Protocol,
};
use rydberg_core::hydrogenics::RadialModel;
use rydberg_core::Execution;

const LADDER: [f64; 5] = [5.0, 10.0, 20.0, 50.0, 100.0];

fn swap_controls(k: usize) -> usize {
    let (c1, c2, t) = ((k >> 2) & 1, (k >> 1) & 1, k & 1);
    (c2 << 2) | (c1 << 1) | t
}

fn permuted(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(8, 8, |i, j| m[(swap_controls(i), swap_controls(j))])
}

#[test]
fn leakage_falls_along_the_shift_ladder() {
    for protocol in [Protocol::Toffoli, Protocol::Ccphase] {
        let reports = sweep_shift_ratio(
            protocol,
            1.0,
            &LADDER,
            PhaseConvention::Compensated,
            Execution::default(),
        )
        .unwrap();
        let leak: Vec<f64> = reports.iter().map(|r| r.leakage).collect();
        assert!(leak.windows(2).all(|w| w[1] < w[0]), "{protocol}: {leak:?}");
        let fid: Vec<f64> = reports.iter().map(|r| r.fidelity).collect();
        assert!(fid[LADDER.len() - 1] > fid[0], "{protocol}: {fid:?}");
    }
}

#[test]
fn sweep_is_identical_in_both_execution_modes() {
    let seq = sweep_shift_ratio(
        Protocol::Toffoli,
        1.0,
        &LADDER,
        PhaseConvention::Compensated,
        Execution::Sequential,
    )
    .unwrap();
    let par = sweep_shift_ratio(
        Protocol::Toffoli,
        1.0,
        &LADDER,
        PhaseConvention::Compensated,
        Execution::Parallel,
    )
    .unwrap();
    assert_eq!(seq, par);
}

#[test]
fn swapping_controls_swaps_sp_and_pd_shifts() {
    let radial = RadialModel::hydrogen();
    let a = InteractionSpec::EffectiveDiagonal(BlockadeShifts::new(30.0, 12.0, 7.0).unwrap());
    let b = InteractionSpec::EffectiveDiagonal(BlockadeShifts::new(12.0, 30.0, 7.0).unwrap());
    let ra = run_toffoli_protocol(1.0, &a, &radial, PhaseConvention::Compensated).unwrap();
    let rb = run_toffoli_protocol(1.0, &b, &radial, PhaseConvention::Compensated).unwrap();
    assert!((permuted(&ra.matrix()) - rb.matrix()).norm() < 1e-10);
    let ca = run_ccphase_protocol(1.0, &a, &radial, PhaseConvention::Compensated).unwrap();
    let cb = run_ccphase_protocol(1.0, &b, &radial, PhaseConvention::Compensated).unwrap();
    assert!((permuted(&ca.matrix()) - cb.matrix()).norm() < 1e-10);
}

#[test]
fn strong_blockade_limit_for_both_protocols() {
    let radial = RadialModel::hydrogen();
    let spec = InteractionSpec::EffectiveDiagonal(BlockadeShifts::uniform(1e4));
    let t = run_toffoli_protocol(1.0, &spec, &radial, PhaseConvention::Compensated).unwrap();
    assert!(1.0 - t.frame_fidelity < 1e-4);
    assert_eq!(t.truth_table().to_vec(), toffoli_ideal_table());
    let c = run_ccphase_protocol(1.0, &spec, &radial, PhaseConvention::Compensated).unwrap();
    assert!(1.0 - c.fidelity < 1e-6);
}

fn toffoli_ideal_table() -> Vec<usize> {
    let ideal = toffoli_ideal();
    (0..8)
        .map(|j| (0..8).find(|&i| ideal[(i, j)].norm() > 0.5).unwrap())
        .collect()
}

#[test]
fn fidelity_is_independent_of_rabi_scale_at_fixed_ratio() {
    let radial = RadialModel::hydrogen();
    let run = |rabi: f64| {
        let spec = InteractionSpec::EffectiveDiagonal(BlockadeShifts::uniform(20.0 * rabi));
        run_toffoli_protocol(rabi, &spec, &radial, PhaseConvention::Compensated)
            .unwrap()
            .fidelity
    };
    assert!((run(1.0) - run(2.0 * std::f64::consts::PI * 0.1)).abs() < 1e-10);
}
