use proptest::prelude::*;

use rydberg_core::coupling::{
    subspace_spectrum, uncoupled_state_check, DegeneracyGuard, Geometry, SubspaceKind,
};
use rydberg_core::hydrogenics::RadialModel;
use rydberg_core::units::micrometers_to_bohr;
use rydberg_core::Execution;

fn um(p: [[f64; 3]; 3]) -> Geometry {
    Geometry::from_micrometers(p).unwrap()
}

fn spectrum(kind: SubspaceKind, g: &Geometry) -> Vec<f64> {
    subspace_spectrum(kind, 42, g, &RadialModel::hydrogen(), DegeneracyGuard::Off)
        .unwrap()
        .eigenvalues
}

fn dimensionless(kind: SubspaceKind, g: &Geometry) -> Vec<f64> {
    subspace_spectrum(kind, 42, g, &RadialModel::hydrogen(), DegeneracyGuard::Off)
        .unwrap()
        .dimensionless
        .unwrap()
}

fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = axis.map(|v| v / n);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn coord() -> impl Strategy<Value = f64> {
    -8.0f64..8.0
}

fn positions() -> impl Strategy<Value = [[f64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(coord())).prop_filter("atoms well separated", |p| {
        let d = |a: [f64; 3], b: [f64; 3]| {
            ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
        };
        d(p[0], p[1]) > 1.0 && d(p[1], p[2]) > 1.0 && d(p[0], p[2]) > 1.0
    })
}

#[test]
fn spd_spectrum_depends_on_geometry() {
    let a = spectrum(
        SubspaceKind::Spd,
        &um([[0.0, 0.0, 0.0], [0.0, 0.0, 5.0], [0.0, 0.0, 10.0]]),
    );
    let b = spectrum(
        SubspaceKind::Spd,
        &um([[0.0, 0.0, 0.0], [4.0, 0.0, 3.0], [1.0, 6.0, 2.0]]),
    );
    let norm = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max_diff(&a, &b) > 1e-3 * norm);
}

#[test]
fn subspace_dimensions() {
    let g = um([[0.0, 0.0, 0.0], [0.0, 0.0, 5.0], [0.0, 0.0, 10.0]]);
    assert_eq!(spectrum(SubspaceKind::Sp, &g).len(), 6);
    assert_eq!(spectrum(SubspaceKind::Pd, &g).len(), 30);
}

#[test]
fn s_and_d_never_exchange() {
    let radial = RadialModel::hydrogen();
    let g = um([[0.0, 0.0, 0.0], [3.0, 1.0, 2.0], [-1.0, 4.0, 0.5]]);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        assert!(uncoupled_state_check(0, 2, 42, &g.pair(i, j).unwrap(), &radial).unwrap());
    }
}

#[test]
fn coincident_atoms_are_rejected() {
    assert!(Geometry::new([[0.0; 3], [0.0; 3], [0.0, 0.0, 1.0]]).is_err());
    assert!(Geometry::collinear_z(micrometers_to_bohr(5.0), 0.0).is_err());
}

#[test]
fn parallel_and_sequential_spectra_agree() {
    let geoms: Vec<Geometry> = (1..=12)
        .map(|k| um([[0.0; 3], [0.0, 0.0, 4.0], [k as f64, 1.0, 7.0]]))
        .collect();
    let run = |exec: Execution| exec.map(&geoms, |g| spectrum(SubspaceKind::Spd, g));
    assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sp_and_pd_dimensionless_spectra_are_geometry_independent(p in positions()) {
        let reference = um([[0.0, 0.0, 0.0], [0.0, 0.0, 5.0], [0.0, 0.0, 10.0]]);
        let g = um(p);
        for kind in [SubspaceKind::Sp, SubspaceKind::Pd] {
            prop_assert!(max_diff(&dimensionless(kind, &g), &dimensionless(kind, &reference)) < 1e-10);
        }
    }

    #[test]
    fn spectra_are_rotation_invariant(p in positions(), axis in prop::array::uniform3(-1.0f64..1.0), angle in 0.0f64..6.3) {
        prop_assume!(axis.iter().map(|v| v * v).sum::<f64>() > 1e-2);
        let g = um(p);
        let r = g.rotated(&rotation(axis, angle)).unwrap();
        for kind in SubspaceKind::ALL {
            let a = spectrum(kind, &g);
            let norm = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(max_diff(&a, &spectrum(kind, &r)) <= 1e-10 * norm);
        }
    }

    #[test]
    fn spectra_scale_as_inverse_cube(p in positions(), factor in 0.5f64..3.0) {
        let g = um(p);
        let s = g.scaled(factor).unwrap();
        let a = spectrum(SubspaceKind::Spd, &g);
        let b: Vec<f64> = spectrum(SubspaceKind::Spd, &s).iter().map(|v| v * factor.powi(3)).collect();
        let norm = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(max_diff(&a, &b) <= 1e-10 * norm);
    }
}
