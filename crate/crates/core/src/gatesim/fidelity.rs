//! Gate-comparison measures on the computational subspace.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const SWEEPS: usize = 200;

fn check_dims(u_sim: &CMatrix, u_ideal: &CMatrix) -> Result<usize> {
    let d = u_ideal.nrows();
    if u_ideal.ncols() != d || u_sim.nrows() != d || u_sim.ncols() != d {
        return Err(Error::Dimension(format!(
            "cannot compare {}x{} with {}x{}",
            u_sim.nrows(),
            u_sim.ncols(),
            u_ideal.nrows(),
            u_ideal.ncols()
        )));
    }
    Ok(d)
}

/// `|Tr(U_ideal† U_sim)| / d`.
pub fn fidelity(u_sim: &CMatrix, u_ideal: &CMatrix) -> Result<f64> {
    let d = check_dims(u_sim, u_ideal)?;
    Ok((u_ideal.adjoint() * u_sim).trace().norm() / d as f64)
}

/// `min_k |⟨k| U_ideal† U_sim |k⟩|`.
pub fn worst_overlap(u_sim: &CMatrix, u_ideal: &CMatrix) -> Result<f64> {
    check_dims(u_sim, u_ideal)?;
    Ok((u_ideal.adjoint() * u_sim)
        .diagonal()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min))
}

/// Probability lost from the subspace, averaged over its basis:
/// `1 − ‖U_proj‖_F² / d`.
pub fn leakage(u_proj: &CMatrix) -> f64 {
    let d = u_proj.ncols() as f64;
    (1.0 - u_proj.iter().map(|z| z.norm_sqr()).sum::<f64>() / d).max(0.0)
}

/// Fidelity after the best single-qubit `Z` rotations on every qubit, before
/// and after the gate. `u_ideal` must have one nonzero entry per column and a
/// power-of-two dimension.
///
/// The objective `|Σ_k w_k e^{-iθ_k}|` is maximized one angle at a time (each
/// step is solved exactly), from a few starting points.
pub fn frame_adjusted_fidelity(u_sim: &CMatrix, u_ideal: &CMatrix) -> Result<f64> {
    let d = check_dims(u_sim, u_ideal)?;
    if !d.is_power_of_two() || d < 2 {
        return Err(Error::Dimension(format!(
            "dimension {d} is not a qubit register"
        )));
    }
    let qubits = d.trailing_zeros() as usize;
    let mut rows = Vec::with_capacity(d);
    for k in 0..d {
        let nz: Vec<usize> = (0..d).filter(|&r| u_ideal[(r, k)].norm() > 1e-12).collect();
        if nz.len() != 1 {
            return Err(Error::Validation(
                "ideal gate is not a phased permutation".into(),
            ));
        }
        rows.push(nz[0]);
    }
    let weights: Vec<Complex64> = (0..d)
        .map(|k| u_ideal[(rows[k], k)].conj() * u_sim[(rows[k], k)])
        .collect();
    // parameter p < qubits acts on output bit p, the rest on input bits
    let coeff = |p: usize, k: usize| -> bool {
        if p < qubits {
            rows[k] >> p & 1 == 1
        } else {
            k >> (p - qubits) & 1 == 1
        }
    };
    let params = 2 * qubits;
    let value = |theta: &[f64]| -> f64 {
        let s: Complex64 = (0..d)
            .map(|k| {
                let phase: f64 = (0..params).filter(|&p| coeff(p, k)).map(|p| theta[p]).sum();
                weights[k] * Complex64::from_polar(1.0, -phase)
            })
            .sum();
        s.norm()
    };
    let mut best = value(&vec![0.0; params]);
    for start in 0..8u32 {
        let mut theta: Vec<f64> = (0..params)
            .map(|p| {
                if p < 3 && start >> p & 1 == 1 {
                    std::f64::consts::PI
                } else {
                    0.0
                }
            })
            .collect();
        let mut last = value(&theta);
        for _ in 0..SWEEPS {
            for p in 0..params {
                let (mut a, mut b) = (Complex64::default(), Complex64::default());
                for (k, w) in weights.iter().enumerate() {
                    let phase: f64 = (0..params)
                        .filter(|&q| q != p && coeff(q, k))
                        .map(|q| theta[q])
                        .sum();
                    let term = w * Complex64::from_polar(1.0, -phase);
                    if coeff(p, k) {
                        b += term;
                    } else {
                        a += term;
                    }
                }
                if b.norm() > 0.0 {
                    theta[p] = if a.norm() > 0.0 {
                        b.arg() - a.arg()
                    } else {
                        0.0
                    };
                }
            }
            let now = value(&theta);
            if now - last <= 1e-15 {
                last = now;
                break;
            }
            last = now;
        }
        best = best.max(last);
    }
    Ok(best / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sigma_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
    }

    #[test]
    fn trivial_cases() {
        let u = CMatrix::from_fn(4, 4, |r, k| Complex64::from_polar(0.5, (r * 3 + k) as f64));
        let id2 = CMatrix::identity(2, 2);
        let x = sigma_x();
        assert!((fidelity(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((fidelity(&(-x.clone()), &x).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&x, &id2).unwrap(), 0.0);
        assert!(fidelity(&u, &id2).is_err());
    }

    #[test]
    fn frame_absorbs_local_z_only() {
        let z = |a: f64| {
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(1.0),
                Complex64::from_polar(1.0, a),
            ]))
        };
        let ideal = sigma_x();
        let framed = z(0.7) * &ideal * z(-1.9);
        assert!(fidelity(&framed, &ideal).unwrap() < 0.9);
        assert!((frame_adjusted_fidelity(&framed, &ideal).unwrap() - 1.0).abs() < 1e-12);

        // a controlled phase is not a product of local Z rotations
        let cz = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0),
            c(1.0),
            c(1.0),
            c(-1.0),
        ]));
        let id4 = CMatrix::identity(4, 4);
        assert!(frame_adjusted_fidelity(&cz, &id4).unwrap() < 0.75 + 1e-12);
    }

    #[test]
    fn leakage_of_a_lossy_projection() {
        let mut u = CMatrix::identity(2, 2);
        u[(1, 1)] = c(0.8);
        assert!((leakage(&u) - 0.18).abs() < 1e-15);
        assert!((worst_overlap(&u, &CMatrix::identity(2, 2)).unwrap() - 0.8).abs() < 1e-15);
    }
}
