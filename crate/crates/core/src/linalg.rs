//! Dense complex Hermitian eigensolver (cyclic Jacobi) and a few matrix
//! helpers used by the coupling and gate modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Largest entry of `|A - A†|` divided by the largest `|A_ij|` (0 for A = 0).
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst / scale
}

/// Largest singular value bound: Frobenius norm of `U†U - I`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let prod = u.adjoint() * u;
    let n = prod.nrows();
    (prod - CMatrix::identity(n, n))
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of `A_pq` and then applies the real
/// symmetric Jacobi rotation, so the annihilating transform is
/// `J = diag(1, e^{-iφ}) · R(θ)` on the `(p, q)` plane.
pub fn eigh(a: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            n,
            a.ncols()
        )));
    }
    let defect = hermiticity_defect(a);
    if defect > tol {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (relative defect {defect:e})"
        )));
    }
    // symmetrize so tiny asymmetries do not leak into the rotations
    let mut m = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let mut v = CMatrix::identity(n, n);
    let total: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let threshold = (f64::EPSILON * f64::EPSILON) * total;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = off_diagonal_norm_sqr(&m);
        if off <= threshold || off == 0.0 {
            return Ok(sorted(m, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phase = apq / mag; // e^{iφ}
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J entries
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                // columns: M <- M J
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                // rows: M <- J† M
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = Complex64::default();
                m[(q, p)] = Complex64::default();
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    Err(Error::Validation(format!(
        "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
    )))
}

fn off_diagonal_norm_sqr(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn sorted(m: CMatrix, v: CMatrix) -> HermitianEigen {
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// `exp(-i H t)` for Hermitian `H`, through its eigendecomposition.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = eigh(h, 1e-12)?;
    let n = h.nrows();
    let mut scaled = eig.vectors.clone();
    for (c, lambda) in eig.values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        for r in 0..n {
            scaled[(r, c)] *= phase;
        }
    }
    Ok(scaled * eig.vectors.adjoint())
}
