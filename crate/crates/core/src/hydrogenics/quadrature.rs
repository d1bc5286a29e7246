//! Composite Gauss-Legendre quadrature on `[0, r_max]` for radial integrands.
//!
//! Panels are uniform in `t = sqrt(r / r_max)`. The local de Broglie
//! wavelength of a Coulomb state grows like `sqrt(r)` in the classically
//! allowed region, so this keeps a roughly constant number of nodes per
//! oscillation out to the turning point, and still covers the tail.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per panel.
pub const GAUSS_ORDER: usize = 24;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GAUSS_ORDER))
}

/// Returns `(∫ f, ∫ |f|)` over `[0, r_max]` with `panels` sqrt-graded panels.
pub fn integrate_graded<F: Fn(f64) -> f64>(f: &F, r_max: f64, panels: usize) -> (f64, f64) {
    let (nodes, weights) = rule();
    let h = 1.0 / panels as f64;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for p in 0..panels {
        let t0 = p as f64 * h;
        let mut part = 0.0;
        let mut abs_part = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            let t = t0 + 0.5 * h * (x + 1.0);
            let r = r_max * t * t;
            let v = f(r) * 2.0 * r_max * t;
            part += w * v;
            abs_part += w * v.abs();
        }
        sum += 0.5 * h * part;
        abs_sum += 0.5 * h * abs_part;
    }
    (sum, abs_sum)
}

/// Refines by panel doubling until successive estimates agree to `rel_tol`
/// relative to the result, or to a roundoff floor of `1e-15 ∫|f|` when the
/// result is itself a cancellation (orthogonality integrals).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    r_max: f64,
    start_panels: usize,
    rel_tol: f64,
    max_doublings: u32,
) -> Result<f64> {
    let mut panels = start_panels.max(1);
    let (mut prev, _) = integrate_graded(f, r_max, panels);
    let mut estimate = f64::INFINITY;
    for _ in 0..max_doublings {
        panels *= 2;
        let (cur, abs) = integrate_graded(f, r_max, panels);
        let diff = (cur - prev).abs();
        if diff <= rel_tol * cur.abs() || diff <= 1e-15 * abs {
            return Ok(cur);
        }
        estimate = if cur != 0.0 {
            diff / cur.abs()
        } else {
            f64::INFINITY
        };
        prev = cur;
    }
    Err(Error::Accuracy {
        estimate,
        target: rel_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_weights() {
        let (x, w) = gauss_legendre(GAUSS_ORDER);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // exact for degree 2n-1 polynomials
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(46)).sum();
        assert!((integral - 2.0 / 47.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_moments() {
        // ∫ r^4 e^{-r} = 24
        let f = |r: f64| r.powi(4) * (-r).exp();
        let v = integrate_adaptive(&f, 80.0, 8, 1e-12, 8).unwrap();
        assert!((v - 24.0).abs() < 1e-11);
    }

    #[test]
    fn non_convergence_is_reported() {
        let f = |r: f64| (1e4 * r).sin().abs();
        let err = integrate_adaptive(&f, 1.0, 1, 1e-14, 2).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }
}
