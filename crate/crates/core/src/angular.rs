//! Spherical harmonics (Condon-Shortley phase) and the vector integrals
//!
//! `A_{l,m}^{l',m'} = ∫ dΩ e_r Y*_{lm} Y_{l'm'}`
//!
//! of the unit radial vector between two harmonics. The production path uses
//! closed-form dipole coefficients; [`angular_vector_integral_quadrature`]
//! evaluates the same integral on a product grid and serves as the oracle.
//! Signs of individual components depend on the phase convention; anything
//! built from Hermitian combinations of them (spectra) does not.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hydrogenics::quadrature::gauss_legendre;

/// Highest `l` accepted by the angular routines.
pub const MAX_L: u32 = 10;

/// Cartesian `(x, y, z)` components of `A_{l,m}^{l',m'}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularVectorIntegral {
    pub bra: (u32, i32),
    pub ket: (u32, i32),
    pub value: [Complex64; 3],
}

impl AngularVectorIntegral {
    pub fn is_zero(&self) -> bool {
        self.value.iter().all(|c| c.norm() == 0.0)
    }

    /// Bilinear (unconjugated) dot product with another vector integral.
    pub fn dot(&self, other: &AngularVectorIntegral) -> Complex64 {
        self.value
            .iter()
            .zip(&other.value)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Projection on a real direction.
    pub fn project(&self, u: &[f64; 3]) -> Complex64 {
        self.value.iter().zip(u).map(|(a, b)| a * b).sum()
    }
}

/// True iff `l' = l ± 1` and `|m' - m| <= 1`.
pub fn selection_rule_allowed(l: u32, m: i32, lp: u32, mp: i32) -> bool {
    l.abs_diff(lp) == 1 && (mp - m).abs() <= 1
}

/// `Y_lm(θ, φ)`, normalized to unit norm on the sphere.
pub fn sph_harm(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    assert!(m.unsigned_abs() <= l, "|m| = {} exceeds l = {l}", m.abs());
    let am = m.unsigned_abs();
    let p = assoc_legendre(l, am, theta.cos());
    // (l-m)!/(l+m)! as a running product
    let ratio: f64 = ((l - am + 1)..=(l + am)).map(|k| 1.0 / k as f64).product();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    let y = Complex64::from_polar(norm * p, am as f64 * phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// `P_l^m(x)` for `m >= 0`, including the Condon-Shortley `(-1)^m`.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for ll in (m + 2)..=l {
        let next = ((2 * ll - 1) as f64 * x * pm1 - (ll + m - 1) as f64 * pm0) / (ll - m) as f64;
        pm0 = pm1;
        pm1 = next;
    }
    pm1
}

/// `⟨l m| sinθ e^{iφ} |l' m'⟩`, nonzero only for `m = m' + 1`, `l = l' ± 1`.
fn raising(l: u32, m: i32, lp: u32, mp: i32) -> f64 {
    if m != mp + 1 {
        return 0.0;
    }
    let (lpf, mpf) = (lp as f64, mp as f64);
    if l == lp + 1 {
        -((lpf + mpf + 1.0) * (lpf + mpf + 2.0) / ((2.0 * lpf + 1.0) * (2.0 * lpf + 3.0))).sqrt()
    } else if l + 1 == lp {
        ((lpf - mpf) * (lpf - mpf - 1.0) / ((2.0 * lpf - 1.0) * (2.0 * lpf + 1.0))).sqrt()
    } else {
        0.0
    }
}

/// `⟨l m| cosθ |l' m'⟩`, nonzero only for `m = m'`, `l = l' ± 1`.
fn cosine(l: u32, m: i32, lp: u32, mp: i32) -> f64 {
    if m != mp {
        return 0.0;
    }
    let mf = m as f64;
    let upper = if l == lp + 1 {
        l
    } else if l + 1 == lp {
        lp
    } else {
        return 0.0;
    } as f64;
    ((upper * upper - mf * mf) / ((2.0 * upper - 1.0) * (2.0 * upper + 1.0))).sqrt()
}

fn check_args(l: u32, m: i32, lp: u32, mp: i32) {
    assert!(
        l <= MAX_L && lp <= MAX_L,
        "angular integrals support l <= {MAX_L}"
    );
    assert!(
        m.unsigned_abs() <= l && mp.unsigned_abs() <= lp,
        "|m| must not exceed l"
    );
}

/// Closed-form `A_{l,m}^{l',m'}`.
pub fn angular_vector_integral(l: u32, m: i32, lp: u32, mp: i32) -> AngularVectorIntegral {
    check_args(l, m, lp, mp);
    let up = raising(l, m, lp, mp);
    // ⟨lm|sinθ e^{-iφ}|l'm'⟩ is the transpose of the raising element (all real)
    let down = raising(lp, mp, l, m);
    let z = cosine(l, m, lp, mp);
    let x = Complex64::new(0.5 * (up + down), 0.0);
    let y = Complex64::new(0.0, -0.5 * (up - down));
    AngularVectorIntegral {
        bra: (l, m),
        ket: (lp, mp),
        value: [x, y, Complex64::new(z, 0.0)],
    }
}

/// Product-grid quadrature of `A_{l,m}^{l',m'}`: Gauss-Legendre in `cos θ`,
/// uniform trapezoid in `φ`. Both are exact for the band-limited integrand
/// once each direction has at least `2(l + l' + 2)` nodes.
pub fn angular_vector_integral_quadrature(
    l: u32,
    m: i32,
    lp: u32,
    mp: i32,
) -> AngularVectorIntegral {
    check_args(l, m, lp, mp);
    let nodes = 2 * (l + lp + 2) as usize;
    let value = sphere_quadrature(nodes, |theta, phi| {
        let w = sph_harm(l, m, theta, phi).conj() * sph_harm(lp, mp, theta, phi);
        let (st, ct) = theta.sin_cos();
        [w * (st * phi.cos()), w * (st * phi.sin()), w * ct]
    });
    AngularVectorIntegral {
        bra: (l, m),
        ket: (lp, mp),
        value,
    }
}

/// `∫ dΩ Y*_{lm} Y_{l'm'}` on the same grid as the vector oracle.
pub fn overlap_quadrature(l: u32, m: i32, lp: u32, mp: i32) -> Complex64 {
    let nodes = 2 * (l + lp + 2) as usize;
    sphere_quadrature(nodes, |theta, phi| {
        let v = sph_harm(l, m, theta, phi).conj() * sph_harm(lp, mp, theta, phi);
        [v, Complex64::default(), Complex64::default()]
    })[0]
}

fn sphere_quadrature<F>(nodes: usize, f: F) -> [Complex64; 3]
where
    F: Fn(f64, f64) -> [Complex64; 3],
{
    let (xs, ws) = gauss_legendre(nodes);
    let dphi = 2.0 * PI / nodes as f64;
    let mut acc = [Complex64::default(); 3];
    for (x, w) in xs.iter().zip(&ws) {
        let theta = x.acos();
        for k in 0..nodes {
            let phi = k as f64 * dphi;
            let v = f(theta, phi);
            for c in 0..3 {
                acc[c] += v[c] * (w * dphi);
            }
        }
    }
    acc
}
