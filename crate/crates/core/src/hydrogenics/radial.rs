use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{factorial_table, ratio_to_f64};
use super::quadrature::integrate_adaptive;
use super::state::check_nl;
use super::RadialWavefunction;
use crate::error::{Error, Result};

/// Default cap on the bit length of exact intermediates in the closed form.
pub const DEFAULT_BIGINT_BUDGET_BITS: u64 = 1 << 22;

const QUADRATURE_REL_TOL: f64 = 1e-12;
const QUADRATURE_MAX_DOUBLINGS: u32 = 6;

/// `∫ r³ R_nl R_n'l' dr`, in units of `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIntegral {
    pub bra: (u32, u32),
    pub ket: (u32, u32),
    pub value: f64,
}

impl RadialIntegral {
    /// Value in Bohr radii for nuclear charge `z` (`a = a0 / Z`).
    pub fn in_bohr(&self, z: f64) -> f64 {
        self.value / z
    }
}

/// Closed-form radial integral with the default big-integer budget.
pub fn radial_integral_closed(n: u32, l: u32, np: u32, lp: u32) -> Result<RadialIntegral> {
    radial_integral_closed_with_budget(n, l, np, lp, DEFAULT_BIGINT_BUDGET_BITS)
}

/// Double-sum closed form evaluated in exact integer arithmetic.
///
/// With `A = n-l-1`, `B = n'-l'-1`, `N = n+n'`, every term of the double sum
/// over `(r, s)` becomes an integer after multiplying by
/// `N^{A+B} A! (n+l)! B! (n'+l')!`; the same factorial product sits under the
/// square root of the prefactor. The result is
///
/// `R = 2^{l+l'+2} n^{2+l'} n'^{2+l} S / (N^{4+l+l'+A+B} sqrt(A! (n+l)! B! (n'+l')!))`
///
/// where `S` is the integer sum. Only the final ratio is rounded.
pub fn radial_integral_closed_with_budget(
    n: u32,
    l: u32,
    np: u32,
    lp: u32,
    budget_bits: u64,
) -> Result<RadialIntegral> {
    check_nl(n, l)?;
    check_nl(np, lp)?;
    // canonical argument order makes the swap symmetry bit-exact
    let ((n1, l1), (n2, l2)) = if (n, l) <= (np, lp) {
        ((n, l), (np, lp))
    } else {
        ((np, lp), (n, l))
    };

    let a = n1 - l1 - 1;
    let b = n2 - l2 - 1;
    let big_n = BigInt::from(n1 + n2);
    let max_fact = (3 + l1 + l2 + a + b).max(n1 + l1).max(n2 + l2);
    let fact = factorial_table(max_fact);
    let f = |k: u32| &fact[k as usize];

    let n_pow: Vec<BigInt> = powers(&BigInt::from(n1), b.max(2 + l2) as usize);
    let np_pow: Vec<BigInt> = powers(&BigInt::from(n2), a.max(2 + l1) as usize);
    let total_pow_max = (4 + l1 + l2 + a + b) as usize;
    let big_n_pow = powers(&big_n, total_pow_max);

    // per-r factors: C(A, r) (n+l)!/(2l+r+1)! n'^r
    let row: Vec<BigInt> = (0..=a)
        .map(|r| {
            let binom = f(a) / (f(r) * f(a - r));
            binom * (f(n1 + l1) / f(2 * l1 + r + 1)) * &np_pow[r as usize]
        })
        .collect();
    let col: Vec<BigInt> = (0..=b)
        .map(|s| {
            let binom = f(b) / (f(s) * f(b - s));
            binom * (f(n2 + l2) / f(2 * l2 + s + 1)) * &n_pow[s as usize]
        })
        .collect();

    let mut sum = BigInt::zero();
    for r in 0..=a {
        for s in 0..=b {
            let k = r + s;
            let mut term = &row[r as usize] * &col[s as usize];
            term *= f(3 + l1 + l2 + k);
            term *= &big_n_pow[(a + b - k) as usize];
            term <<= k as usize;
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
        }
        if sum.bits() > budget_bits {
            return Err(Error::Capacity(format!(
                "radial sum for ({n},{l})-({np},{lp}) exceeds {budget_bits} bits"
            )));
        }
    }

    let mut num = sum.clone();
    num <<= (l1 + l2 + 2) as usize;
    num *= &n_pow[(2 + l2) as usize];
    num *= &np_pow[(2 + l1) as usize];
    let den = &big_n_pow[total_pow_max];
    let root_arg = f(a) * f(n1 + l1) * f(b) * f(n2 + l2);

    let num_sq = &num * &num;
    let den_sq = den * den * root_arg;
    if num_sq.bits().max(den_sq.bits()) > budget_bits {
        return Err(Error::Capacity(format!(
            "radial prefactor for ({n},{l})-({np},{lp}) exceeds {budget_bits} bits"
        )));
    }
    let magnitude = ratio_to_f64(&num_sq, &den_sq).sqrt();
    let value = if sum.is_negative() {
        -magnitude
    } else {
        magnitude
    };
    Ok(RadialIntegral {
        bra: (n, l),
        ket: (np, lp),
        value,
    })
}

fn powers(base: &BigInt, max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = BigInt::from(1);
    out.push(acc.clone());
    for _ in 0..max {
        acc *= base;
        out.push(acc.clone());
    }
    out
}

/// Direct quadrature of `r³ R_nl R_n'l'` on `[0, r_max]`.
///
/// `r_max = 4 max(n,n')² + 60` puts the cut well past both classical turning
/// points (`2n²`) and far enough out for `n = 1` states that the neglected
/// tail is below `1e-14` of the result.
pub fn radial_integral_quadrature(n: u32, l: u32, np: u32, lp: u32) -> Result<RadialIntegral> {
    let bra = RadialWavefunction::new(n, l)?;
    let ket = RadialWavefunction::new(np, lp)?;
    let nmax = n.max(np) as f64;
    let r_max = 4.0 * nmax * nmax + 60.0;
    let integrand = |r: f64| r * r * r * bra.eval(r) * ket.eval(r);
    let start = 2 * (n + np) as usize + 8;
    let value = integrate_adaptive(
        &integrand,
        r_max,
        start,
        QUADRATURE_REL_TOL,
        QUADRATURE_MAX_DOUBLINGS,
    )?;
    Ok(RadialIntegral {
        bra: (n, l),
        ket: (np, lp),
        value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialMethod {
    Closed,
    Quadrature,
}

impl RadialMethod {
    pub fn evaluate(self, n: u32, l: u32, np: u32, lp: u32) -> Result<RadialIntegral> {
        match self {
            RadialMethod::Closed => radial_integral_closed(n, l, np, lp),
            RadialMethod::Quadrature => radial_integral_quadrature(n, l, np, lp),
        }
    }
}

/// Supplies radial integrals in Bohr radii to the interaction-matrix code.
pub trait RadialSource: Sync {
    fn radial_bohr(&self, bra: (u32, u32), ket: (u32, u32)) -> Result<f64>;
}

type PairKey = ((u32, u32), (u32, u32));

/// Hydrogenic radial integrals for charge `z`, memoized behind a mutex.
#[derive(Debug)]
pub struct RadialModel {
    pub method: RadialMethod,
    pub z: f64,
    cache: Mutex<HashMap<PairKey, f64>>,
}

impl RadialModel {
    pub fn new(method: RadialMethod, z: f64) -> Self {
        RadialModel {
            method,
            z,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn hydrogen() -> Self {
        Self::new(RadialMethod::Closed, 1.0)
    }
}

impl Clone for RadialModel {
    fn clone(&self) -> Self {
        RadialModel::new(self.method, self.z)
    }
}

impl Default for RadialModel {
    fn default() -> Self {
        Self::hydrogen()
    }
}

impl RadialSource for RadialModel {
    fn radial_bohr(&self, bra: (u32, u32), ket: (u32, u32)) -> Result<f64> {
        let key = if bra <= ket { (bra, ket) } else { (ket, bra) };
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = self
            .method
            .evaluate(key.0 .0, key.0 .1, key.1 .0, key.1 .1)?
            .in_bohr(self.z);
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Mean radius ⟨nl|r|nl⟩ = (3n² - l(l+1))/2.
    fn mean_radius(n: u32, l: u32) -> f64 {
        (3.0 * (n * n) as f64 - (l * (l + 1)) as f64) / 2.0
    }

    #[test]
    fn diagonal_matches_mean_radius() {
        for &(n, l) in &[(1, 0), (2, 1), (5, 3), (30, 7)] {
            let c = radial_integral_closed(n, l, n, l).unwrap().value;
            let q = radial_integral_quadrature(n, l, n, l).unwrap().value;
            let e = mean_radius(n, l);
            assert!((c - e).abs() < 1e-12 * e, "closed {n},{l}: {c} vs {e}");
            assert!((q - e).abs() < 1e-10 * e, "quad {n},{l}: {q} vs {e}");
        }
        assert_eq!(
            radial_integral_quadrature(1, 0, 1, 0)
                .unwrap()
                .value
                .round(),
            2.0
        );
        assert!((radial_integral_quadrature(1, 0, 1, 0).unwrap().value - 1.5).abs() < 1e-12);
        assert!((radial_integral_quadrature(2, 1, 2, 1).unwrap().value - 5.0).abs() < 1e-11);
    }

    #[test]
    fn one_s_two_p() {
        // |⟨1s|r|2p⟩| = 2^7 √6 / 3^5 = 1.290 27
        let expect = 128.0 * 6f64.sqrt() / 243.0;
        let c = radial_integral_closed(1, 0, 2, 1).unwrap().value;
        let q = radial_integral_quadrature(1, 0, 2, 1).unwrap().value;
        assert!((c.abs() - expect).abs() < 1e-14);
        assert!((c - q).abs() < 1e-11);
        assert!((c.abs() - 1.29027).abs() < 1e-5);
    }

    #[test]
    fn same_n_dipole_formula() {
        // |⟨n,l-1|r|n,l⟩| = (3/2) n sqrt(n² - l²)
        for &(n, l) in &[(42u32, 1u32), (42, 2), (10, 5)] {
            let v = radial_integral_closed(n, l - 1, n, l).unwrap().value.abs();
            let e = 1.5 * n as f64 * ((n * n - l * l) as f64).sqrt();
            assert!((v - e).abs() < 1e-12 * e);
        }
    }

    #[test]
    fn swap_symmetry_is_exact() {
        for &(n, l, np, lp) in &[(42, 0, 42, 1), (7, 3, 12, 2), (1, 0, 9, 1)] {
            let a = radial_integral_closed(n, l, np, lp).unwrap().value;
            let b = radial_integral_closed(np, lp, n, l).unwrap().value;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = radial_integral_closed_with_budget(42, 0, 42, 1, 256).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }

    #[test]
    fn z_scaling() {
        let r = radial_integral_closed(3, 1, 3, 2).unwrap();
        assert!((r.in_bohr(2.0) * 2.0 - r.value).abs() < 1e-15);
        let m = RadialModel::new(RadialMethod::Closed, 3.0);
        assert!((m.radial_bohr((3, 1), (3, 2)).unwrap() - r.value / 3.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_states_rejected() {
        assert!(radial_integral_closed(2, 2, 3, 1).is_err());
        assert!(radial_integral_quadrature(0, 0, 3, 1).is_err());
    }
}
