use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use super::exact::{factorial_table, ratio_to_f64};
use crate::error::{Error, Result};

/// Largest `p + k` for which exact coefficients are produced.
pub const MAX_LAGUERRE_ORDER_SUM: u32 = 200;

/// Exact coefficients `c_s` of `L_p^k(x) = Σ_s c_s x^s` in the old convention
///
/// `c_s = (-1)^s [(p+k)!]² / ((p-s)! (k+s)! s!)`,
///
/// which equals `(p+k)!` times the modern associated Laguerre polynomial.
pub fn laguerre_coefficients(p: u32, k: u32) -> Result<Vec<BigRational>> {
    if p + k > MAX_LAGUERRE_ORDER_SUM {
        return Err(Error::Capacity(format!(
            "Laguerre order p + k = {} exceeds {MAX_LAGUERRE_ORDER_SUM}",
            p + k
        )));
    }
    let fact = factorial_table(p + k);
    let top = &fact[(p + k) as usize] * &fact[(p + k) as usize];
    Ok((0..=p)
        .map(|s| {
            let den = &fact[(p - s) as usize] * &fact[(k + s) as usize] * &fact[s as usize];
            let num = if s % 2 == 0 {
                top.clone()
            } else {
                -top.clone()
            };
            BigRational::new(num, den)
        })
        .collect())
}

/// Evaluates `L_p^k(x)` (old convention) exactly: the coefficients and `x`
/// (a dyadic rational) are combined in rational arithmetic and rounded once.
pub fn laguerre_eval(p: u32, k: u32, x: f64) -> Result<f64> {
    let coeffs = laguerre_coefficients(p, k)?;
    let x = BigRational::from_f64(x)
        .ok_or_else(|| Error::InvalidState(format!("non-finite Laguerre argument {x}")))?;
    let value = coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &x + c);
    Ok(ratio_to_f64(value.numer(), value.denom()))
}

/// Exact value as a rational, for callers that continue in exact arithmetic.
pub(crate) fn laguerre_eval_exact(p: u32, k: u32, x: &BigRational) -> Result<BigRational> {
    let coeffs = laguerre_coefficients(p, k)?;
    Ok(coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_polynomial() {
        assert_eq!(laguerre_eval(0, 1, 5.0).unwrap(), 1.0);
    }

    #[test]
    fn p1_k1_is_four_minus_two_x() {
        // hand expansion: s=0 gives (2!)²/(1!·1!·0!) = 4, s=1 gives -(2!)²/(0!·2!·1!) = -2
        for &x in &[0.0, 1.0, 2.5, -3.0] {
            assert_eq!(laguerre_eval(1, 1, x).unwrap(), 4.0 - 2.0 * x);
        }
        assert_eq!(laguerre_eval(1, 1, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn p2_k0_at_origin_is_leading_term() {
        // s=0 term: (2!)²/(2!·0!·0!) = 2
        assert_eq!(laguerre_eval(2, 0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(
            laguerre_eval(150, 60, 1.0),
            Err(Error::Capacity(_))
        ));
        assert!(laguerre_eval(100, 100, 1.0).is_ok());
    }

    #[test]
    fn matches_modern_recurrence_times_factorial() {
        // (p+k)! L^k_p,modern via the three-term recurrence, small orders only
        let (p, k, x) = (6u32, 3u32, 1.7f64);
        let mut prev = 1.0;
        let mut cur = 1.0 + k as f64 - x;
        for j in 1..p {
            let j = j as f64;
            let next = ((2.0 * j + 1.0 + k as f64 - x) * cur - (j + k as f64) * prev) / (j + 1.0);
            prev = cur;
            cur = next;
        }
        let fact: f64 = (1..=(p + k)).map(|v| v as f64).product();
        let got = laguerre_eval(p, k, x).unwrap();
        assert!((got - fact * cur).abs() < 1e-9 * got.abs());
    }
}
