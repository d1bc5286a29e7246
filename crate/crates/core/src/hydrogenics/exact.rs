//! Exact-integer helpers shared by the Laguerre and radial-integral code.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `[0!, 1!, ..., max!]`.
pub fn factorial_table(max: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=max {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

/// Nearest-ish `f64` to `num / den` (error below 2 ulp), valid far outside the
/// range where `num` and `den` are individually representable.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let mut a = num.abs();
    let mut b = den.abs();
    // scale so the integer quotient carries ~64 significant bits
    let shift = 64 + b.bits() as i64 - a.bits() as i64;
    if shift > 0 {
        a <<= shift as usize;
    } else {
        b <<= (-shift) as usize;
    }
    let q = (a / b).to_f64().expect("quotient fits in f64");
    let v = ldexp(q, -shift);
    if negative {
        -v
    } else {
        v
    }
}

/// `x * 2^e` without intermediate overflow for large `|e|`.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}
