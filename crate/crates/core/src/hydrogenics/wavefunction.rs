use num_rational::BigRational;
use num_traits::FromPrimitive;

use super::exact::{factorial_table, ratio_to_f64};
use super::laguerre::laguerre_eval_exact;
use super::state::check_nl;
use super::OrbitalState;
use crate::error::Result;

/// `R_nl(r) = a^{-3/2} N_nl F_nl(2r/(na))` with
/// `N_nl = (2/n²) sqrt((n-l-1)! / [(n+l)!]³)` and
/// `F_nl(x) = x^l e^{-x/2} L^{2l+1}_{n-l-1}(x)` (old Laguerre convention).
///
/// The old-convention polynomial is `(n+l)!` times the modern one, so one
/// factor of `(n+l)!` cancels against `N_nl`. The remaining normalization
/// `(2/n²) sqrt((n-l-1)!/(n+l)!)` is formed from exact factorials; the
/// modern polynomial is evaluated by its forward three-term recurrence and
/// `x^l e^{-x/2}` in log form.
#[derive(Debug, Clone, Copy)]
pub struct RadialWavefunction {
    n: u32,
    l: u32,
    norm: f64,
}

impl RadialWavefunction {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        check_nl(n, l)?;
        let fact = factorial_table(n + l);
        let ratio = ratio_to_f64(&fact[(n - l - 1) as usize], &fact[(n + l) as usize]);
        let norm = 2.0 / (n as f64 * n as f64) * ratio.sqrt();
        Ok(RadialWavefunction { n, l, norm })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Value at radius `r` (units of `a`), in units of `a^{-3/2}`.
    pub fn eval(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        let x = 2.0 * r / self.n as f64;
        let log_envelope = if self.l == 0 {
            -0.5 * x
        } else {
            self.l as f64 * x.ln() - 0.5 * x
        };
        if log_envelope < -740.0 {
            return 0.0;
        }
        self.norm * log_envelope.exp() * modern_laguerre(self.n - self.l - 1, 2 * self.l + 1, x)
    }

    /// Slow reference evaluation: the Laguerre factor is evaluated in exact
    /// rational arithmetic from the old-convention coefficients.
    pub fn eval_reference(&self, r: f64) -> Result<f64> {
        let x = 2.0 * r / self.n as f64;
        let xr = BigRational::from_f64(x).expect("finite radius");
        let lag = laguerre_eval_exact(self.n - self.l - 1, 2 * self.l + 1, &xr)?;
        let fact = factorial_table(self.n + self.l);
        // old-convention value divided by (n+l)!
        let lag = ratio_to_f64(
            lag.numer(),
            &(lag.denom() * &fact[(self.n + self.l) as usize]),
        );
        let envelope = if self.l == 0 {
            (-0.5 * x).exp()
        } else {
            (self.l as f64 * x.ln() - 0.5 * x).exp()
        };
        Ok(self.norm * envelope * lag)
    }
}

/// Modern associated Laguerre polynomial `L_p^k(x)` by forward recurrence.
fn modern_laguerre(p: u32, k: u32, x: f64) -> f64 {
    let k = k as f64;
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + k - x;
    for j in 1..p {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `R_nl(r)` in units of `a^{-3/2}` for `r` in units of `a`.
pub fn radial_wavefunction(state: &OrbitalState, r: f64) -> f64 {
    RadialWavefunction::new(state.n(), state.l())
        .expect("OrbitalState invariants hold")
        .eval(r)
}
