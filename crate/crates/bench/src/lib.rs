//! Shared inputs for the criterion benches.

use excprime_core::{BigPoly, LegendreCurve};

/// The pair `(f_m, f_n)` on the curve `E_t`.
pub fn division_pair(t: i64, m: u32, n: u32) -> (BigPoly, BigPoly) {
    let e = LegendreCurve::over_integers(t).expect("t avoids 0 and 1");
    (e.f_poly(m).unwrap(), e.f_poly(n).unwrap())
}

/// Curve parameters used throughout: `E_2` and `E_3`.
pub const CURVES: (i64, i64) = (2, 3);
