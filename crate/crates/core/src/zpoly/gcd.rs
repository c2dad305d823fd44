//! Integer polynomial gcd: a modular coprimality test, then the heuristic
//! evaluation method with exact verification, then a primitive remainder
//! sequence as the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{modular, BigPoly};

/// Primes for the coprimality test: near 2^31, so reductions stay cheap.
const TEST_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];
const HEURISTIC_TRIES: usize = 6;

/// Primitive gcd with positive leading coefficient. `gcd(p, 0)` is the
/// primitive part of `p`; `gcd(0, 0)` is zero.
pub fn gcd(a: &BigPoly, b: &BigPoly) -> BigPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.is_constant() || b.is_constant() {
        return BigPoly::one();
    }
    let a = a.primitive_part();
    let b = b.primitive_part();
    if a == b {
        return a;
    }
    if coprime_mod_p(&a, &b) {
        return BigPoly::one();
    }
    if let Some(g) = heuristic(&a, &b) {
        return g;
    }
    primitive_prs(&a, &b)
}

/// `true` if some prime not dividing either leading coefficient sees a
/// constant gcd; that certifies the integer gcd is constant.
fn coprime_mod_p(a: &BigPoly, b: &BigPoly) -> bool {
    let la = a.leading_coeff().unwrap();
    let lb = b.leading_coeff().unwrap();
    for &p in &TEST_PRIMES {
        if modular::bigint_mod(la, p) == 0 || modular::bigint_mod(lb, p) == 0 {
            continue;
        }
        let g = modular::gcd(&modular::reduce(a, p), &modular::reduce(b, p), p);
        if g.len() == 1 {
            return true;
        }
    }
    false
}

/// Balanced base-`xi` digits of `gamma`, as polynomial coefficients.
fn interpolate(mut gamma: BigInt, xi: &BigInt) -> BigPoly {
    let half: BigInt = xi >> 1;
    let mut coeffs = Vec::new();
    while !gamma.is_zero() {
        let mut r = gamma.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        gamma = (gamma - &r) / xi;
        coeffs.push(r);
    }
    BigPoly::new(coeffs)
}

fn heuristic(a: &BigPoly, b: &BigPoly) -> Option<BigPoly> {
    let m = a.max_abs_coeff().min(b.max_abs_coeff());
    let mut xi: BigInt = m * 2 + 29;
    for _ in 0..HEURISTIC_TRIES {
        let gamma = a.eval(&xi).gcd(&b.eval(&xi));
        if !gamma.is_zero() {
            let g = interpolate(gamma, &xi).primitive_part();
            if !g.is_zero() && a.is_divisible_by(&g) && b.is_divisible_by(&g) {
                return Some(g);
            }
        }
        xi = (&xi * 73_794u32) / 27_011u32;
    }
    None
}

fn primitive_prs(a: &BigPoly, b: &BigPoly) -> BigPoly {
    let (mut u, mut v) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !v.is_zero() {
        let r = u.pseudo_rem(&v);
        u = v;
        v = r.primitive_part();
    }
    let g = u.primitive_part();
    if g.leading_coeff().is_some_and(Signed::is_negative) {
        -&g
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> BigPoly {
        BigPoly::from_i64s(c)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[0, -1, 1])), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[-6, -4]), &BigPoly::zero()), p(&[3, 2]));
        assert_eq!(gcd(&p(&[6, 6]), &p(&[4, 4])), p(&[1, 1]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[2, 1])), BigPoly::one());
    }

    #[test]
    fn fallback_agrees_with_heuristic() {
        let common = p(&[3, -7, 0, 2]);
        let a = &common * &p(&[1, 4, 1]);
        let b = &common * &p(&[-5, 0, 0, 9]);
        assert_eq!(primitive_prs(&a, &b), common);
        assert_eq!(
            heuristic(&a.primitive_part(), &b.primitive_part()),
            Some(common.clone())
        );
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn large_coefficients() {
        let big = BigInt::from(10).pow(40u32);
        let common = BigPoly::new(vec![big.clone(), BigInt::from(1), -big]);
        let a = &common * &p(&[2, 0, 1]);
        let b = &common * &p(&[-3, 1]);
        assert_eq!(gcd(&a, &b), common.primitive_part());
    }
}
