//! Three independent routes to the integer resultant.
//!
//! Convention: `Res(A, B) = lc(A)^deg B * prod_{A(a) = 0} B(a)`, so
//! `Res(X^2 - 1, X + 2) = 3`. A zero argument gives 0, and `Res(c, B) = c^deg B`
//! for a constant `c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::modp::{inv_mod, mul_mod, prime_stream, sub_mod};

use super::{bounds, modular, BigPoly};

fn sign_for(da: usize, db: usize) -> bool {
    da % 2 == 1 && db % 2 == 1
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &BigPoly, b: &BigPoly) -> BigInt {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        negate = sign_for(da, db);
    }
    if db == 0 {
        let r = num_traits::pow(b.coeffs()[0].clone(), da);
        return if negate { -r } else { r };
    }

    let ca = a.content();
    let cb = b.content();
    let mut a = a.primitive_part_keep_sign(&ca);
    let mut b = b.primitive_part_keep_sign(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = BigInt::one();
    let mut h = BigInt::one();

    loop {
        let da = a.degree_or_zero();
        let db = b.degree_or_zero();
        let delta = da - db;
        if sign_for(da, db) {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.leading_coeff().unwrap().clone();
        if delta > 0 {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            h = num.div_floor(&den);
        }
        if b.degree_or_zero() == 0 {
            let da = a.degree_or_zero();
            let lb = b.leading_coeff().unwrap().clone();
            let num = num_traits::pow(lb, da);
            let den = num_traits::pow(h, da - 1);
            let hh = num / den;
            let r = t * hh;
            return if negate { -r } else { r };
        }
    }
}

impl BigPoly {
    fn primitive_part_keep_sign(&self, content: &BigInt) -> BigPoly {
        if content.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(content).expect("content divides")
        }
    }
}

/// Determinant of the Sylvester matrix by fraction-free Bareiss elimination.
pub fn sylvester_resultant(a: &BigPoly, b: &BigPoly) -> BigInt {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // n shifted copies of A, then m shifted copies of B, highest degree first.
    for i in 0..n {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let size = mat.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let d = mat[size - 1][size - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Resultant by reduction modulo enough word-sized primes to exceed twice
/// the Hadamard bound, recombined by the Chinese remainder theorem.
pub fn resultant_modular(a: &BigPoly, b: &BigPoly) -> BigInt {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    if da == 0 || db == 0 {
        return resultant(a, b);
    }
    let need_bits = bounds::hadamard_bits(a, b) + 2;
    let la = a.leading_coeff().unwrap();
    let lb = b.leading_coeff().unwrap();
    let mut primes = Vec::new();
    let mut have_bits = 0u64;
    for p in prime_stream() {
        if modular::bigint_mod(la, p) == 0 || modular::bigint_mod(lb, p) == 0 {
            continue;
        }
        primes.push(p);
        have_bits += 61;
        if have_bits >= need_bits {
            break;
        }
    }
    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&p| modular::resultant(&modular::reduce(a, p), &modular::reduce(b, p), p))
        .collect();
    crt_symmetric(&primes, &residues)
}

/// Symmetric representative of the CRT lift of `residues` modulo `primes`.
pub(crate) fn crt_symmetric(primes: &[u64], residues: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&p, &r) in primes.iter().zip(residues) {
        let xm = modular::bigint_mod(&x, p);
        let mm = modular::bigint_mod(&m, p);
        let inv = inv_mod(mm, p).expect("moduli are distinct primes");
        let c = mul_mod(sub_mod(r, xm, p), inv, p);
        x += &m * c;
        m *= p;
    }
    let half: BigInt = &m >> 1;
    if x > half {
        x -= &m;
    }
    debug_assert!(x.abs() <= half);
    x
}
