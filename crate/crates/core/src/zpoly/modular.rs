//! Dense polynomials over a prime field `F_p`, as coefficient vectors with the
//! constant term first and no trailing zeros.

use num_bigint::{BigInt, Sign};

use crate::modp::{add_mod, inv_mod, mul_mod, sub_mod, Montgomery};

use super::BigPoly;

/// `n mod p` in `[0, p)`.
pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let mut r: u64 = 0;
    let digits: Vec<u64> = n.iter_u64_digits().collect();
    for &d in digits.iter().rev() {
        r = ((((r as u128) << 64) | d as u128) % p as u128) as u64;
    }
    if n.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Reduction of an integer polynomial, trimmed.
pub fn reduce(f: &BigPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.coeffs().iter().map(|c| bigint_mod(c, p)).collect();
    trim(&mut v);
    v
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn make_monic(v: &mut [u64], p: u64) {
    if let Some(&lc) = v.last() {
        let inv = inv_mod(lc, p).expect("nonzero leading coefficient");
        for c in v.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&mut a, p);
    a
}

/// `base^e mod m` for `e` given as a `u128`.
pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    rem(&acc, m, p)
}

pub fn eval(v: &[u64], x: u64, p: u64) -> u64 {
    v.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

/// Resultant over `F_p` for an odd prime `p < 2^62`, by the Euclidean
/// remainder sequence in Montgomery form.
pub fn resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let m = Montgomery::new(p);
    let mut a: Vec<u64> = a.iter().map(|&c| m.to_mont(c)).collect();
    let mut b: Vec<u64> = b.iter().map(|&c| m.to_mont(c)).collect();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = m.one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            acc = m.mul(acc, m.pow(b[0], da as u64));
            return m.from_mont(acc);
        }
        if da == 0 {
            acc = m.mul(acc, m.pow(a[0], db as u64));
            return m.from_mont(acc);
        }
        mont_rem_in_place(&mut a, &b, &m);
        if a.is_empty() {
            return 0;
        }
        let dr = a.len() - 1;
        if (da * db) % 2 == 1 {
            acc = m.neg(acc);
        }
        acc = m.mul(acc, m.pow(b[db], (da - dr) as u64));
        std::mem::swap(&mut a, &mut b);
    }
}

fn mont_rem_in_place(a: &mut Vec<u64>, b: &[u64], m: &Montgomery) {
    let db = b.len() - 1;
    if a.len() <= db {
        return;
    }
    let inv = m.inv(b[db]);
    for i in (0..a.len() - db).rev() {
        let top = a[i + db];
        if top == 0 {
            continue;
        }
        let c = m.mul(top, inv);
        for (j, &bj) in b.iter().enumerate() {
            a[i + j] = m.sub(a[i + j], m.mul(c, bj));
        }
    }
    a.truncate(db);
    trim(a);
}

/// Squarefree test via `gcd(f, f')`.
pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    let mut d = d;
    trim(&mut d);
    degree(&gcd(f, &d, p)) == Some(0)
}

/// Roots in `F_p` by exhaustive evaluation; for small `p` only.
pub fn roots_exhaustive(f: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(f, x, p) == 0).collect()
}

/// The monic product of the distinct linear factors of `f`, i.e.
/// `gcd(f, X^p - X)`.
pub fn split_part(f: &[u64], p: u64) -> Vec<u64> {
    let xp = powmod(&[0, 1], p as u128, f, p);
    let h = sub(&xp, &[0, 1], p);
    gcd(f, &h, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_reduction_handles_signs_and_size() {
        let p = 1_000_000_007u64;
        let n: BigInt = BigInt::from(3u8).pow(200u32);
        let expect = n.clone() % BigInt::from(p);
        assert_eq!(BigInt::from(bigint_mod(&n, p)), expect);
        assert_eq!(bigint_mod(&BigInt::from(-1), 7), 6);
        assert_eq!(bigint_mod(&BigInt::from(-14), 7), 0);
    }

    #[test]
    fn divrem_reconstructs() {
        let p = 13;
        let a = vec![5, 0, 3, 7, 1, 9];
        let b = vec![2, 11, 4];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn resultant_small_case() {
        // Res(X^2 - 1, X + 2) = 3
        let p = 1_000_000_007;
        assert_eq!(resultant(&[p - 1, 0, 1], &[2, 1], p), 3);
        assert_eq!(resultant(&[2, 1], &[p - 1, 0, 1], p), 3);
        assert_eq!(resultant(&[1, 1], &[p - 1, 0, 1], p), 0);
    }

    #[test]
    fn split_part_counts_roots() {
        // (X-1)(X-2)(X^2+1) over F_7: X^2+1 is irreducible since 7 = 3 mod 4
        let p = 7;
        let f = mul(&mul(&[p - 1, 1], &[p - 2, 1], p), &[1, 0, 1], p);
        assert_eq!(degree(&split_part(&f, p)), Some(2));
        assert_eq!(roots_exhaustive(&f, p), vec![1, 2]);
    }
}
