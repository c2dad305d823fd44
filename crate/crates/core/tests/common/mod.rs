//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use excprime_core::ffield::{FqCtx, FqElem};
use excprime_core::legendre::{LegendreCurve, LegendrePoint};
use excprime_core::BigPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Plain convolution.
pub fn naive_mul(a: &BigPoly, b: &BigPoly) -> BigPoly {
    if a.is_zero() || b.is_zero() {
        return BigPoly::zero();
    }
    let (x, y) = (a.coeffs(), b.coeffs());
    let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    BigPoly::new(out)
}

/// Exact rational number with positive denominator.
#[derive(Clone, Debug)]
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn int(n: BigInt) -> Self {
        Frac {
            n,
            d: BigInt::one(),
        }
    }
    fn norm(n: BigInt, d: BigInt) -> Self {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g.is_zero() {
            (n, d)
        } else {
            (n / &g, d / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Frac { n, d }
    }
    fn sub(&self, o: &Frac) -> Frac {
        Frac::norm(&self.n * &o.d - &o.n * &self.d, &self.d * &o.d)
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac::norm(&self.n * &o.n, &self.d * &o.d)
    }
    fn div(&self, o: &Frac) -> Frac {
        Frac::norm(&self.n * &o.d, &self.d * &o.n)
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_det(m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Frac>> = m
        .into_iter()
        .map(|r| r.into_iter().map(Frac::int).collect())
        .collect();
    let mut det = Frac::int(BigInt::one());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].n.is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det.n = -det.n;
        }
        det = det.mul(&a[c][c]);
        for r in c + 1..n {
            if a[r][c].n.is_zero() {
                continue;
            }
            let f = a[r][c].div(&a[c][c]);
            for j in c..n {
                let v = a[r][j].sub(&f.mul(&a[c][j]));
                a[r][j] = v;
            }
        }
    }
    assert!(det.d.is_one());
    det.n
}

/// Resultant as the Sylvester determinant, evaluated over the rationals.
pub fn oracle_resultant(a: &BigPoly, b: &BigPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    rational_det(rows)
}

pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> BigPoly {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[d] == 0 {
        c[d] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    BigPoly::from_i64s(&c)
}

/// Order by repeated addition.
pub fn naive_order(e: &LegendreCurve<FqCtx>, p: &LegendrePoint) -> u64 {
    let mut acc = *p;
    let mut n = 1;
    while !acc.is_infinity() {
        acc = e.add_points(&acc, p).unwrap();
        n += 1;
    }
    n
}

/// `Y^2 = X(X-1)(X-t)` by direct enumeration of `F_p x F_p`.
pub fn naive_points(ctx: &FqCtx, t: &FqElem) -> Vec<(FqElem, FqElem)> {
    let mut out = Vec::new();
    for x in ctx.elements() {
        let r = ctx.mul(&ctx.mul(&x, &ctx.sub(&x, &ctx.one())), &ctx.sub(&x, t));
        for y in ctx.elements() {
            if ctx.square(&y) == r {
                out.push((x, y));
            }
        }
    }
    out
}

/// Degree of `f_n` from its closed form.
pub fn parity_degree(n: u64) -> u64 {
    if n % 2 == 1 {
        (n * n - 1) / 2
    } else {
        (n * n - 4) / 2
    }
}

/// Least sup-norm of a nonzero `(k1, k2)` with `x1^k1 x2^k2 = 1`, by
/// tabulating every power.
pub fn brute_pair_order(ctx: &FqCtx, x1: &FqElem, x2: &FqElem) -> u64 {
    let m = ctx.group_order() as i64;
    let powers = |x: &FqElem| -> Vec<FqElem> {
        let inv = ctx.inv(x).unwrap();
        let mut pos = vec![ctx.one()];
        let mut neg = vec![ctx.one()];
        for _ in 0..m {
            pos.push(ctx.mul(pos.last().unwrap(), x));
            neg.push(ctx.mul(neg.last().unwrap(), &inv));
        }
        neg.reverse();
        neg.pop();
        neg.extend(pos);
        neg
    };
    let (p1, p2) = (powers(x1), powers(x2));
    let mut best = u64::MAX;
    for k1 in -m..=m {
        for k2 in -m..=m {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let v = ctx.mul(&p1[(k1 + m) as usize], &p2[(k2 + m) as usize]);
            if ctx.is_one(&v) {
                best = best.min(k1.unsigned_abs().max(k2.unsigned_abs()));
            }
        }
    }
    best
}
