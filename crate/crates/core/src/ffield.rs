//! Small finite fields `F_{p^k}` with `k <= 4` in a polynomial basis.
//!
//! Elements are plain `Copy` values; every operation goes through the
//! [`FqCtx`] that owns the modulus. The modulus and the generator are the
//! least valid choices in the index order `sum c_i p^i`, so every run picks
//! the same field presentation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::modp::{factor, inv_mod, is_prime};
use crate::zpoly::modular;

pub const MAX_DEGREE: usize = 4;
/// Hard cap on the field size.
pub const MAX_FIELD_BITS: u32 = 40;
/// Fields up to this size get a full logarithm table instead of BSGS.
const FULL_TABLE_LIMIT: u64 = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FqElem(pub [u64; MAX_DEGREE]);

impl FqElem {
    pub fn coeffs(&self) -> &[u64; MAX_DEGREE] {
        &self.0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq[{self}]")
    }
}

/// Comma-separated coefficients, constant first, trailing zeros dropped;
/// zero prints as `0`.
impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.0.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
        for (i, c) in self.0[..len].iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqCtx {
    p: u64,
    k: usize,
    /// Monic, constant first, length `k + 1`.
    modulus: Vec<u64>,
    q: u64,
    order_factors: Vec<(u64, u32)>,
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = [0u64, 1];
    let mut xp = x.to_vec();
    for _ in 1..k {
        xp = modular::powmod(&xp, p as u128, f, p);
        let h = modular::sub(&xp, &x, p);
        if modular::degree(&modular::gcd(f, &h, p)) != Some(0) {
            return false;
        }
    }
    true
}

impl FqCtx {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::InvalidParams(format!(
                "extension degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        let q = (p as u128).pow(k as u32);
        if q > 1u128 << MAX_FIELD_BITS {
            return Err(Error::Budget(format!(
                "field of size {p}^{k} exceeds 2^{MAX_FIELD_BITS}"
            )));
        }
        let q = q as u64;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let pk = p.pow(k as u32);
            (0..pk)
                .map(|idx| {
                    let mut f = index_digits(idx, p, k);
                    f.push(1);
                    f
                })
                .find(|f| poly_is_irreducible(f, p))
                .expect("irreducible polynomials of every degree exist")
        };
        let order_factors = factor(q - 1);
        debug_assert_eq!(
            order_factors
                .iter()
                .map(|&(l, e)| l.pow(e))
                .product::<u64>(),
            q - 1
        );
        Ok(FqCtx {
            p,
            k,
            modulus,
            q,
            order_factors,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn size(&self) -> u64 {
        self.q
    }
    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u64 {
        self.q - 1
    }
    pub fn order_factors(&self) -> &[(u64, u32)] {
        &self.order_factors
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::default()
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        let mut e = FqElem::default();
        e.0[0] = a % self.p;
        e
    }

    pub fn from_i64(&self, a: i64) -> FqElem {
        self.from_u64(a.rem_euclid(self.p as i64) as u64)
    }

    /// Element from coefficients, constant first; extra entries must be zero.
    pub fn from_coeffs(&self, c: &[u64]) -> Result<FqElem> {
        if c.len() > self.k && c[self.k..].iter().any(|&x| x % self.p != 0) {
            return Err(Error::Domain(format!(
                "too many coefficients for F_{}^{}",
                self.p, self.k
            )));
        }
        let mut e = FqElem::default();
        for (i, &x) in c.iter().take(self.k).enumerate() {
            e.0[i] = x % self.p;
        }
        Ok(e)
    }

    /// Element with index `sum c_i p^i`.
    pub fn from_index(&self, idx: u64) -> FqElem {
        let mut e = FqElem::default();
        for (i, c) in index_digits(idx, self.p, self.k).into_iter().enumerate() {
            e.0[i] = c;
        }
        e
    }

    pub fn index(&self, a: &FqElem) -> u64 {
        a.0[..self.k]
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(|i| self.from_index(i))
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == [0; MAX_DEGREE]
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        *a == self.one()
    }

    /// `Some(c)` if `a` lies in the prime field.
    pub fn as_prime_field(&self, a: &FqElem) -> Option<u64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut r = FqElem::default();
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            r.0[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut r = FqElem::default();
        for i in 0..self.k {
            r.0[i] = if a.0[i] >= b.0[i] {
                a.0[i] - b.0[i]
            } else {
                a.0[i] + self.p - b.0[i]
            };
        }
        r
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p as u128;
        let k = self.k;
        if k == 1 {
            let mut r = FqElem::default();
            r.0[0] = ((a.0[0] as u128 * b.0[0] as u128) % p) as u64;
            return r;
        }
        let mut t = [0u128; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] = (t[i + j] + a.0[i] as u128 * b.0[j] as u128) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = t[d];
            if c == 0 {
                continue;
            }
            t[d] = 0;
            for i in 0..k {
                // X^k = -sum m_i X^i
                t[d - k + i] = (t[d - k + i] + (p - self.modulus[i] as u128) * c) % p;
            }
        }
        let mut r = FqElem::default();
        for i in 0..k {
            r.0[i] = t[i] as u64;
        }
        r
    }

    pub fn square(&self, a: &FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn scale(&self, a: &FqElem, c: u64) -> FqElem {
        self.mul(a, &self.from_u64(c))
    }

    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.square(&b);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.k == 1 {
            return Ok(self.from_u64(inv_mod(a.0[0], self.p).expect("prime modulus")));
        }
        Ok(self.pow(a, (self.q - 2) as u128))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FqElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::Domain("zero has no multiplicative order".into()));
        }
        let mut n = self.q - 1;
        for &(l, e) in &self.order_factors {
            for _ in 0..e {
                if self.is_one(&self.pow(a, (n / l) as u128)) {
                    n /= l;
                } else {
                    break;
                }
            }
        }
        Ok(n)
    }

    /// `true` for nonzero squares.
    pub fn is_square(&self, a: &FqElem) -> bool {
        if self.p == 2 {
            return !self.is_zero(a);
        }
        !self.is_zero(a) && self.is_one(&self.pow(a, ((self.q - 1) / 2) as u128))
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi(&self, a: &FqElem) -> i32 {
        if self.is_zero(a) {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    fn least_nonresidue(&self) -> FqElem {
        (1..self.q)
            .map(|i| self.from_index(i))
            .find(|z| !self.is_square(z))
            .expect("odd fields have nonresidues")
    }

    /// A square root by Tonelli-Shanks, or `None` for nonsquares. Of the two
    /// roots, the one with the smaller index is returned.
    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        if self.p == 2 {
            // squaring is a bijection in characteristic 2
            return Some(self.pow(a, (self.q / 2) as u128));
        }
        let mut s = 0u32;
        let mut t = self.q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self.least_nonresidue();
        let mut m = s;
        let mut c = self.pow(&z, t as u128);
        let mut tt = self.pow(a, t as u128);
        let mut r = self.pow(a, t.div_ceil(2) as u128);
        while !self.is_one(&tt) {
            let mut i = 0u32;
            let mut sq = tt;
            while !self.is_one(&sq) {
                sq = self.square(&sq);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        let other = self.neg(&r);
        Some(if self.index(&other) < self.index(&r) {
            other
        } else {
            r
        })
    }

    /// Least element (by index) of order `q - 1`.
    pub fn find_generator(&self) -> FqElem {
        let n = self.q - 1;
        (1..self.q)
            .map(|i| self.from_index(i))
            .find(|g| {
                self.order_factors
                    .iter()
                    .all(|&(l, _)| !self.is_one(&self.pow(g, (n / l) as u128)))
            })
            .expect("the multiplicative group is cyclic")
    }

    /// Embedding of this field into `target`, which must have degree a
    /// multiple of `k`. Implemented for `k = 1` and for quadratic `k`.
    pub fn embedding_into<'a>(&'a self, target: &'a FqCtx) -> Result<Embedding<'a>> {
        if target.p != self.p || !target.k.is_multiple_of(self.k) {
            return Err(Error::InvalidParams(
                "no embedding between these fields".into(),
            ));
        }
        let alpha = match self.k {
            1 => None,
            2 if self.p == 2 => {
                return Err(Error::InvalidParams(
                    "quadratic embedding needs odd characteristic".into(),
                ))
            }
            2 => {
                // root of X^2 + m1 X + m0 via the quadratic formula
                let m0 = target.from_u64(self.modulus[0]);
                let m1 = target.from_u64(self.modulus[1]);
                let disc = target.sub(&target.square(&m1), &target.scale(&m0, 4));
                let s = target
                    .sqrt(&disc)
                    .ok_or_else(|| Error::Invariant("discriminant is not a square".into()))?;
                let half = target.inv(&target.from_u64(2))?;
                Some(target.mul(&target.sub(&s, &m1), &half))
            }
            _ => {
                return Err(Error::InvalidParams(
                    "embedding only implemented from degree 1 or 2".into(),
                ))
            }
        };
        Ok(Embedding {
            source: self,
            target,
            alpha,
        })
    }
}

fn index_digits(mut idx: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// Field homomorphism `F_{p^k} -> F_{p^{mk}}` fixed by the image of the
/// generator of the polynomial basis.
#[derive(Clone, Debug)]
pub struct Embedding<'a> {
    source: &'a FqCtx,
    target: &'a FqCtx,
    alpha: Option<FqElem>,
}

impl Embedding<'_> {
    pub fn apply(&self, a: &FqElem) -> FqElem {
        match self.alpha {
            None => self.target.from_u64(a.0[0]),
            Some(alpha) => {
                let mut acc = self.target.zero();
                for i in (0..self.source.k).rev() {
                    acc = self.target.add(
                        &self.target.mul(&acc, &alpha),
                        &self.target.from_u64(a.0[i]),
                    );
                }
                acc
            }
        }
    }
}

/// Discrete logarithms to a fixed generator.
#[derive(Clone, Debug)]
pub struct DlogTable {
    generator: FqElem,
    n: u64,
    kind: TableKind,
}

#[derive(Clone, Debug)]
enum TableKind {
    /// `log[index(a)]` for every nonzero `a`.
    Full(Vec<u32>),
    /// Baby steps `g^j -> j` for `j < m`, and `g^{-m}`.
    Bsgs {
        m: u64,
        baby: HashMap<u64, u64>,
        giant: FqElem,
    },
}

impl DlogTable {
    /// Builds a table for `g`, which must generate the multiplicative group.
    pub fn new(ctx: &FqCtx, g: &FqElem) -> Result<Self> {
        let n = ctx.q - 1;
        if ctx.element_order(g)? != n {
            return Err(Error::Domain(format!("{g} is not a generator")));
        }
        let kind = if ctx.q <= FULL_TABLE_LIMIT {
            let mut log = vec![u32::MAX; ctx.q as usize];
            let mut x = ctx.one();
            for e in 0..n {
                log[ctx.index(&x) as usize] = e as u32;
                x = ctx.mul(&x, g);
            }
            TableKind::Full(log)
        } else {
            let m = (n as f64).sqrt().ceil() as u64;
            let mut baby = HashMap::with_capacity(m as usize);
            let mut x = ctx.one();
            for j in 0..m {
                baby.entry(ctx.index(&x)).or_insert(j);
                x = ctx.mul(&x, g);
            }
            let giant = ctx.inv(&x)?;
            TableKind::Bsgs { m, baby, giant }
        };
        Ok(DlogTable {
            generator: *g,
            n,
            kind,
        })
    }

    pub fn generator(&self) -> &FqElem {
        &self.generator
    }

    /// `e` in `[0, q - 1)` with `g^e = a`.
    pub fn log(&self, ctx: &FqCtx, a: &FqElem) -> Result<u64> {
        if ctx.is_zero(a) {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        match &self.kind {
            TableKind::Full(log) => Ok(log[ctx.index(a) as usize] as u64),
            TableKind::Bsgs { m, baby, giant } => {
                let mut y = *a;
                for i in 0..*m {
                    if let Some(&j) = baby.get(&ctx.index(&y)) {
                        return Ok((i * m + j) % self.n);
                    }
                    y = ctx.mul(&y, giant);
                }
                Err(Error::Invariant("discrete logarithm not found".into()))
            }
        }
    }
}

/// One-off discrete logarithm; builds a table per call.
pub fn dlog(ctx: &FqCtx, g: &FqElem, a: &FqElem) -> Result<u64> {
    if ctx.is_zero(a) {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    DlogTable::new(ctx, g)?.log(ctx, a)
}
