//! Coefficient rings for the curve ring `R[X, Y] / (Y^2 - X(X-1)(X-t))`, and
//! dense univariate polynomials over them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ffield::{FqCtx, FqElem};
use crate::zpoly::BigPoly;

pub trait CoeffRing: Send + Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, a: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a / 2` when it exists in the ring.
    fn half(&self, a: &Self::E) -> Option<Self::E>;

    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }

    fn poly_mul(&self, a: &[Self::E], b: &[Self::E]) -> Vec<Self::E> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.trim(&mut out);
        out
    }

    fn trim(&self, v: &mut Vec<Self::E>) {
        while v.last().is_some_and(|c| self.is_zero(c)) {
            v.pop();
        }
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, a: i64) -> BigInt {
        BigInt::from(a)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn half(&self, a: &BigInt) -> Option<BigInt> {
        let (q, r) = a.div_rem(&BigInt::from(2));
        r.is_zero().then_some(q)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn poly_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        (&BigPoly::new(a.to_vec()) * &BigPoly::new(b.to_vec())).into_coeffs()
    }
}

/// `Z[lambda]`, for computing with the curve parameter kept symbolic.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lambda;

impl CoeffRing for Lambda {
    type E = BigPoly;

    fn zero(&self) -> BigPoly {
        BigPoly::zero()
    }
    fn one(&self) -> BigPoly {
        BigPoly::one()
    }
    fn from_i64(&self, a: i64) -> BigPoly {
        BigPoly::constant(BigInt::from(a))
    }
    fn add(&self, a: &BigPoly, b: &BigPoly) -> BigPoly {
        a + b
    }
    fn sub(&self, a: &BigPoly, b: &BigPoly) -> BigPoly {
        a - b
    }
    fn mul(&self, a: &BigPoly, b: &BigPoly) -> BigPoly {
        a * b
    }
    fn is_zero(&self, a: &BigPoly) -> bool {
        a.is_zero()
    }
    fn half(&self, a: &BigPoly) -> Option<BigPoly> {
        a.div_scalar_exact(&BigInt::from(2)).ok()
    }
}

impl CoeffRing for FqCtx {
    type E = FqElem;

    fn zero(&self) -> FqElem {
        FqCtx::zero(self)
    }
    fn one(&self) -> FqElem {
        FqCtx::one(self)
    }
    fn from_i64(&self, a: i64) -> FqElem {
        FqCtx::from_i64(self, a)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::add(self, a, b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::sub(self, a, b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::mul(self, a, b)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        FqCtx::is_zero(self, a)
    }
    fn half(&self, a: &FqElem) -> Option<FqElem> {
        let inv2 = self.inv(&self.from_u64(2)).ok()?;
        Some(FqCtx::mul(self, a, &inv2))
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        FqCtx::neg(self, a)
    }
}

/// Polynomial helpers over a coefficient ring. Vectors are constant first
/// and trimmed.
pub(crate) struct Poly<'r, R: CoeffRing>(pub &'r R);

impl<R: CoeffRing> Poly<'_, R> {
    pub fn add(&self, a: &[R::E], b: &[R::E]) -> Vec<R::E> {
        let r = self.0;
        let n = a.len().max(b.len());
        let z = r.zero();
        let mut out: Vec<R::E> = (0..n)
            .map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        r.trim(&mut out);
        out
    }

    pub fn sub(&self, a: &[R::E], b: &[R::E]) -> Vec<R::E> {
        let r = self.0;
        let n = a.len().max(b.len());
        let z = r.zero();
        let mut out: Vec<R::E> = (0..n)
            .map(|i| r.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        r.trim(&mut out);
        out
    }

    pub fn neg(&self, a: &[R::E]) -> Vec<R::E> {
        a.iter().map(|c| self.0.neg(c)).collect()
    }

    pub fn mul(&self, a: &[R::E], b: &[R::E]) -> Vec<R::E> {
        self.0.poly_mul(a, b)
    }

    /// Multiplication by `X`.
    pub fn shift(&self, a: &[R::E]) -> Vec<R::E> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(a.len() + 1);
        out.push(self.0.zero());
        out.extend(a.iter().cloned());
        out
    }

    pub fn half(&self, a: &[R::E]) -> Option<Vec<R::E>> {
        a.iter().map(|c| self.0.half(c)).collect()
    }

    /// Exact quotient by a monic polynomial, or `None` if a remainder is left.
    pub fn div_exact_monic(&self, a: &[R::E], m: &[R::E]) -> Option<Vec<R::E>> {
        let r = self.0;
        if a.is_empty() {
            return Some(Vec::new());
        }
        let dm = m.len() - 1;
        if a.len() <= dm {
            return None;
        }
        let mut rem = a.to_vec();
        let mut q = vec![r.zero(); a.len() - dm];
        for i in (0..q.len()).rev() {
            let c = rem[i + dm].clone();
            if r.is_zero(&c) {
                continue;
            }
            for (j, mj) in m.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&c, mj));
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !r.is_zero(c)) {
            return None;
        }
        r.trim(&mut q);
        Some(q)
    }

    pub fn eval(&self, a: &[R::E], x: &R::E) -> R::E {
        let r = self.0;
        a.iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }
}
