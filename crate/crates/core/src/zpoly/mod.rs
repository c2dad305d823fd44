//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! [`BigPoly`] values are immutable once built. The zero polynomial has no
//! stored coefficients and degree `None`; every nonzero polynomial ends in a
//! nonzero coefficient.

mod basis;
pub mod bounds;
mod gcd;
mod kronecker;
pub mod modular;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use basis::{coprime_basis, CoprimeBasis};
pub use gcd::gcd;
pub use resultant::{resultant, resultant_modular, sylvester_resultant};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BigPoly {
    coeffs: Vec<BigInt>,
}

impl BigPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BigPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        BigPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for sums of degrees.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive. The zero polynomial maps to itself.
    pub fn primitive_part(&self) -> BigPoly {
        if self.is_zero() {
            return BigPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        BigPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> BigPoly {
        if c.is_zero() {
            return BigPoly::zero();
        }
        BigPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, failing unless all divisions are exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<BigPoly> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "{a} is not divisible by {c}"
                )));
            }
            out.push(q);
        }
        Ok(BigPoly::new(out))
    }

    pub fn shift(&self, k: usize) -> BigPoly {
        if self.is_zero() {
            return BigPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BigPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> BigPoly {
        let mut base = self.clone();
        let mut acc = BigPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients reduced into `[0, p)`, untrimmed.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&m);
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect()
    }

    /// Exact quotient `self / b` in `Z[X]`.
    pub fn exact_div(&self, b: &BigPoly) -> Result<BigPoly> {
        let bd = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(ad) = self.degree() else {
            return Ok(BigPoly::zero());
        };
        if ad < bd {
            return Err(Error::InexactDivision(format!(
                "degree {ad} dividend by degree {bd} divisor"
            )));
        }
        let lb = &b.coeffs[bd];
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ad - bd + 1];
        for i in (0..=ad - bd).rev() {
            let top = &rem[i + bd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lb);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient {top} not divisible by leading coefficient {lb}"
                )));
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::InexactDivision("nonzero remainder".into()));
        }
        Ok(BigPoly::new(q))
    }

    /// `true` when `b` divides `self` exactly in `Z[X]`.
    pub fn is_divisible_by(&self, b: &BigPoly) -> bool {
        self.exact_div(b).is_ok()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &BigPoly) -> BigPoly {
        let bd = b.degree().expect("pseudo_rem by zero");
        let Some(ad) = self.degree() else {
            return BigPoly::zero();
        };
        if ad < bd {
            return self.clone();
        }
        let lb = &b.coeffs[bd];
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        let mut top = ad;
        loop {
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() < bd + 1 || r.is_empty() {
                break;
            }
            top = top.min(r.len() - 1);
            let lr = r[top].clone();
            let shift = top - bd;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[shift + j] -= &lr * bj;
            }
            steps += 1;
        }
        let missing = (ad - bd + 1) as u32 - steps;
        let out = BigPoly::new(r);
        if missing > 0 {
            out.scale(&num_traits::pow(lb.clone(), missing as usize))
        } else {
            out
        }
    }

    /// `max |c_i|`; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// `sum c_i^2`.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Logarithmic height `log max |c_i|`, kept exact as the integer maximum.
    pub fn height(&self) -> Result<Height> {
        if self.is_zero() {
            return Err(Error::UndefinedHeight);
        }
        Ok(Height {
            max_abs: self.max_abs_coeff(),
        })
    }

    pub fn derivative(&self) -> BigPoly {
        BigPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

/// Height of a nonzero integer polynomial. Comparisons are exact; [`Height::ln`]
/// is for reporting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Height {
    pub max_abs: BigInt,
}

impl Height {
    /// Natural logarithm of the maximal coefficient.
    pub fn ln(&self) -> f64 {
        ln_bigint(&self.max_abs)
    }

    pub fn bits(&self) -> u64 {
        self.max_abs.bits()
    }
}

/// Natural log of `|n|`; `-inf` for zero.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 60 {
        return (n.abs().iter_u64_digits().next().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 60;
    let top: BigInt = n.abs() >> shift;
    (top.iter_u64_digits().next().unwrap_or(0) as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

fn add_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl Add for &BigPoly {
    type Output = BigPoly;
    fn add(self, rhs: &BigPoly) -> BigPoly {
        BigPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &BigPoly {
    type Output = BigPoly;
    fn sub(self, rhs: &BigPoly) -> BigPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, r) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= r;
        }
        BigPoly::new(out)
    }
}

impl Neg for &BigPoly {
    type Output = BigPoly;
    fn neg(self) -> BigPoly {
        BigPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BigPoly {
    type Output = BigPoly;
    fn mul(self, rhs: &BigPoly) -> BigPoly {
        if self.is_zero() || rhs.is_zero() {
            return BigPoly::zero();
        }
        if kronecker::worthwhile(&self.coeffs, &rhs.coeffs) {
            return BigPoly::new(kronecker::mul(&self.coeffs, &rhs.coeffs));
        }
        BigPoly::new(schoolbook_mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigPoly {
            type Output = BigPoly;
            fn $m(self, rhs: BigPoly) -> BigPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub(crate) fn schoolbook_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product of a sequence of polynomials, multiplied as a balanced tree.
pub fn product<'a, I>(polys: I) -> BigPoly
where
    I: IntoIterator<Item = &'a BigPoly>,
{
    let mut layer: Vec<BigPoly> = polys.into_iter().cloned().collect();
    if layer.is_empty() {
        return BigPoly::one();
    }
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| match c {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    layer.pop().unwrap()
}

/// Canonical text form: decimal coefficients, constant term first,
/// comma-separated. The zero polynomial prints as `0`.
impl fmt::Display for BigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigPoly[{self}]")
    }
}

impl FromStr for BigPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim().replace('\u{2212}', "-");
                t.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BigPoly::new(coeffs))
    }
}

impl serde::Serialize for BigPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
