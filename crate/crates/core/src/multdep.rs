//! Multiplicative dependence of rational functions and of tuples in finite
//! fields: independence certificates, the polynomials `G_k`, the exceptional
//! primes they produce, and the tuple order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{DlogTable, FqCtx, FqElem};
use crate::modp::{factor, primes_up_to};
use crate::zpoly::{
    bounds, coprime_basis, gcd, modular, product, resultant, resultant_modular, BigPoly,
    CoprimeBasis,
};

pub const DEFAULT_MAX_N: usize = 3;
pub const DEFAULT_MAX_L: u32 = 8;

/// Integer exponent vector with its sup-norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector {
    pub k: Vec<i64>,
}

impl ExponentVector {
    pub fn new(k: Vec<i64>) -> Self {
        ExponentVector { k }
    }

    pub fn norm(&self) -> u64 {
        self.k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        ExponentVector::new(self.k.iter().map(|x| -x).collect())
    }
}

impl std::fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.k.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `true` when the two vectors span a rank-2 lattice.
pub fn linearly_independent(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).any(|i| (i + 1..a.len()).any(|j| a[i] * b[j] != a[j] * b[i]))
}

/// Rational functions `f_i = P_i / Q_i` in lowest terms, with a coprime basis
/// of all numerators and denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTuple {
    pub p: Vec<BigPoly>,
    pub q: Vec<BigPoly>,
    pub basis: CoprimeBasis,
    /// Row `i` holds the exponents of `f_i`: basis polynomials, then
    /// constant primes.
    pub matrix: Vec<Vec<i64>>,
    /// `true` where `f_i` carries the unit `-1`.
    pub negative: Vec<bool>,
}

impl RationalTuple {
    /// Builds the tuple, reducing each `P_i / Q_i` to lowest terms with a
    /// positive leading coefficient in the denominator.
    pub fn new(pairs: Vec<(BigPoly, BigPoly)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidParams("need at least one function".into()));
        }
        let mut ps = Vec::with_capacity(pairs.len());
        let mut qs = Vec::with_capacity(pairs.len());
        for (p, q) in pairs {
            if q.is_zero() {
                return Err(Error::InvalidParams("zero denominator".into()));
            }
            if p.is_zero() {
                return Err(Error::InvalidParams("zero function".into()));
            }
            let g = gcd(&p, &q);
            let (mut p, mut q) = (p.exact_div(&g)?, q.exact_div(&g)?);
            let c = p.content().gcd(&q.content());
            p = p.div_scalar_exact(&c)?;
            q = q.div_scalar_exact(&c)?;
            if q.leading_coeff().is_some_and(Signed::is_negative) {
                p = -&p;
                q = -&q;
            }
            ps.push(p);
            qs.push(q);
        }
        let all: Vec<BigPoly> = ps.iter().chain(qs.iter()).cloned().collect();
        let basis = coprime_basis(&all);
        let n = ps.len();
        let matrix = (0..n)
            .map(|i| {
                basis.exponents[i]
                    .iter()
                    .zip(&basis.exponents[n + i])
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect()
            })
            .collect();
        let negative = (0..n)
            .map(|i| basis.negative[i] != basis.negative[n + i])
            .collect();
        Ok(RationalTuple {
            p: ps,
            q: qs,
            basis,
            matrix,
            negative,
        })
    }

    /// Parses `P/Q` pairs in the text format; `Q` defaults to 1.
    pub fn parse(specs: &[&str]) -> Result<Self> {
        let pairs = specs
            .iter()
            .map(|s| {
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p.parse()?, q.parse()?),
                    None => (s.parse()?, BigPoly::one()),
                };
                Ok((p, q))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `prod P_i Q_i`.
    pub fn pole_zero_product(&self) -> BigPoly {
        product(self.p.iter().chain(self.q.iter()))
    }

    /// Primes dividing `prod lc(P_i) lc(Q_i) Res(P_i, Q_i)`.
    pub fn degeneracy_value(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, q) in self.p.iter().zip(&self.q) {
            acc *= p.leading_coeff().unwrap() * q.leading_coeff().unwrap();
            acc *= resultant(p, q);
        }
        acc.abs()
    }

    pub fn display_functions(&self) -> Vec<FunctionText> {
        self.p
            .iter()
            .zip(&self.q)
            .map(|(p, q)| FunctionText {
                p: p.to_string(),
                q: q.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionText {
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Independence {
    Independent,
    Dependent { witness: ExponentVector },
}

/// Fraction-free row echelon form; returns pivot columns.
fn echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            let g = m[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x /= &g;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// A nonzero integer vector in the right kernel of `m`, if any, scaled to
/// coprime entries with the first nonzero entry positive.
pub fn integer_kernel_vector(m: &[Vec<i64>], cols: usize) -> Option<Vec<i64>> {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let pivots = if a.is_empty() {
        Vec::new()
    } else {
        echelon(&mut a)
    };
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![BigInt::zero(); cols];
    x[free] = BigInt::one();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let s: BigInt = (c + 1..cols).map(|j| &a[r][j] * &x[j]).sum();
        let piv = a[r][c].clone();
        for v in x.iter_mut() {
            *v *= &piv;
        }
        x[c] = -s;
    }
    let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let mut out: Vec<i64> = x
        .iter()
        .map(|v| (v / &g).to_i64().expect("kernel entries fit in i64"))
        .collect();
    if out.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        out.iter_mut().for_each(|v| *v = -*v);
    }
    Some(out)
}

/// Decides multiplicative independence from the exponent matrix; the unit
/// `-1` is absorbed by doubling a witness of odd sign parity.
pub fn check_multiplicative_independence(fs: &RationalTuple) -> Independence {
    let n = fs.len();
    let width = fs.basis.width();
    let transposed: Vec<Vec<i64>> = (0..width)
        .map(|j| (0..n).map(|i| fs.matrix[i][j]).collect())
        .collect();
    match integer_kernel_vector(&transposed, n) {
        None => Independence::Independent,
        Some(mut k) => {
            let parity: i64 = k
                .iter()
                .zip(&fs.negative)
                .filter(|(_, &neg)| neg)
                .map(|(v, _)| v)
                .sum();
            if parity % 2 != 0 {
                k.iter_mut().for_each(|v| *v *= 2);
            }
            Independence::Dependent {
                witness: ExponentVector::new(k),
            }
        }
    }
}

/// `G_k = prod_{k_i >= 0} P_i^{k_i} prod_{k_i < 0} Q_i^{-k_i}
///      - prod_{k_i >= 0} Q_i^{k_i} prod_{k_i < 0} P_i^{-k_i}`.
pub fn g_poly(fs: &RationalTuple, k: &ExponentVector) -> Result<BigPoly> {
    if k.k.len() != fs.len() {
        return Err(Error::Domain("exponent vector length mismatch".into()));
    }
    if k.is_zero() {
        return Err(Error::Domain("G_k needs a nonzero exponent vector".into()));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &e) in k.k.iter().enumerate() {
        let e32 = e.unsigned_abs() as u32;
        if e >= 0 {
            left.push(fs.p[i].pow(e32));
            right.push(fs.q[i].pow(e32));
        } else {
            left.push(fs.q[i].pow(e32));
            right.push(fs.p[i].pow(e32));
        }
    }
    Ok(&product(&left) - &product(&right))
}

/// Checks `deg G_k <= |k| sum(deg P_i + deg Q_i)` and
/// `H(G_k) <= 2 * 2^{|k| sum(deg P_i + deg Q_i)} * prod (H(P_i) H(Q_i))^{|k|}`.
pub fn check_g_bounds(fs: &RationalTuple, k: &ExponentVector, g: &BigPoly) -> Result<()> {
    let norm = k.norm() as usize;
    let dsum: usize = fs.p.iter().chain(&fs.q).map(BigPoly::degree_or_zero).sum();
    if g.degree_or_zero() > norm * dsum {
        return Err(Error::BoundViolation(format!(
            "deg G_{k} exceeds {}",
            norm * dsum
        )));
    }
    let hprod: BigInt =
        fs.p.iter()
            .chain(&fs.q)
            .map(BigPoly::max_abs_coeff)
            .product();
    let bound = (num_traits::pow(hprod, norm) << (norm * dsum)) * 2;
    if g.max_abs_coeff() > bound {
        return Err(Error::BoundViolation(format!(
            "height of G_{k} exceeds its bound"
        )));
    }
    Ok(())
}

/// Removes every factor shared with `prod P_i Q_i`, then takes the primitive
/// part; constants map to 1.
pub fn purify_g(fs: &RationalTuple, g: &BigPoly) -> Result<BigPoly> {
    purify_against(&fs.pole_zero_product(), g)
}

fn purify_against(pi: &BigPoly, g: &BigPoly) -> Result<BigPoly> {
    if g.is_zero() {
        return Err(Error::Domain("cannot purify the zero polynomial".into()));
    }
    let mut g = g.clone();
    loop {
        let d = gcd(&g, pi);
        if d.is_constant() {
            break;
        }
        g = g.exact_div(&d)?;
    }
    Ok(if g.is_constant() {
        BigPoly::one()
    } else {
        g.primitive_part()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultParams {
    pub l: u32,
    pub prime_cap: u64,
    pub checked: bool,
    #[serde(skip)]
    pub max_n: usize,
    #[serde(skip)]
    pub max_l: u32,
}

impl MultParams {
    pub fn new(l: u32, prime_cap: u64) -> Self {
        MultParams {
            l,
            prime_cap,
            checked: false,
            max_n: DEFAULT_MAX_N,
            max_l: DEFAULT_MAX_L,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharZeroWitness {
    pub k: ExponentVector,
    pub l: ExponentVector,
    pub common_factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultReport {
    pub functions: Vec<FunctionText>,
    pub params: MultParams,
    pub vectors: usize,
    pub pairs: usize,
    pub degeneracy_primes: Vec<u64>,
    /// Primes dividing the content of some `G_k` after purification.
    pub content_primes: Vec<u64>,
    pub char_zero_witnesses: Vec<CharZeroWitness>,
    /// Every `R_{k,l} = |Res(G~_k G~_l, prod P_i Q_i)|` is nonzero.
    pub all_pole_resultants_nonzero: bool,
    pub max_pair_resultant_bits: u64,
    pub max_pole_resultant_bits: u64,
    pub exceptional_primes: Vec<u64>,
}

impl MultReport {
    pub fn is_certified_good(&self, p: u64) -> bool {
        p <= self.params.prime_cap
            && p > 2
            && self.degeneracy_primes.binary_search(&p).is_err()
            && self.exceptional_primes.binary_search(&p).is_err()
    }
}

/// Representatives of `{k : 0 < |k| <= l}` modulo `k ~ -k`: the first
/// nonzero entry is positive. Lexicographic order.
pub fn half_box(n: usize, l: u32) -> Vec<ExponentVector> {
    let l = l as i64;
    let mut out = Vec::new();
    let mut cur = vec![-l; n];
    loop {
        if cur.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            out.push(ExponentVector::new(cur.clone()));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < l {
                cur[i] += 1;
                for v in cur.iter_mut().skip(i + 1) {
                    *v = -l;
                }
                break;
            }
        }
    }
}

/// Prime divisors of `n` up to `cap`.
fn small_prime_divisors(n: &BigInt, cap: u64, primes: &[u64]) -> Vec<u64> {
    if n.is_zero() {
        return Vec::new();
    }
    if let Some(m) = n.abs().to_u64() {
        return factor(m)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| p <= cap)
            .collect();
    }
    primes
        .iter()
        .copied()
        .filter(|&p| modular::bigint_mod(n, p) == 0)
        .collect()
}

fn auto_resultant(a: &BigPoly, b: &BigPoly, checked: bool) -> Result<BigInt> {
    let small = a.degree_or_zero().max(b.degree_or_zero()) <= 24;
    let r = if small {
        resultant(a, b)
    } else {
        resultant_modular(a, b)
    };
    if checked {
        bounds::check_resultant(a, b, &r)?;
    }
    Ok(r)
}

struct PairOutcome {
    resultant: BigInt,
    witness: Option<BigPoly>,
}

fn pair_resultant(a: &BigPoly, b: &BigPoly, checked: bool) -> Result<PairOutcome> {
    let r = auto_resultant(a, b, checked)?;
    if !r.is_zero() {
        return Ok(PairOutcome {
            resultant: r,
            witness: None,
        });
    }
    let w = gcd(a, b);
    let a2 = purify_against(&w, a)?;
    let b2 = purify_against(&w, b)?;
    let r2 = auto_resultant(&a2, &b2, checked)?;
    if r2.is_zero() {
        return Err(Error::Invariant(
            "resultant still zero after removing the gcd".into(),
        ));
    }
    Ok(PairOutcome {
        resultant: r2,
        witness: Some(w),
    })
}

/// Exceptional primes for the tuple at window top `L`.
pub fn mult_exceptional_primes(fs: &RationalTuple, params: &MultParams) -> Result<MultReport> {
    if let Independence::Dependent { witness } = check_multiplicative_independence(fs) {
        return Err(Error::IndependenceViolation { witness: witness.k });
    }
    let n = fs.len();
    if n > params.max_n {
        return Err(Error::Budget(format!(
            "n = {n} exceeds the budget {}",
            params.max_n
        )));
    }
    if params.l < 1 || params.l > params.max_l {
        return Err(Error::Budget(format!(
            "L = {} outside 1..={}",
            params.l, params.max_l
        )));
    }
    let primes = primes_up_to(params.prime_cap);
    let pi = fs.pole_zero_product();

    let vectors = half_box(n, params.l);
    // (vector, raw G_k, purified G~_k)
    let gs: Vec<(ExponentVector, BigPoly, BigPoly)> = vectors
        .par_iter()
        .map(|k| {
            let g = g_poly(fs, k)?;
            if params.checked {
                check_g_bounds(fs, k, &g)?;
            }
            let pg = purify_g(fs, &g)?;
            Ok((k.clone(), g, pg))
        })
        .collect::<Result<_>>()?;

    let mut content_primes = Vec::new();
    for (_, g, _) in &gs {
        let mut stripped = g.clone();
        loop {
            let d = gcd(&stripped, &pi);
            if d.is_constant() {
                break;
            }
            stripped = stripped.exact_div(&d)?;
        }
        content_primes.extend(small_prime_divisors(
            &stripped.content(),
            params.prime_cap,
            &primes,
        ));
    }
    content_primes.sort_unstable();
    content_primes.dedup();

    let mut pair_idx = Vec::new();
    for i in 0..gs.len() {
        for j in i + 1..gs.len() {
            if linearly_independent(&gs[i].0.k, &gs[j].0.k) {
                pair_idx.push((i, j));
            }
        }
    }

    let outcomes: Vec<PairOutcome> = pair_idx
        .par_iter()
        .map(|&(i, j)| pair_resultant(&gs[i].2, &gs[j].2, params.checked))
        .collect::<Result<_>>()?;

    let mut used = vec![false; gs.len()];
    for &(i, j) in &pair_idx {
        used[i] = true;
        used[j] = true;
    }
    let pole: Vec<Option<BigInt>> = gs
        .par_iter()
        .zip(used.par_iter())
        .map(|((_, _, g), &u)| {
            if u {
                auto_resultant(g, &pi, params.checked).map(|r| Some(r.abs()))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let all_nonzero = pole.iter().flatten().all(|r| !r.is_zero());
    if !all_nonzero {
        return Err(Error::Invariant(
            "a purified G_k shares a root with prod P_i Q_i".into(),
        ));
    }

    let mut exceptional: Vec<u64> = outcomes
        .par_iter()
        .map(|o| &o.resultant)
        .chain(pole.par_iter().flatten())
        .flat_map_iter(|r| small_prime_divisors(r, params.prime_cap, &primes))
        .collect();
    exceptional.extend(&content_primes);
    exceptional.sort_unstable();
    exceptional.dedup();

    let degeneracy_primes = small_prime_divisors(&fs.degeneracy_value(), params.prime_cap, &primes);
    let witnesses = pair_idx
        .iter()
        .zip(&outcomes)
        .filter_map(|(&(i, j), o)| {
            o.witness.as_ref().map(|w| CharZeroWitness {
                k: gs[i].0.clone(),
                l: gs[j].0.clone(),
                common_factor: w.to_string(),
            })
        })
        .collect();

    Ok(MultReport {
        functions: fs.display_functions(),
        params: params.clone(),
        vectors: vectors.len(),
        pairs: pair_idx.len(),
        degeneracy_primes,
        content_primes,
        char_zero_witnesses: witnesses,
        all_pole_resultants_nonzero: all_nonzero,
        max_pair_resultant_bits: outcomes
            .iter()
            .map(|o| o.resultant.bits())
            .max()
            .unwrap_or(0),
        max_pole_resultant_bits: pole.iter().flatten().map(|r| r.bits()).max().unwrap_or(0),
        exceptional_primes: exceptional,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleOrderResult {
    /// The order when `complete`, otherwise a proven lower bound.
    pub order: u64,
    pub witness: Option<ExponentVector>,
    pub complete: bool,
}

/// Calls `visit` on every vector of sup-norm exactly `r` whose last nonzero
/// entry is positive, in lexicographic order over `[-r, r]^n`. Stops early
/// when `visit` returns `true`.
pub fn shell_search(n: usize, r: i64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let mut cur = vec![-r; n];
    loop {
        let last = cur.iter().rev().find(|&&v| v != 0);
        if last.is_some_and(|&v| v > 0) && cur.iter().any(|v| v.abs() == r) && visit(&cur) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                for v in cur.iter_mut().skip(i + 1) {
                    *v = -r;
                }
                break;
            }
        }
    }
}

/// Tuple order from precomputed logarithms modulo `m = q - 1`.
pub fn tuple_order_from_logs(logs: &[u64], m: u64, radius_cap: u32) -> TupleOrderResult {
    let n = logs.len();
    for r in 1..=radius_cap as i64 {
        let mut hit = None;
        shell_search(n, r, |k| {
            let s = k
                .iter()
                .zip(logs)
                .fold(0i128, |acc, (&ki, &d)| acc + ki as i128 * d as i128);
            if s.rem_euclid(m as i128) == 0 {
                hit = Some(k.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(k) = hit {
            return TupleOrderResult {
                order: r as u64,
                witness: Some(ExponentVector::new(k)),
                complete: true,
            };
        }
    }
    TupleOrderResult {
        order: radius_cap as u64 + 1,
        witness: None,
        complete: false,
    }
}

/// Minimal sup-norm of a nonzero relation `prod x_i^{k_i} = 1`.
pub fn tuple_order(ctx: &FqCtx, values: &[FqElem], radius_cap: u32) -> Result<TupleOrderResult> {
    if radius_cap < 1 {
        return Err(Error::InvalidParams("radius cap must be at least 1".into()));
    }
    if values.iter().any(|v| ctx.is_zero(v)) {
        return Err(Error::Domain("tuple order of a zero entry".into()));
    }
    let g = ctx.find_generator();
    let table = DlogTable::new(ctx, &g)?;
    let logs = values
        .iter()
        .map(|v| table.log(ctx, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(tuple_order_from_logs(&logs, ctx.group_order(), radius_cap))
}

/// All relations of sup-norm at most `l`, one of each `+-` pair.
pub fn relations_in_box(logs: &[u64], m: u64, l: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for r in 1..=l as i64 {
        shell_search(logs.len(), r, |k| {
            let s = k
                .iter()
                .zip(logs)
                .fold(0i128, |acc, (&ki, &d)| acc + ki as i128 * d as i128);
            if s.rem_euclid(m as i128) == 0 {
                out.push(k.to_vec());
            }
            false
        });
    }
    out
}

/// `true` when two linearly independent relations of sup-norm at most `l`
/// exist.
pub fn doubly_dependent(logs: &[u64], m: u64, l: u32) -> bool {
    let rels = relations_in_box(logs, m, l);
    let Some(first) = rels.first() else {
        return false;
    };
    rels.iter().skip(1).any(|r| linearly_independent(first, r))
}
