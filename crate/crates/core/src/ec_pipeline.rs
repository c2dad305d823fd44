//! Exceptional primes for a pair of Legendre curves: the window products
//! `prod f_l`, `prod g_l` over `C < l <= L`, their resultant, and its small
//! prime divisors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::legendre::{Integers, LegendreCurve};
use crate::modp::{prime_support, primes_up_to};
use crate::zpoly::{bounds, gcd, ln_bigint, modular, product, resultant_modular, BigPoly};

/// Default ceiling on `L`.
pub const DEFAULT_L_BUDGET: u32 = 40;
/// Resultants with at most this many bits are printed in full.
const DECIMAL_BITS: u64 = 512;
/// Mersenne prime used for the resultant fingerprint.
const FINGERPRINT_MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ResultantMode {
    /// `prod_{l,k} |Res(f_l, g_k)|`, one resultant per pair.
    #[default]
    Pairwise,
    /// `|Res(prod f_l, prod g_k)|` in one step.
    FullProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcPipelineParams {
    pub t1: i64,
    pub t2: i64,
    pub c: u32,
    pub l: u32,
    pub prime_cap: u64,
    pub mode: ResultantMode,
    /// Assert height and resultant bounds on every product and resultant.
    pub checked: bool,
    #[serde(skip)]
    pub l_budget: u32,
}

impl EcPipelineParams {
    pub fn new(t1: i64, t2: i64, c: u32, l: u32, prime_cap: u64) -> Self {
        EcPipelineParams {
            t1,
            t2,
            c,
            l,
            prime_cap,
            mode: ResultantMode::Pairwise,
            checked: false,
            l_budget: DEFAULT_L_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t1 == self.t2 {
            return Err(Error::InvalidParams("t1 and t2 must be distinct".into()));
        }
        for t in [self.t1, self.t2] {
            if t == 0 || t == 1 {
                return Err(Error::InvalidParams(format!(
                    "curve parameter {t} must avoid 0 and 1"
                )));
            }
            if t.unsigned_abs() >= 1 << 40 {
                return Err(Error::InvalidParams(format!(
                    "curve parameter {t} is too large"
                )));
            }
        }
        if self.c < 1 || self.c >= self.l {
            return Err(Error::InvalidParams(format!(
                "need 1 <= C < L, got C = {} and L = {}",
                self.c, self.l
            )));
        }
        if self.l > self.l_budget {
            return Err(Error::Budget(format!(
                "L = {} exceeds the budget {}",
                self.l, self.l_budget
            )));
        }
        Ok(())
    }

    /// Primes dividing `2 t1 t2 (t1 - 1)(t2 - 1)(t1 - t2)`.
    pub fn bad_primes(&self) -> Vec<u64> {
        let (a, b) = (self.t1 as i128, self.t2 as i128);
        prime_support(&[2, a, b, a - 1, b - 1, a - b])
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes().contains(&p)
    }
}

/// Expected `deg f_n`.
pub fn f_degree(n: u32) -> usize {
    let n = n as usize;
    if n % 2 == 1 {
        (n * n - 1) / 2
    } else {
        (n * n - 4) / 2
    }
}

/// The factors `f_l` for `C < l <= L`.
pub fn window_factors(curve: &LegendreCurve<Integers>, c: u32, l: u32) -> Result<Vec<BigPoly>> {
    (c + 1..=l).map(|n| curve.f_poly(n)).collect()
}

/// `prod_{l = C+1}^{L} f_l` for the curve `E_t`.
pub fn window_product(t: i64, c: u32, l: u32) -> Result<BigPoly> {
    let curve = LegendreCurve::over_integers(t)?;
    let fs = window_factors(&curve, c, l)?;
    Ok(product(&fs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCount {
    pub primes: Vec<u64>,
    /// Bit length of the part of `N` free of primes up to the cap.
    pub cofactor_bits: u64,
    /// Cofactor exceeds `cap^2`, so it may hide several primes.
    pub cofactor_exceeds_cap_squared: bool,
    /// Upper bound on the primes hiding in the cofactor.
    pub cofactor_prime_bound: u64,
    /// `primes.len() + cofactor_prime_bound`.
    pub count_upper: u64,
}

/// Distinct prime divisors of `n` up to `cap` by trial division.
pub fn distinct_prime_count(n: &BigInt, cap: u64) -> PrimeCount {
    assert!(n.is_positive(), "distinct_prime_count needs N >= 1");
    let mut rest = n.clone();
    let mut primes = Vec::new();
    for p in primes_up_to(cap) {
        if modular::bigint_mod(&rest, p) == 0 {
            primes.push(p);
            let bp = BigInt::from(p);
            while modular::bigint_mod(&rest, p) == 0 {
                rest /= &bp;
            }
        }
    }
    let cap_sq = BigInt::from(cap) * BigInt::from(cap);
    let exceeds = rest > cap_sq;
    let bound = if rest.is_one() {
        0
    } else if exceeds {
        rest.bits() - 1
    } else {
        // no factor up to cap and at most cap^2: prime
        1
    };
    PrimeCount {
        count_upper: primes.len() as u64 + bound,
        primes,
        cofactor_bits: rest.bits(),
        cofactor_exceeds_cap_squared: exceeds,
        cofactor_prime_bound: bound,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantSummary {
    pub bit_length: u64,
    /// Natural logarithm.
    pub log: f64,
    /// The value modulo `2^61 - 1`.
    pub fingerprint: u64,
    /// Decimal value, present when it has at most 512 bits.
    pub decimal: Option<String>,
}

impl ResultantSummary {
    pub fn of(r: &BigInt) -> Self {
        ResultantSummary {
            bit_length: r.bits(),
            log: ln_bigint(r),
            fingerprint: modular::bigint_mod(r, FINGERPRINT_MODULUS),
            decimal: (r.bits() <= DECIMAL_BITS).then(|| r.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaCheck {
    pub distinct_found: usize,
    pub count_upper: u64,
    pub cofactor_exceeds_cap_squared: bool,
    /// Largest `k` with `k! <= R`; a product of `k` distinct primes is at
    /// least `k!`, so `omega(R)` never exceeds it.
    pub factorial_ceiling: u64,
    /// `log R / log log R`.
    pub log_ratio: f64,
    pub holds: bool,
}

impl OmegaCheck {
    fn new(r: &BigInt, count: &PrimeCount) -> Self {
        let log_r = ln_bigint(r);
        let mut k = 0u64;
        let mut acc = 0f64;
        loop {
            let next = acc + ((k + 1) as f64).ln();
            if next > log_r {
                break;
            }
            acc = next;
            k += 1;
        }
        let log_ratio = if log_r > 1.0 { log_r / log_r.ln() } else { 0.0 };
        OmegaCheck {
            distinct_found: count.primes.len(),
            count_upper: count.count_upper,
            cofactor_exceeds_cap_squared: count.cofactor_exceeds_cap_squared,
            factorial_ceiling: k,
            log_ratio,
            holds: count.primes.len() as u64 <= k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalReport {
    pub params: EcPipelineParams,
    pub degree_f: usize,
    pub degree_g: usize,
    pub resultant: ResultantSummary,
    pub resultant_bit_length: u64,
    pub bad_primes: Vec<u64>,
    pub exceptional_primes: Vec<u64>,
    pub omega_bound_check: OmegaCheck,
}

impl ExceptionalReport {
    /// `true` for odd primes up to the cap that are neither bad nor
    /// exceptional.
    pub fn is_certified_good(&self, p: u64) -> bool {
        p <= self.params.prime_cap
            && p > 2
            && self.bad_primes.binary_search(&p).is_err()
            && self.exceptional_primes.binary_search(&p).is_err()
    }
}

fn resultant_checked(a: &BigPoly, b: &BigPoly, checked: bool) -> Result<BigInt> {
    let r = resultant_modular(a, b);
    if checked {
        bounds::check_resultant(a, b, &r)?;
    }
    Ok(r)
}

/// Runs the certificate for `params`.
pub fn ec_exceptional_primes(params: &EcPipelineParams) -> Result<ExceptionalReport> {
    params.validate()?;
    let e1 = LegendreCurve::over_integers(params.t1)?;
    let e2 = LegendreCurve::over_integers(params.t2)?;
    let (fs, gs) = rayon::join(
        || window_factors(&e1, params.c, params.l),
        || window_factors(&e2, params.c, params.l),
    );
    let (fs, gs) = (fs?, gs?);
    for (n, f) in (params.c + 1..=params.l).zip(fs.iter().chain(gs.iter())) {
        if f.degree() != Some(f_degree(n)) {
            return Err(Error::Invariant(format!("deg f_{n} is {:?}", f.degree())));
        }
    }
    let degree_f: usize = fs.iter().map(BigPoly::degree_or_zero).sum();
    let degree_g: usize = gs.iter().map(BigPoly::degree_or_zero).sum();

    let factors: Vec<BigInt> = match params.mode {
        ResultantMode::Pairwise => {
            let pairs: Vec<(&BigPoly, &BigPoly)> = fs
                .iter()
                .flat_map(|f| gs.iter().map(move |g| (f, g)))
                .collect();
            pairs
                .par_iter()
                .map(|(f, g)| resultant_checked(f, g, params.checked).map(|r| r.abs()))
                .collect::<Result<_>>()?
        }
        ResultantMode::FullProduct => {
            let pf = product(&fs);
            let pg = product(&gs);
            if params.checked {
                bounds::check_product(&fs, &pf)?;
                bounds::check_product(&gs, &pg)?;
            }
            vec![resultant_checked(&pf, &pg, params.checked)?.abs()]
        }
    };

    if factors.iter().any(Zero::is_zero) {
        let witness = gcd(&product(&fs), &product(&gs));
        return Err(Error::CharZeroCoincidence {
            witness: witness.to_string(),
        });
    }

    let r = product_of_integers(&factors);
    let mut exceptional: Vec<u64> = primes_up_to(params.prime_cap)
        .into_par_iter()
        .filter(|&p| factors.iter().any(|x| modular::bigint_mod(x, p) == 0))
        .collect();
    exceptional.sort_unstable();

    let count = distinct_prime_count(&r, params.prime_cap);
    debug_assert_eq!(count.primes, exceptional);
    Ok(ExceptionalReport {
        params: params.clone(),
        degree_f,
        degree_g,
        resultant_bit_length: r.bits(),
        resultant: ResultantSummary::of(&r),
        bad_primes: params.bad_primes(),
        exceptional_primes: exceptional,
        omega_bound_check: OmegaCheck::new(&r, &count),
    })
}

fn product_of_integers(v: &[BigInt]) -> BigInt {
    match v.len() {
        0 => BigInt::one(),
        1 => v[0].clone(),
        n => {
            let (a, b) = v.split_at(n / 2);
            product_of_integers(a) * product_of_integers(b)
        }
    }
}

/// Sorted primes `p <= cap` for which the reductions of `a` and `b` share a
/// root over `F_p`-bar, or both leading coefficients vanish.
pub fn shared_root_primes(a: &BigPoly, b: &BigPoly, cap: u64) -> Vec<u64> {
    primes_up_to(cap)
        .into_iter()
        .filter(|&p| {
            let ra = modular::reduce(a, p);
            let rb = modular::reduce(b, p);
            let la = modular::bigint_mod(a.leading_coeff().unwrap(), p) == 0;
            let lb = modular::bigint_mod(b.leading_coeff().unwrap(), p) == 0;
            (la && lb) || modular::degree(&modular::gcd(&ra, &rb, p)).unwrap_or(0) > 0
        })
        .collect()
}
