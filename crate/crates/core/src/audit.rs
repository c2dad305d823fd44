//! Exhaustive per-prime audits of the two certificates, and order profiles.
//!
//! Each audit walks every `x` in `F_{p^k}` and records the relevant order
//! statistic. Rows come out in field-index order no matter how the work is
//! scheduled.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::ec_pipeline::{EcPipelineParams, ExceptionalReport};
use crate::error::{Error, Result};
use crate::ffield::{DlogTable, FqCtx, FqElem};
use crate::legendre::LegendreCurve;
use crate::modp::{factor, is_prime, primes_up_to};
use crate::multdep::{
    doubly_dependent, tuple_order_from_logs, MultReport, RationalTuple, TupleOrderResult,
};
use crate::zpoly::modular;

pub const EC_CSV_HEADER: &str = "p,k,x,ord1,ord2,max_ord,class";
pub const MULT_CSV_HEADER: &str = "p,k,x,tuple_order,witness,class";
pub const PROFILE_CSV_HEADER: &str = "p,status,min_order,p_pow_1_6,p_pow_1_2n_2";

fn check_depth(depth: usize) -> Result<()> {
    if depth == 1 || depth == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "audit depth must be 1 or 2, got {depth}"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EcClass {
    /// `max(ord1, ord2) <= C`.
    BelowC,
    /// Both orders in `(C, L]`.
    InWindow,
    /// The larger order is in `(C, L]` but the smaller is at most `C`.
    SingleWindow,
    /// `max(ord1, ord2) > L`.
    AboveL,
    /// A lift is 2-torsion and the row is not below-C.
    Skipped,
}

impl EcClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EcClass::BelowC => "below-C",
            EcClass::InWindow => "in-window",
            EcClass::SingleWindow => "single-window",
            EcClass::AboveL => "above-L",
            EcClass::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcAuditRow {
    pub p: u64,
    pub k: usize,
    /// Field index of `x`; equals `x` itself when `k = 1`.
    pub x: u64,
    pub ord1: u64,
    pub ord2: u64,
    pub max_order: u64,
    pub class: EcClass,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EcAuditSummary {
    pub p: u64,
    pub depth: usize,
    pub rows: usize,
    pub below_c: usize,
    pub in_window: usize,
    pub single_window: usize,
    pub above_l: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcAudit {
    pub rows: Vec<EcAuditRow>,
    pub summary: EcAuditSummary,
}

/// Outcome of an audit measured against a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Certified good and no in-window row.
    Pass,
    /// Certified good but an in-window row exists.
    Fail,
    /// Listed as exceptional and the audit found an in-window row.
    ExceptionalWitnessed,
    /// Listed as exceptional with no in-window row at this depth.
    ExceptionalVacuous,
    /// Above the certificate's prime cap.
    NotCovered,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ExceptionalWitnessed => "exceptional (witnessed)",
            Verdict::ExceptionalVacuous => {
                "exceptional (divides the resultant without a rational-point witness at this depth)"
            }
            Verdict::NotCovered => "not covered by the certificate",
        }
    }

    fn from_parts(covered: bool, good: bool, in_window: usize) -> Self {
        match (covered, good, in_window) {
            (false, _, _) => Verdict::NotCovered,
            (true, true, 0) => Verdict::Pass,
            (true, true, _) => Verdict::Fail,
            (true, false, 0) => Verdict::ExceptionalVacuous,
            (true, false, _) => Verdict::ExceptionalWitnessed,
        }
    }
}

impl EcAuditSummary {
    pub fn verdict(&self, report: &ExceptionalReport) -> Verdict {
        Verdict::from_parts(
            self.p <= report.params.prime_cap,
            report.is_certified_good(self.p),
            self.in_window,
        )
    }
}

struct LiftedCurve {
    curve: LegendreCurve<FqCtx>,
    order: u64,
    factors: Vec<(u64, u32)>,
}

impl LiftedCurve {
    fn new(ext: &FqCtx, t: i64) -> Result<Self> {
        let curve = LegendreCurve::reduce(ext.clone(), t)?;
        let order = curve.group_order()?;
        Ok(LiftedCurve {
            curve,
            order,
            factors: factor(order),
        })
    }

    /// Order of a lift of `x`, asserting that both signs of `y` agree.
    fn order_at(&self, x: &FqElem) -> Result<u64> {
        let pt = self
            .curve
            .lift_x(x)
            .ok_or_else(|| Error::Invariant(format!("x = {x} has no lift in the extension")))?;
        let o = self.curve.point_order_in(&pt, self.order, &self.factors);
        let neg = self.curve.neg_point(&pt);
        let on = self.curve.point_order_in(&neg, self.order, &self.factors);
        if o != on || !self.order.is_multiple_of(o) {
            return Err(Error::Invariant(format!(
                "inconsistent orders {o}, {on} at x = {x}"
            )));
        }
        Ok(o)
    }
}

fn validate_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

/// Audits one prime for the elliptic-curve certificate. `x` runs over
/// `F_{p^k}` and the lifts live in `F_{p^{2k}}`.
pub fn audit_ec_prime(p: u64, params: &EcPipelineParams, depth: usize) -> Result<EcAudit> {
    params.validate()?;
    check_depth(depth)?;
    if params.is_bad(p) {
        return Err(Error::BadReduction {
            p,
            reason: "p divides 2 t1 t2 (t1-1)(t2-1)(t1-t2)".into(),
        });
    }
    validate_prime(p)?;
    let base = FqCtx::new(p, depth)?;
    let ext = FqCtx::new(p, 2 * depth)?;
    let emb = base.embedding_into(&ext)?;
    let e1 = LiftedCurve::new(&ext, params.t1)?;
    let e2 = LiftedCurve::new(&ext, params.t2)?;
    let t1 = base.from_i64(params.t1);
    let t2 = base.from_i64(params.t2);
    let (c, l) = (params.c as u64, params.l as u64);

    let rows = (0..base.size())
        .into_par_iter()
        .map(|idx| {
            let x = base.from_index(idx);
            let xe = emb.apply(&x);
            let ord1 = e1.order_at(&xe)?;
            let ord2 = e2.order_at(&xe)?;
            let max_order = ord1.max(ord2);
            let in_win = |o: u64| c < o && o <= l;
            let both = in_win(ord1) && in_win(ord2);
            let branch = base.is_zero(&x) || base.is_one(&x) || x == t1 || x == t2;
            let class = if max_order <= c {
                EcClass::BelowC
            } else if branch {
                EcClass::Skipped
            } else if both {
                EcClass::InWindow
            } else if max_order <= l {
                EcClass::SingleWindow
            } else {
                EcClass::AboveL
            };
            Ok(EcAuditRow {
                p,
                k: depth,
                x: idx,
                ord1,
                ord2,
                max_order,
                class,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut s = EcAuditSummary {
        p,
        depth,
        rows: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.class {
            EcClass::BelowC => s.below_c += 1,
            EcClass::InWindow => s.in_window += 1,
            EcClass::SingleWindow => s.single_window += 1,
            EcClass::AboveL => s.above_l += 1,
            EcClass::Skipped => s.skipped += 1,
        }
    }
    Ok(EcAudit { rows, summary: s })
}

pub fn ec_rows_csv(rows: &[EcAuditRow]) -> String {
    let mut out = String::from(EC_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.p,
            r.k,
            r.x,
            r.ord1,
            r.ord2,
            r.max_order,
            r.class.as_str()
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultClass {
    BelowB,
    /// Order in `(B, L]` with two independent relations of norm at most `L`.
    InWindow,
    /// Order in `(B, L]` but every relation of norm at most `L` is a
    /// multiple of one vector.
    SingleWindow,
    AboveL,
    PoleOrZero,
}

impl MultClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MultClass::BelowB => "below-B",
            MultClass::InWindow => "in-window",
            MultClass::SingleWindow => "single-window",
            MultClass::AboveL => "above-L",
            MultClass::PoleOrZero => "pole-or-zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultAuditRow {
    pub p: u64,
    pub k: usize,
    pub x: u64,
    /// `None` for poles and zeros.
    pub tuple_order: Option<TupleOrderResult>,
    pub class: MultClass,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultAuditSummary {
    pub p: u64,
    pub depth: usize,
    pub b: u32,
    pub l: u32,
    pub rows: usize,
    pub below_b: usize,
    pub in_window: usize,
    pub single_window: usize,
    pub above_l: usize,
    pub pole_or_zero: usize,
}

impl MultAuditSummary {
    pub fn verdict(&self, report: &MultReport) -> Verdict {
        Verdict::from_parts(
            self.p <= report.params.prime_cap,
            report.is_certified_good(self.p),
            self.in_window,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultAudit {
    pub rows: Vec<MultAuditRow>,
    pub summary: MultAuditSummary,
}

/// `P_i` and `Q_i` reduced into `F_q`.
struct ReducedTuple {
    p: Vec<Vec<u64>>,
    q: Vec<Vec<u64>>,
}

impl ReducedTuple {
    fn new(fs: &RationalTuple, prime: u64) -> Self {
        let red = |v: &crate::BigPoly| -> Vec<u64> {
            v.coeffs()
                .iter()
                .map(|c| modular::bigint_mod(c, prime))
                .collect()
        };
        ReducedTuple {
            p: fs.p.iter().map(red).collect(),
            q: fs.q.iter().map(red).collect(),
        }
    }

    fn eval(ctx: &FqCtx, c: &[u64], x: &FqElem) -> FqElem {
        c.iter().rev().fold(ctx.zero(), |acc, &a| {
            ctx.add(&ctx.mul(&acc, x), &ctx.from_u64(a))
        })
    }

    /// `f_i(x)`, or `None` at a zero or pole of some `f_i`.
    fn values(&self, ctx: &FqCtx, x: &FqElem) -> Option<Vec<FqElem>> {
        self.p
            .iter()
            .zip(&self.q)
            .map(|(p, q)| {
                let a = Self::eval(ctx, p, x);
                let b = Self::eval(ctx, q, x);
                if ctx.is_zero(&a) || ctx.is_zero(&b) {
                    None
                } else {
                    ctx.div(&a, &b).ok()
                }
            })
            .collect()
    }
}

fn check_not_degenerate(fs: &RationalTuple, p: u64) -> Result<()> {
    if modular::bigint_mod(&fs.degeneracy_value(), p) == 0 {
        return Err(Error::DegenerateReduction { p });
    }
    Ok(())
}

/// Audits one prime for the multiplicative certificate with window
/// `(B, L]`.
pub fn audit_mult_prime(
    p: u64,
    fs: &RationalTuple,
    b: u32,
    l: u32,
    depth: usize,
) -> Result<MultAudit> {
    check_depth(depth)?;
    if b >= l {
        return Err(Error::InvalidParams("need B < L".into()));
    }
    validate_prime(p)?;
    check_not_degenerate(fs, p)?;
    let ctx = FqCtx::new(p, depth)?;
    let red = ReducedTuple::new(fs, p);
    let g = ctx.find_generator();
    let table = DlogTable::new(&ctx, &g)?;
    let m = ctx.group_order();

    let rows = (0..ctx.size())
        .into_par_iter()
        .map(|idx| {
            let x = ctx.from_index(idx);
            let Some(vals) = red.values(&ctx, &x) else {
                return Ok(MultAuditRow {
                    p,
                    k: depth,
                    x: idx,
                    tuple_order: None,
                    class: MultClass::PoleOrZero,
                });
            };
            let logs = vals
                .iter()
                .map(|v| table.log(&ctx, v))
                .collect::<Result<Vec<_>>>()?;
            let ord = tuple_order_from_logs(&logs, m, l);
            let class = if !ord.complete {
                MultClass::AboveL
            } else if ord.order <= b as u64 {
                MultClass::BelowB
            } else if doubly_dependent(&logs, m, l) {
                MultClass::InWindow
            } else {
                MultClass::SingleWindow
            };
            Ok(MultAuditRow {
                p,
                k: depth,
                x: idx,
                tuple_order: Some(ord),
                class,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut s = MultAuditSummary {
        p,
        depth,
        b,
        l,
        rows: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.class {
            MultClass::BelowB => s.below_b += 1,
            MultClass::InWindow => s.in_window += 1,
            MultClass::SingleWindow => s.single_window += 1,
            MultClass::AboveL => s.above_l += 1,
            MultClass::PoleOrZero => s.pole_or_zero += 1,
        }
    }
    Ok(MultAudit { rows, summary: s })
}

pub fn mult_rows_csv(rows: &[MultAuditRow]) -> String {
    let mut out = String::from(MULT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let (ord, wit) = match &r.tuple_order {
            None => (String::new(), String::new()),
            Some(t) if !t.complete => (format!(">={}", t.order), String::new()),
            Some(t) => {
                let w = t.witness.as_ref().map_or(String::new(), |w| {
                    w.k.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
                });
                (t.order.to_string(), w)
            }
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.p,
            r.k,
            r.x,
            ord,
            wit,
            r.class.as_str()
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileStatus {
    Ok,
    SkippedBad,
    SkippedDegenerate,
}

impl ProfileStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileStatus::Ok => "ok",
            ProfileStatus::SkippedBad => "skipped-bad",
            ProfileStatus::SkippedDegenerate => "skipped-degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub p: u64,
    pub status: ProfileStatus,
    pub min_order: Option<u64>,
    pub p_pow_1_6: f64,
    /// `p^{1/(2n+2)}`; `n = 2` for the pair of curves.
    pub p_pow_1_2n_2: f64,
}

impl ProfileRow {
    fn new(p: u64, n: usize, status: ProfileStatus, min_order: Option<u64>) -> Self {
        let pf = p as f64;
        ProfileRow {
            p,
            status,
            min_order,
            p_pow_1_6: pf.powf(1.0 / 6.0),
            p_pow_1_2n_2: pf.powf(1.0 / (2 * n + 2) as f64),
        }
    }
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo {
        return Vec::new();
    }
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

/// Per prime in `[lo, hi]`: the least `max(ord P_1, ord P_2)` over `x` in
/// `F_p` away from the branch values `0, 1, t1, t2`.
pub fn ec_order_profile(t1: i64, t2: i64, lo: u64, hi: u64) -> Result<Vec<ProfileRow>> {
    let params = EcPipelineParams::new(t1, t2, 1, 2, 1);
    params.validate()?;
    primes_in(lo, hi)
        .par_iter()
        .map(|&p| {
            if params.is_bad(p) {
                return Ok(ProfileRow::new(p, 2, ProfileStatus::SkippedBad, None));
            }
            let audit = audit_ec_prime(p, &params, 1)?;
            let branch = [
                0,
                1,
                t1.rem_euclid(p as i64) as u64,
                t2.rem_euclid(p as i64) as u64,
            ];
            let min = audit
                .rows
                .iter()
                .filter(|r| !branch.contains(&r.x))
                .map(|r| r.max_order)
                .min();
            Ok(ProfileRow::new(p, 2, ProfileStatus::Ok, min))
        })
        .collect()
}

/// Per prime in `[lo, hi]`: the least tuple order over `x` in `F_p` away
/// from zeros and poles. The search radius always reaches the order.
pub fn mult_order_profile(fs: &RationalTuple, lo: u64, hi: u64) -> Result<Vec<ProfileRow>> {
    let n = fs.len();
    primes_in(lo, hi)
        .par_iter()
        .map(|&p| {
            if p == 2 {
                return Ok(ProfileRow::new(p, n, ProfileStatus::SkippedBad, None));
            }
            if check_not_degenerate(fs, p).is_err() {
                return Ok(ProfileRow::new(
                    p,
                    n,
                    ProfileStatus::SkippedDegenerate,
                    None,
                ));
            }
            // pigeonhole: some relation has norm at most ceil((p-1)^{1/n})
            let cap = ((p - 1) as f64).powf(1.0 / n as f64).ceil() as u32 + 1;
            let audit = audit_mult_prime(p, fs, 0, cap, 1)?;
            let min = audit
                .rows
                .iter()
                .filter_map(|r| r.tuple_order.as_ref())
                .map(|t| {
                    if t.complete {
                        Ok(t.order)
                    } else {
                        Err(Error::Invariant(
                            "tuple order search radius too small".into(),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min();
            Ok(ProfileRow::new(p, n, ProfileStatus::Ok, min))
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from(PROFILE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{:.6}",
            r.p,
            r.status.as_str(),
            r.min_order.map_or(String::new(), |m| m.to_string()),
            r.p_pow_1_6,
            r.p_pow_1_2n_2
        );
    }
    out
}
