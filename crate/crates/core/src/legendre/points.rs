//! Chord-tangent group law on `Y^2 = X^3 - (1+t)X^2 + tX` over `F_q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FqCtx, FqElem};
use crate::modp::{factor, legendre_symbol};

use super::LegendreCurve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LegendrePoint {
    Infinity,
    Affine { x: FqElem, y: FqElem },
}

impl LegendrePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, LegendrePoint::Infinity)
    }

    pub fn x(&self) -> Option<&FqElem> {
        match self {
            LegendrePoint::Infinity => None,
            LegendrePoint::Affine { x, .. } => Some(x),
        }
    }
}

/// `inf`, or `x;y` with field elements in their comma-separated form.
impl fmt::Display for LegendrePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegendrePoint::Infinity => f.write_str("inf"),
            LegendrePoint::Affine { x, y } => write!(f, "{x};{y}"),
        }
    }
}

impl LegendreCurve<FqCtx> {
    /// `x(x-1)(x-t)`.
    pub fn rhs(&self, x: &FqElem) -> FqElem {
        let k = self.ctx();
        let xm1 = k.sub(x, &k.one());
        let xmt = k.sub(x, self.t());
        k.mul(&k.mul(x, &xm1), &xmt)
    }

    pub fn is_on_curve(&self, p: &LegendrePoint) -> bool {
        match p {
            LegendrePoint::Infinity => true,
            LegendrePoint::Affine { x, y } => self.ctx().square(y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: FqElem, y: FqElem) -> Result<LegendrePoint> {
        let p = LegendrePoint::Affine { x, y };
        if !self.is_on_curve(&p) {
            return Err(Error::Domain(format!("({x}, {y}) is not on the curve")));
        }
        Ok(p)
    }

    /// A point with abscissa `x`, if one exists over this field. The root
    /// with the smaller index is chosen for `y`.
    pub fn lift_x(&self, x: &FqElem) -> Option<LegendrePoint> {
        let y = self.ctx().sqrt(&self.rhs(x))?;
        Some(LegendrePoint::Affine { x: *x, y })
    }

    /// All affine points, in index order of `x` then `y`.
    pub fn affine_points(&self) -> Vec<LegendrePoint> {
        let k = self.ctx();
        let mut out = Vec::new();
        for x in k.elements() {
            if let Some(LegendrePoint::Affine { y, .. }) = self.lift_x(&x) {
                let ny = k.neg(&y);
                out.push(LegendrePoint::Affine { x, y });
                if ny != y {
                    out.push(LegendrePoint::Affine { x, y: ny });
                }
            }
        }
        out
    }

    pub fn neg_point(&self, p: &LegendrePoint) -> LegendrePoint {
        match p {
            LegendrePoint::Infinity => LegendrePoint::Infinity,
            LegendrePoint::Affine { x, y } => LegendrePoint::Affine {
                x: *x,
                y: self.ctx().neg(y),
            },
        }
    }

    fn check(&self, p: &LegendrePoint) -> Result<()> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{p} is not on the curve")))
        }
    }

    /// Group law, validating both inputs.
    pub fn add_points(&self, p: &LegendrePoint, q: &LegendrePoint) -> Result<LegendrePoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &LegendrePoint, q: &LegendrePoint) -> LegendrePoint {
        let k = self.ctx();
        let (x1, y1, x2, y2) = match (p, q) {
            (LegendrePoint::Infinity, _) => return *q,
            (_, LegendrePoint::Infinity) => return *p,
            (LegendrePoint::Affine { x: x1, y: y1 }, LegendrePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if k.is_zero(&k.add(y1, y2)) {
                return LegendrePoint::Infinity;
            }
            // (3x^2 + 2 a2 x + a4) / 2y with a2 = -(1+t), a4 = t
            let a2 = k.neg(&k.add(&k.one(), self.t()));
            let num = k.add(
                &k.add(&k.scale(&k.square(x1), 3), &k.scale(&k.mul(&a2, x1), 2)),
                self.t(),
            );
            k.div(&num, &k.scale(y1, 2)).expect("y1 is nonzero here")
        } else {
            k.div(&k.sub(y2, y1), &k.sub(x2, x1)).expect("x1 != x2")
        };
        let a2 = k.neg(&k.add(&k.one(), self.t()));
        let x3 = k.sub(&k.sub(&k.sub(&k.square(&lambda), &a2), x1), x2);
        let y3 = k.sub(&k.mul(&lambda, &k.sub(x1, &x3)), y1);
        LegendrePoint::Affine { x: x3, y: y3 }
    }

    /// `[n]P` by double-and-add; negative `n` negates.
    pub fn scalar_mul(&self, n: i64, p: &LegendrePoint) -> Result<LegendrePoint> {
        self.check(p)?;
        Ok(self.scalar_mul_unchecked(n, p))
    }

    fn scalar_mul_unchecked(&self, n: i64, p: &LegendrePoint) -> LegendrePoint {
        let mut acc = LegendrePoint::Infinity;
        let mut base = if n < 0 { self.neg_point(p) } else { *p };
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// `[n]P = (phi_n / psi_n^2, omega_n / psi_n^3)` evaluated at `P`.
    /// `psi_n(P) = 0` is reported as [`Error::TorsionDetected`].
    pub fn multiplication_by_n(&self, p: &LegendrePoint, n: u32) -> Result<LegendrePoint> {
        self.check(p)?;
        let LegendrePoint::Affine { x, y } = p else {
            return Err(Error::Domain(
                "multiplication formula needs an affine point".into(),
            ));
        };
        let k = self.ctx();
        let psi = self.eval_elem(&self.division_psi(n as i64)?, x, y);
        if k.is_zero(&psi) {
            return Err(Error::TorsionDetected { n: n as i64 });
        }
        let (phi, omega) = self.phi_omega(n)?;
        let phi = self.eval_elem(&phi, x, y);
        let omega = self.eval_elem(&omega, x, y);
        let psi2 = k.square(&psi);
        let psi3 = k.mul(&psi2, &psi);
        Ok(LegendrePoint::Affine {
            x: k.div(&phi, &psi2)?,
            y: k.div(&omega, &psi3)?,
        })
    }

    fn prime_field_t(&self) -> Result<u64> {
        self.ctx()
            .as_prime_field(self.t())
            .ok_or_else(|| Error::Domain("point counting needs t in the prime field".into()))
    }

    /// Frobenius trace `a_p = p + 1 - #E(F_p)` from the character sum.
    pub fn trace_of_frobenius(&self) -> Result<i64> {
        let p = self.ctx().p();
        let t = self.prime_field_t()?;
        let mut s: i64 = 0;
        for x in 0..p {
            let v = crate::modp::mul_mod(
                crate::modp::mul_mod(x, (x + p - 1) % p, p),
                (x + p - t) % p,
                p,
            );
            s += legendre_symbol(v, p) as i64;
        }
        Ok(-s)
    }

    /// `#E(F_{p^k})` from the trace recurrence `s_j = a s_{j-1} - p s_{j-2}`.
    pub fn group_order_over(&self, k: u32) -> Result<u64> {
        if k == 0 {
            return Err(Error::Domain("extension degree must be positive".into()));
        }
        let p = self.ctx().p() as i128;
        let a = self.trace_of_frobenius()? as i128;
        let (mut s0, mut s1) = (2i128, a);
        for _ in 1..k {
            (s0, s1) = (s1, a * s1 - p * s0);
        }
        let n = p.pow(k) + 1 - s1;
        u64::try_from(n).map_err(|_| Error::Budget("group order exceeds 64 bits".into()))
    }

    /// `#E` over the field of this curve's context.
    pub fn group_order(&self) -> Result<u64> {
        self.group_order_over(self.ctx().k() as u32)
    }

    /// Exact order of `P`, by stripping prime factors from the group order.
    pub fn point_order(&self, p: &LegendrePoint) -> Result<u64> {
        self.check(p)?;
        let n = self.group_order()?;
        Ok(self.point_order_in(p, n, &factor(n)))
    }

    /// Order of `P` given the group order and its factorization.
    pub fn point_order_in(&self, p: &LegendrePoint, n: u64, factors: &[(u64, u32)]) -> u64 {
        let mut ord = n;
        for &(l, e) in factors {
            for _ in 0..e {
                let cand = ord / l;
                if self.scalar_mul_unchecked(cand as i64, p).is_infinity() {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        ord
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2_f7() -> LegendreCurve<FqCtx> {
        LegendreCurve::reduce(FqCtx::new(7, 1).unwrap(), 2).unwrap()
    }

    fn pt(e: &LegendreCurve<FqCtx>, x: u64, y: u64) -> LegendrePoint {
        e.point(e.ctx().from_u64(x), e.ctx().from_u64(y)).unwrap()
    }

    #[test]
    fn worked_doubling() {
        let e = e2_f7();
        let p = pt(&e, 5, 2);
        let two = pt(&e, 2, 0);
        assert_eq!(e.scalar_mul(2, &p).unwrap(), two);
        assert_eq!(e.add_points(&p, &p).unwrap(), two);
        assert!(e.scalar_mul(4, &p).unwrap().is_infinity());
        assert_eq!(e.add_points(&p, &LegendrePoint::Infinity).unwrap(), p);
        assert_eq!(e.multiplication_by_n(&p, 2).unwrap(), two);
        assert_eq!(e.multiplication_by_n(&p, 1).unwrap(), p);
        assert_eq!(
            e.multiplication_by_n(&two, 2),
            Err(Error::TorsionDetected { n: 2 })
        );
    }

    #[test]
    fn orders() {
        let e = e2_f7();
        assert_eq!(e.group_order().unwrap(), 8);
        assert_eq!(e.group_order_over(2).unwrap(), 64);
        assert_eq!(e.affine_points().len() + 1, 8);
        assert_eq!(e.point_order(&LegendrePoint::Infinity).unwrap(), 1);
        assert_eq!(e.point_order(&pt(&e, 2, 0)).unwrap(), 2);
        assert_eq!(e.point_order(&pt(&e, 5, 2)).unwrap(), 4);
    }

    #[test]
    fn off_curve_rejected() {
        let e = e2_f7();
        let bad = LegendrePoint::Affine {
            x: e.ctx().from_u64(3),
            y: e.ctx().from_u64(3),
        };
        assert!(matches!(e.scalar_mul(2, &bad), Err(Error::Domain(_))));
        assert!(e.point(e.ctx().from_u64(3), e.ctx().from_u64(3)).is_err());
    }

    #[test]
    fn extension_count_matches_enumeration() {
        let e = LegendreCurve::reduce(FqCtx::new(11, 2).unwrap(), 3).unwrap();
        assert_eq!(e.group_order().unwrap(), e.affine_points().len() as u64 + 1);
    }
}
