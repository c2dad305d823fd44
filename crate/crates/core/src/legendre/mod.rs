//! Legendre curves `E_t: Y^2 = X(X-1)(X-t)`, their division polynomials and,
//! over finite fields, their group law and point counts.

mod points;
mod ring;

use std::sync::RwLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ffield::{FqCtx, FqElem};
use crate::zpoly::BigPoly;

pub use points::LegendrePoint;
use ring::Poly;
pub use ring::{CoeffRing, Integers, Lambda};

/// `even(X) + odd(X) * Y` in the coordinate ring, with `Y^2` reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveElem<E> {
    pub even: Vec<E>,
    pub odd: Vec<E>,
}

impl<E> CurveElem<E> {
    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }
}

/// A Legendre curve over a coefficient ring, with memoized division
/// polynomials.
pub struct LegendreCurve<R: CoeffRing> {
    ring: R,
    t: R::E,
    /// `X(X-1)(X-t) = X^3 - (1+t)X^2 + tX`.
    cubic: Vec<R::E>,
    psi: RwLock<Vec<CurveElem<R::E>>>,
}

impl<R: CoeffRing + std::fmt::Debug> std::fmt::Debug for LegendreCurve<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LegendreCurve")
            .field("ring", &self.ring)
            .field("t", &self.t)
            .finish()
    }
}

impl LegendreCurve<Integers> {
    /// `E_t` over the integers; `t` must avoid 0 and 1.
    pub fn over_integers(t: i64) -> Result<Self> {
        if t == 0 || t == 1 {
            return Err(Error::InvalidParams(format!(
                "curve parameter {t} is degenerate"
            )));
        }
        Ok(Self::with_ring(Integers, BigInt::from(t)))
    }

    /// `f_n` in `Z[X]`: `psi_n` for odd `n`, `psi_n / 2Y` for even `n`.
    pub fn f_poly(&self, n: u32) -> Result<BigPoly> {
        Ok(BigPoly::new(self.f_coeffs(n)?))
    }

    /// Primes dividing `2 t (t - 1)`.
    pub fn bad_primes(&self) -> Vec<u64> {
        let t = i128::try_from(&self.t).expect("parameter built from an i64");
        crate::modp::prime_support(&[2, t, t - 1])
    }
}

impl LegendreCurve<Lambda> {
    /// The family with `t` kept as the indeterminate `lambda`.
    pub fn symbolic() -> Self {
        Self::with_ring(Lambda, BigPoly::x())
    }
}

impl LegendreCurve<FqCtx> {
    /// `E_t` over a finite field of odd characteristic.
    pub fn over_fq(ctx: FqCtx, t: FqElem) -> Result<Self> {
        if ctx.p() == 2 {
            return Err(Error::BadReduction {
                p: 2,
                reason: "Legendre curves are singular in characteristic 2".into(),
            });
        }
        if ctx.is_zero(&t) || ctx.is_one(&t) {
            return Err(Error::BadReduction {
                p: ctx.p(),
                reason: format!("t = {t} makes the curve singular"),
            });
        }
        Ok(Self::with_ring(ctx, t))
    }

    /// Reduction of `E_t` for an integer `t` modulo the characteristic of `ctx`.
    pub fn reduce(ctx: FqCtx, t: i64) -> Result<Self> {
        let tt = ctx.from_i64(t);
        Self::over_fq(ctx, tt)
    }

    pub fn ctx(&self) -> &FqCtx {
        &self.ring
    }
}

impl<R: CoeffRing> LegendreCurve<R> {
    pub fn with_ring(ring: R, t: R::E) -> Self {
        let one = ring.one();
        let cubic = vec![ring.zero(), t.clone(), ring.neg(&ring.add(&one, &t)), one];
        LegendreCurve {
            ring,
            t,
            cubic,
            psi: RwLock::new(Vec::new()),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn t(&self) -> &R::E {
        &self.t
    }

    pub fn cubic(&self) -> &[R::E] {
        &self.cubic
    }

    fn poly(&self) -> Poly<'_, R> {
        Poly(&self.ring)
    }

    pub fn elem_add(&self, a: &CurveElem<R::E>, b: &CurveElem<R::E>) -> CurveElem<R::E> {
        let p = self.poly();
        CurveElem {
            even: p.add(&a.even, &b.even),
            odd: p.add(&a.odd, &b.odd),
        }
    }

    pub fn elem_sub(&self, a: &CurveElem<R::E>, b: &CurveElem<R::E>) -> CurveElem<R::E> {
        let p = self.poly();
        CurveElem {
            even: p.sub(&a.even, &b.even),
            odd: p.sub(&a.odd, &b.odd),
        }
    }

    pub fn elem_neg(&self, a: &CurveElem<R::E>) -> CurveElem<R::E> {
        let p = self.poly();
        CurveElem {
            even: p.neg(&a.even),
            odd: p.neg(&a.odd),
        }
    }

    /// Product with `Y^2` replaced by the cubic.
    pub fn elem_mul(&self, a: &CurveElem<R::E>, b: &CurveElem<R::E>) -> CurveElem<R::E> {
        let p = self.poly();
        let ee = p.mul(&a.even, &b.even);
        let oo = p.mul(&a.odd, &b.odd);
        let even = if oo.is_empty() {
            ee
        } else {
            p.add(&ee, &p.mul(&oo, &self.cubic))
        };
        let odd = p.add(&p.mul(&a.even, &b.odd), &p.mul(&a.odd, &b.even));
        CurveElem { even, odd }
    }

    fn elem_sq(&self, a: &CurveElem<R::E>) -> CurveElem<R::E> {
        self.elem_mul(a, a)
    }

    /// Exact division by `2Y`: `(e + oY) / 2Y = o/2 + (e / 2 cubic) Y`.
    pub fn div_2y(&self, a: &CurveElem<R::E>) -> Result<CurveElem<R::E>> {
        let p = self.poly();
        let even = p
            .half(&a.odd)
            .ok_or_else(|| Error::Invariant("odd part not divisible by 2".into()))?;
        let q = p
            .div_exact_monic(&a.even, &self.cubic)
            .ok_or_else(|| Error::Invariant("even part not divisible by the cubic".into()))?;
        let odd = p
            .half(&q)
            .ok_or_else(|| Error::Invariant("even part not divisible by 2".into()))?;
        Ok(CurveElem { even, odd })
    }

    fn constant(&self, c: i64) -> CurveElem<R::E> {
        let mut even = vec![self.ring.from_i64(c)];
        self.ring.trim(&mut even);
        CurveElem {
            even,
            odd: Vec::new(),
        }
    }

    /// `psi_0 .. psi_4`. `psi_3` and `psi_4` come from the general
    /// Weierstrass formulas with `b2 = -4(1+t)`, `b4 = 2t`, `b6 = 0`,
    /// `b8 = -t^2`.
    fn seeds(&self) -> Vec<CurveElem<R::E>> {
        let r = &self.ring;
        let t = &self.t;
        let b2 = r.mul(&r.from_i64(-4), &r.add(&r.one(), t));
        let b4 = r.mul(&r.from_i64(2), t);
        let b8 = r.neg(&r.mul(t, t));
        let c = |k: i64, x: &R::E| r.mul(&r.from_i64(k), x);

        let mut psi3 = vec![b8.clone(), r.zero(), c(3, &b4), b2.clone(), r.from_i64(3)];
        r.trim(&mut psi3);
        let mut inner = vec![
            r.mul(&b4, &b8),
            r.mul(&b2, &b8),
            c(10, &b8),
            r.zero(),
            c(5, &b4),
            b2,
            r.from_i64(2),
        ];
        r.trim(&mut inner);
        let psi4_odd: Vec<R::E> = inner.iter().map(|x| c(2, x)).collect();

        vec![
            self.constant(0),
            self.constant(1),
            CurveElem {
                even: Vec::new(),
                odd: vec![r.from_i64(2)],
            },
            CurveElem {
                even: psi3,
                odd: Vec::new(),
            },
            CurveElem {
                even: Vec::new(),
                odd: psi4_odd,
            },
        ]
    }

    fn next_psi(&self, table: &[CurveElem<R::E>], m: usize) -> Result<CurveElem<R::E>> {
        let k = m / 2;
        let cube = |a: &CurveElem<R::E>| self.elem_mul(&self.elem_sq(a), a);
        if m % 2 == 1 {
            let a = self.elem_mul(&table[k + 2], &cube(&table[k]));
            let b = self.elem_mul(&table[k - 1], &cube(&table[k + 1]));
            Ok(self.elem_sub(&a, &b))
        } else {
            let a = self.elem_mul(&table[k + 2], &self.elem_sq(&table[k - 1]));
            let b = self.elem_mul(&table[k - 2], &self.elem_sq(&table[k + 1]));
            let inner = self.elem_mul(&table[k], &self.elem_sub(&a, &b));
            self.div_2y(&inner)
                .map_err(|e| Error::Invariant(format!("psi_{m}: {e}")))
        }
    }

    /// `psi_n` for `n >= 0`; negative `n` follows `psi_{-n} = -psi_n`.
    pub fn division_psi(&self, n: i64) -> Result<CurveElem<R::E>> {
        if n < 0 {
            return Ok(self.elem_neg(&self.division_psi(-n)?));
        }
        let n = n as usize;
        {
            let table = self.psi.read().expect("psi table lock");
            if let Some(v) = table.get(n) {
                return Ok(v.clone());
            }
        }
        let mut table = self.psi.write().expect("psi table lock");
        if table.is_empty() {
            *table = self.seeds();
        }
        while table.len() <= n {
            let m = table.len();
            let next = self.next_psi(&table, m)?;
            table.push(next);
        }
        Ok(table[n].clone())
    }

    /// Coefficients of `f_n`: the even part of `psi_n` for odd `n`, half the
    /// odd part for even `n`.
    pub fn f_coeffs(&self, n: u32) -> Result<Vec<R::E>> {
        if n == 0 {
            return Err(Error::Domain("f_n is defined for n >= 1".into()));
        }
        let psi = self.division_psi(n as i64)?;
        if n % 2 == 1 {
            if !psi.odd.is_empty() {
                return Err(Error::Invariant(format!("psi_{n} has an odd part")));
            }
            Ok(psi.even)
        } else {
            if !psi.even.is_empty() {
                return Err(Error::Invariant(format!("psi_{n} has an even part")));
            }
            self.poly()
                .half(&psi.odd)
                .ok_or_else(|| Error::Invariant(format!("psi_{n} / 2Y is not integral")))
        }
    }

    /// `(phi_n, omega_n)` with `phi_n = X psi_n^2 - psi_{n+1} psi_{n-1}` and
    /// `4Y omega_n = psi_{n-1}^2 psi_{n+2} - psi_{n-2} psi_{n+1}^2`.
    pub fn phi_omega(&self, n: u32) -> Result<(CurveElem<R::E>, CurveElem<R::E>)> {
        if n == 0 {
            return Err(Error::Domain("phi_n and omega_n need n >= 1".into()));
        }
        let n = n as i64;
        let psi = |k: i64| self.division_psi(k);
        let pn = psi(n)?;
        let x = CurveElem {
            even: self.poly().shift(&[self.ring.one()]),
            odd: Vec::new(),
        };
        let phi = self.elem_sub(
            &self.elem_mul(&x, &self.elem_sq(&pn)),
            &self.elem_mul(&psi(n + 1)?, &psi(n - 1)?),
        );
        let a = self.elem_mul(&self.elem_sq(&psi(n - 1)?), &psi(n + 2)?);
        let b = self.elem_mul(&psi(n - 2)?, &self.elem_sq(&psi(n + 1)?));
        let four_y_omega = self.elem_sub(&a, &b);
        let half = self.div_2y(&four_y_omega)?;
        let p = self.poly();
        let omega = match (p.half(&half.even), p.half(&half.odd)) {
            (Some(even), Some(odd)) => CurveElem { even, odd },
            _ => return Err(Error::Invariant(format!("4Y does not divide 4Y omega_{n}"))),
        };
        Ok((phi, omega))
    }

    /// Value of `a` at the point `(x, y)`.
    pub fn eval_elem(&self, a: &CurveElem<R::E>, x: &R::E, y: &R::E) -> R::E {
        let p = self.poly();
        self.ring
            .add(&p.eval(&a.even, x), &self.ring.mul(&p.eval(&a.odd, x), y))
    }

    pub fn eval_poly(&self, a: &[R::E], x: &R::E) -> R::E {
        self.poly().eval(a, x)
    }
}
