//! Gcd-free (coprime) basis of a family of integer polynomials, refined by
//! pairwise gcds without any irreducible factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::modp::factor;

use super::{gcd, BigPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeBasis {
    /// Pairwise coprime, primitive, positive leading coefficient, sorted by
    /// degree then coefficients.
    pub basis: Vec<BigPoly>,
    /// Pairwise coprime integers greater than one, ascending. Each is prime
    /// unless it exceeds 64 bits and resisted factoring.
    pub constants: Vec<BigInt>,
    /// One row per input; basis columns first, then constant columns.
    pub exponents: Vec<Vec<u32>>,
    /// `true` where the input has a negative leading coefficient.
    pub negative: Vec<bool>,
}

impl CoprimeBasis {
    pub fn width(&self) -> usize {
        self.basis.len() + self.constants.len()
    }

    /// Rebuilds input `i` from its exponent row.
    pub fn reconstruct(&self, i: usize) -> BigPoly {
        let row = &self.exponents[i];
        let mut acc = BigPoly::one();
        for (b, &e) in self.basis.iter().zip(row) {
            acc = &acc * &b.pow(e);
        }
        let mut c = BigInt::one();
        for (q, &e) in self.constants.iter().zip(&row[self.basis.len()..]) {
            c *= num_traits::pow(q.clone(), e as usize);
        }
        if self.negative[i] {
            c = -c;
        }
        acc.scale(&c)
    }
}

/// Refines `items` in place until they are pairwise coprime under `split`,
/// which returns the nontrivial common part of two items or `None`.
fn refine<T: Clone + PartialEq>(
    items: &mut Vec<T>,
    split: impl Fn(&T, &T) -> Option<(T, T, T)>,
    trivial: impl Fn(&T) -> bool,
) {
    'outer: loop {
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                if let Some((g, u, v)) = split(&items[i], &items[j]) {
                    items.remove(j);
                    items.remove(i);
                    for x in [g, u, v] {
                        if !trivial(&x) && !items.contains(&x) {
                            items.push(x);
                        }
                    }
                    continue 'outer;
                }
            }
        }
        return;
    }
}

fn multiplicity_poly(f: &mut BigPoly, b: &BigPoly) -> u32 {
    let mut e = 0;
    while let Ok(q) = f.exact_div(b) {
        *f = q;
        e += 1;
    }
    e
}

fn multiplicity_int(c: &mut BigInt, q: &BigInt) -> u32 {
    let mut e = 0;
    loop {
        let (d, r) = c.div_rem(q);
        if !r.is_zero() {
            return e;
        }
        *c = d;
        e += 1;
    }
}

fn split_integer(n: &BigInt) -> Vec<BigInt> {
    match n.to_u64() {
        Some(m) => factor(m)
            .into_iter()
            .map(|(p, _)| BigInt::from(p))
            .collect(),
        None => vec![n.clone()],
    }
}

/// Coprime basis of nonzero inputs, including content and sign.
///
/// # Panics
/// If any input is zero.
pub fn coprime_basis(polys: &[BigPoly]) -> CoprimeBasis {
    assert!(
        polys.iter().all(|f| !f.is_zero()),
        "coprime_basis needs nonzero inputs"
    );

    let mut basis: Vec<BigPoly> = Vec::new();
    for f in polys {
        let pp = f.primitive_part();
        if !pp.is_constant() && !basis.contains(&pp) {
            basis.push(pp);
        }
    }
    refine(
        &mut basis,
        |a, b| {
            let g = gcd(a, b);
            if g.is_constant() {
                return None;
            }
            let u = a.exact_div(&g).expect("gcd divides");
            let v = b.exact_div(&g).expect("gcd divides");
            Some((g, u, v))
        },
        BigPoly::is_constant,
    );
    basis.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });

    let mut ints: Vec<BigInt> = Vec::new();
    for f in polys {
        let c = f.content();
        if c > BigInt::one() && !ints.contains(&c) {
            ints.push(c);
        }
    }
    refine(
        &mut ints,
        |a, b| {
            let g = a.gcd(b);
            if g.is_one() {
                return None;
            }
            Some((a / &g, b / &g, g))
        },
        |x| x.is_one(),
    );
    let mut constants: Vec<BigInt> = Vec::new();
    for c in &ints {
        for q in split_integer(c) {
            if !constants.contains(&q) {
                constants.push(q);
            }
        }
    }
    constants.sort();

    let mut exponents = Vec::with_capacity(polys.len());
    let mut negative = Vec::with_capacity(polys.len());
    for f in polys {
        let mut rest = f.primitive_part();
        let mut row: Vec<u32> = basis
            .iter()
            .map(|b| multiplicity_poly(&mut rest, b))
            .collect();
        debug_assert!(rest.is_one());
        let mut c = f.content();
        row.extend(constants.iter().map(|q| multiplicity_int(&mut c, q)));
        debug_assert!(c.is_one());
        exponents.push(row);
        negative.push(f.leading_coeff().is_some_and(Signed::is_negative));
    }

    CoprimeBasis {
        basis,
        constants,
        exponents,
        negative,
    }
}
