//! Height and resultant inequalities as exact integer comparisons, plus
//! checked variants of the ring operations that assert them on every call.
//!
//! With `H = max |coeff|` and `D` the total degree of the factors, the
//! univariate product inequality reads `prod H_i <= 4^D H(prod)` and
//! `H(prod) <= 2^D prod H_i`. For a sum of `s` terms `H(sum) <= s max H_i`.
//! For resultants `Res^2 <= (sum a_i^2)^deg b * (sum b_j^2)^deg a`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{resultant::resultant, BigPoly};

/// Checks both sides of the product height inequality.
pub fn check_product(factors: &[BigPoly], product: &BigPoly) -> Result<()> {
    if factors.iter().any(BigPoly::is_zero) {
        return if product.is_zero() {
            Ok(())
        } else {
            Err(Error::BoundViolation(
                "product of a zero factor is nonzero".into(),
            ))
        };
    }
    let d: usize = factors.iter().map(BigPoly::degree_or_zero).sum();
    let hs: BigInt = factors.iter().map(BigPoly::max_abs_coeff).product();
    let hp = product.max_abs_coeff();
    let upper = &hs << d;
    let lower_lhs = &hs;
    let lower_rhs = &hp << (2 * d);
    if hp > upper {
        return Err(Error::BoundViolation(format!(
            "product height exceeds the upper bound (D = {d})"
        )));
    }
    if *lower_lhs > lower_rhs {
        return Err(Error::BoundViolation(format!(
            "product height below the lower bound (D = {d})"
        )));
    }
    Ok(())
}

/// Checks `H(sum) <= s * max H(term)`.
pub fn check_sum(terms: &[BigPoly], sum: &BigPoly) -> Result<()> {
    if sum.is_zero() {
        return Ok(());
    }
    let m = terms
        .iter()
        .map(BigPoly::max_abs_coeff)
        .max()
        .unwrap_or_default();
    if sum.max_abs_coeff() > m * BigInt::from(terms.len()) {
        return Err(Error::BoundViolation(format!(
            "sum of {} terms exceeds the sum height bound",
            terms.len()
        )));
    }
    Ok(())
}

/// Checks the Hadamard bound for a computed resultant.
pub fn check_resultant(a: &BigPoly, b: &BigPoly, res: &BigInt) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return if res.is_zero() {
            Ok(())
        } else {
            Err(Error::BoundViolation(
                "resultant with zero argument is nonzero".into(),
            ))
        };
    }
    let rhs = num_traits::pow(a.norm2_sq(), b.degree_or_zero())
        * num_traits::pow(b.norm2_sq(), a.degree_or_zero());
    if res * res > rhs {
        return Err(Error::BoundViolation(
            "resultant exceeds the Hadamard bound".into(),
        ));
    }
    Ok(())
}

/// Upper bound on the bit length of `|Res(a, b)|` from the Hadamard bound.
pub fn hadamard_bits(a: &BigPoly, b: &BigPoly) -> u64 {
    let da = a.degree_or_zero() as u64;
    let db = b.degree_or_zero() as u64;
    // log2(sum a_i^2) < bits(sum a_i^2)
    (db * a.norm2_sq().bits() + da * b.norm2_sq().bits()).div_ceil(2) + 1
}

/// Product that asserts the product height inequality.
pub fn checked_mul(a: &BigPoly, b: &BigPoly) -> Result<BigPoly> {
    let p = a * b;
    check_product(&[a.clone(), b.clone()], &p)?;
    Ok(p)
}

/// Product of many factors with one assertion over the whole sequence.
pub fn checked_product(factors: &[BigPoly]) -> Result<BigPoly> {
    let p = super::product(factors);
    check_product(factors, &p)?;
    Ok(p)
}

pub fn checked_add(a: &BigPoly, b: &BigPoly) -> Result<BigPoly> {
    let s = a + b;
    check_sum(&[a.clone(), b.clone()], &s)?;
    Ok(s)
}

pub fn checked_sum(terms: &[BigPoly]) -> Result<BigPoly> {
    let s = terms.iter().fold(BigPoly::zero(), |acc, t| &acc + t);
    check_sum(terms, &s)?;
    Ok(s)
}

pub fn checked_resultant(a: &BigPoly, b: &BigPoly) -> Result<BigInt> {
    let r = resultant(a, b);
    check_resultant(a, b, &r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> BigPoly {
        BigPoly::from_i64s(c)
    }

    #[test]
    fn product_bounds_hold_on_examples() {
        let f3 = p(&[-4, 0, 12, -12, 3]);
        let sq = checked_mul(&f3, &f3).unwrap();
        assert_eq!(sq.degree(), Some(8));
        assert!(check_product(&vec![p(&[1, 1]); 6], &p(&[1, 6, 15, 20, 15, 6, 1])).is_ok());
    }

    #[test]
    fn violations_are_reported() {
        // A fabricated "product" far above the upper bound.
        let bogus = p(&[1000, 0, 1]);
        assert!(matches!(
            check_product(&[p(&[1, 1]), p(&[1, 1])], &bogus),
            Err(Error::BoundViolation(_))
        ));
        assert!(check_sum(&[p(&[1]), p(&[1])], &p(&[3])).is_err());
        assert!(check_resultant(&p(&[-1, 0, 1]), &p(&[2, 1]), &BigInt::from(100)).is_err());
        assert!(check_resultant(&p(&[-1, 0, 1]), &p(&[2, 1]), &BigInt::from(3)).is_ok());
    }

    #[test]
    fn hadamard_bits_cover_value() {
        let a = p(&[7, -3, 5, 11]);
        let b = p(&[-2, 9, 4]);
        let r = resultant(&a, &b);
        assert!(r.bits() <= hadamard_bits(&a, &b));
    }
}
