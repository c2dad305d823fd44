//! Kronecker substitution: pack both operands into single big integers,
//! multiply once, and unpack the product digit by digit.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

const MIN_LEN: usize = 24;

pub(super) fn worthwhile(a: &[BigInt], b: &[BigInt]) -> bool {
    a.len().min(b.len()) >= MIN_LEN
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Packs signed coefficients at `words` 64-bit words per slot.
fn pack(v: &[BigInt], words: usize) -> BigInt {
    let mut pos = vec![0u64; v.len() * words];
    let mut neg = vec![0u64; v.len() * words];
    for (i, c) in v.iter().enumerate() {
        let dst = match c.sign() {
            Sign::Minus => &mut neg,
            Sign::Plus => &mut pos,
            Sign::NoSign => continue,
        };
        for (j, d) in c.iter_u64_digits().enumerate() {
            dst[i * words + j] = d;
        }
    }
    BigInt::from(biguint_from_words(&pos)) - BigInt::from(biguint_from_words(&neg))
}

fn biguint_from_words(w: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(w.len() * 8);
    for d in w {
        bytes.extend_from_slice(&d.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

pub(super) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len() + b.len() - 1;
    let guard = usize::BITS - a.len().min(b.len()).leading_zeros();
    let need = max_bits(a) + max_bits(b) + guard as u64 + 2;
    let words = need.div_ceil(64) as usize;
    let slot_bits = 64 * words;

    let prod = pack(a, words) * pack(b, words);

    // Adding half a slot to every digit makes all digits nonnegative, so the
    // plain base-2^slot_bits expansion can be read off word by word.
    let mut half = vec![0u64; len * words];
    for i in 0..len {
        half[i * words + words - 1] = 1 << 63;
    }
    let half = BigInt::from(biguint_from_words(&half));
    let shifted = (prod + &half)
        .to_biguint()
        .expect("offset product is nonnegative");
    let digits = shifted.to_u64_digits();
    let half_slot = BigInt::from(1u8) << (slot_bits - 1);

    (0..len)
        .map(|i| {
            let lo = (i * words).min(digits.len());
            let hi = ((i + 1) * words).min(digits.len());
            let d = BigInt::from(biguint_from_words(&digits[lo..hi]));
            let c = d - &half_slot;
            if c.is_zero() {
                BigInt::zero()
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::schoolbook_mul;

    #[test]
    fn matches_schoolbook_on_mixed_signs() {
        let a: Vec<BigInt> = (0..40i64)
            .map(|i| BigInt::from((i * 7919 % 201) - 100))
            .collect();
        let mut b: Vec<BigInt> = (0..30i64).map(|i| BigInt::from(-(i * i) + 3)).collect();
        b[29] = BigInt::from(1u64 << 62) * BigInt::from(-5);
        assert_eq!(mul(&a, &b), schoolbook_mul(&a, &b));
    }
}
