//! Word-sized modular arithmetic: primality, factoring, Montgomery
//! multiplication and the prime stream used by multi-modular algorithms.

use std::sync::OnceLock;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; `n` must be composite and odd.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
///
/// Trial division up to 2^20, then Pollard rho on whatever cofactor remains.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut d = 2u64;
    while d < (1 << 20) && d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut large = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                large.push(m);
            } else {
                let f = pollard_rho(m);
                stack.push(f);
                stack.push(m / f);
            }
        }
        large.sort_unstable();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

/// Sorted distinct primes dividing any of `values`; zeros are ignored.
///
/// # Panics
/// If some `|v|` exceeds `u64::MAX`.
pub fn prime_support(values: &[i128]) -> Vec<u64> {
    let mut out: Vec<u64> = values
        .iter()
        .filter(|&&v| v != 0)
        .flat_map(|&v| {
            let m = u64::try_from(v.unsigned_abs()).expect("value fits in 64 bits");
            factor(m).into_iter().map(|(p, _)| p)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Legendre symbol `(a / p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    let mut a = a % p;
    let mut n = p;
    let mut t = 1i32;
    if a == 0 {
        return 0;
    }
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Montgomery arithmetic modulo an odd prime below 2^62.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    pub p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < (1 << 62));
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = mul_mod(r, r, p);
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc((a % self.p) as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero Montgomery-form element.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

const STREAM_TOP: u64 = (1 << 62) - 1;
const STREAM_FLOOR: u64 = 1 << 61;
const STREAM_CACHE: usize = 4096;

fn prime_cache() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut v = Vec::with_capacity(STREAM_CACHE);
        let mut c = STREAM_TOP;
        while v.len() < STREAM_CACHE {
            if is_prime(c) {
                v.push(c);
            }
            c -= 2;
        }
        v
    })
}

/// Descending primes in `(2^61, 2^62)`. Every prime in the stream is less
/// than twice any other, which Garner reconstruction relies on.
pub fn prime_stream() -> impl Iterator<Item = u64> {
    let cache = prime_cache();
    let last = *cache.last().expect("non-empty cache");
    cache.iter().copied().chain(
        (STREAM_FLOOR..last)
            .rev()
            .filter(|c| c % 2 == 1)
            .filter(|&c| is_prime(c)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in [
            1u64,
            2,
            12,
            48,
            97 * 97,
            600_851_475_143,
            (1 << 40) - 1,
            999_999_000_001 * 3,
        ] {
            let f = factor(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
        assert_eq!(factor(6), vec![(2, 1), (3, 1)]);
        assert_eq!(factor(48), vec![(2, 4), (3, 1)]);
        assert_eq!(prime_support(&[4, -6, 0, 35]), vec![2, 3, 5, 7]);
    }

    #[test]
    fn legendre_symbol_matches_euler() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            for a in 0..p {
                let e = pow_mod(a, (p - 1) / 2, p);
                let expect = if a == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a, p), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn montgomery_round_trip() {
        let p = prime_stream().next().unwrap();
        let m = Montgomery::new(p);
        let (a, b) = (123_456_789_012_345u64, p - 17);
        let prod = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
        assert_eq!(prod, mul_mod(a, b, p));
        let ia = m.inv(m.to_mont(a));
        assert_eq!(m.from_mont(m.mul(ia, m.to_mont(a))), 1);
    }

    #[test]
    fn stream_is_descending_primes_in_range() {
        let v: Vec<u64> = prime_stream().take(5).collect();
        assert!(v.windows(2).all(|w| w[0] > w[1]));
        assert!(v.iter().all(|&p| p > STREAM_FLOOR && is_prime(p)));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }
}
