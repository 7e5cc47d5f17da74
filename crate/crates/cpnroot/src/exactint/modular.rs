//! Word-size modular arithmetic used by the multimodular kernel solver.
//!
//! Moduli are primes just below 2^62, so sums of two residues never overflow
//! a `u64` and Shoup's precomputed-quotient trick gives a fast
//! multiply-by-constant.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};

/// `a * b mod m` through a 128-bit product.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers (the first twelve prime
/// bases are known to suffice below 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

/// The `i`-th prime below 2^62, counting downwards. The list is built once.
pub(crate) fn big_prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let primes = PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut c = (1u64 << 62) - 1;
        while out.len() < 512 {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    });
    assert!(i < primes.len(), "ran out of 62-bit primes; the input is absurdly large");
    primes[i]
}

/// A constant multiplier with its Shoup companion `floor(w * 2^64 / p)`.
#[derive(Clone, Copy)]
pub(crate) struct Shoup {
    w: u64,
    w_pre: u64,
}

impl Shoup {
    #[inline]
    pub(crate) fn new(w: u64, p: u64) -> Self {
        let w_pre = (((w as u128) << 64) / p as u128) as u64;
        Shoup { w, w_pre }
    }

    /// `x * w mod p` for `x < p`.
    #[inline]
    pub(crate) fn mul(self, x: u64, p: u64) -> u64 {
        let q = ((x as u128 * self.w_pre as u128) >> 64) as u64;
        let r = x.wrapping_mul(self.w).wrapping_sub(q.wrapping_mul(p));
        if r >= p {
            r - p
        } else {
            r
        }
    }
}

/// A big integer split into 64-bit limbs once, so it can be reduced modulo
/// many primes cheaply.
#[derive(Clone, Debug)]
pub(crate) struct Limbs {
    negative: bool,
    digits: Vec<u64>,
}

impl Limbs {
    pub(crate) fn new(x: &BigInt) -> Self {
        let (sign, digits) = x.to_u64_digits();
        Limbs {
            negative: sign == Sign::Minus,
            digits,
        }
    }

    #[inline]
    pub(crate) fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub(crate) fn reduce(&self, p: u64, two64: Shoup) -> u64 {
        let mut acc = 0u64;
        for &d in self.digits.iter().rev() {
            acc = two64.mul(acc, p) + d % p;
            if acc >= p {
                acc -= p;
            }
        }
        if self.negative && acc != 0 {
            p - acc
        } else {
            acc
        }
    }
}

/// `2^64 mod p` as a Shoup constant.
pub(crate) fn two64(p: u64) -> Shoup {
    let r = ((1u128 << 64) % p as u128) as u64;
    Shoup::new(r, p)
}
