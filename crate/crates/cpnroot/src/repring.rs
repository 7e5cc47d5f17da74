//! The complex representation ring of a cyclic `p`-group.
//!
//! `RU(C_{p^n})` is `ℤ[L]/(L^{p^n} - 1)`, where `L` is a chosen faithful
//! character. An element is the vector of its coefficients on
//! `1, L, …, L^{p^n-1}`. Characters are evaluated exactly in cyclotomic rings
//! `ℤ[x]/Φ_{p^j}(x)`, which is how fixed-point data of K-theory classes are
//! read off.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactint::pow_u;
use crate::json::{from_decimal, to_decimal, DecimalInt};

/// Largest group order the ring arithmetic will accept.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepRingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("group order {p}^{n} exceeds the supported maximum {max}")]
    OrderTooLarge { p: u64, n: u32, max: u64 },
    #[error("elements of RU(C_{left}) and RU(C_{right}) cannot be combined")]
    GroupMismatch { left: u64, right: u64 },
    #[error("level {level} is outside 0..={max}")]
    LevelOutOfRange { level: u32, max: u32 },
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("block length {length} must equal p^(i-1)(p-1) = {expected}")]
    BadBlockLength { length: usize, expected: usize },
    #[error("block start {start} is not a multiple of the block length {length}")]
    Misaligned { start: usize, length: usize },
    #[error("{value} is not divisible by {modulus}; the Adams parameter {ell} is unsuitable")]
    DivisibilityViolation { value: BigInt, modulus: BigInt, ell: i64 },
    #[error("{ell} is not prime to {p}")]
    NotCoprime { ell: i64, p: u64 },
}

/// Trial division is plenty for the primes that index groups.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The cyclic group `C_{p^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    p: u64,
    n: u32,
    order: u64,
}

impl GroupSpec {
    pub fn new(p: u64, n: u32) -> Result<Self, RepRingError> {
        if !is_prime(p) {
            return Err(RepRingError::NotPrime(p));
        }
        let order = p
            .checked_pow(n)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(RepRingError::OrderTooLarge { p, n, max: MAX_ORDER })?;
        Ok(GroupSpec { p, n, order })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// The subgroup `C_{p^i}`, as a group in its own right.
    pub fn subgroup(&self, i: u32) -> Result<GroupSpec, RepRingError> {
        if i > self.n {
            return Err(RepRingError::LevelOutOfRange { level: i, max: self.n });
        }
        GroupSpec::new(self.p, i)
    }

    /// `φ(p^n)`, the number of faithful characters.
    pub fn totient(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            (self.order / self.p * (self.p - 1)) as usize
        }
    }

    fn reduce_exponent(&self, e: i64) -> usize {
        e.rem_euclid(self.order as i64) as usize
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{}", self.p, self.n)
    }
}

/// An element of `RU(C_{p^n})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RUElement {
    group: GroupSpec,
    coeffs: Vec<BigInt>,
}

impl RUElement {
    pub fn zero(group: GroupSpec) -> Self {
        RUElement {
            group,
            coeffs: vec![BigInt::zero(); group.order()],
        }
    }

    pub fn one(group: GroupSpec) -> Self {
        RUElement::monomial(group, 0)
    }

    /// The character `L^a`, exponent read modulo the group order.
    pub fn monomial(group: GroupSpec, a: i64) -> Self {
        let mut x = RUElement::zero(group);
        x.coeffs[group.reduce_exponent(a)] = BigInt::one();
        x
    }

    pub fn from_coeffs(group: GroupSpec, coeffs: Vec<BigInt>) -> Result<Self, RepRingError> {
        if coeffs.len() != group.order() {
            return Err(RepRingError::LengthMismatch {
                expected: group.order(),
                found: coeffs.len(),
            });
        }
        Ok(RUElement { group, coeffs })
    }

    pub fn from_i64(group: GroupSpec, coeffs: &[i64]) -> Result<Self, RepRingError> {
        RUElement::from_coeffs(group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The regular representation `Σ_a L^a`.
    pub fn regular(group: GroupSpec) -> Self {
        RUElement {
            group,
            coeffs: vec![BigInt::one(); group.order()],
        }
    }

    /// The permutation character of `C_{p^n}/C_{p^i}`, i.e. `Σ_{b<p^{n-i}} L^{b p^i}`.
    pub fn permutation_character(group: GroupSpec, i: u32) -> Result<Self, RepRingError> {
        if i > group.n() {
            return Err(RepRingError::LevelOutOfRange { level: i, max: group.n() });
        }
        let step = group.p().pow(i) as usize;
        let mut x = RUElement::zero(group);
        for a in (0..group.order()).step_by(step) {
            x.coeffs[a] = BigInt::one();
        }
        Ok(x)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, a: i64) -> &BigInt {
        &self.coeffs[self.group.reduce_exponent(a)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The dimension, i.e. the character value at the identity.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RUElement {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by `L^a`: a cyclic shift of the coefficients.
    pub fn shift(&self, a: i64) -> Self {
        let n = self.group.order();
        let s = self.group.reduce_exponent(a);
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + s) % n] = c.clone();
        }
        RUElement {
            group: self.group,
            coeffs,
        }
    }

    /// `self · (1 - L^d)`, computed in linear time.
    pub fn mul_one_minus(&self, d: i64) -> Self {
        let n = self.group.order();
        let s = self.group.reduce_exponent(d);
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &self.coeffs[(i + n - s) % n]).collect();
        RUElement {
            group: self.group,
            coeffs,
        }
    }

    /// `self · (1 - L^{dℓ})/(1 - L^d)`, the Bott multiplier of `ψ^ℓ` on the
    /// character `L^d`. For `ℓ ≥ 1` this is `1 + L^d + … + L^{d(ℓ-1)}`; for
    /// negative `ℓ` it is `-L^{dℓ}(1 + … + L^{d(-ℓ-1)})`.
    pub fn mul_bott_multiplier(&self, d: i64, ell: i64) -> Self {
        let n = self.group.order();
        let step = self.group.reduce_exponent(d);
        let terms = ell.unsigned_abs() as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        // The geometric sum depends only on ℓ mod the order of L^d, plus a
        // multiple of the full orbit sum; fold whole periods into one pass.
        let period = if step == 0 { 1 } else { n / n.gcd(&step) };
        let (full, rest) = (terms / period, terms % period);
        if full > 0 {
            let k = BigInt::from(full);
            for t in 0..period {
                let off = (t * step) % n;
                for (i, c) in self.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        coeffs[(i + off) % n] += c * &k;
                    }
                }
            }
        }
        for t in 0..rest {
            let off = (t * step) % n;
            for (i, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    coeffs[(i + off) % n] += c;
                }
            }
        }
        let out = RUElement {
            group: self.group,
            coeffs,
        };
        if ell >= 0 {
            out
        } else {
            -out.shift(d * ell)
        }
    }

    /// The Adams operation `ψ^ℓ`, moving the coefficient of `L^a` to `L^{ℓa}`.
    pub fn adams(&self, ell: i64) -> Self {
        let mut out = RUElement::zero(self.group);
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let target = self.group.reduce_exponent((a as i64).wrapping_mul(ell.rem_euclid(self.group.order() as i64)));
                out.coeffs[target] += c;
            }
        }
        out
    }

    /// The value at a generator of `C_{p^j}`, i.e. the image under `L ↦ ζ_{p^j}`.
    pub fn char_value(&self, j: u32) -> Result<CyclotomicValue, RepRingError> {
        if j > self.group.n() {
            return Err(RepRingError::LevelOutOfRange { level: j, max: self.group.n() });
        }
        let p = self.group.p();
        let m = p.pow(j) as usize;
        let mut folded = vec![BigInt::zero(); m];
        for (a, c) in self.coeffs.iter().enumerate() {
            folded[a % m] += c;
        }
        Ok(CyclotomicValue::reduce(p, j, folded))
    }

    /// Rational character values at levels `1..=n`, or `None` if one is irrational.
    pub fn rational_marks(&self) -> Option<Vec<BigInt>> {
        (1..=self.group.n())
            .map(|j| self.char_value(j).expect("level in range").as_integer())
            .collect()
    }

    fn check_same(&self, other: &RUElement) -> Result<(), RepRingError> {
        if self.group != other.group {
            return Err(RepRingError::GroupMismatch {
                left: self.group.order,
                right: other.group.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RUElement) -> Result<RUElement, RepRingError> {
        self.check_same(other)?;
        Ok(RUElement {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &RUElement) -> Result<RUElement, RepRingError> {
        self.check_same(other)?;
        Ok(RUElement {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// True when the difference of the two elements is a multiple of the
    /// regular representation, i.e. when all its coefficients agree.
    pub fn congruent_mod_regular(&self, other: &RUElement) -> Result<bool, RepRingError> {
        let d = self.checked_sub(other)?;
        Ok(d.coeffs.windows(2).all(|w| w[0] == w[1]))
    }
}

/// Product in `ℤ[L]/(L^{p^n} - 1)`.
pub fn ru_mul(x: &RUElement, y: &RUElement) -> Result<RUElement, RepRingError> {
    x.check_same(y)?;
    let n = x.group.order();
    let mut coeffs = vec![BigInt::zero(); n];
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            if !b.is_zero() {
                coeffs[(i + j) % n] += a * b;
            }
        }
    }
    Ok(RUElement { group: x.group, coeffs })
}

/// `ψ^ℓ(x)`.
pub fn adams(x: &RUElement, ell: i64) -> RUElement {
    x.adams(ell)
}

/// `x(ζ_{p^j})` reduced modulo `Φ_{p^j}`.
pub fn char_value(x: &RUElement, j: u32) -> Result<CyclotomicValue, RepRingError> {
    x.char_value(j)
}

/// The K-theory Euler class `Π (1 - L^d)` of a sum of characters.
pub fn euler_class(group: GroupSpec, exponents: &[i64]) -> RUElement {
    exponents
        .iter()
        .fold(RUElement::one(group), |acc, &d| acc.mul_one_minus(d))
}

/// Exponents `1 ≤ k ≤ p^i` with `p ∤ k`: the faithful characters of `C_{p^i}`.
pub fn faithful_exponents(p: u64, i: u32) -> Vec<i64> {
    if i == 0 {
        return vec![1];
    }
    let m = p.pow(i) as i64;
    (1..=m).filter(|k| k % p as i64 != 0).collect()
}

/// `W_{p^i}`, the sum of all faithful characters, in `RU(C_{p^i})`.
pub fn w_character(i: u32, ambient: GroupSpec) -> Result<RUElement, RepRingError> {
    let g = ambient.subgroup(i)?;
    let mut x = RUElement::zero(g);
    for k in faithful_exponents(g.p(), i) {
        x.coeffs[g.reduce_exponent(k)] += 1;
    }
    Ok(x)
}

impl Add for &RUElement {
    type Output = RUElement;
    /// # Panics
    /// Panics if the operands live in different groups.
    fn add(self, rhs: &RUElement) -> RUElement {
        self.checked_add(rhs).expect("RU elements of the same group")
    }
}

impl Sub for &RUElement {
    type Output = RUElement;
    /// # Panics
    /// Panics if the operands live in different groups.
    fn sub(self, rhs: &RUElement) -> RUElement {
        self.checked_sub(rhs).expect("RU elements of the same group")
    }
}

impl Mul for &RUElement {
    type Output = RUElement;
    /// # Panics
    /// Panics if the operands live in different groups.
    fn mul(self, rhs: &RUElement) -> RUElement {
        ru_mul(self, rhs).expect("RU elements of the same group")
    }
}

impl Neg for RUElement {
    type Output = RUElement;
    fn neg(mut self) -> RUElement {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Debug for RUElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RU({})[{}]", self.group, self)
    }
}

impl fmt::Display for RUElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (a, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "L^{a}")?,
                (_, false) => write!(f, "{mag}L^{a}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RUElementJson {
    p: u64,
    n: u32,
    coeffs: Vec<DecimalInt>,
}

impl Serialize for RUElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RUElementJson {
            p: self.group.p(),
            n: self.group.n(),
            coeffs: to_decimal(&self.coeffs),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RUElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RUElementJson::deserialize(d)?;
        let g = GroupSpec::new(raw.p, raw.n).map_err(D::Error::custom)?;
        RUElement::from_coeffs(g, from_decimal(raw.coeffs)).map_err(D::Error::custom)
    }
}

/// An element of `ℤ[x]/Φ_{p^j}(x)`, the value of a character at a generator
/// of `C_{p^j}`. Level 0 holds a plain integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicValue {
    p: u64,
    level: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicValue {
    /// Reduces a polynomial in `x` (coefficient `i` on `x^i`, any length) modulo
    /// `Φ_{p^j}(x) = Σ_{t<p} x^{t p^{j-1}}`.
    pub fn reduce(p: u64, level: u32, mut poly: Vec<BigInt>) -> Self {
        if level == 0 {
            let total = poly.into_iter().sum();
            return CyclotomicValue {
                p,
                level,
                coeffs: vec![total],
            };
        }
        let h = p.pow(level - 1) as usize;
        let deg = h * (p as usize - 1);
        for e in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[e]);
            if c.is_zero() {
                continue;
            }
            for s in 1..p as usize {
                poly[e - s * h] -= &c;
            }
        }
        poly.resize(deg, BigInt::zero());
        CyclotomicValue { p, level, coeffs: poly }
    }

    pub fn from_integer(p: u64, level: u32, v: BigInt) -> Self {
        let mut poly = vec![v];
        if level > 0 {
            poly.resize(p.pow(level - 1) as usize * (p as usize - 1), BigInt::zero());
        }
        CyclotomicValue { p, level, coeffs: poly }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The value as an integer, when it is rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_rational()
            .then(|| self.coeffs.first().cloned().unwrap_or_default())
    }

    pub fn add(&self, other: &CyclotomicValue) -> CyclotomicValue {
        assert_eq!((self.p, self.level), (other.p, other.level), "cyclotomic rings differ");
        CyclotomicValue {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &CyclotomicValue) -> CyclotomicValue {
        assert_eq!((self.p, self.level), (other.p, other.level), "cyclotomic rings differ");
        let mut poly = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                poly[i + j] += a * b;
            }
        }
        CyclotomicValue::reduce(self.p, self.level, poly)
    }

    pub fn pow(&self, e: u32) -> CyclotomicValue {
        let mut acc = CyclotomicValue::from_integer(self.p, self.level, BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The sequence `d = (a_1, -a_1, a_2, -a_2, …)` of faithful-character
/// exponents, where `a_1 < a_2 < …` are the positive integers prime to `p`.
///
/// Entries are produced on demand; indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DSequence {
    p: u64,
}

impl DSequence {
    pub fn new(p: u64) -> Self {
        DSequence { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The `t`-th positive integer prime to `p`, for `t ≥ 1`.
    pub fn coprime(&self, t: usize) -> i64 {
        assert!(t >= 1, "coprime integers are indexed from 1");
        let q = self.p as usize - 1;
        (t + (t - 1) / q) as i64
    }

    /// `d_i` for `i ≥ 1`.
    pub fn entry(&self, i: usize) -> i64 {
        assert!(i >= 1, "the d-sequence is indexed from 1");
        let a = self.coprime(i.div_ceil(2));
        if i % 2 == 1 {
            a
        } else {
            -a
        }
    }

    /// `d_{from+1}, …, d_{to}`.
    pub fn block(&self, from: usize, to: usize) -> Vec<i64> {
        (from + 1..=to).map(|i| self.entry(i)).collect()
    }
}

/// Checks that `L^{d_{a+1}} + … + L^{d_{a+length}}`, with exponents read
/// modulo `p^i`, is the sum `W_{p^i}` of all faithful characters of `C_{p^i}`.
///
/// The block must have length `p^{i-1}(p-1)` and start at a multiple of that
/// length. Unaligned blocks of the right length can fail the property (for
/// `p = 2`, `i = 2`, the block `(d_2, d_3) = (-1, 3)` reduces to `2L^3`), so
/// they are rejected rather than tested.
pub fn dseq_block_restriction_check(p: u64, n: u32, i: u32, a: usize, length: usize) -> Result<bool, RepRingError> {
    if i == 0 || i > n {
        return Err(RepRingError::LevelOutOfRange { level: i, max: n });
    }
    let g = GroupSpec::new(p, i)?;
    let expected = g.totient();
    if length != expected {
        return Err(RepRingError::BadBlockLength { length, expected });
    }
    if !a.is_multiple_of(length) {
        return Err(RepRingError::Misaligned { start: a, length });
    }
    let seq = DSequence::new(p);
    let mut sum = RUElement::zero(g);
    for d in seq.block(a, a + length) {
        sum.coeffs[g.reduce_exponent(d)] += 1;
    }
    Ok(sum == w_character(i, g)?)
}

/// `Φ^{C_{p^j}}(β_{W_{p^n}}^c) = p^{c p^{n-j}}`, computed by evaluating the
/// Euler class of `W_{p^n}` at a generator of `C_{p^j}`.
pub fn bott_fixed_value(p: u64, n: u32, c: u32, j: u32) -> Result<BigInt, RepRingError> {
    if j == 0 || j > n {
        return Err(RepRingError::LevelOutOfRange { level: j, max: n });
    }
    let g = GroupSpec::new(p, n)?;
    let e = euler_class(g, &faithful_exponents(p, n));
    let value = e.char_value(j)?.pow(c);
    let value = value
        .as_integer()
        .expect("the Euler class of a Galois-stable sum has rational character values");
    let closed = pow_u(p, c as u64 * p.pow(n - j));
    assert_eq!(value, closed, "cyclotomic evaluation disagrees with p^(c p^(n-j))");
    Ok(value)
}

/// Checks `ψ^ℓ(β_{W}^c) = (1 + ((ℓ^{cφ(p^n)} - 1)/p^n)·ρ) β_W^c` for
/// `W = W_{p^n}` and `ρ` the regular representation, by expanding the Bott
/// multiplier `Π (1 + L^k + … + L^{k(ℓ-1)})` over the `c·φ(p^n)` faithful
/// characters.
pub fn verify_adams_on_w_power(p: u64, n: u32, ell: i64, c: u32) -> Result<bool, RepRingError> {
    let g = GroupSpec::new(p, n)?;
    if ell.rem_euclid(p as i64) == 0 {
        return Err(RepRingError::NotCoprime { ell, p });
    }
    let mut lhs = RUElement::one(g);
    for _ in 0..c {
        for k in faithful_exponents(p, n) {
            lhs = lhs.mul_bott_multiplier(k, ell);
        }
    }
    let exponent = c as usize * g.totient();
    let top: BigInt = num_traits::pow::pow(BigInt::from(ell), exponent) - 1;
    let order = BigInt::from(g.order());
    let (q, r) = top.div_rem(&order);
    if !r.is_zero() {
        return Err(RepRingError::DivisibilityViolation {
            value: top,
            modulus: order,
            ell,
        });
    }
    let rhs = &RUElement::one(g) + &RUElement::regular(g).scale(&q);
    Ok(lhs == rhs)
}

/// Degrees of the power map `ψ_d` on fixed points of each `C_{p^j}`,
/// `j = 0..=n`: `d` on the trivial subgroup, `0` when `1 ≠ p^j | d`, `1` otherwise.
pub fn power_map_degrees(d: i64, p: u64, n: u32) -> Vec<BigInt> {
    (0..=n)
        .map(|j| {
            if j == 0 {
                BigInt::from(d)
            } else if d % (p.pow(j) as i64) == 0 {
                BigInt::zero()
            } else {
                BigInt::one()
            }
        })
        .collect()
}

/// The default Adams parameter: `3` for `p = 2`, and otherwise the least
/// primitive root modulo `p²` (which is then a primitive root modulo every
/// power of `p`).
pub fn default_ell(p: u64) -> i64 {
    if p == 2 {
        return 3;
    }
    let m = p * p;
    let phi = p * (p - 1);
    let prime_factors: Vec<u64> = {
        let mut f = Vec::new();
        let mut x = phi;
        let mut d = 2;
        while d * d <= x {
            if x.is_multiple_of(d) {
                f.push(d);
                while x.is_multiple_of(d) {
                    x /= d;
                }
            }
            d += 1;
        }
        if x > 1 {
            f.push(x);
        }
        f
    };
    (2..m)
        .find(|&g| {
            g % p != 0
                && prime_factors
                    .iter()
                    .all(|&q| crate::exactint::modular::pow_mod(g, phi / q, m) != 1)
        })
        .expect("cyclic unit groups have primitive roots") as i64
}

/// The smallest nonnegative representative of `x` as a machine integer, if it fits.
pub fn small(x: &BigInt) -> Option<i64> {
    x.to_i64()
}
