//! The filtration `Γ_k` of `A(C_{p^{n-1}})` and the `C_{p^n}`-Mahowald invariant.
//!
//! `Γ_k` is described through the marks `φ(X)(i) = |X^{C_{p^{i-1}}}|` for
//! `1 ≤ i ≤ n`: its image is the lattice with basis `f_{1,k}, …, f_{n,k}`.
//! Since the matrix `A_{i,s} = f_{s,k}(i)` is upper triangular, membership is
//! decided by back-substitution, and the solution `(c_1, …, c_n)` in the
//! top degree feeds the image-of-J part of the invariant.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burnside::{norm_from_trivial, transfer, BurnsideElement, BurnsideError};
use crate::exactint::pow_u;
use crate::json::{from_decimal, to_decimal, DecimalInt};
use crate::ktheory::{closed_form_complex_lattice, closed_form_real_basis, closed_form_real_lattice, ClassSpec, KTheoryError};
use crate::repring::{is_prime, GroupSpec, RUElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MahowaldError {
    #[error("ZeroElement: the Mahowald invariant of 0 has infinite degree")]
    ZeroElement,
    #[error("TheoremViolation: {0}")]
    TheoremViolation(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
}

fn check_args(p: u64, n: u32) -> Result<(), MahowaldError> {
    if !is_prime(p) {
        return Err(MahowaldError::NotPrime(p));
    }
    if n == 0 {
        return Err(MahowaldError::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

fn pow_p(p: u64, e: usize) -> BigInt {
    pow_u(p, e as u64)
}

/// `2^e`.
fn two_pow(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Landweber's `g(k)`: the generator of the image of `Φ^{C_2}` on `π_{kσ}`.
pub fn landweber_g(k: usize) -> BigInt {
    let (l, r) = (k / 8, k % 8);
    match r {
        0 | 1 => two_pow(4 * l + 1),
        2 => two_pow(4 * l + 2),
        3 => two_pow(4 * l + 3),
        _ => two_pow(4 * l + 4),
    }
}

/// `f_{s,k}^{p,n}(i)` for `1 ≤ s, i ≤ n` and `k ≥ 1`.
pub fn f_value(p: u64, n: u32, s: u32, k: usize, i: u32) -> BigInt {
    assert!(1 <= s && s <= n && 1 <= i && i <= n && k >= 1, "f_value({p},{n},{s},{k},{i}) out of range");
    if i > s {
        return BigInt::zero();
    }
    let (l, r) = (k / 8, k % 8);
    let n_us = n as usize;
    if p == 2 && s == 1 {
        if n == 1 {
            return landweber_g(k);
        }
        return match r {
            0 | 1 => two_pow(n_us + 4 * l),
            2 | 3 => two_pow(n_us + 4 * l + 1),
            _ => two_pow(n_us + 4 * l + 3),
        };
    }
    if p == 2 && s == 2 && n == 2 {
        return match (i, r) {
            (1, 0..=2) => two_pow(4 * l + 2),
            (1, 3) => two_pow(4 * l + 3),
            (1, _) => two_pow(4 * l + 4),
            (_, 0..=2) => two_pow(2 * l + 1),
            _ => two_pow(2 * l + 2),
        };
    }
    let step = 2 * (p.pow(s - 1) * (p - 1)) as usize;
    let e = (n - s) as usize + p.pow(s - i) as usize * (k + 1).div_ceil(step);
    pow_p(p, e)
}

/// The even-degree form `f_{s,2k'}(i)` stated for sums of `k'` faithful characters.
pub fn f_even_form(p: u64, n: u32, s: u32, kp: usize, i: u32) -> BigInt {
    assert!(1 <= s && s <= n && 1 <= i && i <= n && kp >= 1);
    if i > s {
        return BigInt::zero();
    }
    if p == 2 && s == 1 {
        let extra = usize::from(kp % 4 == 2);
        return two_pow(n as usize + kp + extra);
    }
    let m = (p.pow(s - 1) * (p - 1)) as usize;
    pow_p(p, (n - s) as usize + p.pow(s - i) as usize * (1 + kp / m))
}

/// The table `f_{s,k}^{p,n}(i)`, with `values[s-1][i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    pub p: u64,
    pub n: u32,
    pub k: usize,
    pub values: Vec<Vec<BigInt>>,
}

impl FTable {
    pub fn new(p: u64, n: u32, k: usize) -> Result<Self, MahowaldError> {
        check_args(p, n)?;
        if k == 0 {
            return Err(MahowaldError::InvalidArgument("k must be at least 1".into()));
        }
        let values = (1..=n).map(|s| (1..=n).map(|i| f_value(p, n, s, k, i)).collect()).collect();
        Ok(FTable { p, n, k, values })
    }

    /// The column `f_{s,k}` as a marks vector `(f(1), …, f(n))`.
    pub fn function(&self, s: u32) -> &[BigInt] {
        &self.values[s as usize - 1]
    }

    /// `f_{s,k}(s)`, the pivot used by back-substitution.
    pub fn diagonal(&self, s: u32) -> &BigInt {
        &self.values[s as usize - 1][s as usize - 1]
    }

    /// Upper triangular with `p`-power diagonal.
    pub fn is_well_formed(&self) -> bool {
        let p = BigInt::from(self.p);
        (1..=self.n).all(|s| {
            let mut d = self.diagonal(s).clone();
            while d.is_multiple_of(&p) && !d.is_zero() {
                d /= &p;
            }
            d.is_one() && (s + 1..=self.n).all(|i| self.values[s as usize - 1][i as usize - 1].is_zero())
        })
    }

    /// Solves `Σ_s c_s f_{s,k} = phi` over ℤ, or `None` if no integer solution exists.
    pub fn solve(&self, phi: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.n as usize;
        assert_eq!(phi.len(), n);
        let mut c = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut rest = phi[i].clone();
            for s in i + 1..n {
                rest -= &c[s] * &self.values[s][i];
            }
            let (q, r) = rest.div_rem(&self.values[i][i]);
            if !r.is_zero() {
                return None;
            }
            c[i] = q;
        }
        Some(c)
    }
}

/// `φ(X) = (|X|, |X^{C_p}|, …, |X^{C_{p^{n-1}}}|)` for `X ∈ A(C_{p^{n-1}})`.
fn phi(x: &BurnsideElement) -> Vec<BigInt> {
    x.marks()
}

fn n_of(x: &BurnsideElement) -> u32 {
    x.level() + 1
}

/// Coefficients `c` with `φ(X) = Σ c_s f_{s,k}` when `X ∈ Γ_k`.
pub fn gamma_membership(x: &BurnsideElement, k: usize) -> Result<Option<Vec<BigInt>>, MahowaldError> {
    Ok(FTable::new(x.p(), n_of(x), k)?.solve(&phi(x)))
}

/// The `n` elements of `A(C_{p^{n-1}})` whose marks are `f_{1,k}, …, f_{n,k}`.
pub fn gamma_basis(p: u64, n: u32, k: usize) -> Result<Vec<BurnsideElement>, MahowaldError> {
    let table = FTable::new(p, n, k)?;
    (1..=n)
        .map(|s| {
            BurnsideElement::from_marks(p, n - 1, table.function(s)).map_err(|e| {
                MahowaldError::TheoremViolation(format!("f_{{{s},{k}}} for p={p}, n={n} is not a marks vector: {e}"))
            })
        })
        .collect()
}

/// The basis of `Γ_{2k'}` written as transfers of norms:
/// `tr_{s-1}^{n-1} N_e^{C_{p^{s-1}}}(p^{1+⌊k'/(p^{s-1}(p-1))⌋})`, and for
/// `p = 2`, `s = 1` the transfer of the integer `f_{1,2k'}^{2,1}(1)`.
pub fn gamma_basis_from_norms(p: u64, n: u32, kp: usize) -> Result<Vec<BurnsideElement>, MahowaldError> {
    check_args(p, n)?;
    (1..=n)
        .map(|s| {
            let base = if p == 2 && s == 1 {
                BurnsideElement::integer(2, 0, f_value(2, 1, 1, 2 * kp, 1))?
            } else {
                let m = (p.pow(s - 1) * (p - 1)) as usize;
                norm_from_trivial(p, &pow_p(p, 1 + kp / m), s - 1)?
            };
            Ok(transfer(&base, n - 1)?)
        })
        .collect()
}

/// The generator of the image of `Φ^{C_{p^i}}` on `π_V S_{C_{p^n}}`, `V` a sum
/// of `k'` faithful characters: the least of `f_{s,2k'}(i)` over `s ≥ i`.
pub fn degree_image(p: u64, n: u32, kp: usize, i: u32) -> BigInt {
    (i..=n)
        .map(|s| f_value(p, n, s, 2 * kp, i))
        .min()
        .expect("i ≤ n")
}

/// True when the marks of the closed-form generators of the real fixed
/// lattice in degree `k` are exactly `f_{1,k}, …, f_{n,k}`.
pub fn f_marks_consistency(p: u64, n: u32, k: usize) -> Result<bool, MahowaldError> {
    let group = GroupSpec::new(p, n).map_err(KTheoryError::from)?;
    let table = FTable::new(p, n, k)?;
    let basis = closed_form_real_basis(group, k)?;
    for (s, class) in (1..=n).zip(&basis) {
        if class.marks()? != table.function(s) {
            return Ok(false);
        }
    }
    Ok(basis.len() == n as usize)
}

/// The even-degree form agrees with the general table and with the marks of
/// the closed-form generators in degree `2k'`.
pub fn f_even_consistency(p: u64, n: u32, kp: usize) -> Result<bool, MahowaldError> {
    let forms_agree = (1..=n).all(|s| (1..=n).all(|i| f_even_form(p, n, s, kp, i) == f_value(p, n, s, 2 * kp, i)));
    Ok(forms_agree && f_marks_consistency(p, n, 2 * kp)?)
}

/// `|M_{C_{p^n}}(X)|` for `X ∈ A(C_{p^{n-1}})`.
pub fn mahowald_degree(x: &BurnsideElement) -> Result<usize, MahowaldError> {
    Ok(degree_and_coefficients(x)?.0)
}

fn degree_and_coefficients(x: &BurnsideElement) -> Result<(usize, Vec<BigInt>), MahowaldError> {
    if x.is_zero() {
        return Err(MahowaldError::ZeroElement);
    }
    let p = x.p();
    let n = n_of(x);
    let order = pow_p(p, n as usize);
    if !x.augmentation().is_multiple_of(&order) {
        return Ok((0, Vec::new()));
    }
    let marks = phi(x);
    let largest = marks.iter().map(|m| m.abs()).max().expect("n ≥ 1 marks");
    let mut last: Option<Vec<BigInt>> = None;
    let mut k = 1;
    loop {
        let table = FTable::new(p, n, k)?;
        match table.solve(&marks) {
            Some(c) => {
                // Every pivot beyond the largest mark forces c = 0, which only X = 0 satisfies.
                if (1..=n).all(|s| table.diagonal(s) > &largest) {
                    return Err(MahowaldError::TheoremViolation(format!(
                        "{x} solved in degree {k} although every pivot exceeds its marks"
                    )));
                }
                last = Some(c);
                k += 1;
            }
            None => {
                return match last {
                    Some(c) => Ok((k - 1, c)),
                    None => Err(MahowaldError::TheoremViolation(format!(
                        "{x} has augmentation divisible by p^n but lies outside Γ_1"
                    ))),
                };
            }
        }
    }
}

/// The family of a formal image-of-J generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum JFamily {
    /// `η` in stem 1.
    Eta,
    /// `P^l η²` in stem `8l + 2`; `l = 0` is `η²`.
    EtaSquared { l: u32 },
    /// `P^l η` in stem `8l + 1`, `l ≥ 1`.
    #[serde(rename = "P_eta")]
    PEta { l: u32 },
    /// `j_k^{(p)}` with `k + 1 = 2(p-1)p^{l-1}c` for odd `p`, or
    /// `k + 1 = 2^l c` for `p = 2`, where `p ∤ c`.
    JGenerator { l: u32, c: u64 },
}

/// A multiple of a formal generator of the image of J in the `p`-local stable stems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JImageElement {
    pub p: u64,
    pub stem: usize,
    pub family: JFamily,
    /// The coefficient as produced by the formula, before reduction.
    pub coefficient: BigInt,
    /// The coefficient reduced into `(-modulus/2, modulus/2]`.
    pub residue: BigInt,
    pub modulus: BigInt,
    pub indeterminacy: Option<String>,
}

fn signed_residue(c: &BigInt, modulus: &BigInt) -> BigInt {
    let r = c.mod_floor(modulus);
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

fn superscript(l: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    l.to_string().chars().map(|d| DIGITS[d.to_digit(10).expect("decimal digit") as usize]).collect()
}

fn periodicity(l: u32) -> String {
    match l {
        0 => String::new(),
        1 => "P".into(),
        _ => format!("P{}", superscript(l)),
    }
}

impl JImageElement {
    fn new(p: u64, stem: usize, family: JFamily, coefficient: BigInt, modulus: BigInt, indeterminacy: Option<String>) -> Self {
        let residue = signed_residue(&coefficient, &modulus);
        JImageElement {
            p,
            stem,
            family,
            coefficient,
            residue,
            modulus,
            indeterminacy,
        }
    }

    /// The generator's symbol, with `ν = j_3` and `σ = j_7` at `p = 2`.
    pub fn generator_symbol(&self) -> String {
        match &self.family {
            JFamily::Eta => "η".into(),
            JFamily::EtaSquared { l } => format!("{}η²", periodicity(*l)),
            JFamily::PEta { l } => format!("{}η", periodicity(*l)),
            JFamily::JGenerator { .. } if self.p == 2 && self.stem == 3 => "ν".into(),
            JFamily::JGenerator { .. } if self.p == 2 && self.stem == 7 => "σ".into(),
            JFamily::JGenerator { .. } if self.p == 2 => format!("j_{}", self.stem),
            JFamily::JGenerator { .. } => format!("j_{}^({})", self.stem, self.p),
        }
    }
}

impl fmt::Display for JImageElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.generator_symbol();
        let c = &self.coefficient;
        if c.is_one() {
            write!(f, "{sym}")
        } else if *c == BigInt::from(-1) {
            write!(f, "-{sym}")
        } else {
            write!(f, "{c}{sym}")
        }
    }
}

/// What the invariant contributes beyond its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JPart {
    /// Degree 0: the class `|X| mod p^n` of `π_0 S_{(p)}`.
    Residue { value: BigInt, modulus: BigInt },
    J(JImageElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahowaldResult {
    pub input: BurnsideElement,
    pub degree: usize,
    /// `(c_1, …, c_n)` with `φ(X) = Σ c_s f_{s,k}`; empty in degree 0.
    pub coefficients: Vec<BigInt>,
    pub j_part: JPart,
}

impl MahowaldResult {
    pub fn display(&self) -> String {
        match &self.j_part {
            JPart::Residue { value, .. } => value.to_string(),
            JPart::J(j) => j.to_string(),
        }
    }
}

impl fmt::Display for MahowaldResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_C_{}({}) has degree {} and contains {}",
            pow_p(self.input.p(), n_of(&self.input) as usize),
            self.input,
            self.degree,
            self.display()
        )?;
        match &self.j_part {
            JPart::Residue { modulus, .. } => write!(f, " modulo {modulus}"),
            JPart::J(j) => {
                write!(f, " (coefficient {} modulo {})", j.residue, j.modulus)?;
                if let Some(ind) = &j.indeterminacy {
                    write!(f, ", indeterminacy {ind}")?;
                }
                Ok(())
            }
        }
    }
}

/// The image-of-J part of `M_{C_{p^n}}(X)` from its degree and coefficients.
fn j_part(p: u64, n: u32, k: usize, c: &[BigInt]) -> Result<JImageElement, MahowaldError> {
    let violation = |why: &str| MahowaldError::TheoremViolation(format!("degree {k} for p={p}, n={n}: {why}"));
    // Σ_{s ≤ t} p^{t-s} c_s
    let weighted = |t: usize| -> BigInt { (1..=t).map(|s| &c[s - 1] * pow_p(p, t - s)).sum() };
    if p != 2 {
        let period = 2 * (p as usize - 1);
        if !(k + 1).is_multiple_of(period) {
            return Err(violation("not congruent to -1 modulo 2(p-1)"));
        }
        let mut q = ((k + 1) / period) as u64;
        let mut l = 1u32;
        while q.is_multiple_of(p) {
            q /= p;
            l += 1;
        }
        let t = (n as usize).min(l as usize);
        let coefficient = weighted(t) * pow_p(p, l as usize - t);
        let modulus = pow_p(p, l as usize);
        let j = JImageElement::new(p, k, JFamily::JGenerator { l, c: q }, coefficient, modulus, None);
        return check_nonzero(j, &violation);
    }
    let two = BigInt::from(2);
    let (l8, r) = ((k / 8) as u32, k % 8);
    let j = match r {
        1 if k == 1 => JImageElement::new(2, k, JFamily::Eta, BigInt::one(), two, None),
        1 => {
            let ind = match l8 {
                1 => "ℤ/2{ηε}".to_string(),
                _ => format!("ℤ/2{{{}ηε}}", periodicity(l8 - 1)),
            };
            JImageElement::new(2, k, JFamily::PEta { l: l8 }, BigInt::one(), two, Some(ind))
        }
        2 => {
            if n > 2 {
                return Err(violation("stem 8l+2 only occurs for n ≤ 2"));
            }
            JImageElement::new(2, k, JFamily::EtaSquared { l: l8 }, BigInt::one(), two, None)
        }
        3 => {
            let coefficient = match n {
                1 => BigInt::from(4),
                2 => (&c[1] - &c[0]) * BigInt::from(2),
                _ => &c[1] - &c[0] * BigInt::from(2),
            };
            let family = JFamily::JGenerator {
                l: 2,
                c: ((k + 1) / 4) as u64,
            };
            JImageElement::new(2, k, family, coefficient, BigInt::from(8), None)
        }
        7 => {
            let mut q = (k + 1) as u64;
            let mut l = 0u32;
            while q.is_multiple_of(2) {
                q /= 2;
                l += 1;
            }
            let t = (n as usize).min(l as usize);
            let coefficient = weighted(t) * two_pow(l as usize + 1 - t);
            JImageElement::new(2, k, JFamily::JGenerator { l, c: q }, coefficient, two_pow(l as usize + 1), None)
        }
        _ => return Err(violation("not congruent to 1, 2, 3 or 7 modulo 8")),
    };
    check_nonzero(j, &violation)
}

fn check_nonzero(j: JImageElement, violation: &dyn Fn(&str) -> MahowaldError) -> Result<JImageElement, MahowaldError> {
    if j.residue.is_zero() {
        Err(violation("the image-of-J coefficient vanishes"))
    } else {
        Ok(j)
    }
}

/// `M_{C_{p^n}}(X)` for `X ∈ A(C_{p^{n-1}})`: its degree, the coefficients of
/// `φ(X)` in the `f`-basis of that degree, and its image-of-J part.
pub fn mahowald_invariant(x: &BurnsideElement) -> Result<MahowaldResult, MahowaldError> {
    let (degree, coefficients) = degree_and_coefficients(x)?;
    let p = x.p();
    let n = n_of(x);
    let j_part = if degree == 0 {
        let modulus = pow_p(p, n as usize);
        JPart::Residue {
            value: x.augmentation().mod_floor(&modulus),
            modulus,
        }
    } else {
        JPart::J(j_part(p, n, degree, &coefficients)?)
    };
    Ok(MahowaldResult {
        input: x.clone(),
        degree,
        coefficients,
        j_part,
    })
}

#[derive(Serialize, Deserialize)]
struct JJson {
    stem: usize,
    #[serde(flatten)]
    family: JFamily,
    coefficient: DecimalInt,
    residue: DecimalInt,
    modulus: DecimalInt,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    indeterminacy: Option<String>,
    symbol: String,
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    p: u64,
    n: u32,
    input: BurnsideElement,
    degree: usize,
    coefficients: Vec<DecimalInt>,
    j: Option<JJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    residue: Option<DecimalInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    modulus: Option<DecimalInt>,
    display: String,
}

impl Serialize for MahowaldResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (j, residue, modulus) = match &self.j_part {
            JPart::Residue { value, modulus } => (None, Some(DecimalInt(value.clone())), Some(DecimalInt(modulus.clone()))),
            JPart::J(j) => (
                Some(JJson {
                    stem: j.stem,
                    family: j.family.clone(),
                    coefficient: DecimalInt(j.coefficient.clone()),
                    residue: DecimalInt(j.residue.clone()),
                    modulus: DecimalInt(j.modulus.clone()),
                    indeterminacy: j.indeterminacy.clone(),
                    symbol: j.generator_symbol(),
                }),
                None,
                None,
            ),
        };
        ResultJson {
            p: self.input.p(),
            n: n_of(&self.input),
            input: self.input.clone(),
            degree: self.degree,
            coefficients: to_decimal(&self.coefficients),
            j,
            residue,
            modulus,
            display: self.display(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MahowaldResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ResultJson::deserialize(d)?;
        let j_part = match (raw.j, raw.residue, raw.modulus) {
            (Some(j), None, None) => JPart::J(JImageElement {
                p: raw.p,
                stem: j.stem,
                family: j.family,
                coefficient: j.coefficient.0,
                residue: j.residue.0,
                modulus: j.modulus.0,
                indeterminacy: j.indeterminacy,
            }),
            (None, Some(v), Some(m)) => JPart::Residue { value: v.0, modulus: m.0 },
            _ => return Err(D::Error::custom("expected either \"j\" or \"residue\" and \"modulus\"")),
        };
        Ok(MahowaldResult {
            input: raw.input,
            degree: raw.degree,
            coefficients: from_decimal(raw.coefficients),
            j_part,
        })
    }
}

/// Outcome of instantiating the relations among the generators `y_{n,i,c}`
/// of the reduced ring in the K-theory model.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub p: u64,
    pub n: u32,
    pub c_max: u64,
    pub product_relations: usize,
    pub periodicity_relations: usize,
    pub exceptional_relations: usize,
    /// Relations that mention an excluded generator.
    pub skipped: usize,
    pub membership_checks: usize,
    /// `(i, c)` with `y_{n,i,c}` in the complex but not the real fixed lattice.
    pub non_real_generators: Vec<(u32, u64)>,
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A class of `π_{*L}` in the model: degree `2D` and image
/// `payload · e_{0,D+1}` in `RU`, so `a_L` has image 1 and products multiply
/// images. Images are compared modulo the regular representation, which is
/// the kernel of inverting the Euler class.
#[derive(Clone, Debug)]
struct ModelClass {
    degree: i64,
    image: RUElement,
}

impl ModelClass {
    fn mul(&self, other: &ModelClass) -> ModelClass {
        ModelClass {
            degree: self.degree + other.degree,
            image: &self.image * &other.image,
        }
    }

    fn scale(&self, k: &BigInt) -> ModelClass {
        ModelClass {
            degree: self.degree,
            image: self.image.scale(k),
        }
    }

    fn add(&self, other: &ModelClass) -> Option<ModelClass> {
        (self.degree == other.degree).then(|| ModelClass {
            degree: self.degree,
            image: &self.image + &other.image,
        })
    }

    fn same(&self, other: &ModelClass) -> bool {
        self.degree == other.degree && self.image.congruent_mod_regular(&other.image).unwrap_or(false)
    }
}

struct PresentationModel {
    group: GroupSpec,
    p: u64,
    euler: Vec<RUElement>,
}

impl PresentationModel {
    fn new(group: GroupSpec) -> Self {
        PresentationModel {
            group,
            p: group.p(),
            euler: vec![RUElement::one(group)],
        }
    }

    fn euler_to(&mut self, m: usize) -> &RUElement {
        let seq = crate::repring::DSequence::new(self.p);
        while self.euler.len() <= m {
            let t = self.euler.len();
            let next = self.euler[t - 1].mul_one_minus(seq.entry(t));
            self.euler.push(next);
        }
        &self.euler[m]
    }

    fn bott_index(&self, i: u32, c: u64) -> usize {
        (self.p.pow(i - 1) * (self.p - 1) * c) as usize
    }

    fn excluded(&self, i: u32, c: u64) -> bool {
        self.p == 2 && i == 1 && c % 4 == 2
    }

    /// `y_{n,i,c}` in degree `2(m - 1)`, `m = p^{i-1}(p-1)c`.
    fn y(&mut self, i: u32, c: u64) -> ModelClass {
        let m = self.bott_index(i, c);
        let t = RUElement::permutation_character(self.group, i).expect("1 ≤ i ≤ n");
        let e = self.euler_to(m).clone();
        ModelClass {
            degree: 2 * m as i64 - 2,
            image: &t * &e,
        }
    }

    fn a_power(&self, k: u64) -> ModelClass {
        ModelClass {
            degree: -2 * k as i64,
            image: RUElement::one(self.group),
        }
    }
}

/// Checks the product and periodicity relations among `y_{n,i,c}` for all
/// `c, d ≤ c_max`, and that each generator of positive degree lies in the
/// complex fixed lattice. Generators missing from the real fixed lattice are
/// listed in the report.
pub fn presentation_check(p: u64, n: u32, c_max: u64) -> Result<PresentationReport, MahowaldError> {
    check_args(p, n)?;
    let group = GroupSpec::new(p, n).map_err(KTheoryError::from)?;
    let mut model = PresentationModel::new(group);
    let mut report = PresentationReport {
        p,
        n,
        c_max,
        ..Default::default()
    };
    let pb = BigInt::from(p);

    for i in 1..=n {
        for j in i..=n {
            for c in 0..=c_max {
                for d in 0..=c_max {
                    let e = c + d * p.pow(j - i);
                    if model.excluded(i, c) || model.excluded(j, d) || model.excluded(i, e) {
                        report.skipped += 1;
                        continue;
                    }
                    let lhs = model.y(i, c).mul(&model.y(j, d));
                    let rhs = model.a_power(1).mul(&model.y(i, e)).scale(&pow_p(p, (n - j) as usize));
                    report.product_relations += 1;
                    if !lhs.same(&rhs) {
                        report.failures.push(format!("y_{{{n},{i},{c}}} y_{{{n},{j},{d}}} ≠ {p}^{} a_L y_{{{n},{i},{e}}}", n - j));
                    }
                }
            }
        }
    }

    for i in 1..=n {
        let period = p.pow(i - 1) * (p - 1);
        for c in 0..c_max {
            if model.excluded(i, c) {
                // c = 4k + 2 at p = 2, i = 1: a_L² y_{n,1,4k+3} = 4 y_{n,1,4k+1}.
                let lhs = model.a_power(2).mul(&model.y(1, c + 1));
                let rhs = model.y(1, c - 1).scale(&BigInt::from(4));
                report.exceptional_relations += 1;
                if !lhs.same(&rhs) {
                    report.failures.push(format!("a_L² y_{{{n},1,{}}} ≠ 4 y_{{{n},1,{}}}", c + 1, c - 1));
                }
                continue;
            }
            let mentions_excluded =
                model.excluded(i, c + 1) || (1..i).any(|j| model.excluded(j, p.pow(i - j) * c));
            if mentions_excluded {
                report.skipped += 1;
                continue;
            }
            let lhs = model.a_power(period).mul(&model.y(i, c + 1));
            let mut rhs = model.y(i, c).scale(&pb);
            for j in 1..i {
                let num = pow_p(p, p.pow(i - j) as usize) - pow_p(p, p.pow(i - j - 1) as usize);
                let coef = num / pow_p(p, (i - j) as usize);
                let term = model.y(j, p.pow(i - j) * c).scale(&coef);
                rhs = rhs.add(&term).expect("all terms share a degree");
            }
            report.periodicity_relations += 1;
            if !lhs.same(&rhs) {
                report.failures.push(format!("periodicity relation fails for i={i}, c={c}"));
            }
        }
    }

    for i in 1..=n {
        for c in 1..=c_max {
            let m = model.bott_index(i, c);
            if m < 2 {
                continue;
            }
            let degree = 2 * m - 2;
            let class = ClassSpec::new(1, i, m).materialize(group, degree)?;
            let v = class.payload().coeffs();
            report.membership_checks += 1;
            if !closed_form_complex_lattice(group, degree)?.lattice.contains(v) {
                report.failures.push(format!("y_{{{n},{i},{c}}} is not in the complex fixed lattice of degree {degree}"));
            }
            if !closed_form_real_lattice(group, degree)?.lattice.contains(v) {
                report.non_real_generators.push((i, c));
            }
        }
    }
    Ok(report)
}

/// Residues of `k` modulo `2(p-1)` (odd `p`) or `8` (`p = 2`) at which a
/// nonzero image-of-J part can occur.
pub fn permitted_degree(p: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if p == 2 {
        matches!(k % 8, 1 | 2 | 3 | 7)
    } else {
        (k + 1).is_multiple_of(2 * (p as usize - 1))
    }
}

/// At a jump degree `k = 2p^{n-1}(p-1)c - 1` (or `2^n c - 1` at `p = 2`) the
/// `s`-th basis function contributes `p^{n-s}` to the image-of-J coefficient.
pub fn jump_degree_weights(p: u64, n: u32) -> Vec<BigInt> {
    (1..=n).map(|s| pow_p(p, (n - s) as usize)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactint::ints;

    fn t(p: u64, m: u32, coeffs: &[i64]) -> BurnsideElement {
        BurnsideElement::from_t(p, m, ints(coeffs)).unwrap()
    }

    fn int(p: u64, m: u32, v: i64) -> BurnsideElement {
        BurnsideElement::integer(p, m, v.into()).unwrap()
    }

    fn col(p: u64, n: u32, s: u32, k: usize) -> Vec<BigInt> {
        (1..=n).map(|i| f_value(p, n, s, k, i)).collect()
    }

    #[test]
    fn table_examples() {
        assert_eq!(col(2, 2, 2, 3), ints(&[8, 4]));
        assert_eq!(f_value(2, 1, 1, 3, 1), BigInt::from(8));
        assert_eq!(col(2, 3, 3, 3), ints(&[16, 4, 2]));
    }

    #[test]
    fn tables_are_triangular_with_p_power_pivots() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 3)] {
            for k in 1..40 {
                assert!(FTable::new(p, n, k).unwrap().is_well_formed(), "p={p} n={n} k={k}");
            }
        }
    }

    #[test]
    fn even_form_matches_general_table() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 3), (5, 2)] {
            for kp in 1..30 {
                for s in 1..=n {
                    for i in 1..=n {
                        assert_eq!(f_even_form(p, n, s, kp, i), f_value(p, n, s, 2 * kp, i), "p={p} n={n} k'={kp} s={s} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_marks_reproduce_tables() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            for k in 1..=24 {
                assert!(f_marks_consistency(p, n, k).unwrap(), "p={p} n={n} k={k}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let x = t(2, 1, &[1, 2]);
        assert_eq!(gamma_membership(&x, 2).unwrap(), Some(ints(&[0, 1])));
        assert_eq!(gamma_membership(&x, 3).unwrap(), None);
        let y = t(2, 2, &[1, 2, 0]);
        assert_eq!(gamma_membership(&y, 3).unwrap(), Some(ints(&[0, 1, 0])));
    }

    #[test]
    fn gamma_bases_of_the_introduction() {
        let b2: Vec<_> = gamma_basis(2, 2, 2).unwrap().iter().map(|x| x.marks()).collect();
        assert_eq!(b2, vec![ints(&[8, 0]), ints(&[4, 2])]);
        let b3: Vec<_> = gamma_basis(2, 2, 3).unwrap().iter().map(|x| x.marks()).collect();
        assert_eq!(b3, vec![ints(&[8, 0]), ints(&[8, 4])]);
    }

    #[test]
    fn norm_description_matches_table_in_even_degrees() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
            for kp in 1..=12 {
                assert_eq!(gamma_basis_from_norms(p, n, kp).unwrap(), gamma_basis(p, n, 2 * kp).unwrap(), "p={p} n={n} k'={kp}");
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(mahowald_degree(&int(2, 0, 4)).unwrap(), 2);
        assert_eq!(mahowald_degree(&int(2, 2, 8)).unwrap(), 1);
        assert_eq!(mahowald_degree(&t(2, 2, &[3, 1, 2])).unwrap(), 7);
        assert_eq!(mahowald_degree(&int(3, 0, 2)).unwrap(), 0);
        assert_eq!(mahowald_invariant(&int(2, 0, 0)), Err(MahowaldError::ZeroElement));
    }

    #[test]
    fn invariant_examples() {
        let r = mahowald_invariant(&t(2, 1, &[1, 2])).unwrap();
        assert_eq!((r.degree, r.display()), (2, "η²".to_string()));
        let r = mahowald_invariant(&t(2, 2, &[2, 4, 0])).unwrap();
        assert_eq!((r.degree, r.display()), (3, "2ν".to_string()));
        let r = mahowald_invariant(&t(2, 2, &[3, 1, 2])).unwrap();
        assert_eq!((r.degree, r.display()), (7, "2σ".to_string()));
        let r = mahowald_invariant(&t(2, 2, &[4, 0, 0])).unwrap();
        assert_eq!((r.degree, r.display()), (3, "-2ν".to_string()));
    }

    #[test]
    fn odd_prime_free_orbit_times_p() {
        for (p, n) in [(3, 1), (3, 2), (5, 2), (3, 3)] {
            let mut coeffs = vec![0; n as usize];
            coeffs[0] = p as i64;
            let r = mahowald_invariant(&t(p, n - 1, &coeffs)).unwrap();
            assert_eq!(r.degree, 2 * (p as usize - 1) - 1);
            let JPart::J(j) = &r.j_part else { panic!("expected a J element") };
            assert!(matches!(j.family, JFamily::JGenerator { l: 1, c: 1 }));
        }
    }

    #[test]
    fn result_json_round_trips() {
        for x in [t(2, 2, &[3, 1, 2]), int(3, 0, 5), t(2, 1, &[1, 2])] {
            let r = mahowald_invariant(&x).unwrap();
            let text = serde_json::to_string(&r).unwrap();
            let back: MahowaldResult = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn presentation_small() {
        for (p, n) in [(2, 1), (2, 2), (3, 2)] {
            let rep = presentation_check(p, n, 5).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.product_relations > 0 && rep.periodicity_relations > 0);
        }
    }

    #[test]
    fn real_lattice_drops_generators_three_mod_four() {
        for n in 1..=3 {
            let rep = presentation_check(2, n, 12).unwrap();
            let expected: Vec<(u32, u64)> = (1..=12).filter(|c| c % 4 == 3).map(|c| (1, c)).collect();
            assert_eq!(rep.non_real_generators, expected, "n={n}");
        }
        assert!(presentation_check(3, 2, 6).unwrap().non_real_generators.is_empty());
    }
}
