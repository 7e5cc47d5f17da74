//! The Burnside ring `A(C_{p^m})`.
//!
//! Elements are stored in the basis of transitive orbits
//! `t_{m,i} = [C_{p^m}/C_{p^i}]`. The table of marks is
//! `φ_j(t_{m,i}) = p^{m-i}` for `j ≤ i` and `0` otherwise, so it is upper
//! triangular and an element is recovered from its marks by back-substitution.
//! The second basis `1, z_{m,1}, …, z_{m,m}` with `z_{m,i} = p t_{m,i} - t_{m,i-1}`
//! is offered as a view; `z_{m,i}` has a single nonzero mark `p^{m+1-i}` at level `i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactint::pow_u;
use crate::json::{from_decimal, to_decimal, DecimalInt};
use crate::repring::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("marks are not those of a C_{p}^{m}-set: level {level} fails the congruence modulo {modulus}")]
    NotInBurnsideImage { p: u64, m: u32, level: u32, modulus: BigInt },
    #[error("elements of A(C_{p}^{left}) and A(C_{p}^{right}) cannot be combined")]
    GroupMismatch { p: u64, left: u32, right: u32 },
    #[error("level {level} is outside {min}..={max}")]
    LevelOutOfRange { level: u32, min: u32, max: u32 },
    #[error("the augmentation is {residue} modulo p^n, not 0")]
    AugmentationObstruction { residue: BigInt },
    #[error("the norm is only defined for nonnegative integers, got {0}")]
    NegativeNormBase(BigInt),
}

/// An element of `A(C_{p^m})`, stored in the `t`-basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    p: u64,
    m: u32,
    t: Vec<BigInt>,
}

fn check_prime(p: u64) -> Result<(), BurnsideError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(BurnsideError::NotPrime(p))
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), BurnsideError> {
    if expected == found {
        Ok(())
    } else {
        Err(BurnsideError::LengthMismatch { expected, found })
    }
}

impl BurnsideElement {
    pub fn zero(p: u64, m: u32) -> Result<Self, BurnsideError> {
        check_prime(p)?;
        Ok(BurnsideElement {
            p,
            m,
            t: vec![BigInt::zero(); m as usize + 1],
        })
    }

    /// `c` times the unit `t_{m,m}`.
    pub fn integer(p: u64, m: u32, c: BigInt) -> Result<Self, BurnsideError> {
        let mut x = BurnsideElement::zero(p, m)?;
        x.t[m as usize] = c;
        Ok(x)
    }

    pub fn one(p: u64, m: u32) -> Result<Self, BurnsideError> {
        BurnsideElement::integer(p, m, BigInt::one())
    }

    /// The orbit `t_{m,i} = [C_{p^m}/C_{p^i}]`.
    pub fn orbit(p: u64, m: u32, i: u32) -> Result<Self, BurnsideError> {
        if i > m {
            return Err(BurnsideError::LevelOutOfRange { level: i, min: 0, max: m });
        }
        let mut x = BurnsideElement::zero(p, m)?;
        x.t[i as usize] = BigInt::one();
        Ok(x)
    }

    /// `z_{m,i} = p t_{m,i} - t_{m,i-1}` for `1 ≤ i ≤ m`.
    pub fn z(p: u64, m: u32, i: u32) -> Result<Self, BurnsideError> {
        if i == 0 || i > m {
            return Err(BurnsideError::LevelOutOfRange { level: i, min: 1, max: m });
        }
        let mut x = BurnsideElement::zero(p, m)?;
        x.t[i as usize] = BigInt::from(p);
        x.t[i as usize - 1] = BigInt::from(-1);
        Ok(x)
    }

    /// Coefficients on `t_{m,0}, …, t_{m,m}`.
    pub fn from_t(p: u64, m: u32, t: Vec<BigInt>) -> Result<Self, BurnsideError> {
        check_prime(p)?;
        check_len(m as usize + 1, t.len())?;
        Ok(BurnsideElement { p, m, t })
    }

    /// Coefficients on `1, z_{m,1}, …, z_{m,m}`.
    pub fn from_z(p: u64, m: u32, z: Vec<BigInt>) -> Result<Self, BurnsideError> {
        check_prime(p)?;
        check_len(m as usize + 1, z.len())?;
        let mut t = vec![BigInt::zero(); m as usize + 1];
        t[m as usize] += &z[0];
        for i in 1..=m as usize {
            t[i] += &z[i] * p;
            t[i - 1] -= &z[i];
        }
        Ok(BurnsideElement { p, m, t })
    }

    /// The unique element with marks `marks[j] = |X^{C_{p^j}}|`, recovered by
    /// `t_i = (φ_i - φ_{i+1}) / p^{m-i}` and `t_m = φ_m`.
    pub fn from_marks(p: u64, m: u32, marks: &[BigInt]) -> Result<Self, BurnsideError> {
        check_prime(p)?;
        check_len(m as usize + 1, marks.len())?;
        let mut t = Vec::with_capacity(m as usize + 1);
        for i in 0..m as usize {
            let modulus = pow_u(p, (m as usize - i) as u64);
            let (q, r) = (&marks[i] - &marks[i + 1]).div_rem(&modulus);
            if !r.is_zero() {
                return Err(BurnsideError::NotInBurnsideImage {
                    p,
                    m,
                    level: i as u32,
                    modulus,
                });
            }
            t.push(q);
        }
        t.push(marks[m as usize].clone());
        Ok(BurnsideElement { p, m, t })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn t_coeffs(&self) -> &[BigInt] {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(Zero::is_zero)
    }

    /// `marks[j] = Σ_{i ≥ j} t_i p^{m-i}`.
    pub fn marks(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.m as usize + 1];
        let mut acc = BigInt::zero();
        for i in (0..=self.m as usize).rev() {
            acc += &self.t[i] * pow_u(self.p, (self.m as usize - i) as u64);
            out[i] = acc.clone();
        }
        out
    }

    /// Cardinality of the underlying virtual set.
    pub fn augmentation(&self) -> BigInt {
        self.marks().swap_remove(0)
    }

    /// Coefficients on `1, z_{m,1}, …, z_{m,m}`: `c_0 = φ_0` and
    /// `c_i = (φ_i - φ_0)/p^{m+1-i}`.
    pub fn z_coeffs(&self) -> Vec<BigInt> {
        let marks = self.marks();
        let mut out = vec![marks[0].clone()];
        for i in 1..=self.m as usize {
            let d = pow_u(self.p, (self.m as usize + 1 - i) as u64);
            out.push((&marks[i] - &marks[0]) / d);
        }
        out
    }

    fn same_group(&self, other: &BurnsideElement) -> Result<(), BurnsideError> {
        if self.p != other.p || self.m != other.m {
            return Err(BurnsideError::GroupMismatch {
                p: self.p,
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.same_group(other)?;
        Ok(BurnsideElement {
            p: self.p,
            m: self.m,
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.same_group(other)?;
        Ok(BurnsideElement {
            p: self.p,
            m: self.m,
            t: self.t.iter().zip(&other.t).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> BurnsideElement {
        BurnsideElement {
            p: self.p,
            m: self.m,
            t: self.t.iter().map(|c| c * k).collect(),
        }
    }
}

/// Ring product, computed as the pointwise product of marks.
pub fn multiply(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
    x.same_group(y)?;
    let marks: Vec<BigInt> = x.marks().iter().zip(y.marks()).map(|(a, b)| a * b).collect();
    let out = BurnsideElement::from_marks(x.p, x.m, &marks);
    Ok(out.expect("products of genuine elements are genuine"))
}

/// `tr_i^n`, which sends `t_{i,j}` to `t_{n,j}`.
pub fn transfer(x: &BurnsideElement, n: u32) -> Result<BurnsideElement, BurnsideError> {
    if n < x.m {
        return Err(BurnsideError::LevelOutOfRange {
            level: n,
            min: x.m,
            max: u32::MAX,
        });
    }
    let mut t = x.t.clone();
    t.resize(n as usize + 1, BigInt::zero());
    Ok(BurnsideElement { p: x.p, m: n, t })
}

/// `res^m_i`, which keeps the marks at levels `0..=i`.
pub fn restrict_to(x: &BurnsideElement, i: u32) -> Result<BurnsideElement, BurnsideError> {
    if i > x.m {
        return Err(BurnsideError::LevelOutOfRange { level: i, min: 0, max: x.m });
    }
    let marks = x.marks();
    let out = BurnsideElement::from_marks(x.p, i, &marks[..=i as usize]);
    Ok(out.expect("restrictions of genuine elements are genuine"))
}

/// `res^m_{m-1}`.
pub fn restriction(x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
    if x.m == 0 {
        return Err(BurnsideError::LevelOutOfRange { level: 0, min: 1, max: u32::MAX });
    }
    restrict_to(x, x.m - 1)
}

/// `Φ(X) = X^{C_p}` as an element of `A(C_{p^{m-1}})`: the marks shift down one level.
pub fn geometric_fixed(x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
    if x.m == 0 {
        return Err(BurnsideError::LevelOutOfRange { level: 0, min: 1, max: u32::MAX });
    }
    let marks = x.marks();
    let out = BurnsideElement::from_marks(x.p, x.m - 1, &marks[1..]);
    Ok(out.expect("fixed points of genuine elements are genuine"))
}

/// The multiplicative induction `N_e^{C_{p^m}}(q)`, with marks `q^{p^{m-j}}`.
pub fn norm_from_trivial(p: u64, q: &BigInt, m: u32) -> Result<BurnsideElement, BurnsideError> {
    check_prime(p)?;
    if q.is_negative() {
        return Err(BurnsideError::NegativeNormBase(q.clone()));
    }
    let marks: Vec<BigInt> = (0..=m)
        .map(|j| num_traits::pow::pow(q.clone(), p.pow(m - j) as usize))
        .collect();
    let out = BurnsideElement::from_marks(p, m, &marks);
    Ok(out.expect("the norm of a finite set is a finite set"))
}

/// The unique `X̃` in the augmentation ideal of `A(C_{p^{m+1}})` with
/// `Φ(X̃) = x`. It exists exactly when `|x| ≡ 0 mod p^{m+1}`.
pub fn lift_through_phi(x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
    let n = x.m + 1;
    let order = pow_u(x.p, n as u64);
    let residue = x.augmentation().mod_floor(&order);
    if !residue.is_zero() {
        return Err(BurnsideError::AugmentationObstruction { residue });
    }
    let mut marks = vec![BigInt::zero()];
    marks.extend(x.marks());
    let out = BurnsideElement::from_marks(x.p, n, &marks);
    Ok(out.expect("the augmentation congruence is the only obstruction"))
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(C_{}^{})[{}]", self.p, self.m, self)
    }
}

impl fmt::Display for BurnsideElement {
    /// Orbit notation: `t_{m,i}` is written `[C_{p^m}/C_{p^i}]`, the free orbit
    /// `[C_{p^m}]` and the unit as a bare integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..=self.m as usize).rev() {
            let c = &self.t[i];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            let group = |e: usize| format!("C_{}", pow_u(self.p, e as u64));
            let orbit = match i {
                _ if i == self.m as usize => String::new(),
                0 => format!("[{}]", group(self.m as usize)),
                _ => format!("[{}/{}]", group(self.m as usize), group(i)),
            };
            if orbit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{orbit}")?;
            } else {
                write!(f, "{mag}{orbit}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// How the coefficients of a serialized element are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurnsideBasis {
    T,
    Z,
    Marks,
}

#[derive(Serialize, Deserialize)]
struct BurnsideJson {
    p: u64,
    m: u32,
    #[serde(default = "default_basis")]
    basis: BurnsideBasis,
    coeffs: Vec<DecimalInt>,
}

fn default_basis() -> BurnsideBasis {
    BurnsideBasis::T
}

impl BurnsideElement {
    /// Reads coefficients given in any of the three encodings.
    pub fn from_basis(p: u64, m: u32, basis: BurnsideBasis, coeffs: Vec<BigInt>) -> Result<Self, BurnsideError> {
        match basis {
            BurnsideBasis::T => BurnsideElement::from_t(p, m, coeffs),
            BurnsideBasis::Z => BurnsideElement::from_z(p, m, coeffs),
            BurnsideBasis::Marks => BurnsideElement::from_marks(p, m, &coeffs),
        }
    }
}

impl Serialize for BurnsideElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BurnsideJson {
            p: self.p,
            m: self.m,
            basis: BurnsideBasis::T,
            coeffs: to_decimal(&self.t),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BurnsideElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BurnsideJson::deserialize(d)?;
        BurnsideElement::from_basis(raw.p, raw.m, raw.basis, from_decimal(raw.coeffs)).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactint::ints;

    fn t(p: u64, m: u32, i: u32) -> BurnsideElement {
        BurnsideElement::orbit(p, m, i).unwrap()
    }

    #[test]
    fn marks_of_orbits() {
        assert_eq!(t(2, 3, 1).marks(), ints(&[4, 4, 0, 0]));
        assert_eq!(BurnsideElement::one(3, 2).unwrap().marks(), ints(&[1, 1, 1]));
        assert_eq!(BurnsideElement::z(2, 3, 2).unwrap().marks(), ints(&[0, 0, 4, 0]));
        assert_eq!(BurnsideElement::z(3, 2, 1).unwrap().marks(), ints(&[0, 9, 0]));
    }

    #[test]
    fn euler_class_of_w8_from_marks() {
        let e = BurnsideElement::from_marks(2, 3, &ints(&[0, 16, 4, 2])).unwrap();
        assert_eq!(e.t_coeffs(), ints(&[-2, 3, 1, 2]).as_slice());
        assert_eq!(e.z_coeffs(), ints(&[0, 2, 1, 1]));
    }

    #[test]
    fn non_image_marks_are_rejected() {
        let err = BurnsideElement::from_marks(2, 1, &ints(&[1, 0])).unwrap_err();
        assert!(matches!(err, BurnsideError::NotInBurnsideImage { level: 0, .. }));
    }

    #[test]
    fn products_follow_the_orbit_rule() {
        let x = multiply(&t(2, 2, 0), &t(2, 2, 1)).unwrap();
        assert_eq!(x, t(2, 2, 0).scale(&2.into()));
        let z1 = BurnsideElement::z(3, 3, 1).unwrap();
        let z2 = BurnsideElement::z(3, 3, 2).unwrap();
        assert!(multiply(&z1, &z2).unwrap().is_zero());
        let one = BurnsideElement::one(3, 3).unwrap();
        assert_eq!(multiply(&z1, &one).unwrap(), z1);
    }

    #[test]
    fn transfer_copies_coefficients() {
        assert_eq!(transfer(&t(2, 1, 0), 2).unwrap(), t(2, 2, 0));
        assert!(transfer(&BurnsideElement::zero(3, 1).unwrap(), 3).unwrap().is_zero());
        assert!(transfer(&t(2, 2, 0), 1).is_err());
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction(&t(2, 3, 1)).unwrap(), t(2, 2, 1).scale(&2.into()));
        assert_eq!(restriction(&t(2, 3, 2)).unwrap(), BurnsideElement::integer(2, 2, 2.into()).unwrap());
        assert_eq!(
            restriction(&BurnsideElement::one(5, 2).unwrap()).unwrap(),
            BurnsideElement::one(5, 1).unwrap()
        );
    }

    #[test]
    fn geometric_fixed_points_shift_orbits() {
        assert_eq!(geometric_fixed(&t(2, 3, 2)).unwrap(), t(2, 2, 1));
        assert!(geometric_fixed(&t(3, 2, 0)).unwrap().is_zero());
        let e = BurnsideElement::from_marks(2, 3, &ints(&[0, 16, 4, 2])).unwrap();
        assert_eq!(geometric_fixed(&e).unwrap(), norm_from_trivial(2, &2.into(), 2).unwrap());
    }

    #[test]
    fn norms() {
        assert_eq!(norm_from_trivial(2, &2.into(), 2).unwrap().marks(), ints(&[16, 4, 2]));
        assert_eq!(norm_from_trivial(3, &1.into(), 2).unwrap(), BurnsideElement::one(3, 2).unwrap());
        assert!(norm_from_trivial(3, &0.into(), 2).unwrap().is_zero());
    }

    #[test]
    fn lifting_through_geometric_fixed_points() {
        let x = t(2, 2, 0).scale(&4.into());
        let lift = lift_through_phi(&x).unwrap();
        assert_eq!(lift.t_coeffs(), ints(&[-2, 4, 0, 0]).as_slice());
        assert_eq!(geometric_fixed(&lift).unwrap(), x);
        let err = lift_through_phi(&BurnsideElement::one(2, 0).unwrap()).unwrap_err();
        assert_eq!(err, BurnsideError::AugmentationObstruction { residue: 1.into() });
    }

    #[test]
    fn trivial_group_is_the_integers() {
        let x = BurnsideElement::integer(5, 0, 7.into()).unwrap();
        assert_eq!(x.marks(), ints(&[7]));
        assert_eq!(multiply(&x, &x).unwrap().marks(), ints(&[49]));
    }

    #[test]
    fn display_uses_orbit_names() {
        let x = BurnsideElement::from_t(2, 2, ints(&[2, 4, 0])).unwrap();
        assert_eq!(x.to_string(), "4[C_4/C_2] + 2[C_4]");
        let y = BurnsideElement::from_t(3, 1, ints(&[-1, 3])).unwrap();
        assert_eq!(y.to_string(), "3 - [C_3]");
    }

    #[test]
    fn json_accepts_all_encodings() {
        let x = BurnsideElement::from_t(2, 3, ints(&[-2, 3, 1, 2])).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":2,"m":3,"basis":"t","coeffs":["-2","3","1","2"]}"#);
        for j in [
            s.as_str(),
            r#"{"p":2,"m":3,"basis":"z","coeffs":[0,2,1,1]}"#,
            r#"{"p":2,"m":3,"basis":"marks","coeffs":["0","16","4","2"]}"#,
        ] {
            let y: BurnsideElement = serde_json::from_str(j).unwrap();
            assert_eq!(y, x);
        }
    }
}
