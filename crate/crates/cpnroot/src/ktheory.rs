//! Spoke-graded equivariant K-theory of `C_{p^n}` and its Adams-fixed lattices.
//!
//! Write `V_m = L^{d_1} + … + L^{d_m}` for the d-sequence `d`, `β_m` for its
//! Bott class and `e_{a,b} = Π_{a<t≤b} (1 - L^{d_t})`. A class of spoke degree
//! `K` is stored as an [`RUElement`] payload `x` relative to `β_{⌊K/2⌋}`:
//!
//! * in degree `2m` the class is `x β_m`;
//! * in degree `2m-1` the class is the `a^{1/2}`-preimage of `x β_{m-1}`,
//!   and `x` has augmentation zero.
//!
//! With these conventions `a^{1/2}` multiplies the payload by `1 - L^{d_m}`
//! going from degree `2m` to `2m-1`, and leaves it alone going from `2m-1` to
//! `2m-2`. The Adams operation `ψ^ℓ` acts by
//! `x ↦ ψ^ℓ(x) · Π_{i≤⌊K/2⌋} (1 - L^{ℓ d_i})/(1 - L^{d_i})`.
//!
//! The marks of a class of degree `K` are the character values of
//! `x · e_{0,⌊K/2⌋}` at generators of `C_p, …, C_{p^n}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactint::{
    kernel_lattice, lattice_index, smith, solve_integral, ExactIntError, Index, IntMatrix, Lattice,
};
use crate::json::{from_decimal, to_decimal, DecimalInt};
use crate::repring::{default_ell, DSequence, GroupSpec, RUElement, RepRingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error(transparent)]
    RepRing(#[from] RepRingError),
    #[error(transparent)]
    ExactInt(#[from] ExactIntError),
    #[error("degree {degree} is below the minimum {min}")]
    DegreeOutOfRange { degree: usize, min: usize },
    #[error("an odd-degree payload must have augmentation 0, found {0}")]
    OddAugmentation(BigInt),
    #[error("β_{m} cannot be brought down to degree {degree}; it lives in degree {}", 2 * m)]
    ClassAboveItsBott { m: usize, degree: usize },
    #[error("{ell} is not prime to {p}")]
    NotCoprime { ell: i64, p: u64 },
    #[error("the character value at level {level} is irrational")]
    IrrationalMarks { level: u32 },
    #[error("a^(1/2) carries a class of degree {degree} outside the fixed lattice of degree {}", degree - 1)]
    NotInLattice { degree: usize },
    #[error("unknown mode {0:?}; expected oracle, closed or real")]
    UnknownMode(String),
}

/// `e_{a,b} = Π_{a<t≤b} (1 - L^{d_t})` in `RU(C_{p^n})`.
pub fn euler_block(group: GroupSpec, a: usize, b: usize) -> RUElement {
    let seq = DSequence::new(group.p());
    (a + 1..=b).fold(RUElement::one(group), |acc, t| acc.mul_one_minus(seq.entry(t)))
}

/// A class of `π_{0,2m}KU` of the form `coef · t_{n,s} β_m`, to be pushed
/// down to a lower degree by powers of `a^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub coef: i64,
    pub s: u32,
    pub m: usize,
}

impl ClassSpec {
    pub fn new(coef: i64, s: u32, m: usize) -> Self {
        ClassSpec { coef, s, m }
    }

    /// The class `a^{(2m-K)/2} · coef · t_{n,s} β_m` in degree `K ≤ 2m`.
    pub fn materialize(&self, group: GroupSpec, degree: usize) -> Result<GradedKUClass, KTheoryError> {
        if degree > 2 * self.m {
            return Err(KTheoryError::ClassAboveItsBott { m: self.m, degree });
        }
        let t = RUElement::permutation_character(group, self.s)?;
        let payload = (&euler_block(group, degree / 2, self.m) * &t).scale(&BigInt::from(self.coef));
        Ok(GradedKUClass {
            group,
            degree,
            payload,
        })
    }
}

/// A class of `π_{0,K} KU_{C_{p^n}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedKUClass {
    group: GroupSpec,
    degree: usize,
    payload: RUElement,
}

impl GradedKUClass {
    pub fn new(degree: usize, payload: RUElement) -> Result<Self, KTheoryError> {
        if degree % 2 == 1 {
            let aug = payload.augmentation();
            if !aug.is_zero() {
                return Err(KTheoryError::OddAugmentation(aug));
            }
        }
        Ok(GradedKUClass {
            group: payload.group(),
            degree,
            payload,
        })
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn payload(&self) -> &RUElement {
        &self.payload
    }

    /// `⌊K/2⌋`, the index of the Bott class the payload is written against.
    pub fn bott_index(&self) -> usize {
        self.degree / 2
    }

    /// Character values of `payload · e_{0,⌊K/2⌋}` at levels `1..=n`.
    pub fn marks(&self) -> Result<Vec<BigInt>, KTheoryError> {
        let full = &self.payload * &euler_block(self.group, 0, self.bott_index());
        (1..=self.group.n())
            .map(|j| {
                full.char_value(j)?
                    .as_integer()
                    .ok_or(KTheoryError::IrrationalMarks { level: j })
            })
            .collect()
    }
}

/// The one-cell map `a^{1/2}: π_{0,K} → π_{0,K-1}`.
pub fn a_half(x: &GradedKUClass) -> Result<GradedKUClass, KTheoryError> {
    if x.degree == 0 {
        return Err(KTheoryError::DegreeOutOfRange { degree: 0, min: 1 });
    }
    let payload = if x.degree.is_multiple_of(2) {
        let d = DSequence::new(x.group.p()).entry(x.degree / 2);
        x.payload.mul_one_minus(d)
    } else {
        x.payload.clone()
    };
    Ok(GradedKUClass {
        group: x.group,
        degree: x.degree - 1,
        payload,
    })
}

fn check_ell(group: GroupSpec, ell: i64) -> Result<(), KTheoryError> {
    if ell.rem_euclid(group.p() as i64) == 0 {
        return Err(KTheoryError::NotCoprime { ell, p: group.p() });
    }
    Ok(())
}

/// `Π_{i≤m} (1 - L^{ℓ d_i})/(1 - L^{d_i})`, the Bott multiplier of `ψ^ℓ` on `β_m`.
pub fn bott_multiplier(group: GroupSpec, m: usize, ell: i64) -> RUElement {
    let seq = DSequence::new(group.p());
    (1..=m).fold(RUElement::one(group), |acc, i| acc.mul_bott_multiplier(seq.entry(i), ell))
}

/// `ψ^ℓ` on a graded class.
pub fn adams_graded(x: &GradedKUClass, ell: i64) -> Result<GradedKUClass, KTheoryError> {
    check_ell(x.group, ell)?;
    let seq = DSequence::new(x.group.p());
    let payload = (1..=x.bott_index()).fold(x.payload.adams(ell), |acc, i| acc.mul_bott_multiplier(seq.entry(i), ell));
    Ok(GradedKUClass {
        group: x.group,
        degree: x.degree,
        payload,
    })
}

/// The matrix of `ψ^ℓ` on payload coordinates: row `a` holds the payload of
/// `ψ^ℓ(L^a β)`, which is the Bott multiplier shifted by `ℓa`.
pub fn adams_matrix(group: GroupSpec, degree: usize, ell: i64) -> Result<IntMatrix, KTheoryError> {
    check_ell(group, ell)?;
    let b = bott_multiplier(group, degree / 2, ell);
    let n = group.order();
    let rows = (0..n).map(|a| b.shift(ell * a as i64).into_coeffs()).collect();
    Ok(IntMatrix::from_rows(n, rows)?)
}

/// Where a fixed lattice came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Oracle,
    ClosedFormComplex,
    ClosedFormReal,
    /// The augmentation ideal of the rational representation ring, used in degree 0.
    AugmentationIdeal,
}

/// A lattice of payload vectors in `ℤ^{p^n}` for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLattice {
    pub group: GroupSpec,
    pub degree: usize,
    pub lattice: Lattice,
    pub provenance: Provenance,
    /// For oracle lattices: whether every basis vector is also fixed by the
    /// witness Adams operations that were not used to cut the lattice out.
    pub stabilized: Option<bool>,
}

impl FixedLattice {
    fn from_classes(group: GroupSpec, degree: usize, classes: &[GradedKUClass], provenance: Provenance) -> Self {
        let rows = classes.iter().map(|c| c.payload.coeffs().to_vec()).collect();
        let lattice = Lattice::from_rows(group.order(), rows).expect("payloads have the group order as length");
        FixedLattice {
            group,
            degree,
            lattice,
            provenance,
            stabilized: None,
        }
    }

    /// The basis rows as graded classes.
    pub fn classes(&self) -> Vec<GradedKUClass> {
        self.lattice
            .basis()
            .rows_iter()
            .map(|r| GradedKUClass {
                group: self.group,
                degree: self.degree,
                payload: RUElement::from_coeffs(self.group, r.to_vec()).expect("row length is the group order"),
            })
            .collect()
    }
}

#[derive(Serialize)]
struct FixedLatticeJson {
    p: u64,
    n: u32,
    degree: usize,
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilized: Option<bool>,
    basis: Vec<Vec<DecimalInt>>,
}

impl Serialize for FixedLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FixedLatticeJson {
            p: self.group.p(),
            n: self.group.n(),
            degree: self.degree,
            provenance: self.provenance,
            stabilized: self.stabilized,
            basis: self.lattice.basis().rows_iter().map(to_decimal).collect(),
        }
        .serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    p: u64,
    n: u32,
    degree: usize,
    payload: Vec<DecimalInt>,
}

impl Serialize for GradedKUClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GradedJson {
            p: self.group.p(),
            n: self.group.n(),
            degree: self.degree,
            payload: to_decimal(self.payload.coeffs()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedKUClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GradedJson::deserialize(d)?;
        let g = GroupSpec::new(raw.p, raw.n).map_err(D::Error::custom)?;
        let payload = RUElement::from_coeffs(g, from_decimal(raw.payload)).map_err(D::Error::custom)?;
        GradedKUClass::new(raw.degree, payload).map_err(D::Error::custom)
    }
}

/// Adams parameters whose operations generate the action of every `ℓ` prime
/// to `p` on the fixed lattice: `ℓ_0` and `ℓ_0²` for odd `p`, where `ℓ_0` is a
/// primitive root modulo `p²`; `3` and `5` for `p = 2`, since `(ℤ/2^i)^×` is
/// not cyclic and needs two generators.
pub fn default_ell_set(p: u64) -> Vec<i64> {
    if p == 2 {
        vec![3, 5]
    } else {
        let l = default_ell(p);
        vec![l, l * l]
    }
}

/// Further parameters prime to `p`, used only to confirm that a lattice cut
/// out by `ell_set` is fixed by them too.
pub fn witness_ells(p: u64, ell_set: &[i64], count: usize) -> Vec<i64> {
    (2i64..)
        .filter(|l| l % p as i64 != 0 && !ell_set.contains(l))
        .take(count)
        .collect()
}

/// `M_K^ℂ` by brute force: the saturated lattice of payloads fixed by every
/// `ψ^ℓ` with `ℓ ∈ ell_set`, together with augmentation zero in odd degrees.
pub fn oracle_complex_fixed(group: GroupSpec, degree: usize, ell_set: &[i64]) -> Result<FixedLattice, KTheoryError> {
    if degree == 0 {
        return Err(KTheoryError::DegreeOutOfRange { degree, min: 1 });
    }
    let n = group.order();
    let mut blocks = Vec::with_capacity(ell_set.len());
    for &ell in ell_set {
        let mut m = adams_matrix(group, degree, ell)?;
        for a in 0..n {
            let v = m.get(a, a) - BigInt::one();
            m.set(a, a, v);
        }
        blocks.push(m);
    }
    let extra = usize::from(degree % 2 == 1);
    let cols = blocks.len() * n + extra;
    let mut a = IntMatrix::zeros(n, cols);
    for (b, m) in blocks.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                a.set(i, b * n + j, m.get(i, j).clone());
            }
        }
    }
    if extra == 1 {
        for i in 0..n {
            a.set(i, cols - 1, BigInt::one());
        }
    }
    let lattice = kernel_lattice(&a);
    let mut out = FixedLattice {
        group,
        degree,
        lattice,
        provenance: Provenance::Oracle,
        stabilized: None,
    };
    let witnesses = witness_ells(group.p(), ell_set, 3);
    let mut stable = true;
    for class in out.classes() {
        for &w in &witnesses {
            stable &= adams_graded(&class, w)? == class;
        }
    }
    out.stabilized = Some(stable);
    Ok(out)
}

/// `q_s`: the least multiple of `2p^{s-1}(p-1)` strictly above `k`.
pub fn q_value(p: u64, s: u32, k: usize) -> usize {
    let step = 2 * (p.pow(s - 1) * (p - 1)) as usize;
    step * ((k + 1).div_ceil(step))
}

/// Generators of `M_k^ℂ`: `a^{q_s-k} t_{n,s} β_{q_s/2}` for `1 ≤ s ≤ n`.
pub fn complex_basis_specs(p: u64, n: u32, k: usize) -> Vec<ClassSpec> {
    (1..=n).map(|s| ClassSpec::new(1, s, q_value(p, s, k) / 2)).collect()
}

/// Generators of the real fixed lattice `M_k`. For odd `p` this is `M_k^ℂ`;
/// at `p = 2` it follows the three cases `n = 1`, `n = 2` and `n ≥ 3`, with
/// `k = 8k' - j` and `1 ≤ j ≤ 8`.
pub fn real_basis_specs(p: u64, n: u32, k: usize) -> Vec<ClassSpec> {
    if p != 2 {
        return complex_basis_specs(p, n, k);
    }
    let kp = (k + 8) / 8;
    let j = 8 * kp - k;
    let top = 4 * kp;
    let b = |i: u32| -> usize {
        let step = 1usize << (i - 1);
        step * top.div_ceil(step)
    };
    let low_one = match j {
        1..=4 => top,
        5 => top - 1,
        6 => top - 2,
        _ => top - 3,
    };
    match n {
        1 => vec![ClassSpec::new(1, 1, low_one)],
        2 => match j {
            1..=4 => vec![ClassSpec::new(1, 1, top), ClassSpec::new(1, 2, top)],
            5 => vec![ClassSpec::new(1, 1, top - 2), ClassSpec::new(2, 2, top - 2)],
            6 => vec![ClassSpec::new(1, 1, top - 2), ClassSpec::new(1, 2, top - 2)],
            _ => vec![ClassSpec::new(1, 1, top - 3), ClassSpec::new(1, 2, top - 2)],
        },
        _ => {
            let mut out = match j {
                1..=4 => return (1..=n).map(|i| ClassSpec::new(1, i, b(i))).collect(),
                5 | 6 => vec![ClassSpec::new(1, 1, top - 2), ClassSpec::new(1, 2, top - 2)],
                _ => vec![ClassSpec::new(1, 1, top - 3), ClassSpec::new(1, 2, top - 2)],
            };
            out.extend((3..=n).map(|i| ClassSpec::new(1, i, b(i))));
            out
        }
    }
}

fn materialize_all(group: GroupSpec, k: usize, specs: &[ClassSpec]) -> Result<Vec<GradedKUClass>, KTheoryError> {
    specs.iter().map(|s| s.materialize(group, k)).collect()
}

pub fn closed_form_complex_basis(group: GroupSpec, k: usize) -> Result<Vec<GradedKUClass>, KTheoryError> {
    if k == 0 {
        return Err(KTheoryError::DegreeOutOfRange { degree: 0, min: 1 });
    }
    materialize_all(group, k, &complex_basis_specs(group.p(), group.n(), k))
}

pub fn closed_form_real_basis(group: GroupSpec, k: usize) -> Result<Vec<GradedKUClass>, KTheoryError> {
    if k == 0 {
        return Err(KTheoryError::DegreeOutOfRange { degree: 0, min: 1 });
    }
    materialize_all(group, k, &real_basis_specs(group.p(), group.n(), k))
}

pub fn closed_form_complex_lattice(group: GroupSpec, k: usize) -> Result<FixedLattice, KTheoryError> {
    let classes = closed_form_complex_basis(group, k)?;
    Ok(FixedLattice::from_classes(group, k, &classes, Provenance::ClosedFormComplex))
}

pub fn closed_form_real_lattice(group: GroupSpec, k: usize) -> Result<FixedLattice, KTheoryError> {
    let classes = closed_form_real_basis(group, k)?;
    Ok(FixedLattice::from_classes(group, k, &classes, Provenance::ClosedFormReal))
}

/// `M_0`: the augmentation ideal of `RQ(C_{p^n})`, spanned by the
/// permutation-character differences `z_{n,i} = p t_{n,i} - t_{n,i-1}`.
pub fn augmentation_ideal_lattice(group: GroupSpec) -> Result<FixedLattice, KTheoryError> {
    let p = BigInt::from(group.p());
    let mut classes = Vec::new();
    for i in 1..=group.n() {
        let z = RUElement::permutation_character(group, i)?
            .scale(&p)
            .checked_sub(&RUElement::permutation_character(group, i - 1)?)?;
        classes.push(GradedKUClass {
            group,
            degree: 0,
            payload: z,
        });
    }
    Ok(FixedLattice::from_classes(group, 0, &classes, Provenance::AugmentationIdeal))
}

/// Which description of a fixed lattice to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    Oracle,
    Closed,
    Real,
}

impl std::str::FromStr for LatticeMode {
    type Err = KTheoryError;
    fn from_str(s: &str) -> Result<Self, KTheoryError> {
        match s {
            "oracle" => Ok(LatticeMode::Oracle),
            "closed" => Ok(LatticeMode::Closed),
            "real" => Ok(LatticeMode::Real),
            other => Err(KTheoryError::UnknownMode(other.to_string())),
        }
    }
}

pub fn fixed_lattice(group: GroupSpec, k: usize, mode: LatticeMode) -> Result<FixedLattice, KTheoryError> {
    match mode {
        LatticeMode::Oracle => oracle_complex_fixed(group, k, &default_ell_set(group.p())),
        LatticeMode::Closed => closed_form_complex_lattice(group, k),
        LatticeMode::Real => closed_form_real_lattice(group, k),
    }
}

/// Coordinates of `a^{1/2}(y)`, for each `y` in `upper`, in the basis `lower`.
/// Fails if some image is not an integral combination.
pub fn a_half_matrix(upper: &[GradedKUClass], lower: &[GradedKUClass]) -> Result<IntMatrix, KTheoryError> {
    let Some(first) = lower.first() else {
        return Ok(IntMatrix::zeros(upper.len(), 0));
    };
    let group = first.group;
    let basis = IntMatrix::from_rows(group.order(), lower.iter().map(|c| c.payload.coeffs().to_vec()).collect())?;
    let mut rows = Vec::with_capacity(upper.len());
    for y in upper {
        let image = a_half(y)?;
        let sol = solve_integral(&basis, image.payload.coeffs()).map_err(|e| match e {
            ExactIntError::NoSolution => KTheoryError::NotInLattice { degree: y.degree },
            other => other.into(),
        })?;
        rows.push(sol.integer_coeffs().ok_or(KTheoryError::NotInLattice { degree: y.degree })?);
    }
    Ok(IntMatrix::from_rows(lower.len(), rows)?)
}

/// `M_k / a^{1/2}(M_{k+1})` as a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientStructure {
    pub p: u64,
    pub n: u32,
    pub k: usize,
    /// The nontrivial Smith invariants, in divisibility order.
    #[serde(serialize_with = "ser_ints")]
    pub invariants: Vec<BigInt>,
    #[serde(serialize_with = "ser_int")]
    pub order: BigInt,
    /// When the quotient is cyclic: the image of each `M_k` generator in
    /// `ℤ/order`, scaled so that the first generator with a unit image maps to 1.
    #[serde(serialize_with = "ser_opt_ints")]
    pub images: Option<Vec<BigInt>>,
    /// Rows: coordinates of `a^{1/2}` of the `M_{k+1}` generators in the `M_k` generators.
    #[serde(skip)]
    pub relations: IntMatrix,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    to_decimal(v).serialize(s)
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    DecimalInt(v.clone()).serialize(s)
}

fn ser_opt_ints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(|x| to_decimal(x)).serialize(s)
}

/// The quotient of consecutive fixed lattices, using the real generators at
/// `p = 2` and the complex ones otherwise.
pub fn quotient_structure(group: GroupSpec, k: usize) -> Result<QuotientStructure, KTheoryError> {
    quotient_structure_with_basis(group, k, &closed_form_real_basis(group, k)?)
}

/// The quotient `M_k / a^{1/2}(M_{k+1})` with `M_k` written in the basis `lower`.
pub fn quotient_structure_with_basis(
    group: GroupSpec,
    k: usize,
    lower: &[GradedKUClass],
) -> Result<QuotientStructure, KTheoryError> {
    let upper = closed_form_real_basis(group, k + 1)?;
    let c = a_half_matrix(&upper, lower)?;
    let snf = smith(&c);
    let mut diag = snf.diagonal.clone();
    diag.resize(lower.len(), BigInt::zero());
    let invariants: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    let order = if invariants.iter().any(Zero::is_zero) {
        BigInt::zero()
    } else {
        invariants.iter().product()
    };
    let images = if invariants.len() == 1 && !order.is_zero() {
        let last = lower.len() - 1;
        let raw: Vec<BigInt> = (0..lower.len()).map(|s| snf.v.get(s, last).mod_floor(&order)).collect();
        let p = BigInt::from(group.p());
        let unit = raw.iter().find(|x| !x.is_multiple_of(&p)).cloned();
        unit.map(|u| {
            let inv = u.modinv(&order).expect("prime-power modulus and a unit");
            raw.iter().map(|x| (x * &inv).mod_floor(&order)).collect()
        })
    } else if invariants.is_empty() {
        Some(vec![BigInt::zero(); lower.len()])
    } else {
        None
    };
    Ok(QuotientStructure {
        p: group.p(),
        n: group.n(),
        k,
        invariants,
        order,
        images,
        relations: c,
    })
}

impl QuotientStructure {
    /// True when `ℤ^n/relations ≅ ℤ/modulus` with generator `s` sent to
    /// `expected[s]`: the functional must kill every relation, hit a unit,
    /// and the relations must have determinant `± modulus`.
    pub fn matches_cyclic(&self, expected: &[BigInt], modulus: &BigInt) -> bool {
        if self.relations.nrows() != expected.len() || self.relations.ncols() != expected.len() {
            return false;
        }
        let kills = self.relations.rows_iter().all(|row| {
            let v: BigInt = row.iter().zip(expected).map(|(a, b)| a * b).sum();
            v.is_multiple_of(modulus)
        });
        let p = BigInt::from(self.p);
        let surjective = expected.iter().any(|e| !e.is_multiple_of(&p));
        let det = crate::exactint::determinant(&self.relations).abs();
        kills && surjective && &det == modulus
    }
}

/// The classes `a^{1/2} t_{n,s} β_{(k+1)/2}` for odd `k`, and whether they
/// span the real fixed lattice `M_k`.
pub fn critical_generators(group: GroupSpec, k: usize) -> Result<(Vec<GradedKUClass>, bool), KTheoryError> {
    if k.is_multiple_of(2) {
        return Err(KTheoryError::DegreeOutOfRange { degree: k, min: 1 });
    }
    let specs: Vec<ClassSpec> = (1..=group.n()).map(|s| ClassSpec::new(1, s, k.div_ceil(2))).collect();
    let classes = materialize_all(group, k, &specs)?;
    let span = FixedLattice::from_classes(group, k, &classes, Provenance::ClosedFormReal);
    let spans = span.lattice == closed_form_real_lattice(group, k)?.lattice;
    Ok((classes, spans))
}

/// The index of `a^{1/2}(M_K^ℂ)` in `M_{K-1}^ℂ`, from the closed-form lattices
/// (and the augmentation ideal when `K = 1`).
pub fn a_half_index(group: GroupSpec, degree: usize) -> Result<Index, KTheoryError> {
    if degree == 0 {
        return Err(KTheoryError::DegreeOutOfRange { degree, min: 1 });
    }
    let source = closed_form_complex_basis(group, degree)?;
    let target = if degree == 1 {
        augmentation_ideal_lattice(group)?
    } else {
        closed_form_complex_lattice(group, degree - 1)?
    };
    let images: Vec<GradedKUClass> = source.iter().map(a_half).collect::<Result<_, _>>()?;
    let sub = FixedLattice::from_classes(group, degree - 1, &images, Provenance::ClosedFormComplex);
    Ok(lattice_index(&sub.lattice, &target.lattice)?)
}

/// Oracle and closed-form lattices for every degree `1..=max_k`, in parallel.
pub fn oracle_sweep(group: GroupSpec, max_k: usize) -> Result<Vec<(FixedLattice, FixedLattice)>, KTheoryError> {
    let ells = default_ell_set(group.p());
    (1..=max_k)
        .into_par_iter()
        .map(|k| Ok((oracle_complex_fixed(group, k, &ells)?, closed_form_complex_lattice(group, k)?)))
        .collect()
}
