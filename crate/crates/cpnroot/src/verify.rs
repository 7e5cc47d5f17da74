//! Verification suites shared by the command line and the test targets.
//!
//! Each suite enumerates its checks, runs them (optionally on the rayon pool)
//! and returns a report whose failures are listed in enumeration order, so
//! output does not depend on scheduling.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::burnside::{
    geometric_fixed, lift_through_phi, multiply, restrict_to, restriction, transfer, BurnsideElement,
};
use crate::exactint::{kernel_lattice, pow_u, IntMatrix, Lattice};
use crate::ktheory::{
    a_half_index, closed_form_complex_lattice, critical_generators, default_ell_set, euler_block,
    oracle_complex_fixed, quotient_structure, quotient_structure_with_basis,
};
use crate::mahowald::{
    degree_image, f_even_form, f_marks_consistency, f_value, gamma_basis, gamma_basis_from_norms, jump_degree_weights,
    mahowald_invariant, presentation_check, FTable, JPart,
};
use crate::repring::{
    bott_fixed_value, default_ell, dseq_block_restriction_check, euler_class, verify_adams_on_w_power, DSequence,
    GroupSpec, RUElement,
};

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Burnside,
    Repring,
    OracleVsClosed,
    FTables,
    Examples,
    Presentation,
    Quotients,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Burnside,
        Suite::Repring,
        Suite::OracleVsClosed,
        Suite::FTables,
        Suite::Examples,
        Suite::Presentation,
        Suite::Quotients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Burnside => "burnside",
            Suite::Repring => "repring",
            Suite::OracleVsClosed => "oracle-vs-closed",
            Suite::FTables => "f-tables",
            Suite::Examples => "examples",
            Suite::Presentation => "presentation",
            Suite::Quotients => "quotients",
        }
    }
}

/// A suite name from the command line; `all` expands to every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>, String> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_str(name).map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Sweep parameters.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest `n`; `n = 4` is only swept at `p = 2`.
    pub max_n: u32,
    /// Caps the default degree bound `6 p^{n-1}(p-1)`.
    pub max_k: Option<usize>,
    pub parallel: bool,
    /// Random elements per group in the Burnside suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 3,
            max_k: None,
            parallel: true,
            samples: 1000,
            seed: 0x5eed,
        }
    }
}

impl VerifyConfig {
    /// `(p, n)` with `p ∈ {2, 3, 5}` and `n ≤ min(max_n, 3)`, plus `(2, 4)` when `max_n ≥ 4`.
    pub fn groups(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5] {
            for n in 1..=self.max_n.min(3) {
                out.push((p, n));
            }
        }
        if self.max_n >= 4 {
            out.push((2, 4));
        }
        out
    }

    pub fn k_bound(&self, p: u64, n: u32) -> usize {
        let natural = 6 * (p.pow(n - 1) * (p - 1)) as usize;
        self.max_k.map_or(natural, |m| m.min(natural))
    }

    /// Every `(p, n, k)` of the sweep.
    pub fn triples(&self) -> Vec<(u64, u32, usize)> {
        self.groups()
            .into_iter()
            .flat_map(|(p, n)| (1..=self.k_bound(p, n)).map(move |k| (p, n, k)))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Observations that are not failures, such as skipped degrees.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, (checks, failures, notes): Outcome) {
        self.checks += checks;
        self.failures.extend(failures);
        self.notes.extend(notes);
    }
}

/// Checks run, failures and notes of one task.
type Outcome = (usize, Vec<String>, Vec<String>);

fn run_tasks<T, F>(tasks: Vec<T>, parallel: bool, f: F) -> Vec<Outcome>
where
    T: Send + Sync,
    F: Fn(&T) -> Outcome + Send + Sync,
{
    if parallel {
        tasks.par_iter().map(&f).collect()
    } else {
        tasks.iter().map(&f).collect()
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    match suite {
        Suite::Burnside => burnside_suite(cfg),
        Suite::Repring => repring_suite(cfg),
        Suite::OracleVsClosed => oracle_vs_closed_suite(cfg),
        Suite::FTables => f_tables_suite(cfg),
        Suite::Examples => examples_suite(),
        Suite::Presentation => presentation_suite(cfg),
        Suite::Quotients => quotients_suite(cfg),
    }
}

fn random_element(rng: &mut ChaCha8Rng, p: u64, m: u32) -> BurnsideElement {
    let t = (0..=m).map(|_| BigInt::from(rng.gen_range(-40i64..=40))).collect();
    BurnsideElement::from_t(p, m, t).expect("prime p and matching length")
}

/// The product in the orbit basis from `t_{m,i} t_{m,j} = p^{m-j} t_{m,i}` for `i ≤ j`.
fn orbit_product(x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
    let (p, m) = (x.p(), x.level());
    let mut t = vec![BigInt::zero(); m as usize + 1];
    for (i, a) in x.t_coeffs().iter().enumerate() {
        for (j, b) in y.t_coeffs().iter().enumerate() {
            let (lo, hi) = (i.min(j), i.max(j));
            t[lo] += a * b * pow_u(p, (m as usize - hi) as u64);
        }
    }
    BurnsideElement::from_t(p, m, t).expect("same shape")
}

fn t_matrix(elements: &[BurnsideElement], width: usize) -> IntMatrix {
    let rows = elements.iter().map(|e| e.t_coeffs().to_vec()).collect();
    IntMatrix::from_rows(width, rows).expect("rectangular")
}

/// Algebraic identities of `A(C_{p^m})` on seeded random elements.
pub fn burnside_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Burnside);
    let mut tasks = Vec::new();
    for p in [2u64, 3, 5] {
        for m in 0..=3u32 {
            tasks.push((p, m));
        }
    }
    let samples = cfg.samples;
    let seed = cfg.seed;
    for outcome in run_tasks(tasks, cfg.parallel, |&(p, m)| burnside_group(p, m, samples, seed)) {
        report.absorb(outcome);
    }
    report
}

fn burnside_group(p: u64, m: u32, samples: usize, seed: u64) -> Outcome {
    let mut rep = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ m as u64);
    let tag = format!("A(C_{p}^{m})");
    let order_next = pow_u(p, m as u64 + 1);

    for i in 0..=m {
        // t_{m,i} = p^{m-i} - Σ_{i<k≤m} p^{k-i-1} z_{m,k}
        let mut z = vec![BigInt::zero(); m as usize + 1];
        z[0] = pow_u(p, (m - i) as u64);
        for k in i + 1..=m {
            z[k as usize] = -pow_u(p, (k - i - 1) as u64);
        }
        let lhs = BurnsideElement::orbit(p, m, i).expect("valid orbit");
        rep.check(BurnsideElement::from_z(p, m, z).ok() == Some(lhs.clone()), || {
            format!("{tag}: t_{i} in the z-basis")
        });
        if i < m {
            rep.check(
                transfer(&lhs, m + 1).ok() == BurnsideElement::orbit(p, m + 1, i).ok(),
                || format!("{tag}: tr(t_{i})"),
            );
        }
        if m >= 1 && i < m {
            let expected = BurnsideElement::orbit(p, m - 1, i).expect("valid orbit").scale(&p.into());
            rep.check(restriction(&lhs).ok() == Some(expected), || format!("{tag}: res(t_{i})"));
        }
        if m >= 1 {
            let phi = geometric_fixed(&lhs).expect("m ≥ 1");
            let expected = if i == 0 {
                BurnsideElement::zero(p, m - 1).expect("prime")
            } else {
                BurnsideElement::orbit(p, m - 1, i - 1).expect("valid orbit")
            };
            rep.check(phi == expected, || format!("{tag}: Φ(t_{i})"));
        }
        if i >= 1 {
            let z = BurnsideElement::z(p, m, i).expect("1 ≤ i ≤ m");
            rep.check(
                transfer(&z, m + 1).ok() == BurnsideElement::z(p, m + 1, i).ok(),
                || format!("{tag}: tr(z_{i})"),
            );
            if i < m {
                let expected = BurnsideElement::z(p, m - 1, i).expect("valid").scale(&p.into());
                rep.check(restriction(&z).ok() == Some(expected), || format!("{tag}: res(z_{i})"));
            }
            if i >= 2 {
                rep.check(
                    geometric_fixed(&z).ok() == BurnsideElement::z(p, m - 1, i - 1).ok(),
                    || format!("{tag}: Φ(z_{i})"),
                );
            }
        }
    }

    // ker(res^m_i) is spanned by z_{m,i+1}, …, z_{m,m}.
    let width = m as usize + 1;
    for i in 0..m {
        let images: Vec<BurnsideElement> = (0..=m)
            .map(|j| restrict_to(&BurnsideElement::orbit(p, m, j).expect("valid"), i).expect("i ≤ m"))
            .collect();
        let kernel = kernel_lattice(&t_matrix(&images, i as usize + 1));
        let zs: Vec<BurnsideElement> = (i + 1..=m).map(|k| BurnsideElement::z(p, m, k).expect("valid")).collect();
        let span = Lattice::from_generators(&t_matrix(&zs, width));
        rep.check(kernel == span, || format!("{tag}: kernel of res to level {i}"));
    }

    for _ in 0..samples {
        let x = random_element(&mut rng, p, m);
        let y = random_element(&mut rng, p, m);
        let prod = multiply(&x, &y).expect("same group");
        rep.check(prod == orbit_product(&x, &y), || format!("{tag}: product of {x} and {y}"));
        let pointwise: Vec<BigInt> = x.marks().iter().zip(y.marks()).map(|(a, b)| a * b).collect();
        rep.check(prod.marks() == pointwise, || format!("{tag}: marks of {x}·{y}"));
        rep.check(
            BurnsideElement::from_marks(p, m, &x.marks()).ok() == Some(x.clone()),
            || format!("{tag}: marks round trip of {x}"),
        );
        rep.check(
            BurnsideElement::from_z(p, m, x.z_coeffs()).ok() == Some(x.clone()),
            || format!("{tag}: z round trip of {x}"),
        );
        let json = serde_json::to_string(&x).expect("serializable");
        rep.check(
            serde_json::from_str::<BurnsideElement>(&json).ok() == Some(x.clone()),
            || format!("{tag}: JSON round trip of {x}"),
        );
        if m >= 1 {
            // Frobenius reciprocity: tr(u · res(y)) = tr(u) · y.
            let u = random_element(&mut rng, p, m - 1);
            let left = transfer(&multiply(&u, &restriction(&y).expect("m ≥ 1")).expect("same group"), m).expect("up");
            let right = multiply(&transfer(&u, m).expect("up"), &y).expect("same group");
            rep.check(left == right, || format!("{tag}: Frobenius reciprocity for {u}, {y}"));
            rep.check(
                geometric_fixed(&prod).ok() == Some(multiply(&geometric_fixed(&x).unwrap(), &geometric_fixed(&y).unwrap()).unwrap()),
                || format!("{tag}: Φ is multiplicative on {x}, {y}"),
            );
        }
        // 0 → I(C_{p^{m+1}}) → A(C_{p^m}) → ℤ/p^{m+1} → 0
        let residue = x.augmentation().mod_floor(&order_next);
        match lift_through_phi(&x) {
            Ok(lift) => rep.check(
                residue.is_zero()
                    && lift.augmentation().is_zero()
                    && geometric_fixed(&lift).ok() == Some(x.clone()),
                || format!("{tag}: lift of {x}"),
            ),
            Err(_) => rep.check(!residue.is_zero(), || format!("{tag}: {x} should lift")),
        }
        let mut w = random_element(&mut rng, p, m + 1);
        let aug = w.augmentation();
        w = w
            .sub(&BurnsideElement::orbit(p, m + 1, m + 1).expect("unit").scale(&aug))
            .expect("same group");
        let phi_w = geometric_fixed(&w).expect("m + 1 ≥ 1");
        rep.check(lift_through_phi(&phi_w).ok() == Some(w.clone()), || {
            format!("{tag}: Φ is injective on the augmentation ideal at {w}")
        });
    }
    (rep.checks, rep.failures, rep.notes)
}

fn random_ru(rng: &mut ChaCha8Rng, g: GroupSpec) -> RUElement {
    let coeffs = (0..g.order()).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
    RUElement::from_coeffs(g, coeffs).expect("group order length")
}

/// Representation-ring identities and the Euler-class lemmas on aligned blocks.
pub fn repring_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Repring);
    let tasks = cfg.groups();
    let seed = cfg.seed;
    for outcome in run_tasks(tasks, cfg.parallel, |&(p, n)| {
        let (c1, f1, n1) = repring_group(p, n, seed);
        let (c2, f2, n2) = euler_identities(p, n);
        (c1 + c2, [f1, f2].concat(), [n1, n2].concat())
    }) {
        report.absorb(outcome);
    }
    report
}

fn repring_group(p: u64, n: u32, seed: u64) -> Outcome {
    let mut rep = SuiteReport::default();
    let g = GroupSpec::new(p, n).expect("valid group");
    let tag = format!("RU(C_{})", g.order());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e9 ^ (p << 4) ^ n as u64);
    let ells = default_ell_set(p);
    let samples = if g.order() > 30 { 20 } else { 100 };
    for _ in 0..samples {
        let x = random_ru(&mut rng, g);
        let y = random_ru(&mut rng, g);
        let xy = &x * &y;
        for j in 0..=n {
            let lhs = xy.char_value(j).expect("level in range");
            let rhs = x.char_value(j).expect("level").mul(&y.char_value(j).expect("level"));
            rep.check(lhs == rhs, || format!("{tag}: character at level {j} is multiplicative"));
        }
        let l = default_ell(p);
        rep.check(x.adams(l) == x.adams(l + g.order() as i64), || {
            format!("{tag}: ψ^ℓ depends on ℓ mod p^n")
        });
        // Rational characters are exactly the elements fixed by the Adams operations.
        let mut orbit_sum = RUElement::zero(g);
        for a in (1..g.order() as i64).filter(|a| a % p as i64 != 0) {
            orbit_sum = &orbit_sum + &x.adams(a);
        }
        let fixed = ells.iter().all(|&l| orbit_sum.adams(l) == orbit_sum);
        rep.check(fixed == orbit_sum.rational_marks().is_some(), || {
            format!("{tag}: Galois sum is rational and fixed")
        });
        let fixed_x = ells.iter().all(|&l| x.adams(l) == x);
        rep.check(fixed_x == x.rational_marks().is_some(), || {
            format!("{tag}: rational ⇔ fixed on {x}")
        });
    }
    let seq = DSequence::new(p);
    for len in [2usize, 4, 6] {
        let e = euler_class(g, &seq.block(0, len));
        let inverted = euler_class(g, &seq.block(0, len).iter().map(|d| -d).collect::<Vec<_>>());
        rep.check(e.adams(-1) == inverted && inverted == e, || {
            format!("{tag}: ψ^-1 fixes the Euler class of an even block of length {len}")
        });
    }
    for i in 1..=n {
        let length = (p.pow(i - 1) * (p - 1)) as usize;
        for a in (0..4 * g.order()).step_by(length) {
            rep.check(dseq_block_restriction_check(p, n, i, a, length).unwrap_or(false), || {
                format!("{tag}: d-block at {a} restricts to W_{}", p.pow(i))
            });
        }
        for c in 1..=3 {
            let value = bott_fixed_value(p, n, c, i).ok();
            rep.check(value == Some(pow_u(p, c as u64 * p.pow(n - i))), || {
                format!("{tag}: fixed points of β^{c} at level {i}")
            });
        }
    }
    if g.order() <= 27 {
        for &l in &ells {
            for c in 1..=2 {
                rep.check(verify_adams_on_w_power(p, n, l, c).unwrap_or(false), || {
                    format!("{tag}: ψ^{l} on β_W^{c}")
                });
            }
        }
    }
    (rep.checks, rep.failures, rep.notes)
}

/// `φ_{n,i}(e_{a,b}) = p`, `e_{a,b} z_{n,i} = p^c z_{n,i}` and
/// `e_{a,b} t_{n,i} = Σ_{j ≤ i} p^{p^{i-j}+j-i-1} z_{n,j}` for aligned blocks with `b ≤ 4p^n`.
pub fn euler_identities(p: u64, n: u32) -> Outcome {
    let mut rep = SuiteReport::default();
    let g = GroupSpec::new(p, n).expect("valid group");
    let tag = format!("RU(C_{})", g.order());
    let limit = 4 * g.order();
    let pb = BigInt::from(p);
    let z = |i: u32| -> RUElement {
        let t_i = RUElement::permutation_character(g, i).expect("level");
        let t_prev = RUElement::permutation_character(g, i - 1).expect("level");
        t_i.scale(&pb).checked_sub(&t_prev).expect("same group")
    };
    for i in 1..=n {
        let len = (p.pow(i - 1) * (p - 1)) as usize;
        let t_i = RUElement::permutation_character(g, i).expect("level");
        let z_i = z(i);
        let mut expansion = RUElement::zero(g);
        for j in 1..=i {
            let e = (p.pow(i - j) + j as u64) as i64 - i as i64 - 1;
            expansion = &expansion + &z(j).scale(&pow_u(p, e as u64));
        }
        let mut a = 0;
        while a + len <= limit {
            let one = euler_block(g, a, a + len);
            let value = one.char_value(i).ok().and_then(|v| v.as_integer());
            rep.check(value == Some(pb.clone()), || format!("{tag}: φ_{i}(e_{{{a},{}}}) = p", a + len));
            rep.check(&one * &t_i == expansion, || format!("{tag}: e_{{{a},{}}} t_{i}", a + len));
            let mut c = 1;
            while a + c * len <= limit {
                let e = euler_block(g, a, a + c * len);
                rep.check(&e * &z_i == z_i.scale(&pow_u(p, c as u64)), || {
                    format!("{tag}: e_{{{a},{}}} z_{i} = p^{c} z_{i}", a + c * len)
                });
                c += 1;
            }
            a += len;
        }
    }
    (rep.checks, rep.failures, rep.notes)
}

/// Brute-force fixed lattices against the closed form over the sweep.
pub fn oracle_vs_closed_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::OracleVsClosed);
    for outcome in run_tasks(cfg.triples(), cfg.parallel, |&(p, n, k)| oracle_check(p, n, k)) {
        report.absorb(outcome);
    }
    report
}

pub fn oracle_check(p: u64, n: u32, k: usize) -> Outcome {
    let g = GroupSpec::new(p, n).expect("valid group");
    let result = oracle_complex_fixed(g, k, &default_ell_set(p))
        .and_then(|o| Ok((o.clone(), closed_form_complex_lattice(g, k)?)));
    match result {
        Ok((o, c)) if o.lattice == c.lattice && o.stabilized == Some(true) => (1, vec![], vec![]),
        Ok((o, _)) => (
            1,
            vec![format!(
                "p={p} n={n} k={k}: oracle lattice differs from the closed form (stabilized {:?})",
                o.stabilized
            )],
            vec![],
        ),
        Err(e) => (1, vec![format!("p={p} n={n} k={k}: {e}")], vec![]),
    }
}

/// `f`-tables: shape, agreement with generator marks, integrality of the
/// `Γ_k` basis, and the even-degree descriptions.
pub fn f_tables_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::FTables);
    for outcome in run_tasks(cfg.triples(), cfg.parallel, |&(p, n, k)| f_table_check(p, n, k)) {
        report.absorb(outcome);
    }
    report
}

pub fn f_table_check(p: u64, n: u32, k: usize) -> Outcome {
    let mut rep = SuiteReport::default();
    let tag = format!("p={p} n={n} k={k}");
    let table = FTable::new(p, n, k).expect("valid parameters");
    rep.check(table.is_well_formed(), || format!("{tag}: table is not triangular with p-power pivots"));
    rep.check(f_marks_consistency(p, n, k).unwrap_or(false), || {
        format!("{tag}: generator marks differ from the f-table")
    });
    rep.check(gamma_basis(p, n, k).is_ok(), || format!("{tag}: f-columns are not marks of Burnside elements"));
    if k.is_multiple_of(2) {
        let kp = k / 2;
        let even = (1..=n).all(|s| (1..=n).all(|i| f_even_form(p, n, s, kp, i) == f_value(p, n, s, k, i)));
        rep.check(even, || format!("{tag}: even-degree form disagrees"));
        rep.check(
            gamma_basis_from_norms(p, n, kp).ok() == gamma_basis(p, n, k).ok(),
            || format!("{tag}: transfers of norms disagree with the Γ basis"),
        );
        for i in 1..=n {
            let min = (i..=n).map(|s| f_value(p, n, s, k, i)).min().expect("nonempty");
            rep.check(degree_image(p, n, kp, i) == min, || format!("{tag}: degree image at level {i}"));
        }
    }
    (rep.checks, rep.failures, rep.notes)
}

fn elem(p: u64, m: u32, t: &[i64]) -> BurnsideElement {
    BurnsideElement::from_t(p, m, t.iter().map(|&x| BigInt::from(x)).collect()).expect("valid element")
}

/// The worked numeric examples: `(p, level, t-coefficients, degree, display)`.
pub const WORKED_EXAMPLES: &[(u64, u32, &[i64], usize, &str)] = &[
    (2, 0, &[2], 1, "η"),
    (2, 1, &[2, 0], 1, "η"),
    (2, 1, &[0, 4], 1, "η"),
    (2, 2, &[2, 0, 0], 1, "η"),
    (2, 2, &[0, 0, 8], 1, "η"),
    (2, 0, &[4], 2, "η²"),
    (2, 1, &[1, 2], 2, "η²"),
    (2, 1, &[2, 4], 3, "2ν"),
    (2, 1, &[4, 0], 3, "-2ν"),
    (2, 2, &[2, 4, 0], 3, "2ν"),
    (2, 2, &[0, 6, 4], 3, "6ν"),
    (2, 2, &[1, 2, 0], 3, "ν"),
    (2, 2, &[4, 0, 0], 3, "-2ν"),
    (2, 2, &[3, 1, 2], 7, "2σ"),
];

/// Replays the worked examples through the engine.
pub fn examples_suite() -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Examples);
    for &(p, m, t, degree, display) in WORKED_EXAMPLES {
        let x = elem(p, m, t);
        match mahowald_invariant(&x) {
            Ok(r) => rep.check(r.degree == degree && r.display() == display, || {
                format!("M_C_{}({x}): expected degree {degree} and {display}, got {} and {}", pow_u(p, m as u64 + 1), r.degree, r.display())
            }),
            Err(e) => rep.check(false, || format!("{x}: {e}")),
        }
    }
    let marks = |p, n, k| -> Vec<Vec<BigInt>> {
        gamma_basis(p, n, k).map(|b| b.iter().map(|x| x.marks()).collect()).unwrap_or_default()
    };
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    rep.check(marks(2, 2, 2) == vec![ints(&[8, 0]), ints(&[4, 2])], || "Γ_2 basis at C_4".into());
    rep.check(marks(2, 2, 3) == vec![ints(&[8, 0]), ints(&[8, 4])], || "Γ_3 basis at C_4".into());
    let membership = crate::mahowald::gamma_membership(&elem(2, 1, &[1, 2]), 2).ok().flatten();
    rep.check(membership == Some(ints(&[0, 1])), || "2+[C_2] in Γ_2".into());
    for (p, n) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1)] {
        let mut t = vec![0i64; n as usize];
        t[0] = p as i64;
        let x = elem(p, n - 1, &t);
        let ok = mahowald_invariant(&x).is_ok_and(|r| {
            r.degree == 2 * (p as usize - 1) - 1 && matches!(&r.j_part, JPart::J(j) if j.residue.is_one())
        });
        rep.check(ok, || format!("M_C_{}({x}) should contain j_{}", pow_u(p, n as u64), 2 * (p - 1) - 1));
        let unit = BurnsideElement::integer(p, n - 1, pow_u(p, n as u64)).expect("valid");
        let ok = mahowald_invariant(&unit).is_ok_and(|r| {
            r.degree == 2 * (p as usize - 1) - 1 && matches!(&r.j_part, JPart::J(j) if j.residue.is_one())
        });
        rep.check(ok, || format!("M_C_{}(p^n) should contain j_{}", pow_u(p, n as u64), 2 * (p - 1) - 1));
    }
    rep
}

/// Relations of the reduced ring for `p ∈ {2, 3}`, `n ≤ min(max_n, 3)`, `c, d ≤ 8`.
pub fn presentation_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Presentation);
    let tasks: Vec<(u64, u32)> = [2u64, 3]
        .into_iter()
        .flat_map(|p| (1..=cfg.max_n.min(3)).map(move |n| (p, n)))
        .collect();
    for outcome in run_tasks(tasks, cfg.parallel, |&(p, n)| match presentation_check(p, n, 8) {
        Ok(r) => {
            let checks = r.product_relations + r.periodicity_relations + r.exceptional_relations + r.membership_checks;
            let notes = if r.non_real_generators.is_empty() {
                vec![]
            } else {
                vec![format!("p={p} n={n}: generators outside the real lattice {:?}", r.non_real_generators)]
            };
            (checks, r.failures, notes)
        }
        Err(e) => (1, vec![format!("p={p} n={n}: {e}")], vec![]),
    }) {
        report.absorb(outcome);
    }
    report
}

/// Jump-degree quotients and the index-one maps of the isomorphism chains.
pub fn quotients_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Quotients);
    for outcome in run_tasks(cfg.triples(), cfg.parallel, |&(p, n, k)| quotient_check(p, n, k)) {
        report.absorb(outcome);
    }
    report
}

/// Degrees `k` at which `M_k/M_{k+1}` is cyclic of order `p^n` with images `p^{n-s}`.
pub fn is_critical_degree(p: u64, n: u32, k: usize) -> bool {
    let step = 2 * (p.pow(n - 1) * (p - 1)) as usize;
    (k + 1).is_multiple_of(step)
}

pub fn quotient_check(p: u64, n: u32, k: usize) -> Outcome {
    let mut rep = SuiteReport::default();
    let g = GroupSpec::new(p, n).expect("valid group");
    let tag = format!("p={p} n={n} k={k}");
    let period = 2 * (p as usize - 1);
    if !k.is_multiple_of(period) {
        let index = a_half_index(g, k);
        rep.check(matches!(&index, Ok(crate::exactint::Index::Finite(i)) if i.is_one()), || {
            format!("{tag}: a^(1/2) has index {index:?}, expected 1")
        });
    }
    if is_critical_degree(p, n, k) {
        match critical_generators(g, k) {
            Ok((classes, true)) => {
                let modulus = pow_u(p, n as u64);
                let ok = quotient_structure_with_basis(g, k, &classes)
                    .is_ok_and(|q| q.order == modulus && q.matches_cyclic(&jump_degree_weights(p, n), &modulus));
                rep.check(ok, || format!("{tag}: quotient is not ℤ/p^n with images p^(n-s)"));
            }
            Ok((_, false)) => rep.notes.push(format!("{tag}: critical generators do not span M_k")),
            Err(e) => rep.check(false, || format!("{tag}: {e}")),
        }
    }
    if p == 2 && n == 3 && k % 8 == 3 {
        let expected: Vec<BigInt> = [-2i64, 1, 0].iter().map(|&x| BigInt::from(x)).collect();
        let ok = quotient_structure(g, k).is_ok_and(|q| q.matches_cyclic(&expected, &BigInt::from(8)));
        rep.check(ok, || format!("{tag}: quotient is not ℤ/8 with images (-2, 1, 0)"));
    }
    (rep.checks, rep.failures, rep.notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_n: 2,
            max_k: Some(12),
            parallel: false,
            samples: 50,
            seed: 1,
        }
    }

    #[test]
    fn suites_pass_on_a_small_sweep() {
        for suite in Suite::ALL {
            let r = run_suite(suite, &small());
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
            assert!(r.checks > 0, "{}", r.suite);
        }
    }

    #[test]
    fn parallel_and_serial_reports_agree() {
        let mut cfg = small();
        let serial = run_suite(Suite::FTables, &cfg);
        cfg.parallel = true;
        assert_eq!(serial, run_suite(Suite::FTables, &cfg));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 7);
        assert!(parse_suites("everything").is_err());
    }
}
