use cpnroot::burnside::{multiply, restrict_to, transfer, BurnsideElement};
use cpnroot::exactint::{hnf, kernel_lattice, lattice_index, solve_integral, Index, IntMatrix, Lattice};
use cpnroot::ktheory::default_ell_set;
use cpnroot::mahowald::{gamma_basis, gamma_membership, mahowald_degree, mahowald_invariant, permitted_degree, MahowaldError};
use cpnroot::repring::{default_ell, euler_class, DSequence, GroupSpec, RUElement};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    let rows = entries.chunks(cols).take(rows).map(big_vec).collect();
    IntMatrix::from_rows(cols, rows).expect("rectangular")
}

fn group_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 1)), Just((5, 2))]
}

fn ru_strategy() -> impl Strategy<Value = RUElement> {
    group_strategy().prop_flat_map(|(p, n)| {
        let g = GroupSpec::new(p, n).unwrap();
        prop::collection::vec(-6i64..=6, g.order()).prop_map(move |c| RUElement::from_i64(g, &c).unwrap())
    })
}

fn burnside_strategy() -> impl Strategy<Value = BurnsideElement> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 0u32..=3).prop_flat_map(|(p, m)| {
        prop::collection::vec(-30i64..=30, m as usize + 1)
            .prop_map(move |t| BurnsideElement::from_t(p, m, big_vec(&t)).unwrap())
    })
}

/// A random integer combination of the `Γ_1` basis at `C_{p^n}`.
fn gamma_one_strategy() -> impl Strategy<Value = BurnsideElement> {
    prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 2))].prop_flat_map(|(p, n)| {
        prop::collection::vec(-20i64..=20, n as usize).prop_map(move |c| {
            let basis = gamma_basis(p, n, 1).unwrap();
            basis
                .iter()
                .zip(&c)
                .fold(BurnsideElement::zero(p, n - 1).unwrap(), |acc, (b, &k)| acc.add(&b.scale(&BigInt::from(k))).unwrap())
        })
    })
}

fn orbit_sum(x: &RUElement, ell: i64) -> RUElement {
    let order = x.group().order() as i64;
    let mut sum = x.clone();
    let mut power = ell.rem_euclid(order);
    while power != 1 {
        sum = &sum + &x.adams(power);
        power = (power * ell).rem_euclid(order);
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hnf_is_idempotent_and_preserves_the_span(
        entries in prop::collection::vec(-20i64..=20, 12),
        combo in prop::collection::vec(-5i64..=5, 3),
    ) {
        let m = matrix(3, 4, &entries);
        let h = hnf(&m);
        prop_assert_eq!(hnf(&h), h.clone());
        let v = m.left_mul_vec(&big_vec(&combo)).unwrap();
        prop_assert!(Lattice::from_generators(&m).contains(&v));
        prop_assert!(Lattice::from_generators(&h).contains(&v));
    }

    #[test]
    fn kernels_are_saturated(
        entries in prop::collection::vec(-6i64..=6, 8),
        combo in prop::collection::vec(-4i64..=4, 4),
        scale in 2i64..=7,
    ) {
        let m = matrix(4, 2, &entries);
        let kernel = kernel_lattice(&m);
        prop_assert!(kernel.is_saturated());
        for row in kernel.basis().rows_iter() {
            prop_assert!(m.left_mul_vec(row).unwrap().iter().all(Zero::is_zero));
        }
        let v = big_vec(&combo);
        let scaled: Vec<BigInt> = v.iter().map(|x| x * scale).collect();
        if m.left_mul_vec(&scaled).unwrap().iter().all(Zero::is_zero) {
            prop_assert!(kernel.contains(&v));
        }
    }

    #[test]
    fn lattice_index_is_multiplicative(
        entries in prop::collection::vec(-9i64..=9, 9),
        factors in prop::collection::vec(1i64..=4, 3),
        more in prop::collection::vec(1i64..=4, 3),
    ) {
        let amb = Lattice::full(3);
        let sup = Lattice::from_generators(&matrix(3, 3, &entries));
        prop_assume!(sup.rank() == 3);
        let scaled: Vec<Vec<BigInt>> = sup
            .basis()
            .rows_iter()
            .zip(&factors)
            .map(|(r, &f)| r.iter().map(|x| x * f).collect())
            .collect();
        let mid = Lattice::from_rows(3, scaled.clone()).unwrap();
        let sub_rows: Vec<Vec<BigInt>> = scaled.iter().zip(&more).map(|(r, &f)| r.iter().map(|x| x * f).collect()).collect();
        let sub = Lattice::from_rows(3, sub_rows).unwrap();
        let a = lattice_index(&sub, &mid).unwrap();
        let b = lattice_index(&mid, &amb).unwrap();
        let c = lattice_index(&sub, &amb).unwrap();
        match (a, b, c) {
            (Index::Finite(a), Index::Finite(b), Index::Finite(c)) => prop_assert_eq!(a * b, c),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn solve_integral_reproduces_the_target(
        entries in prop::collection::vec(-9i64..=9, 8),
        combo in prop::collection::vec(-6i64..=6, 2),
    ) {
        let m = matrix(2, 4, &entries);
        prop_assume!(Lattice::from_generators(&m).rank() == 2);
        let target = m.left_mul_vec(&big_vec(&combo)).unwrap();
        let sol = solve_integral(&m, &target).unwrap();
        prop_assert_eq!(sol.integer_coeffs(), Some(big_vec(&combo)));
    }

    #[test]
    fn adams_depends_on_ell_mod_the_order(x in ru_strategy(), ell in 1i64..40) {
        let order = x.group().order() as i64;
        prop_assume!(ell % x.group().p() as i64 != 0);
        prop_assert_eq!(x.adams(ell), x.adams(ell + order));
    }

    #[test]
    fn characters_are_ring_homomorphisms(pair in ru_strategy().prop_flat_map(|x| {
        let g = x.group();
        (Just(x), prop::collection::vec(-6i64..=6, g.order()).prop_map(move |c| RUElement::from_i64(g, &c).unwrap()))
    })) {
        let (x, y) = pair;
        let (sum, product) = (&x + &y, &x * &y);
        for j in 0..=x.group().n() {
            let (a, b) = (x.char_value(j).unwrap(), y.char_value(j).unwrap());
            prop_assert_eq!(sum.char_value(j).unwrap(), a.add(&b));
            prop_assert_eq!(product.char_value(j).unwrap(), a.mul(&b));
        }
    }

    #[test]
    fn rational_exactly_when_fixed(x in ru_strategy(), take_orbit in any::<bool>()) {
        let p = x.group().p();
        let ell = default_ell(p);
        let y = if take_orbit { orbit_sum(&x, ell) } else { x };
        let ells = if p == 2 { default_ell_set(p) } else { vec![ell] };
        let fixed = ells.iter().all(|&l| y.adams(l) == y);
        prop_assert_eq!(fixed, y.rational_marks().is_some());
    }

    #[test]
    fn even_euler_blocks_are_self_conjugate((p, n) in group_strategy(), half in 1usize..=4) {
        let g = GroupSpec::new(p, n).unwrap();
        let block = DSequence::new(p).block(0, 2 * half);
        let e = euler_class(g, &block);
        let negated: Vec<i64> = block.iter().map(|d| -d).collect();
        prop_assert_eq!(e.adams(-1), euler_class(g, &negated));
        prop_assert_eq!(e.adams(-1), e);
    }

    #[test]
    fn marks_are_multiplicative(x in burnside_strategy(), t in prop::collection::vec(-30i64..=30, 4)) {
        let y = BurnsideElement::from_t(x.p(), x.level(), big_vec(&t[..=x.level() as usize])).unwrap();
        let product = multiply(&x, &y).unwrap();
        let pointwise: Vec<BigInt> = x.marks().iter().zip(y.marks()).map(|(a, b)| a * b).collect();
        prop_assert_eq!(product.marks(), pointwise);
        prop_assert_eq!(BurnsideElement::from_marks(x.p(), x.level(), &x.marks()).unwrap(), x);
    }

    #[test]
    fn restriction_after_transfer_multiplies_by_index(x in burnside_strategy()) {
        let up = transfer(&x, x.level() + 1).unwrap();
        let back = restrict_to(&up, x.level()).unwrap();
        let conjugates = x.scale(&BigInt::from(x.p()));
        prop_assert_eq!(back, conjugates);
    }

    #[test]
    fn filtration_is_monotone(x in gamma_one_strategy(), k in 1usize..20) {
        prop_assume!(!x.is_zero());
        if gamma_membership(&x, k + 1).unwrap().is_some() {
            prop_assert!(gamma_membership(&x, k).unwrap().is_some());
        }
    }

    #[test]
    fn degrees_are_permitted(x in gamma_one_strategy()) {
        prop_assume!(!x.is_zero());
        match mahowald_invariant(&x) {
            Ok(r) => {
                prop_assert!(r.degree >= 1);
                prop_assert!(permitted_degree(x.p(), r.degree), "degree {} for {}", r.degree, x);
            }
            Err(MahowaldError::TheoremViolation(msg)) => prop_assert!(false, "{}: {}", x, msg),
            Err(e) => prop_assert!(false, "{}: {}", x, e),
        }
    }

    #[test]
    fn transfer_does_not_lower_the_degree(x in burnside_strategy(), extra in 1u32..=2) {
        prop_assume!(!x.is_zero() && x.level() + extra <= 3);
        let k = mahowald_degree(&x).unwrap();
        let up = transfer(&x, x.level() + extra).unwrap();
        prop_assert!(mahowald_degree(&up).unwrap() >= k, "{} has degree {}", x, k);
    }
}

#[test]
fn psi_three_alone_misses_irrational_fixed_elements() {
    let g = GroupSpec::new(2, 3).unwrap();
    let x = &RUElement::monomial(g, 1) + &RUElement::monomial(g, 3);
    assert_eq!(x.adams(3), x);
    assert!(x.rational_marks().is_none());
    assert_ne!(x.adams(5), x);
}
