use num_bigint::BigInt;
use pgroup_core::genfun::{expand_rational, Monomial, MultiSeries};
use pgroup_core::oracle::subgroup_census;
use pgroup_core::{count_hironaka, count_stehling, ClosedForms, FormulaResult, GroupType, IntPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn group_type(max_rank: usize, max_part: u32) -> impl Strategy<Value = GroupType> {
    prop::collection::vec(1..=max_part, 1..=max_rank).prop_map(|parts| GroupType::from_parts(&parts))
}

const BOUNDS: Monomial = [3, 3, 3];

fn series() -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec((-3i64..=3, 0u32..=3, 0u32..=3, 0u32..=3), 0..5).prop_map(|terms| {
        let terms: Vec<(i64, Monomial)> = terms.into_iter().map(|(c, a, b, y)| (c, [a, b, y])).collect();
        MultiSeries::from_int_terms(BOUNDS, &terms)
    })
}

/// A denominator factor `±1 + (terms of positive degree)`.
fn unit_factor() -> impl Strategy<Value = MultiSeries> {
    (prop::bool::ANY, series()).prop_map(|(negative, s)| {
        let c0 = if negative { -1 } else { 1 };
        let constant = MultiSeries::from_int_terms(BOUNDS, &[(c0, [0, 0, 0])]);
        let head = s.coeff([0, 0, 0]).unwrap().clone();
        let without_constant = s.sub(&MultiSeries::constant(BOUNDS, head)).unwrap();
        constant.add(&without_constant).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -5i64..=5) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a + &b).eval_at(&x), a.eval_at(&x) + b.eval_at(&x));
        prop_assert_eq!((&a * &b).eval_at(&x), a.eval_at(&x) * b.eval_at(&x));
    }

    #[test]
    fn exact_division_round_trips(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn recurrences_agree_and_are_symmetric(t in group_type(5, 4)) {
        let m = i64::from(t.weight());
        for b in 0..=m {
            let h = count_hironaka(&t, b);
            prop_assert_eq!(&h, &count_stehling(&t, b));
            prop_assert_eq!(&h, &count_hironaka(&t, m - b));
            prop_assert!(h.has_nonnegative_coeffs());
        }
    }

    #[test]
    fn covered_closed_forms_match_recurrence(t in group_type(6, 5), b in 0i64..=30) {
        if let FormulaResult::Covered { value, case } = ClosedForms::default().best(&t, b).unwrap() {
            prop_assert_eq!(value, count_hironaka(&t, b), "{}", case);
        }
    }

    #[test]
    fn census_ignores_part_order(parts in prop::collection::vec(1u32..=3, 1..=4), p in prop::sample::select(vec![2u64, 3])) {
        let raw: Vec<i64> = parts.iter().map(|&x| i64::from(x)).collect();
        let mut reversed = raw.clone();
        reversed.reverse();
        let a = GroupType::canonicalize(&raw).unwrap();
        let b = GroupType::canonicalize(&reversed).unwrap();
        if let Ok(x) = subgroup_census(&a, p, 512) {
            prop_assert_eq!(x, subgroup_census(&b, p, 512).unwrap());
        }
    }

    #[test]
    fn truncated_product_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn expansion_multiplies_back(num in series(), factors in prop::collection::vec(unit_factor(), 1..3)) {
        let expanded = expand_rational(&num, &factors).unwrap();
        let back = factors.iter().fold(expanded, |acc, f| acc.mul(f).unwrap());
        prop_assert_eq!(back, num);
    }
}
