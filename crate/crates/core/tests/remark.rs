//! Every rank-3 case is the case-6 numerator with some parameters
//! substituted. For the reflected cases 7 to 10 the substitution is made
//! at `b' = m - b`, since those formulas are the lower cases read at the
//! reflected order.

use pgroup_core::closed_forms::{cyclotomic_product, rank3_case6_numerator, ClosedForms};
use pgroup_core::group::rank3_case_contains;
use pgroup_core::{GroupType, IntPoly};

fn from_case6(a1: i64, a2: i64, a3: i64, b: i64) -> IntPoly {
    rank3_case6_numerator(a1, a2, a3, b)
        .to_poly()
        .expect("exponents are nonnegative inside the interval")
        .exact_div(&cyclotomic_product(&[1, 2]))
        .expect("case-6 numerator is divisible")
}

fn substituted(case: u8, a1: i64, a2: i64, a3: i64, b: i64) -> IntPoly {
    let r = a1 + a2 + a3 - b;
    match case {
        1 => from_case6(b, b, b, b),
        2 => from_case6(a1, b, b, b),
        3 | 4 => from_case6(a1, a2, b, b),
        5 => from_case6(a1, a2, a1 + a2, a1 + a2),
        6 => from_case6(a1, a2, a3, b),
        7 | 8 => from_case6(a1, a2, r, r),
        9 => from_case6(a1, r, r, r),
        10 => from_case6(r, r, r, r),
        _ => unreachable!(),
    }
}

#[test]
fn every_case_follows_from_case_six() {
    let catalog = ClosedForms::default();
    let mut reached = [false; 10];
    for t in GroupType::enumerate_rank(3, 5) {
        let (a1, a2, a3) = (i64::from(t.parts()[0]), i64::from(t.parts()[1]), i64::from(t.parts()[2]));
        for b in 0..=a1 + a2 + a3 {
            for case in 1..=10u8 {
                if !rank3_case_contains(&t, b, case).unwrap() {
                    continue;
                }
                reached[case as usize - 1] = true;
                let direct = catalog.rank3_case(&t, b, case).unwrap();
                assert_eq!(substituted(case, a1, a2, a3, b), direct, "{t} b={b} case {case}");
            }
        }
    }
    assert!(reached.iter().all(|&r| r));
}
