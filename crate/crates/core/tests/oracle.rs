use pgroup_core::oracle::{gaussian_binomial, star_matrix_census, subgroup_census, DEFAULT_LIMIT};
use pgroup_core::{count_hironaka, GroupType};

#[test]
fn census_matches_polynomials_on_small_groups() {
    for p in [2, 3, 5] {
        for t in GroupType::enumerate(3, 3) {
            let Ok(c) = subgroup_census(&t, p, 1024) else { continue };
            assert!(c.is_symmetric(), "{t} p={p}");
            assert_eq!(c.counts[0], 1);
            for (b, &n) in c.counts.iter().enumerate() {
                assert_eq!(count_hironaka(&t, b as i64).eval_at_u64(p), n.into(), "{t} p={p} b={b}");
            }
        }
    }
}

#[test]
fn census_ignores_part_order() {
    let a = GroupType::canonicalize(&[3, 1, 2]).unwrap();
    let b = GroupType::canonicalize(&[2, 3, 1]).unwrap();
    assert_eq!(subgroup_census(&a, 2, DEFAULT_LIMIT).unwrap(), subgroup_census(&b, 2, DEFAULT_LIMIT).unwrap());
}

#[test]
fn matrix_census_on_rank_four() {
    for t in GroupType::enumerate_rank(4, 2) {
        let closure = subgroup_census(&t, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(star_matrix_census(&t, 2, DEFAULT_LIMIT).unwrap(), closure, "{t}");
    }
}

#[test]
fn elementary_abelian_census_is_q_binomial() {
    for d in 1..=5u32 {
        let c = subgroup_census(&GroupType::homocyclic(1, d as usize), 3, DEFAULT_LIMIT).unwrap();
        for b in 0..=d {
            assert_eq!(gaussian_binomial(d, b).unwrap().eval_at_u64(3), c.counts[b as usize].into());
        }
    }
}
