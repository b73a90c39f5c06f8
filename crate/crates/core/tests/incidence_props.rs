use additive_powers::incidence::*;
use additive_powers::intset::IntSet;
use proptest::prelude::*;

fn set(max_len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::vec(-40i64..=40, 0..=max_len).prop_map(IntSet::new)
}

fn points(max_len: usize) -> impl Strategy<Value = PointSet2D> {
    prop::collection::btree_set((-8i64..=8, -40i64..=40), 0..=max_len)
        .prop_map(|s| PointSet2D::new(s.into_iter().collect()).unwrap())
}

/// Walks `C × L` and scans `A` linearly for each candidate value.
fn second_brute_force(a: &IntSet, c: &IntSet, l: &PointSet2D) -> u64 {
    let mut n = 0;
    for &(b, d) in l.pairs() {
        for y in c.iter() {
            let v = b * y + d;
            n += a.iter().filter(|&x| x == v).count() as u64;
        }
    }
    n
}

proptest! {
    #[test]
    fn fast_solutions_match_brute_force(a in set(50), c in set(50), l in points(50)) {
        let fast = count_solutions(&a, &c, &l);
        prop_assert_eq!(fast, count_solutions_naive(&a, &c, &l));
        prop_assert_eq!(fast, second_brute_force(&a, &c, &l));
        let r = bound_report(&a, &c, &l, false);
        prop_assert!(r.within_trivial_cap);
    }

    #[test]
    fn solutions_add_over_partitions(a in set(30), c in set(30), l in points(40), cut in 0usize..=40) {
        let pairs = l.pairs();
        let cut = cut.min(pairs.len());
        let left = PointSet2D::new(pairs[..cut].to_vec()).unwrap();
        let right = PointSet2D::new(pairs[cut..].to_vec()).unwrap();
        prop_assert_eq!(
            count_solutions(&a, &c, &left) + count_solutions(&a, &c, &right),
            count_solutions(&a, &c, &l)
        );
    }

    #[test]
    fn tau_is_scale_invariant(l in points(40), lambda in prop::sample::select(vec![-7i64, -3, -1, 2, 5, 11])) {
        prop_assert_eq!(tau(&l), tau(&l.scaled(lambda).unwrap()));
    }
}
