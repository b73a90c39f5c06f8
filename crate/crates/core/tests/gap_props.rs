use std::collections::BTreeMap;

use additive_powers::arith::gcd_u64;
use additive_powers::gap::*;
use additive_powers::intset::IntSet;
use additive_powers::Budgets;
use proptest::prelude::*;

fn gap_strategy(max_d: usize, max_len: u64) -> impl Strategy<Value = Gap> {
    (1..=max_d)
        .prop_flat_map(move |d| {
            (
                -60i64..=60,
                prop::collection::vec((1i64..=40, any::<bool>()).prop_map(|(s, neg)| if neg { -s } else { s }), d),
                prop::collection::vec(1..=max_len, d),
            )
        })
        .prop_map(|(b, s, l)| Gap::new(b, s, l).unwrap())
}

fn positive_set(max: i64, len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::vec(1..=max, 1..=len).prop_map(IntSet::new)
}

fn brute_residues(g: &Gap, l: u64) -> u64 {
    let mut count = 0;
    let mut idx = vec![0u64; g.dimension()];
    loop {
        let v: i128 = g.base() as i128
            + g.steps().iter().zip(&idx).map(|(&k, &x)| k as i128 * x as i128).sum::<i128>();
        count += u64::from(v.rem_euclid(l as i128) == 0);
        let mut j = 0;
        loop {
            if j == idx.len() {
                return count;
            }
            idx[j] += 1;
            if idx[j] < g.lengths()[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

proptest! {
    #[test]
    fn stratification_partitions_pairs(i in positive_set(60, 20), g in gap_strategy(3, 8)) {
        let b = Budgets::default();
        let s = stratify(&i, &g, &b).unwrap();
        let h = g.gcd_normalize().primed.enumerate(&b).unwrap();
        prop_assert_eq!(s.total(), (i.len() * h.len()) as u64);
        let mut brute: BTreeMap<u64, u64> = BTreeMap::new();
        for x in i.iter() {
            for y in h.iter() {
                *brute.entry(gcd_u64(x as u64, y.unsigned_abs())).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(s.classes, brute);
    }

    #[test]
    fn mobius_identity_is_exact(i in positive_set(60, 25), g in gap_strategy(3, 8), lmax in 1u64..=15) {
        for row in mobius_identity_range(&i, &g, lmax, &Budgets::default()).unwrap() {
            prop_assert!(row.equal, "l = {}: {} vs {}", row.l, row.direct, row.transformed);
        }
    }

    #[test]
    fn residue_fast_path_matches_direct(g in gap_strategy(3, 12), l in 1u64..=1000) {
        let fast = g.residue_count(l).unwrap();
        prop_assert_eq!(fast, g.residue_count_direct(l, &Budgets::default()).unwrap());
        prop_assert_eq!(fast, brute_residues(&g, l));
    }

    #[test]
    fn periodic_count_is_exact_on_multiples(g in gap_strategy(3, 3), l in 1u64..=12, reps in prop::collection::vec(1u64..=3, 3)) {
        let lengths: Vec<u64> = (0..g.dimension()).map(|j| l * reps[j]).collect();
        let g = Gap::new(g.base(), g.steps().to_vec(), lengths).unwrap();
        let q = g.periodic_solutions(l).unwrap();
        let blocks: u128 = g.lengths().iter().map(|&x| (x / l) as u128).product();
        prop_assert_eq!(g.residue_count(l).unwrap() as u128, q * blocks);
        prop_assert_eq!(brute_residues(&g, l) as u128, q * blocks);
    }

    #[test]
    fn proper_means_full_size(g in gap_strategy(3, 8)) {
        let b = Budgets::default();
        let values = g.enumerate(&b).unwrap();
        let box_size = g.box_size();
        prop_assert_eq!(g.is_proper(&b).unwrap(), values.len() as u128 == box_size);
    }

    #[test]
    fn splitting_preserves_values(g in gap_strategy(3, 9).prop_filter("sides >= 2", |g| g.lengths().iter().all(|&l| l >= 2))) {
        let b = Budgets::default();
        let parts = g.split_for_double_properness(&b).unwrap();
        prop_assert_eq!(parts.len(), 1 << g.dimension());
        let union: IntSet = parts
            .iter()
            .flat_map(|p| p.gap.enumerate(&b).unwrap().into_vec())
            .collect();
        prop_assert_eq!(union, g.enumerate(&b).unwrap());
        prop_assert_eq!(parts.iter().map(|p| p.gap.box_size()).sum::<u128>(), g.box_size());
        for p in &parts {
            prop_assert_eq!(p.doubling_proper, p.gap.doubled().unwrap().is_proper(&b).unwrap());
        }
    }
}
