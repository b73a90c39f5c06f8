use std::collections::{BTreeMap, HashSet};

use additive_powers::intset::*;
use proptest::prelude::*;

fn small_set(lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::vec(lo..=hi, 0..=max_len).prop_map(IntSet::new)
}

fn brute_rep(a: &IntSet, b: &IntSet, minus: bool) -> BTreeMap<i64, u64> {
    let mut m = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            *m.entry(if minus { x - y } else { x + y }).or_insert(0) += 1;
        }
    }
    m
}

/// Sum over every shift tuple of `|A ∩ (A+α_1) ∩ ...|^l`, with shifts
/// ranging over the whole difference set.
fn brute_mixed(a: &IntSet, k: u32, l: u32) -> u128 {
    let diffs: Vec<i64> = difference_set(a, a).unwrap().into_vec();
    let set: HashSet<i64> = a.iter().collect();
    let mut total = 0u128;
    let mut idx = vec![0usize; k as usize - 1];
    if diffs.is_empty() {
        return 0;
    }
    loop {
        let size = a
            .iter()
            .filter(|&x| idx.iter().all(|&i| set.contains(&(x - diffs[i]))))
            .count() as u128;
        total += size.pow(l);
        let mut j = 0;
        loop {
            if j == idx.len() {
                return total;
            }
            idx[j] += 1;
            if idx[j] < diffs.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

proptest! {
    #[test]
    fn mass_is_conserved(a in small_set(-50, 50, 20), b in small_set(-50, 50, 20)) {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = rep_function(&a, &b, sign).unwrap();
            prop_assert_eq!(r.iter().map(|(_, c)| c).sum::<u64>(), (a.len() * b.len()) as u64);
        }
    }

    #[test]
    fn difference_function_is_symmetric(a in small_set(-50, 50, 20)) {
        let r = rep_function(&a, &a, Sign::Minus).unwrap();
        for (x, c) in r.iter() {
            prop_assert_eq!(r.get(-x), c);
        }
        prop_assert_eq!(r.get(0), a.len() as u64);
    }

    #[test]
    fn convolution_matches_double_loop(
        a in small_set(-2000, 2000, 300),
        b in small_set(-2000, 2000, 300),
    ) {
        for (sign, minus) in [(Sign::Plus, false), (Sign::Minus, true)] {
            let fast = rep_function_with(&a, &b, sign, Method::Convolution).unwrap();
            let naive = rep_function_with(&a, &b, sign, Method::Naive).unwrap();
            prop_assert_eq!(&fast, &naive);
            let oracle = brute_rep(&a, &b, minus);
            prop_assert_eq!(fast.iter().collect::<BTreeMap<_, _>>(), oracle);
        }
    }

    #[test]
    fn energy_two_ways(a in small_set(-40, 40, 25)) {
        let plus: u128 = rep_function(&a, &a, Sign::Plus).unwrap().moment(2).unwrap();
        let minus: u128 = rep_function(&a, &a, Sign::Minus).unwrap().moment(2).unwrap();
        prop_assert_eq!(plus, minus);
        prop_assert_eq!(energy(&a, &a).unwrap(), plus);
    }

    #[test]
    fn mixed_energy_is_symmetric(a in small_set(-30, 30, 8)) {
        for k in 2..=4 {
            for l in 2..=4 {
                prop_assert_eq!(mixed_energy(&a, k, l).unwrap(), mixed_energy(&a, l, k).unwrap());
            }
            prop_assert_eq!(mixed_energy(&a, k, 2).unwrap(), higher_energy(&a, k).unwrap());
        }
    }

    #[test]
    fn mixed_energy_routes_agree_with_full_enumeration(a in small_set(-12, 12, 6), k in 2u32..=3, l in 2u32..=4) {
        let oracle = brute_mixed(&a, k, l);
        for method in [Method::Naive, Method::Convolution] {
            prop_assert_eq!(mixed_energy_with(&a, k, l, method, 1 << 30).unwrap(), oracle);
        }
    }

    #[test]
    fn pluennecke_holds(a in small_set(-40, 40, 10).prop_filter("nonempty", |a| !a.is_empty())) {
        for n in 0..=4u32 {
            for m in (0..=4 - n).filter(|&m| n + m > 0) {
                prop_assert!(pluennecke_check(&a, n, m).unwrap().holds);
            }
        }
    }

    #[test]
    fn e4_decomposition_recombines(a in small_set(-20, 20, 8)) {
        let d = e4_decomposition(&a).unwrap();
        prop_assert_eq!(d.recombined(), d.e4);
        prop_assert_eq!(d.e4, brute_mixed(&a, 2, 4));
        // triples term straight from the definition
        let diffs: Vec<i64> = difference_set(&a, &a).unwrap().iter().filter(|&x| x != 0).collect();
        let mut triples = 0u128;
        for &x in &diffs {
            for &y in &diffs {
                for &z in &diffs {
                    if x != y && y != z && x != z {
                        let s = quadruple_intersection(&a, x, y, z).unwrap() as u128;
                        triples += s * s;
                    }
                }
            }
        }
        prop_assert_eq!(d.triples, triples);
    }

    #[test]
    fn popular_differences_meet_threshold(a in small_set(-30, 30, 15).prop_filter("nonempty", |a| !a.is_empty())) {
        let r = brute_rep(&a, &a, true);
        let d = r.len() as u128;
        let n = a.len() as u128;
        let expected: Vec<i64> = r
            .iter()
            .filter(|(_, &c)| 4 * d * c as u128 >= n * n)
            .map(|(&x, _)| x)
            .collect();
        prop_assert_eq!(popular_differences(&a).unwrap().into_vec(), expected);
    }
}
