use std::collections::BTreeSet;

use irred_core::group::{
    cyclic_extremal_patterns, davenport_constant, enumerate_minimal_zero_sums, groups_up_to_order, make_group,
    FiniteAbelianGroup, GroupElement, ZeroSumPattern,
};
use proptest::prelude::*;

/// Flattens a pattern into a list of elements with repetition.
fn flatten(p: &ZeroSumPattern) -> Vec<GroupElement> {
    p.counts()
        .iter()
        .flat_map(|(g, c)| std::iter::repeat_n(g.clone(), *c as usize))
        .collect()
}

/// Minimality by scanning every proper nonempty sub-multiset (as index
/// subsets of the flattened list).
fn minimal_by_subsets(g: &FiniteAbelianGroup, p: &ZeroSumPattern) -> bool {
    let items = flatten(p);
    let n = items.len();
    let total = items.iter().fold(g.identity(), |a, b| g.add(&a, b));
    if !total.is_identity() {
        return false;
    }
    (1u64..(1u64 << n) - 1).all(|mask| {
        let s = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(g.identity(), |a, i| g.add(&a, &items[i]));
        !s.is_identity()
    })
}

/// Every nondecreasing multiset of length m over G, filtered by the subset
/// test. Independent of the search in the library.
fn minimal_by_brute_force(g: &FiniteAbelianGroup, m: usize) -> BTreeSet<Vec<u64>> {
    let order = g.order();
    let mut out = BTreeSet::new();
    let mut idx = vec![0u64; m];
    loop {
        let pattern = ZeroSumPattern::from_counts(idx.iter().map(|&i| (g.element(i), 1)));
        if minimal_by_subsets(g, &pattern) {
            out.insert(idx.clone());
        }
        // next nondecreasing tuple
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < order {
                idx[pos] += 1;
                let v = idx[pos];
                idx[pos + 1..m].fill(v);
                break;
            }
        }
    }
}

fn as_index_lists(g: &FiniteAbelianGroup, ps: &[ZeroSumPattern]) -> BTreeSet<Vec<u64>> {
    ps.iter()
        .map(|p| {
            let mut v: Vec<u64> = flatten(p).iter().map(|e| g.index_of(e)).collect();
            v.sort();
            v
        })
        .collect()
}

fn small_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    let groups = groups_up_to_order(16);
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerated_patterns_are_minimal(g in small_group(), m in 1u32..6) {
        for p in enumerate_minimal_zero_sums(&g, m).unwrap() {
            prop_assert_eq!(p.total(), m);
            prop_assert!(minimal_by_subsets(&g, &p));
            prop_assert!(p.is_minimal_zero_sum(&g));
        }
    }

    #[test]
    fn davenport_bounded_by_order(g in small_group()) {
        let d = davenport_constant(&g).unwrap();
        prop_assert!(d as u64 <= g.order());
        prop_assert!(!enumerate_minimal_zero_sums(&g, d).unwrap().is_empty());
        prop_assert!(enumerate_minimal_zero_sums(&g, d + 1).unwrap().is_empty());
    }

    #[test]
    fn minimality_check_rejects_non_minimal(g in small_group(), seed in proptest::collection::vec(0u64..16, 1..6)) {
        let p = ZeroSumPattern::from_counts(seed.iter().map(|&i| (g.element(i % g.order()), 1)));
        prop_assert_eq!(p.is_minimal_zero_sum(&g), minimal_by_subsets(&g, &p));
    }
}

#[test]
fn enumeration_matches_brute_force_on_small_groups() {
    for g in groups_up_to_order(8) {
        let d = davenport_constant(&g).unwrap() as usize;
        for m in 1..=d.min(5) + 1 {
            let got = as_index_lists(&g, &enumerate_minimal_zero_sums(&g, m as u32).unwrap());
            assert_eq!(got, minimal_by_brute_force(&g, m), "{g} m={m}");
        }
    }
}

#[test]
fn cyclic_extremal_sets() {
    for h in 2..=8u64 {
        let g = make_group(&[h]).unwrap();
        let (top, next) = cyclic_extremal_patterns(h).unwrap();
        assert_eq!(top, enumerate_minimal_zero_sums(&g, h as u32).unwrap(), "h={h}");
        assert_eq!(next, enumerate_minimal_zero_sums(&g, h as u32 - 1).unwrap(), "h={h}");
        // top: c^h for each generator c
        let generators = (1..h).filter(|k| num_integer::gcd(*k, h) == 1).count();
        assert_eq!(top.len(), generators);
    }
    let (_, next3) = cyclic_extremal_patterns(3).unwrap();
    assert_eq!(next3.len(), 1);
}

#[test]
fn davenport_values() {
    for h in 1..=12u64 {
        assert_eq!(
            davenport_constant(&FiniteAbelianGroup::cyclic(h).unwrap()).unwrap(),
            h as u32
        );
    }
    assert_eq!(davenport_constant(&make_group(&[2, 2]).unwrap()).unwrap(), 3);
    assert_eq!(davenport_constant(&make_group(&[3, 3]).unwrap()).unwrap(), 5);
    // d(C_n1 x C_n2) = n1 + n2 - 1 for rank two
    assert_eq!(davenport_constant(&make_group(&[2, 4]).unwrap()).unwrap(), 5);
    assert_eq!(davenport_constant(&make_group(&[2, 2, 2]).unwrap()).unwrap(), 4);
}
