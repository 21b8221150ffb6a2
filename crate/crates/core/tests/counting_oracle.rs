use irred_core::counting::oracle::{irreducible_census, Ring};
use irred_core::counting::{brute_force_m, classify_element, compare_report, count_m, count_norm_pairs, ElementClass};
use irred_core::number_field::ImaginaryQuadraticField;
use proptest::prelude::*;

fn field(d: i64) -> ImaginaryQuadraticField {
    ImaginaryQuadraticField::new(d).unwrap()
}

#[test]
fn count_matches_brute_force_up_to_300() {
    for d in [-5, -15, -1, -2] {
        let k = field(d);
        let xs: Vec<f64> = (0..=300).map(f64::from).collect();
        let fast = compare_report(&k, &xs).unwrap();
        // one oracle run, then cumulative counts by norm
        let census = irreducible_census(&k, 300.0).unwrap();
        for (x, row) in xs.iter().zip(&fast) {
            let m = census.irreducibles.iter().filter(|a| a.norm as f64 <= *x).count() as u64;
            let p = census
                .irreducibles
                .iter()
                .zip(&census.prime)
                .filter(|(a, &pr)| pr && a.norm as f64 <= *x)
                .count() as u64;
            assert_eq!((row.m, row.p, row.pair_count), (m, p, m - p), "d={d} x={x}");
        }
    }
}

#[test]
fn spot_checks_against_single_runs() {
    for (d, x) in [
        (-5, 10.0),
        (-5, 77.5),
        (-15, 4.0),
        (-15, 123.0),
        (-1, 25.0),
        (-3, 200.0),
        (-2, 97.0),
    ] {
        let k = field(d);
        let a = count_m(&k, x).unwrap();
        let b = brute_force_m(&k, x).unwrap();
        assert_eq!((a.m, a.p, a.pair_count), (b.m, b.p, b.pair_count), "d={d} x={x}");
    }
}

#[test]
fn class_one_fields_have_no_nonprime_irreducibles() {
    for d in [-1, -2, -3, -7] {
        let r = count_m(&field(d), 5000.0).unwrap();
        assert_eq!(r.m, r.p);
        assert_eq!(r.pair_count, 0);
    }
}

#[test]
fn classification_agrees_with_oracle() {
    for d in [-5, -15] {
        let k = field(d);
        let ring = Ring::new(&k);
        let census = irreducible_census(&k, 300.0).unwrap();
        let units = ring.units();
        let reps: std::collections::HashMap<_, bool> = census
            .irreducibles
            .iter()
            .cloned()
            .zip(census.prime.iter().cloned())
            .collect();
        for e in ring.elements_up_to(300) {
            let class = classify_element(&k, e.a, e.b).unwrap();
            let expected = match reps.get(&ring.canonical(&e, &units)) {
                Some(true) => ElementClass::Prime,
                Some(false) => ElementClass::IrreducibleNonprime,
                None if e.norm == 1 => ElementClass::Unit,
                None => ElementClass::Reducible,
            };
            assert_eq!(class, expected, "d={d} a={} b={} N={}", e.a, e.b, e.norm);
        }
    }
}

#[test]
fn monotone_counts() {
    let k = field(-5);
    let xs: Vec<f64> = (1..=200).map(|i| i as f64 * 250.0).collect();
    let rows = compare_report(&k, &xs).unwrap();
    assert!(rows
        .windows(2)
        .all(|w| w[0].m <= w[1].m && w[0].p <= w[1].p && w[0].pair_count <= w[1].pair_count));
}

fn naive_pairs(v: &[u64], x: u64) -> u64 {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i..v.len() {
            if v[i] * v[j] <= x {
                c += 1;
            }
        }
    }
    c
}

proptest! {
    #[test]
    fn pair_count_matches_naive_and_reversal(mut v in proptest::collection::vec(2u64..500, 0..60), x in 0u64..20_000) {
        v.sort();
        let asc = count_norm_pairs(&v, x);
        prop_assert_eq!(asc, naive_pairs(&v, x));
        let mut rev = v.clone();
        rev.reverse();
        prop_assert_eq!(count_norm_pairs(&rev, x), asc);
    }

    #[test]
    fn reports_satisfy_invariants(x in 0.0f64..20_000.0, idx in 0usize..4) {
        let k = field([-5, -15, -1, -6][idx]);
        let r = count_m(&k, x).unwrap();
        prop_assert_eq!(r.m, r.p + r.pair_count);
        if let (Some(p), Some(ratio)) = (r.predicted, r.ratio) {
            prop_assert!((ratio - r.m as f64 / p).abs() < 1e-12);
        }
    }
}
