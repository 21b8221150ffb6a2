use irred_core::cycle_index::{
    cycle_types, evaluate_pk, evaluate_pk_exact, pk_table, power_sums, rho, symmetric_sum_oracle,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn partition_count(n: usize) -> usize {
    // p(n) by the coin-change recurrence
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

#[test]
fn cycle_type_counts_and_normalization() {
    for k in 1..=12 {
        let types = cycle_types(k).unwrap();
        assert_eq!(types.len(), partition_count(k), "k={k}");
        let table = pk_table(k).unwrap();
        // sum of class sizes is k!
        let total = table.terms().iter().fold(BigRational::zero(), |acc, (_, c)| {
            acc + BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom())) * BigRational::from(factorial(k))
        });
        assert_eq!(total, BigRational::from(factorial(k)), "k={k}");
        assert!(table.terms().iter().all(|(_, c)| *c.numer() > 0));
    }
}

#[test]
fn symmetric_sum_identity_exact() {
    let suite: Vec<Vec<BigRational>> = vec![
        vec![q(1, 1)],
        vec![q(1, 2)],
        vec![q(-3, 7)],
        vec![q(1, 1), q(1, 1)],
        vec![q(1, 2), q(1, 3)],
        vec![q(2, 5), q(-1, 4)],
        vec![q(0, 1), q(5, 3)],
        vec![q(-1, 1), q(1, 1)],
        vec![q(1, 2), q(1, 3), q(1, 5)],
        vec![q(7, 2), q(-2, 9), q(3, 11)],
        vec![q(1, 1), q(2, 1), q(3, 1)],
        vec![q(-5, 6), q(-5, 6), q(1, 7)],
        vec![q(1, 4), q(1, 9), q(1, 25)],
        vec![q(1, 2), q(1, 3), q(1, 5), q(1, 7)],
        vec![q(1, 4), q(1, 9), q(1, 25), q(1, 49)],
        vec![q(-1, 2), q(2, 3), q(-3, 4), q(4, 5)],
        vec![q(10, 1), q(-10, 1), q(1, 100), q(0, 1)],
        vec![q(13, 17), q(19, 23), q(-29, 31), q(37, 41)],
        vec![q(1, 1), q(1, 1), q(1, 1), q(1, 1)],
        vec![q(2, 1), q(3, 2), q(5, 4), q(9, 8)],
        vec![q(-7, 3), q(1, 6), q(11, 12), q(-1, 24)],
        vec![q(3, 1), q(1, 3)],
    ];
    assert!(suite.len() >= 20);
    for x in &suite {
        for k in 1..=5 {
            let lhs = symmetric_sum_oracle(k, x).unwrap();
            let rhs = evaluate_pk_exact(k, &power_sums(x, k)).unwrap();
            assert_eq!(lhs, rhs, "k={k} x={x:?}");
        }
    }
}

#[test]
fn rho_decomposition() {
    // P_k = sum_nu1 z_1^nu1 / nu1! * rho_{k,nu1}(z_2, ..)
    let z = [0.7, -0.3, 0.45, 1.2, -0.8, 0.25, 0.6, -0.1];
    for k in 1..=8 {
        let direct = evaluate_pk(k, &z[..k]).unwrap();
        let mut fact = 1.0;
        let mut sum = 0.0;
        for nu1 in 0..=k {
            if nu1 > 0 {
                fact *= nu1 as f64;
            }
            sum += z[0].powi(nu1 as i32) / fact * rho(k, nu1, &z[1..]).unwrap();
        }
        assert!((direct - sum).abs() < 1e-12, "k={k}");
    }
}

#[test]
fn pk_generating_function() {
    // sum_k P_k t^k = exp(sum_j z_j t^j / j); with z_j = 1 for all j this is 1/(1-t)
    for k in 0..=20 {
        let v = evaluate_pk(k, &vec![1.0; k]).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "k={k}");
    }
}

proptest! {
    #[test]
    fn identity_holds_for_random_rationals(
        nums in proptest::collection::vec(-20i64..20, 1..=4),
        dens in proptest::collection::vec(1i64..12, 4),
        k in 1usize..=5,
    ) {
        let x: Vec<BigRational> = nums.iter().zip(&dens).map(|(&n, &d)| q(n, d)).collect();
        let lhs = symmetric_sum_oracle(k, &x).unwrap();
        let rhs = evaluate_pk_exact(k, &power_sums(&x, k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
