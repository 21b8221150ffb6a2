//! Multiplicative arithmetic functions and Ramanujan sums.

use num_integer::Integer;

use crate::sieve::factorize;

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.extend(upper);
    out
}

/// `c_h(j) = sum over k mod h coprime to h of exp(2 pi i j k / h)`, from the
/// closed form `phi(h) mu(h / (h, j)) / phi(h / (h, j))`.
pub fn ramanujan_sum(h: u64, j: i64) -> i64 {
    assert!(h >= 1);
    let g = (j.unsigned_abs() % h).gcd(&h);
    let q = h / g;
    totient(h) as i64 * mobius(q) / totient(q) as i64
}
