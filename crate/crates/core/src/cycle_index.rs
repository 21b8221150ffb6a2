//! Cycle-index polynomials `P_k` of the symmetric groups and their
//! partial sums `rho`.
//!
//! `P_k(z) = sum over cycle types nu of z_1^nu_1 .. z_k^nu_k / prod(nu_j! j^nu_j)`.
//! With `z_j` the `j`-th power sum of a sequence `x`, `P_k` is the complete
//! homogeneous symmetric polynomial of degree `k` in `x`; that identity is
//! what [`symmetric_sum_oracle`] checks independently.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{out_of_range, Error, Result};

pub const MAX_DEGREE: usize = 20;
pub const ORACLE_MAX_DEGREE: usize = 6;
pub const ORACLE_MAX_VARIABLES: usize = 8;

/// Multiplicities `(nu_1, .., nu_k)` of a permutation's cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    multiplicities: Vec<u32>,
}

impl CycleType {
    pub fn new(multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.len() > MAX_DEGREE {
            return Err(out_of_range("cycle type length", multiplicities.len(), "<= 20"));
        }
        Ok(Self { multiplicities })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `sum j * nu_j`.
    pub fn degree(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &n)| (i + 1) * n as usize)
            .sum()
    }

    /// `1 / (prod nu_j! * prod j^nu_j)`.
    pub fn coefficient(&self) -> Ratio<i128> {
        coefficient(&self.multiplicities, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTypeTable {
    k: usize,
    terms: Vec<(CycleType, Ratio<i128>)>,
}

impl CycleTypeTable {
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(CycleType, Ratio<i128>)] {
        &self.terms
    }
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// Coefficient of a multiplicity vector whose first entry is the part size
/// `first_part`.
fn coefficient(mults: &[u32], first_part: usize) -> Ratio<i128> {
    let denom: i128 = mults
        .iter()
        .enumerate()
        .map(|(i, &n)| factorial(n) * ((i + first_part) as i128).pow(n))
        .product();
    Ratio::new(1, denom)
}

/// All multiplicity vectors `(nu_lo, .., nu_hi)` with `sum j * nu_j = n`,
/// in descending lexicographic order.
fn multiplicity_vectors(n: usize, lo: usize, hi: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, part: usize, hi: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part > hi {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for count in (0..=rest / part).rev() {
            cur.push(count as u32);
            go(rest - count * part, part + 1, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo > hi {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, lo, hi, &mut Vec::with_capacity(hi - lo + 1), &mut out);
    out
}

/// Every cycle type of `S_k`, ordered by descending `(nu_1, .., nu_k)`.
pub fn cycle_types(k: usize) -> Result<Vec<CycleType>> {
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(out_of_range("degree k", k, "1..=20"));
    }
    Ok(multiplicity_vectors(k, 1, k)
        .into_iter()
        .map(|multiplicities| CycleType { multiplicities })
        .collect())
}

/// Exact coefficient table of `P_k`; `P_0` is the constant 1.
pub fn pk_table(k: usize) -> Result<CycleTypeTable> {
    if k > MAX_DEGREE {
        return Err(out_of_range("degree k", k, "0..=20"));
    }
    let types = if k == 0 {
        vec![CycleType {
            multiplicities: Vec::new(),
        }]
    } else {
        cycle_types(k)?
    };
    let terms = types
        .into_iter()
        .map(|t| {
            let c = t.coefficient();
            (t, c)
        })
        .collect();
    Ok(CycleTypeTable { k, terms })
}

/// Scalars the polynomials can be evaluated over.
pub trait Scalar: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {
    fn from_ratio(r: &Ratio<i128>) -> Self;
}

impl Scalar for f64 {
    fn from_ratio(r: &Ratio<i128>) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }
}

impl Scalar for BigRational {
    fn from_ratio(r: &Ratio<i128>) -> Self {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }
}

fn pow<T: Scalar>(base: &T, exp: u32) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

/// Sum over multiplicity vectors of coefficient times the monomial, where
/// `z[i]` is the variable for part size `i + first_part`.
fn eval_terms<T: Scalar>(vectors: &[Vec<u32>], first_part: usize, z: &[T]) -> T {
    vectors.iter().fold(T::zero(), |acc, mults| {
        let monomial = mults.iter().zip(z).fold(T::one(), |m, (&n, zj)| m * pow(zj, n));
        acc + T::from_ratio(&coefficient(mults, first_part)) * monomial
    })
}

/// `P_k(z_1, .., z_k)` over any [`Scalar`].
pub fn evaluate_pk_generic<T: Scalar>(k: usize, z: &[T]) -> Result<T> {
    if k > MAX_DEGREE {
        return Err(out_of_range("degree k", k, "0..=20"));
    }
    if k == 0 {
        return Ok(T::one());
    }
    if z.len() < k {
        return Err(Error::LengthMismatch {
            what: "power-sum vector z",
            expected: k,
            got: z.len(),
        });
    }
    Ok(eval_terms(&multiplicity_vectors(k, 1, k), 1, &z[..k]))
}

pub fn evaluate_pk(k: usize, z: &[f64]) -> Result<f64> {
    evaluate_pk_generic(k, z)
}

pub fn evaluate_pk_exact(k: usize, z: &[BigRational]) -> Result<BigRational> {
    evaluate_pk_generic(k, z)
}

/// `rho_{k, nu1}(z_2, .., z_k)`: the part of `P_k` with exactly `nu1`
/// fixed points, without the `z_1^nu1 / nu1!` factor. `z[0]` is `z_2`.
pub fn rho_generic<T: Scalar>(k: usize, nu1: usize, z: &[T]) -> Result<T> {
    if nu1 > k {
        return Err(out_of_range("nu1", nu1, "0..=k"));
    }
    if k > MAX_DEGREE {
        return Err(out_of_range("degree k", k, "0..=20"));
    }
    let rest = k - nu1;
    let needed = rest.saturating_sub(1);
    if z.len() < needed {
        return Err(Error::LengthMismatch {
            what: "z_2.. vector",
            expected: needed,
            got: z.len(),
        });
    }
    Ok(eval_terms(&multiplicity_vectors(rest, 2, rest), 2, &z[..needed]))
}

pub fn rho(k: usize, nu1: usize, z: &[f64]) -> Result<f64> {
    rho_generic(k, nu1, z)
}

/// `sum over n_1 <= .. <= n_k of x_{n_1} .. x_{n_k}` by direct enumeration.
pub fn symmetric_sum_oracle<T>(k: usize, x: &[T]) -> Result<T>
where
    T: Clone + Zero + One + Mul<Output = T>,
{
    if !(1..=ORACLE_MAX_DEGREE).contains(&k) {
        return Err(out_of_range("oracle degree k", k, "1..=6"));
    }
    if x.len() > ORACLE_MAX_VARIABLES {
        return Err(out_of_range("oracle variable count", x.len(), "<= 8"));
    }
    fn go<T: Clone + Zero + One + Mul<Output = T>>(x: &[T], start: usize, left: usize, acc: T) -> T {
        if left == 0 {
            return acc;
        }
        (start..x.len()).fold(T::zero(), |s, i| s + go(x, i, left - 1, acc.clone() * x[i].clone()))
    }
    Ok(go(x, 0, k, T::one()))
}

/// Power sums `(sum x_i, sum x_i^2, .., sum x_i^k)`.
pub fn power_sums<T: Scalar>(x: &[T], k: usize) -> Vec<T> {
    (1..=k as u32)
        .map(|j| x.iter().fold(T::zero(), |s, xi| s + pow(xi, j)))
        .collect()
}
