//! Element-level brute force for small cutoffs. Works directly with
//! lattice points `a + b w` and exact divisibility; it does not use prime
//! splitting, class groups or the Kronecker symbol.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::CountReport;
use crate::error::{out_of_range, Result};
use crate::number_field::ImaginaryQuadraticField;
use crate::sieve::isqrt;

pub const MAX_BRUTE_FORCE_NORM: f64 = 2000.0;

/// `a + b w` over the integral basis `{1, w}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AlgebraicInteger {
    pub a: i64,
    pub b: i64,
    pub norm: i64,
}

/// Ring arithmetic in `O_K` with `w^2 = t w - n`.
#[derive(Debug, Clone, Copy)]
pub struct Ring {
    t: i64,
    n: i64,
    abs_disc: i64,
}

impl Ring {
    pub fn new(field: &ImaginaryQuadraticField) -> Self {
        let (t, n) = field.norm_form();
        Self {
            t,
            n,
            abs_disc: field.discriminant().abs(),
        }
    }

    pub fn element(&self, a: i64, b: i64) -> AlgebraicInteger {
        AlgebraicInteger {
            a,
            b,
            norm: a * a + self.t * a * b + self.n * b * b,
        }
    }

    pub fn mul(&self, x: &AlgebraicInteger, y: &AlgebraicInteger) -> AlgebraicInteger {
        self.element(
            x.a * y.a - self.n * x.b * y.b,
            x.a * y.b + x.b * y.a + self.t * x.b * y.b,
        )
    }

    pub fn conj(&self, x: &AlgebraicInteger) -> AlgebraicInteger {
        self.element(x.a + self.t * x.b, -x.b)
    }

    /// Whether `d` divides `x`, via `x conj(d) / N(d)`.
    pub fn divides(&self, d: &AlgebraicInteger, x: &AlgebraicInteger) -> bool {
        let q = self.mul(x, &self.conj(d));
        q.a % d.norm == 0 && q.b % d.norm == 0
    }

    /// Every element with `1 <= N <= max_norm`, using
    /// `4N = (2a + t b)^2 + |D| b^2`.
    pub fn elements_up_to(&self, max_norm: i64) -> Vec<AlgebraicInteger> {
        let mut out = Vec::new();
        let bmax = isqrt((4 * max_norm / self.abs_disc) as u64) as i64;
        for b in -bmax..=bmax {
            let rest = 4 * max_norm - self.abs_disc * b * b;
            if rest < 0 {
                continue;
            }
            let s = isqrt(rest as u64) as i64;
            let lo = (-self.t * b - s).div_euclid(2) - 1;
            let hi = (-self.t * b + s).div_euclid(2) + 1;
            for a in lo..=hi {
                let e = self.element(a, b);
                if e.norm >= 1 && e.norm <= max_norm {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn units(&self) -> Vec<AlgebraicInteger> {
        self.elements_up_to(1)
    }

    /// Smallest member of the associate class of `x`.
    pub fn canonical(&self, x: &AlgebraicInteger, units: &[AlgebraicInteger]) -> AlgebraicInteger {
        units
            .iter()
            .map(|u| self.mul(u, x))
            .min_by_key(|e| (e.a, e.b))
            .expect("at least one unit")
    }

    /// Whether `O / (p)` is a field, i.e. `X^2 - t X + n` has no root mod p.
    fn rational_prime_stays_prime(&self, p: i64) -> bool {
        (0..p).all(|r| (r * r - self.t * r + self.n).rem_euclid(p) != 0)
    }
}

fn is_rational_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// One representative per principal ideal generated by an irreducible.
#[derive(Debug, Clone)]
pub struct IrreducibleCensus {
    pub irreducibles: Vec<AlgebraicInteger>,
    /// Which irreducibles are prime elements.
    pub prime: Vec<bool>,
}

/// Irreducible elements up to associates, with norm `<= x`.
///
/// `a` is irreducible iff no `b` with `1 < N(b) <= sqrt N(a)` and
/// `N(b) | N(a)` divides it. It is prime iff `O/(a)` is a field: `N(a)`
/// is a rational prime, or `a ~ p` for a rational prime `p` with `O/(p)` a
/// field.
pub fn irreducible_census(field: &ImaginaryQuadraticField, x: f64) -> Result<IrreducibleCensus> {
    if !(x <= MAX_BRUTE_FORCE_NORM) {
        return Err(out_of_range("brute-force cutoff", x, "<= 2000"));
    }
    let ring = Ring::new(field);
    if x < 2.0 {
        return Ok(IrreducibleCensus {
            irreducibles: Vec::new(),
            prime: Vec::new(),
        });
    }
    let max_norm = x.floor() as i64;
    let all = ring.elements_up_to(max_norm);
    let units = ring.units();
    let mut by_norm: HashMap<i64, Vec<AlgebraicInteger>> = HashMap::new();
    for e in &all {
        by_norm.entry(e.norm).or_default().push(*e);
    }

    let mut reps = BTreeSet::new();
    for alpha in all.iter().filter(|e| e.norm > 1) {
        let n = alpha.norm;
        let reducible = (2..)
            .take_while(|d| d * d <= n)
            .filter(|d| n % d == 0)
            .filter_map(|d| by_norm.get(&d))
            .flatten()
            .any(|beta| ring.divides(beta, alpha));
        if !reducible {
            reps.insert(ring.canonical(alpha, &units));
        }
    }

    let irreducibles: Vec<AlgebraicInteger> = reps.into_iter().collect();
    let prime = irreducibles
        .iter()
        .map(|alpha| {
            if is_rational_prime(alpha.norm) {
                return true;
            }
            let p = isqrt(alpha.norm as u64) as i64;
            p * p == alpha.norm
                && is_rational_prime(p)
                && ring.canonical(alpha, &units) == ring.canonical(&ring.element(p, 0), &units)
                && ring.rational_prime_stays_prime(p)
        })
        .collect();
    Ok(IrreducibleCensus { irreducibles, prime })
}

/// `M(x)` by exhaustive element search; `P` counts the prime elements and
/// `pair_count` the irreducible nonprimes.
pub fn brute_force_m(field: &ImaginaryQuadraticField, x: f64) -> Result<CountReport> {
    let census = irreducible_census(field, x)?;
    let m = census.irreducibles.len() as u64;
    let p = census.prime.iter().filter(|&&b| b).count() as u64;
    Ok(CountReport {
        x,
        m,
        p,
        pair_count: m - p,
        predicted: None,
        ratio: None,
        error_scale: None,
    })
}
