//! Exact values of `M(x)` for class number at most two, element
//! classification, and comparison against the two-term prediction.
//!
//! For `h = 2` an irreducible principal ideal is either a principal prime
//! or a product of two nonprincipal primes, so
//! `M(x) = P(x) + #{ {p, q} nonprincipal : N p N q <= x }`.

pub mod oracle;

use serde::{Deserialize, Serialize};

pub use oracle::{brute_force_m, AlgebraicInteger};

use crate::error::{out_of_range, Error, Result};
use crate::number_field::{
    splitting, ImaginaryQuadraticField, PrimeIdealRecord, PrimeIdealStream, Splitting, MAX_NORM,
};
use crate::series::coefficients::class_number_two_cb;
use crate::series::{g_inputs_for_field, g_value_h2, truncation_for_tolerance};
use crate::sieve::factorize;

/// Target accuracy of the `g` value feeding predictions.
pub const PREDICTION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub x: f64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "P")]
    pub p: u64,
    pub pair_count: u64,
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
    /// `x / (log x)^{3/2}` when `D = 2`.
    pub error_scale: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Zero,
    Unit,
    Prime,
    IrreducibleNonprime,
    Reducible,
}

impl std::fmt::Display for ElementClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Zero => "zero",
            Self::Unit => "unit",
            Self::Prime => "prime",
            Self::IrreducibleNonprime => "irreducible_nonprime",
            Self::Reducible => "reducible",
        })
    }
}

fn require_h_at_most_two(field: &ImaginaryQuadraticField, operation: &'static str) -> Result<()> {
    if field.class_number() > 2 {
        return Err(Error::UnsupportedClassNumber {
            h: field.class_number(),
            operation,
        });
    }
    Ok(())
}

/// Unordered pairs `i <= j` with `a_i a_j <= x` over a sorted list (either
/// direction), by a two-pointer sweep.
pub fn count_norm_pairs<T: Copy + Into<u64>>(norms: &[T], x: u64) -> u64 {
    let n = norms.len();
    if n == 0 {
        return 0;
    }
    let ascending = norms[0].into() <= norms[n - 1].into();
    let at = |i: usize| {
        if ascending {
            norms[i].into()
        } else {
            norms[n - 1 - i].into()
        }
    };
    let mut hi = n;
    let mut count = 0u64;
    for lo in 0..n {
        let a = at(lo);
        while hi > lo && a.saturating_mul(at(hi - 1)) > x {
            hi -= 1;
        }
        if hi <= lo {
            break;
        }
        count += (hi - lo) as u64;
    }
    count
}

/// Principal and nonprincipal prime-ideal norms up to a cutoff, one entry
/// per ideal. Nonprincipal norms are kept only up to `limit / 2`, since a
/// pair partner has norm at least 2. Norms are at most `10^9`, so `u32`
/// storage suffices.
#[derive(Debug, Clone)]
pub struct IdealCensus {
    limit: u64,
    principal: Vec<u32>,
    nonprincipal: Vec<u32>,
}

impl IdealCensus {
    pub fn new(field: &ImaginaryQuadraticField, limit: u64) -> Result<Self> {
        require_h_at_most_two(field, "count_M")?;
        if limit > MAX_NORM {
            return Err(out_of_range("x", limit, "<= 10^9"));
        }
        let mut principal = Vec::new();
        let mut nonprincipal = Vec::new();
        for rec in PrimeIdealStream::new(field, limit)? {
            let copies = rec.ideals_above as usize;
            let norm = rec.norm as u32;
            if rec.principal == Some(true) {
                principal.extend(std::iter::repeat_n(norm, copies));
            } else if rec.norm <= limit / 2 {
                nonprincipal.extend(std::iter::repeat_n(norm, copies));
            }
        }
        Ok(Self {
            limit,
            principal,
            nonprincipal,
        })
    }

    /// Counts at `x <= limit`.
    pub fn counts_at(&self, x: f64) -> (u64, u64) {
        if x < 2.0 {
            return (0, 0);
        }
        let cut = (x.floor() as u64).min(self.limit);
        let p = self.principal.partition_point(|&n| u64::from(n) <= cut) as u64;
        let end = self.nonprincipal.partition_point(|&n| u64::from(n) <= cut / 2);
        (p, count_norm_pairs(&self.nonprincipal[..end], cut))
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x <= MAX_NORM as f64) {
        return Err(out_of_range("x", x, "<= 10^9"));
    }
    Ok(())
}

/// Regular part `g_c(1)` of the nonprincipal class, when the field has
/// class number two and known Hilbert class field data.
fn nonprincipal_g(field: &ImaginaryQuadraticField) -> Result<Option<f64>> {
    if field.class_number() != 2 || field.hilbert_class_field_data().is_none() {
        return Ok(None);
    }
    let cut = truncation_for_tolerance(PREDICTION_TOLERANCE)?;
    Ok(Some(g_value_h2(&g_inputs_for_field(field, cut)?)?.value))
}

/// Two-term prediction and error-term scale at `x`: `x / log x` for
/// `h = 1`, `(x / log x)(C loglog x + B)` for `h = 2` given `g`.
fn prediction(h: u64, g: Option<f64>, x: f64) -> Option<(f64, f64)> {
    if !(x > std::f64::consts::E) {
        return None;
    }
    let lx = x.ln();
    match (h, g) {
        (1, _) => Some((x / lx, x / lx)),
        (2, Some(g)) => {
            let cb = class_number_two_cb(g);
            let b = cb.secondary.expect("D = 2");
            Some(((x / lx) * (cb.leading * lx.ln() + b), x / lx.powf(1.5)))
        }
        _ => None,
    }
}

/// Exact `M(x)` by streaming the prime ideals once.
pub fn count_m(field: &ImaginaryQuadraticField, x: f64) -> Result<CountReport> {
    Ok(compare_report(field, &[x])?.remove(0))
}

/// `M(x)` with prediction at every `x`, from one sieve pass to the largest.
pub fn compare_report(field: &ImaginaryQuadraticField, xs: &[f64]) -> Result<Vec<CountReport>> {
    require_h_at_most_two(field, "count_M")?;
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    for &x in xs {
        check_x(x)?;
    }
    let max = xs.iter().cloned().fold(0.0, f64::max);
    let census = IdealCensus::new(field, if max < 2.0 { 0 } else { max.floor() as u64 })?;
    let g = nonprincipal_g(field)?;
    Ok(xs
        .iter()
        .map(|&x| {
            let (p, pair_count) = census.counts_at(x);
            let m = p + pair_count;
            let pred = prediction(field.class_number(), g, x);
            CountReport {
                x,
                m,
                p,
                pair_count,
                predicted: pred.map(|(v, _)| v),
                ratio: pred.map(|(v, _)| m as f64 / v),
                error_scale: pred.map(|(_, s)| s),
            }
        })
        .collect())
}

/// Splitting and principality of the primes above a rational prime.
fn prime_type(field: &ImaginaryQuadraticField, p: u64) -> Result<(Splitting, bool)> {
    let s = splitting(field, p)?;
    let rec = PrimeIdealRecord {
        p,
        splitting: s,
        norm: if s == Splitting::Inert { p * p } else { p },
        ideals_above: if s == Splitting::Split { 2 } else { 1 },
        principal: None,
    };
    Ok((s, crate::number_field::is_principal(field, &rec)?))
}

/// Classification of `a + b w` from its norm. With `h <= 2` an element of
/// norm `p` or an inert `p^2` is prime, and an element whose norm is a
/// product of two primes lying under nonprincipal ideals is irreducible but
/// not prime.
pub fn classify_element(field: &ImaginaryQuadraticField, a: i64, b: i64) -> Result<ElementClass> {
    require_h_at_most_two(field, "classify_element")?;
    let n = field.norm(a, b);
    if n == 0 {
        return Ok(ElementClass::Zero);
    }
    if n == 1 {
        return Ok(ElementClass::Unit);
    }
    let f = factorize(n as u64);
    let total: u32 = f.iter().map(|&(_, e)| e).sum();
    match (f.as_slice(), total) {
        (_, 1) => Ok(ElementClass::Prime),
        ([(p, 2)], 2) if prime_type(field, *p)?.0 == Splitting::Inert => Ok(ElementClass::Prime),
        (_, 2) if field.class_number() == 2 => {
            for &(p, _) in &f {
                let (s, principal) = prime_type(field, p)?;
                if s == Splitting::Inert || principal {
                    return Ok(ElementClass::Reducible);
                }
            }
            Ok(ElementClass::IrreducibleNonprime)
        }
        _ => Ok(ElementClass::Reducible),
    }
}
