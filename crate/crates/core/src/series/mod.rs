//! Analytic side: truncated prime-ideal sums with explicit tail bounds, the
//! regular parts `g_c(1)` for class number two, the expansion coefficients
//! `c_mu` and the constants `C`, `B` of `M(x)`.

pub mod arith;
pub mod coefficients;
pub mod tauberian;

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::number_field::{residue, ImaginaryQuadraticField, PrimeIdealStream};
use arith::{divisors, mobius, totient};

/// Truncation used for four-decimal values.
pub const DEFAULT_TRUNCATION: f64 = 84.0;

/// Kahan-compensated accumulator. Summation order is the caller's, so a
/// fixed input order gives bit-identical results.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A partial sum up to a cutoff together with a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSum {
    pub value: f64,
    pub cutoff: f64,
    pub error_bound: f64,
}

fn largest_below(x: f64) -> u64 {
    (x.ceil() as u64).saturating_sub(1)
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

/// Sums `weight(N p)` over the prime ideals of the selected class with
/// norm `< x`, one term per ideal.
fn class_sum(field: &ImaginaryQuadraticField, x: f64, principal: bool, weight: impl Fn(f64) -> f64) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for rec in PrimeIdealStream::new(field, largest_below(x))? {
        if rec.principal == Some(principal) {
            let term = weight(rec.norm as f64);
            for _ in 0..rec.ideals_above {
                acc.add(term);
            }
        }
    }
    Ok(acc.value())
}

/// `S(x) = sum over nonprincipal p with N p < x of
/// (1/2) [log((N p + 1)/(N p - 1)) - 2/N p]`, i.e. the odd-power tail
/// `sum_{m >= 3 odd} 1/(m N p^m)` in closed form. The discarded part is at
/// most `1/(3 (x-2)^2)`. With `want_principal` the principal ideals are
/// summed instead.
pub fn tail_sum_s(field: &ImaginaryQuadraticField, x: f64, want_principal: bool) -> Result<TruncatedSum> {
    require_h_at_most_two(field, "tail_sum_s")?;
    if !(x > 3.0) {
        return Err(out_of_range("truncation x", x, "> 3"));
    }
    let value = class_sum(field, x, want_principal, |n| {
        0.5 * ((2.0 / (n - 1.0)).ln_1p() - 2.0 / n)
    })?;
    Ok(TruncatedSum {
        value,
        cutoff: x,
        error_bound: 1.0 / (3.0 * (x - 2.0) * (x - 2.0)),
    })
}

/// `z_j = sum N p^{-j}` over one class (nonprincipal or principal), norm
/// `< x`, with tail bound `2 (x-1)^{1-j} / (j-1)`.
pub fn power_sum_z(field: &ImaginaryQuadraticField, nonprincipal: bool, j: u32, x: f64) -> Result<TruncatedSum> {
    require_h_at_most_two(field, "power_sum_z")?;
    if j < 2 {
        return Err(out_of_range("power j", j, ">= 2"));
    }
    if !(x > 3.0) {
        return Err(out_of_range("truncation x", x, "> 3"));
    }
    let value = class_sum(field, x, !nonprincipal, |n| n.powi(-(j as i32)))?;
    Ok(TruncatedSum {
        value,
        cutoff: x,
        error_bound: 2.0 * (x - 1.0).powi(1 - j as i32) / (j as f64 - 1.0),
    })
}

/// Smallest integer `x > 3` with `1/(3 (x-2)^2) < tol`.
pub fn truncation_for_tolerance(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(out_of_range("tolerance", tol, "> 0"));
    }
    let mut x = (2.0 + (1.0 / (3.0 * tol)).sqrt()).floor().max(3.0);
    while 1.0 / (3.0 * (x - 2.0) * (x - 2.0)) >= tol || x <= 3.0 {
        x += 1.0;
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GValueInputs {
    pub a_k: f64,
    pub a_l: f64,
    pub s: TruncatedSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GValue {
    pub value: f64,
    pub error_bound: f64,
}

/// `g_c(1) = log a_K - (1/2) log a_L - S` for the nonprincipal class when
/// `h = 2`.
pub fn g_value_h2(inputs: &GValueInputs) -> Result<GValue> {
    if !(inputs.a_k > 0.0 && inputs.a_l > 0.0) {
        return Err(out_of_range(
            "residue",
            format!("({}, {})", inputs.a_k, inputs.a_l),
            "> 0",
        ));
    }
    Ok(GValue {
        value: inputs.a_k.ln() - 0.5 * inputs.a_l.ln() - inputs.s.value,
        error_bound: inputs.s.error_bound,
    })
}

/// Residues and truncated sum for a class-number-two field whose Hilbert
/// class field data is known.
pub fn g_inputs_for_field(field: &ImaginaryQuadraticField, x: f64) -> Result<GValueInputs> {
    if field.class_number() != 2 {
        return Err(Error::UnsupportedClassNumber {
            h: field.class_number(),
            operation: "g_value_h2",
        });
    }
    let l = field
        .hilbert_class_field_data()
        .ok_or(Error::MissingHilbertData(field.d()))?;
    Ok(GValueInputs {
        a_k: field.residue(),
        a_l: residue(&l),
        s: tail_sum_s(field, x, false)?,
    })
}

/// `sum_{d | h} (mu(d)/d) log a_{L_d} - correction`, the right-hand side of
/// the generator-sum identity for a cyclic class group. `log_residues`
/// lists `(d, log a_{L_d})` for the divisors of `h`.
pub fn mobius_residue_sum(h: u64, log_residues: &[(u64, f64)], correction: f64) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for d in divisors(h) {
        let (_, log_a) = log_residues
            .iter()
            .find(|(e, _)| *e == d)
            .ok_or_else(|| out_of_range("subfield degree", d, "residue supplied for every divisor of h"))?;
        acc.add(mobius(d) as f64 / d as f64 * log_a);
    }
    Ok(acc.value() - correction)
}

/// `|g_c(1) - [sum_{d|2} (mu(d)/d) log a_{L_d} - S]|` where the generator
/// sum for `h = 2` is the single nonprincipal class.
pub fn theorem2_residual(inputs: &GValueInputs, log_residues: &[(u64, f64)]) -> Result<f64> {
    debug_assert_eq!(totient(2), 1);
    let lhs = g_value_h2(inputs)?.value;
    let rhs = mobius_residue_sum(2, log_residues, inputs.s.value)?;
    Ok((lhs - rhs).abs())
}

pub fn theorem2_check_h2(field: &ImaginaryQuadraticField) -> Result<f64> {
    let inputs = g_inputs_for_field(field, DEFAULT_TRUNCATION)?;
    let subfields = [(1, inputs.a_k.ln()), (2, inputs.a_l.ln())];
    theorem2_residual(&inputs, &subfields)
}
