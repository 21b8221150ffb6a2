//! Coefficients `c_mu` of the expansion `mu(s) = sum c_mu l^mu`,
//! `l = (1/h) log(1/(s-1))`, and the asymptotic constants `C`, `B` of
//! `M(x)`.
//!
//! Two families of per-class inputs appear. `g_class[i]` is the regular
//! part at `s = 1` of the prime sum over class `i`; `z[i][j - 2]` is the
//! power sum `sum N p^{-j}` over that class. The Tauberian inputs
//! `g_nu = h^{-nu} c_nu` are derived from these internally and never mixed up
//! with them.

use serde::{Deserialize, Serialize};

use super::arith::totient;
use super::tauberian::{e_coefficients, EULER_GAMMA};
use crate::error::{out_of_range, Error, Result};
use crate::group::{davenport_constant, enumerate_minimal_zero_sums, FiniteAbelianGroup};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientInputs {
    pub g_class: Vec<f64>,
    pub z2_class: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub davenport: u32,
    pub h: u64,
    pub c_d: f64,
    pub c_dm1: f64,
    /// Defined when `D >= 2`.
    pub c_dm2: Option<f64>,
    #[serde(rename = "C")]
    pub leading: f64,
    /// Defined when `D >= 2`.
    #[serde(rename = "B")]
    pub secondary: Option<f64>,
    pub inputs: CoefficientInputs,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn pattern_weight(k: &[u32]) -> f64 {
    k.iter().map(|&ki| 1.0 / factorial(ki)).product()
}

fn check_len(what: &'static str, v: &[f64], h: usize) -> Result<()> {
    if v.len() != h {
        return Err(Error::LengthMismatch {
            what,
            expected: h,
            got: v.len(),
        });
    }
    Ok(())
}

/// Multiplicity tuples `(k_1, .., k_h)` of every pattern in `D_m`; empty
/// for `m = 0`.
fn pattern_tuples(group: &FiniteAbelianGroup, m: u32) -> Result<Vec<Vec<u32>>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_minimal_zero_sums(group, m)?
        .iter()
        .map(|p| p.multiplicities(group))
        .collect())
}

/// `c_D`, `c_{D-1}`, `c_{D-2}` in closed form, with `C` and `B`.
pub fn coefficients_top(group: &FiniteAbelianGroup, g_class: &[f64], z2_class: &[f64]) -> Result<CoefficientSet> {
    let h = group.order() as usize;
    check_len("g per class", g_class, h)?;
    check_len("z2 per class", z2_class, h)?;
    let d = davenport_constant(group)?;

    let linear = |k: &[u32]| -> f64 { k.iter().zip(g_class).map(|(&kj, g)| kj as f64 * g).sum() };
    let quadratic = |k: &[u32]| -> f64 {
        let mut cross = 0.0;
        for j1 in 0..h {
            for j2 in j1 + 1..h {
                cross += (k[j1] * k[j2]) as f64 * g_class[j1] * g_class[j2];
            }
        }
        let diag: f64 = (0..h)
            .map(|j| {
                let kj = k[j] as f64;
                kj * (kj - 1.0) * (0.5 * g_class[j] * g_class[j] + 0.5 * z2_class[j])
            })
            .sum();
        cross + diag
    };

    let top = pattern_tuples(group, d)?;
    let below = pattern_tuples(group, d - 1)?;
    let c_d: f64 = top.iter().map(|k| pattern_weight(k)).sum();
    let c_dm1 = below.iter().map(|k| pattern_weight(k)).sum::<f64>()
        + top.iter().map(|k| pattern_weight(k) * linear(k)).sum::<f64>();
    let c_dm2 = if d >= 2 {
        let lower = pattern_tuples(group, d - 2)?;
        Some(
            lower.iter().map(|k| pattern_weight(k)).sum::<f64>()
                + below.iter().map(|k| pattern_weight(k) * linear(k)).sum::<f64>()
                + top.iter().map(|k| pattern_weight(k) * quadratic(k)).sum::<f64>(),
        )
    } else {
        None
    };

    let (leading, secondary) = leading_terms(d, group.order(), c_d, c_dm1);
    Ok(CoefficientSet {
        davenport: d,
        h: group.order(),
        c_d,
        c_dm1,
        c_dm2,
        leading,
        secondary,
        inputs: CoefficientInputs {
            g_class: g_class.to_vec(),
            z2_class: z2_class.to_vec(),
        },
    })
}

/// `C = D c_D h^-D` and, for `D >= 2`,
/// `B = (D-1) c_{D-1} h^{1-D} + D (D-1) c_D h^-D gamma`.
fn leading_terms(d: u32, h: u64, c_d: f64, c_dm1: f64) -> (f64, Option<f64>) {
    let hf = h as f64;
    let df = d as f64;
    let c = df * c_d * hf.powi(-(d as i32));
    let b = (d >= 2).then(|| {
        (df - 1.0) * c_dm1 * hf.powi(1 - d as i32) + df * (df - 1.0) * c_d * hf.powi(-(d as i32)) * EULER_GAMMA
    });
    (c, b)
}

/// `b`-factor of one class: for `nu = 0 ..= k`,
/// `sum_{lambda=0}^{nu} g^{nu-lambda} rho_{k, k-lambda} / ((nu-lambda)! (k-nu)!)`.
fn class_factors(k: u32, g: f64, z: &[f64]) -> Result<Vec<f64>> {
    let k_us = k as usize;
    let rhos: Vec<f64> = (0..=k_us)
        .map(|lambda| crate::cycle_index::rho(k_us, k_us - lambda, z))
        .collect::<Result<_>>()?;
    Ok((0..=k)
        .map(|nu| {
            (0..=nu)
                .map(|lambda| {
                    g.powi((nu - lambda) as i32) * rhos[lambda as usize] / (factorial(nu - lambda) * factorial(k - nu))
                })
                .sum()
        })
        .collect())
}

/// `c_mu` from the full nested sum over `nu`, patterns in `D_{mu+nu}`,
/// splittings `nu_1 + .. + nu_h = nu` and `lambda_i`. `z[i]` holds
/// `z_{i2}, .., z_{iD}`.
pub fn c_mu_general(group: &FiniteAbelianGroup, mu: u32, g_class: &[f64], z: &[Vec<f64>]) -> Result<f64> {
    let h = group.order() as usize;
    check_len("g per class", g_class, h)?;
    if z.len() != h {
        return Err(Error::LengthMismatch {
            what: "z rows per class",
            expected: h,
            got: z.len(),
        });
    }
    let d = davenport_constant(group)?;
    if mu > d {
        return Err(out_of_range("mu", mu, "0..=D"));
    }
    let needed = d.saturating_sub(1) as usize;
    if let Some(row) = z.iter().find(|row| row.len() < needed) {
        return Err(Error::LengthMismatch {
            what: "z_{i2}..z_{iD}",
            expected: needed,
            got: row.len(),
        });
    }

    let nu_start = mu.max(1) - mu;
    let mut total = 0.0;
    for nu in nu_start..=d - mu {
        for k in pattern_tuples(group, mu + nu)? {
            // convolve per-class factors, keeping the coefficient of x^nu
            let mut poly = vec![0.0; nu as usize + 1];
            poly[0] = 1.0;
            for (i, &ki) in k.iter().enumerate() {
                if ki == 0 {
                    continue;
                }
                let f = class_factors(ki, g_class[i], &z[i])?;
                let mut next = vec![0.0; nu as usize + 1];
                for (a, &pa) in poly.iter().enumerate() {
                    for (b, &fb) in f.iter().enumerate() {
                        if a + b <= nu as usize {
                            next[a + b] += pa * fb;
                        }
                    }
                }
                poly = next;
            }
            total += poly[nu as usize];
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCoefficients {
    #[serde(rename = "C")]
    pub leading: f64,
    #[serde(rename = "B")]
    pub secondary: Option<f64>,
}

/// `C` and `B` for a class group with per-class regular parts `g_class`.
/// `B` is `None` when `D < 2`.
pub fn asymptotic_cb(group: &FiniteAbelianGroup, g_class: &[f64], z2_class: &[f64]) -> Result<AsymptoticCoefficients> {
    let set = coefficients_top(group, g_class, z2_class)?;
    Ok(AsymptoticCoefficients {
        leading: set.leading,
        secondary: set.secondary,
    })
}

/// `C` and `B` through the Tauberian map: `g_nu = h^-nu c_nu`, then
/// `C = e_{D-1}` and `B = e_{D-2}`. Needs the full `z` matrix.
pub fn asymptotic_cb_via_tauberian(
    group: &FiniteAbelianGroup,
    g_class: &[f64],
    z: &[Vec<f64>],
) -> Result<AsymptoticCoefficients> {
    let d = davenport_constant(group)?;
    let hf = group.order() as f64;
    let g_nu: Vec<f64> = (0..=d)
        .map(|mu| Ok(c_mu_general(group, mu, g_class, z)? * hf.powi(-(mu as i32))))
        .collect::<Result<_>>()?;
    let e = e_coefficients(&g_nu, d as usize)?;
    Ok(AsymptoticCoefficients {
        leading: e[d as usize - 1],
        secondary: (d >= 2).then(|| e[d as usize - 2]),
    })
}

/// Closed forms for a cyclic class group of order `h >= 2`, given
/// `sum g_{c^k}(1)` over the generators `c^k`:
/// `C = phi(h) / ((h-1)! h^h)` and
/// `B = phi(h) gamma / ((h-2)! h^h) + (h-1)/h^{h-1} (phi(h) a(h)/(h-2)! + sum/(h-1)!)`
/// with `a(3) = 1/2`, `a(h) = 1` otherwise.
pub fn cyclic_cb(h: u64, generator_g_sum: f64) -> Result<AsymptoticCoefficients> {
    if h < 2 {
        return Err(out_of_range("cyclic order h", h, ">= 2"));
    }
    let phi = totient(h) as f64;
    let hf = h as f64;
    let hh = hf.powi(h as i32);
    let fact_m1 = factorial(h as u32 - 1);
    let fact_m2 = factorial(h as u32 - 2);
    let a = if h == 3 { 0.5 } else { 1.0 };
    let leading = phi / (fact_m1 * hh);
    let secondary = phi / (fact_m2 * hh) * EULER_GAMMA
        + (hf - 1.0) / hf.powi(h as i32 - 1) * (phi / fact_m2 * a + generator_g_sum / fact_m1);
    Ok(AsymptoticCoefficients {
        leading,
        secondary: Some(secondary),
    })
}

/// `C = 1/4` and `B = (2 (1 + g_c) + gamma) / 4` for class number two.
pub fn class_number_two_cb(g_nonprincipal: f64) -> AsymptoticCoefficients {
    AsymptoticCoefficients {
        leading: 0.25,
        secondary: Some(0.25 * (2.0 * (1.0 + g_nonprincipal) + EULER_GAMMA)),
    }
}
