//! Constants of the Tauberian step: the contour constants `I_m` and the
//! linear map from the log-power expansion of a Dirichlet series at `s = 1`
//! to the loglog-power expansion of its summatory function.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::CompensatedSum;
use crate::error::{out_of_range, Error, Result};

/// Euler's constant, 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

pub const MAX_IM_INDEX: usize = 30;

const ZETA_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauberianConstants {
    /// `I_0 .. I_max`
    pub i: Vec<f64>,
    /// `e_0 .. e_{k-1}`
    pub e: Vec<f64>,
}

/// `zeta(n)` for `2 <= n <= MAX_IM_INDEX`: a direct sum to `10^6` terms plus
/// the Euler-Maclaurin tail `N^{1-n}/(n-1) - N^{-n}/2 + n N^{-n-1}/12`.
pub fn zeta(n: u32) -> f64 {
    assert!(
        (2..=MAX_IM_INDEX as u32).contains(&n),
        "zeta({n}) outside supported range"
    );
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (2..=MAX_IM_INDEX as u32).map(zeta_direct).collect())[n as usize - 2]
}

fn zeta_direct(n: u32) -> f64 {
    let big_n = ZETA_TERMS as f64;
    let s = n as f64;
    let tail = big_n.powf(1.0 - s) / (s - 1.0) - big_n.powf(-s) / 2.0 + s * big_n.powf(-s - 1.0) / 12.0;
    let mut acc = CompensatedSum::default();
    acc.add(tail);
    // smallest terms first
    for k in (1..=ZETA_TERMS).rev() {
        let term = (k as f64).powi(-(n as i32));
        if term == 0.0 {
            continue;
        }
        acc.add(term);
    }
    acc.value()
}

/// `I_0 = 0` and, for `m >= 1`, `I_m` is the coefficient of `t^{m-1}` in
/// `exp(gamma t + sum_{n >= 2} (-1)^{n-1} zeta(n) t^n / n)`.
pub fn im_constants(max_m: usize) -> Result<Vec<f64>> {
    if max_m > MAX_IM_INDEX {
        return Err(out_of_range("max_m", max_m, "<= 30"));
    }
    // exponent series f_1 .. f_{max_m - 1}
    let len = max_m; // coefficients t^0 .. t^{max_m - 1}
    let mut f = vec![0.0; len.max(1)];
    if len > 1 {
        f[1] = EULER_GAMMA;
    }
    for (n, fn_) in f.iter_mut().enumerate().skip(2) {
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        *fn_ = sign * zeta(n as u32) / n as f64;
    }
    let exp = series_exp(&f);
    let mut out = Vec::with_capacity(max_m + 1);
    out.push(0.0);
    out.extend(exp.into_iter().take(max_m));
    Ok(out)
}

/// `exp(f)` for a power series with `f_0 = 0`, via `E' = f' E`:
/// `E_n = (1/n) sum_{k=1}^n k f_k E_{n-k}`.
fn series_exp(f: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; f.len()];
    if e.is_empty() {
        return e;
    }
    e[0] = 1.0;
    for n in 1..f.len() {
        let s: f64 = (1..=n).map(|k| k as f64 * f[k] * e[n - k]).sum();
        e[n] = s / n as f64;
    }
    e
}

/// `e_j = sum_{nu=j}^{k} (nu! / j!) g_nu I_{nu-j}` for `j = 0 .. k-1`, given
/// `g_0 .. g_k`.
pub fn e_coefficients(g_nu: &[f64], k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(out_of_range("k", 0, ">= 1"));
    }
    if g_nu.len() != k + 1 {
        return Err(Error::LengthMismatch {
            what: "g_0..g_k",
            expected: k + 1,
            got: g_nu.len(),
        });
    }
    let i = im_constants(k)?;
    Ok((0..k)
        .map(|j| {
            let mut ratio = 1.0; // nu! / j!
            let mut acc = 0.0;
            for nu in j..=k {
                if nu > j {
                    ratio *= nu as f64;
                }
                acc += ratio * g_nu[nu] * i[nu - j];
            }
            acc
        })
        .collect())
}

pub fn tauberian_constants(g_nu: &[f64], k: usize) -> Result<TauberianConstants> {
    Ok(TauberianConstants {
        i: im_constants(k)?,
        e: e_coefficients(g_nu, k)?,
    })
}
