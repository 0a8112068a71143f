//! Struve functions `H_ν` in double precision.
//!
//! The difference `H_ν − Y_ν` is smooth and non-oscillatory; for `ν > −1/2`
//! it has the Laplace-type representation
//! `2 (x/2)^ν / (√π Γ(ν+1/2)) ∫₀^∞ e^{−xt} (1+t²)^{ν−1/2} dt`, which is
//! integrated by exp-sinh quadrature. Small arguments use the power series.

use std::f64::consts::PI;

use super::bessel::bessel_y;
use super::gamma::{gamma, rgamma_ext};
use super::ext::PrecisionContext;
use super::quad::exp_sinh_f64;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 8.0;

fn rgamma(x: f64) -> f64 {
    rgamma_ext(x, PrecisionContext::new(24).expect("valid digits")).map(|v| v.to_f64()).unwrap_or(0.0)
}

fn series(nu: f64, x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu + 1.0) * rgamma(1.5) * rgamma(nu + 1.5);
    if term == 0.0 {
        // ν + 3/2 at a pole: start from the first nonzero term
        let mut k = 1.0;
        while rgamma(nu + 1.5 + k) == 0.0 {
            k += 1.0;
        }
        let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
        term = sign * (0.5 * x).powf(2.0 * k + nu + 1.0) * rgamma(k + 1.5) * rgamma(nu + k + 1.5);
        return series_from(term, k, nu, y);
    }
    series_from(term, 0.0, nu, y)
}

fn series_from(mut term: f64, k0: f64, nu: f64, y: f64) -> f64 {
    let mut sum = term;
    let mut k = k0;
    loop {
        k += 1.0;
        term *= -y / ((k + 0.5) * (k + nu + 0.5));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 500.0 {
            break;
        }
    }
    sum
}

/// `H_ν(x) − Y_ν(x)` for `ν > −1/2`, `x > 0`.
pub fn struve_h_minus_y(nu: f64, x: f64) -> Result<f64> {
    if nu <= -0.5 {
        return Err(Error::Domain(format!("H_nu - Y_nu integral form needs nu > -1/2, got {nu}")));
    }
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("H_nu - Y_nu requires x > 0, got {x}")));
    }
    let e = nu - 0.5;
    let xi = 1.0 / x;
    // u = x t
    let integral = exp_sinh_f64(|u| (-u).exp() * (1.0 + (u * xi) * (u * xi)).powf(e), 0.0, 1.0)? * xi;
    Ok(2.0 * (0.5 * x).powf(nu) / (PI.sqrt() * gamma(nu + 0.5)?) * integral)
}

/// Struve function `H_ν(x)` for `x ≥ 0`.
pub fn struve_h(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("H_{nu}({x}) requires finite x >= 0")));
    }
    if x == 0.0 {
        return if nu > -1.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("H_{nu}(0) is unbounded")))
        };
    }
    if x <= SERIES_LIMIT {
        return Ok(series(nu, x));
    }
    if nu > -0.5 {
        return Ok(struve_h_minus_y(nu, x)? + bessel_y(nu, x)?);
    }
    // H_{ν} = (2(ν+1)/x) H_{ν+1} − H_{ν+2} + (x/2)^{ν+1} / (√π Γ(ν+5/2))
    let a = struve_h(nu + 1.0, x)?;
    let b = struve_h(nu + 2.0, x)?;
    Ok(2.0 * (nu + 1.0) / x * a - b + (0.5 * x).powf(nu + 1.0) * rgamma(nu + 2.5) / PI.sqrt())
}
