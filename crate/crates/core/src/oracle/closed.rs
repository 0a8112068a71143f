//! Closed-form transforms used as references.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::bessel::{bessel_i, bessel_i_ext, bessel_y};
use crate::numerics::struve::struve_h_minus_y;
use crate::numerics::{gamma_ratio, gamma_ratio_f64, Cplx, ExtReal};

/// Catalog of transforms with known values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `∫ x^μ J_ν(ωx) dx` in the Abel sense.
    Monomial { mu: f64, nu: f64 },
    /// `∫ e^{−x²} J_ν(ωx) dx`.
    Gaussian { nu: f64 },
    /// Principal value `⨍ J_0(ωx)/(x − τ) dx`.
    HilbertKernel0 { tau: f64 },
    /// Principal value `⨍ J_1(ωx)/(x − τ) dx`.
    HilbertKernel1 { tau: f64 },
}

pub fn closed_form(id: ClosedForm, omega: f64) -> Result<Cplx> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    let v = match id {
        ClosedForm::Monomial { mu, nu } => monomial_transform(mu, nu, omega)?,
        ClosedForm::Gaussian { nu } => gaussian_transform(nu, omega)?,
        ClosedForm::HilbertKernel0 { tau } => hilbert_kernel(0, omega * tau)?,
        ClosedForm::HilbertKernel1 { tau } => hilbert_kernel(1, omega * tau)?,
    };
    Ok(Cplx::new(v, 0.0))
}

/// `2^μ Γ((ν+μ+1)/2) / (ω^{μ+1} Γ((ν−μ+1)/2))`.
pub fn monomial_transform(mu: f64, nu: f64, omega: f64) -> Result<f64> {
    let r = gamma_ratio_f64(0.5 * (nu + mu + 1.0), 0.5 * (nu - mu + 1.0))?;
    Ok(2f64.powf(mu) * r / omega.powf(mu + 1.0))
}

/// Extended-precision [`monomial_transform`] for integer `μ`.
pub fn monomial_transform_ext(mu: i64, nu: f64, omega: &ExtReal) -> Result<ExtReal> {
    let ctx = omega.context().ok_or_else(|| Error::Domain("omega without context".into()))?;
    let m = mu as f64;
    let r = gamma_ratio(0.5 * (nu + m + 1.0), 0.5 * (nu - m + 1.0), ctx)?;
    Ok(ctx.int(2).powi(mu) * r / omega.powi(mu + 1))
}

/// `(√π/2) e^{−ω²/8} I_{ν/2}(ω²/8)`.
pub fn gaussian_transform(nu: f64, omega: f64) -> Result<f64> {
    let y = omega * omega / 8.0;
    if y > 600.0 {
        // e^{−y} I_α(y) from the leading asymptotic terms
        let a4 = nu * nu;
        let s = 1.0 - (a4 - 1.0) / (8.0 * y) + (a4 - 1.0) * (a4 - 9.0) / (128.0 * y * y);
        return Ok(0.5 * PI.sqrt() * s / (2.0 * PI * y).sqrt());
    }
    Ok(0.5 * PI.sqrt() * (-y).exp() * bessel_i(0.5 * nu, y)?)
}

/// Extended-precision [`gaussian_transform`] for integer `ν`.
pub fn gaussian_transform_ext(nu: f64, omega: &ExtReal) -> Result<ExtReal> {
    let ctx = omega.context().ok_or_else(|| Error::Domain("omega without context".into()))?;
    let y = omega * omega / ctx.int(8);
    Ok(ctx.pi().sqrt() / ctx.int(2) * (-&y).exp() * bessel_i_ext(0.5 * nu, &y)?)
}

/// Hilbert kernels at `z = ωτ`: `−(π/2)[H_0 + Y_0](z)` for `ν = 0` and
/// `(π/2)[H_{−1} − Y_1](z) − 1/z` for `ν = 1`.
pub fn hilbert_kernel(nu: u32, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Hilbert kernel needs ωτ > 0, got {z}")));
    }
    match nu {
        0 => {
            let hy = struve_h_minus_y(0.0, z)? + 2.0 * bessel_y(0.0, z)?;
            Ok(-FRAC_PI_2 * hy)
        }
        1 => {
            // H_{−1} = 2/π − H_1
            let hm1_y1 = FRAC_2_PI - struve_h_minus_y(1.0, z)? - 2.0 * bessel_y(1.0, z)?;
            Ok(FRAC_PI_2 * hm1_y1 - 1.0 / z)
        }
        _ => Err(Error::Domain(format!("Hilbert kernels exist for ν ∈ {{0, 1}}, got {nu}"))),
    }
}
