//! Vertical magnetic dipole on a layered half-space.
//!
//! `H_z = (m/4π) ∫ (1 + Φ_0(λ)) λ² J_0(ωλ) dλ` and
//! `H_ρ = (m/4π) ∫ (1 − Φ_0(λ)) λ² J_1(ωλ) dλ`, where `ω` is the
//! transmitter-receiver offset and `Φ_0` the reflection term. The integrands
//! are taken to be analytic in the right half-plane; the branch points
//! `λ = ±k_j` of `u_j = √(λ² − k_j²)` lie off the real axis, and the
//! principal branch is used throughout.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hankelrule::{apply_hi_rule, build_hi_rule, IntegrandSpec};
use crate::numerics::bessel::bessel_j;
use crate::numerics::Cplx;
use crate::oracle::{abel_limit_eval, BesselPartition, Method, OracleResult};

/// Vacuum permeability `4π·10⁻⁷`.
pub const MU0: f64 = 4.0 * PI * 1e-7;

/// Conductivities `σ_1..σ_N` (S/m), thicknesses `h_1..h_{N−1}` (m), the
/// transmitter frequency (Hz) and magnetic moment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredModel {
    pub sigma: Vec<f64>,
    pub h: Vec<f64>,
    pub f0: f64,
    #[serde(rename = "m")]
    pub m_moment: f64,
}

impl LayeredModel {
    pub fn new(sigma: Vec<f64>, h: Vec<f64>, f0: f64, m_moment: f64) -> Result<Self> {
        let m = Self { sigma, h, f0, m_moment };
        m.validate()?;
        Ok(m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("layered model: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma.is_empty() {
            return Err(Error::InvalidSpec("a layered model needs at least one layer".into()));
        }
        if self.h.len() + 1 != self.sigma.len() {
            return Err(Error::InvalidSpec(format!(
                "{} conductivities need {} thicknesses, got {}",
                self.sigma.len(),
                self.sigma.len() - 1,
                self.h.len()
            )));
        }
        if let Some(s) = self.sigma.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidSpec(format!("conductivity {s} must be positive")));
        }
        if let Some(h) = self.h.iter().find(|h| !(**h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidSpec(format!("thickness {h} must be positive")));
        }
        if !(self.f0 > 0.0 && self.f0.is_finite()) {
            return Err(Error::InvalidSpec(format!("frequency {} must be positive", self.f0)));
        }
        if !self.m_moment.is_finite() {
            return Err(Error::InvalidSpec("magnetic moment must be finite".into()));
        }
        Ok(())
    }

    /// `k_j² = −i ω₀ μ₀ σ_j`, `ω₀ = 2π f₀`.
    pub fn k_squared(&self) -> Vec<Cplx> {
        let w0 = 2.0 * PI * self.f0;
        self.sigma.iter().map(|s| Cplx::new(0.0, -w0 * MU0 * s)).collect()
    }

    /// Smallest `|k_j|`, the distance from 0 to the nearest branch point.
    fn k_min(&self) -> f64 {
        self.k_squared().iter().map(|k2| k2.norm().sqrt()).fold(f64::INFINITY, f64::min)
    }

    fn prefactor(&self) -> f64 {
        self.m_moment / (4.0 * PI)
    }
}

/// Principal square root with the tie-break `Im ≥ 0` on the imaginary axis.
fn branch_sqrt(z: Cplx) -> Cplx {
    let r = z.sqrt();
    if r.re == 0.0 && r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Reflection term `Φ_0(λ)`.
pub fn reflection_phi0(model: &LayeredModel, lambda: Cplx) -> Cplx {
    let k2 = model.k_squared();
    let n = k2.len();
    let lam2 = lambda * lambda;
    // u_0 = λ, u_j = √(λ² − k_j²)
    let u: Vec<Cplx> = std::iter::once(lambda).chain(k2.iter().map(|k| branch_sqrt(lam2 - k))).collect();
    let psi = |j: usize| (u[j - 1] - u[j]) / (u[j - 1] + u[j]);
    let mut phi = Cplx::new(0.0, 0.0);
    for j in (1..n).rev() {
        let (p, s) = (phi, psi(j + 1));
        phi = (p + s) / (p * s + 1.0) * (-2.0 * u[j] * model.h[j - 1]).exp();
    }
    let s = psi(1);
    (phi + s) / (phi * s + 1.0)
}

/// Both field components at one offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmFields {
    pub h_z: Cplx,
    pub h_rho: Cplx,
}

/// `g(λ) = (m/4π)(1 ± Φ_0(λ)) λ²`, with `g(0) = g'(0) = 0` supplied exactly
/// and higher Taylor coefficients from circle sums.
fn field_integrand(model: &LayeredModel, sign: f64) -> IntegrandSpec {
    let m = model.clone();
    let pre = model.prefactor();
    let name = if sign > 0.0 { "em_hz" } else { "em_hrho" };
    let eval = move |z: Cplx| Ok(pre * (1.0 + sign * reflection_phi0(&m, z)) * z * z);
    let rho = 0.25 * model.k_min();
    let m2 = model.clone();
    IntegrandSpec::new(name, eval)
        .with_radius(model.k_min())
        .with_taylor_fn(move |order, ctx| {
            // coefficients of (1 ± Φ_0) on a circle, shifted by two for λ²
            let pts = 64usize;
            let vals: Vec<Cplx> = (0..pts)
                .map(|j| 1.0 + sign * reflection_phi0(&m2, Cplx::from_polar(rho, 2.0 * PI * j as f64 / pts as f64)))
                .collect();
            let zero = Cplx::new(0.0, 0.0);
            Ok((0..order)
                .map(|k| {
                    let c = if k < 2 {
                        zero
                    } else {
                        let q = k - 2;
                        let s: Cplx = vals
                            .iter()
                            .enumerate()
                            .map(|(j, v)| v * Cplx::from_polar(1.0, -2.0 * PI * (j * q) as f64 / pts as f64))
                            .sum();
                        pre * s / (pts as f64 * rho.powi(q as i32))
                    };
                    crate::numerics::real::c_from_f64(c, ctx)
                })
                .collect())
        })
        .with_growth(2.0)
}

/// `H_z` (ν = 0) and `H_ρ` (ν = 1) at offset `omega` by the `(n, μ)` rules.
pub fn em_fields(model: &LayeredModel, omega: f64, n: usize, mu: u32) -> Result<EmFields> {
    model.validate()?;
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("offset must be positive, got {omega}")));
    }
    let rz = build_hi_rule(n, mu, 0)?;
    let rr = build_hi_rule(n, mu, 1)?;
    let h_z = apply_hi_rule(&rz, &field_integrand(model, 1.0), omega)?;
    let h_rho = apply_hi_rule(&rr, &field_integrand(model, -1.0), omega)?;
    Ok(EmFields { h_z, h_rho })
}

/// Reference fields: the free-space part `(m/4π)∫λ²J_ν` and the limit
/// `c_0 = k_1²/4` of `Φ_0 λ²` in closed form, the decaying remainder by
/// Abel-limit partition extrapolation.
pub fn em_oracle(model: &LayeredModel, omega: f64) -> Result<(OracleResult, OracleResult)> {
    model.validate()?;
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("offset must be positive, got {omega}")));
    }
    let pre = model.prefactor();
    let c0 = model.k_squared()[0] / 4.0;
    let mut out = [OracleResult { value: Cplx::new(0.0, 0.0), est_error: 0.0, method: Method::Abel }; 2];
    for (slot, (nu, sign)) in out.iter_mut().zip([(0.0, 1.0), (1.0, -1.0)]) {
        // ∫ λ² J_0 = −1/ω³, ∫ λ² J_1 = 0, ∫ J_ν = 1/ω
        let free = if nu == 0.0 { -1.0 / omega.powi(3) } else { 0.0 };
        let rem = |x: f64| -> Result<Cplx> {
            let l = Cplx::new(x, 0.0);
            Ok((reflection_phi0(model, l) * x * x - c0) * bessel_j(nu, omega * x)?)
        };
        let a = abel_limit_eval(&rem, BesselPartition { nu, omega }, 10)?;
        let value = pre * (free + sign * (c0 / omega + a.value));
        *slot = OracleResult { value, est_error: pre * a.est_error, method: Method::Abel };
    }
    Ok((out[0], out[1]))
}
