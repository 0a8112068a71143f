//! Principal-value transforms `⨍ f(x) J_ν(ωx)/(x − τ) dx`, `ν ∈ {0, 1}`, by
//! singularity subtraction: the rule integrates
//! `g(x) = (f(x) − f(τ))/(x − τ)` and `f(τ)` multiplies a closed kernel.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hankelrule::{apply_hi_rule, build_hi_rule, Evaluable, IntegrandSpec};
use crate::numerics::real::{c_from_f64, c_real, c_to_f64, cabs, C};
use crate::numerics::{Cplx, ExtReal};
use crate::oracle::{hilbert_kernel, rotated_hankel, Method, OracleResult};

/// Distance to `τ` below which `g` is summed from its Taylor series at `τ`.
const SERIES_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct HilbertProblem {
    pub f: IntegrandSpec,
    pub tau: f64,
    pub nu: u32,
}

impl HilbertProblem {
    pub fn new(f: IntegrandSpec, tau: f64, nu: u32) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidSpec(format!("τ = {tau} must be positive")));
        }
        if nu > 1 {
            return Err(Error::InvalidSpec(format!("ν = {nu}: closed kernels exist for ν ∈ {{0, 1}}")));
        }
        Ok(Self { f, tau, nu })
    }
}

/// `⨍ J_ν(ωx)/(x − τ) dx` in closed form.
pub fn hilbert_kernel_closed(nu: u32, omega: f64, tau: f64) -> Result<f64> {
    hilbert_kernel(nu, omega * tau)
}

/// Taylor coefficients of `f` at `τ` by a circle sum of radius `r`.
fn taylor_at(f: &IntegrandSpec, tau: f64, r: f64, order: usize) -> Result<Vec<Cplx>> {
    let pts = 32usize;
    let vals: Vec<Cplx> = (0..pts)
        .map(|j| f.eval(tau + Cplx::from_polar(r, 2.0 * PI * j as f64 / pts as f64)))
        .collect::<Result<_>>()?;
    Ok((0..order)
        .map(|k| {
            let s: Cplx = vals
                .iter()
                .enumerate()
                .map(|(j, v)| v * Cplx::from_polar(1.0, -2.0 * PI * (j * k) as f64 / pts as f64))
                .sum();
            s / (pts as f64 * r.powi(k as i32))
        })
        .collect())
}

/// `Σ_{k≥1} c_k d^{k−1}` from the Taylor coefficients `c_k` at `τ`.
fn near_tau(local: &[Cplx], d: Cplx) -> Cplx {
    local[1..].iter().rev().fold(Cplx::new(0.0, 0.0), |acc, c| acc * d + c)
}

/// The subtracted integrand `g(x) = (f(x) − f(τ))/(x − τ)` with its Taylor
/// data at 0 from `g_0 = (f(τ) − f_0)/τ`, `g_i = (g_{i−1} − f_i)/τ`.
pub fn hilbert_subtracted(p: &HilbertProblem) -> Result<IntegrandSpec> {
    let tau = p.tau;
    let f = p.f.clone();
    let ft = f.eval(Cplx::new(tau, 0.0))?;
    // derivatives at τ for the series near the removable point
    let r = (0.5 * tau).min(0.25).min(0.5 * (f.radius - tau).abs().max(1e-3));
    let local = Arc::new(taylor_at(&f, tau, r, 12)?);
    let (f1, l1, l2) = (f.clone(), local.clone(), local.clone());
    let eval = move |z: Cplx| -> Result<Cplx> {
        let d = z - tau;
        if d.norm() < SERIES_RADIUS {
            return Ok(near_tau(&l1, d));
        }
        Ok((f1.eval(z)? - ft) / d)
    };
    let f2 = f.clone();
    let f3 = f.clone();
    let spec = IntegrandSpec::new(format!("hilbert[{}]", f.name), eval)
        .with_ext(move |z: &C<ExtReal>| {
            let ctx = z.re.context().or_else(|| z.im.context()).expect("point with context");
            let tau_e = c_real(ctx.real(tau));
            let d = z.clone() - tau_e.clone();
            if cabs(&d).to_f64() < SERIES_RADIUS {
                return Ok(c_from_f64(near_tau(&l2, c_to_f64(&d)), ctx));
            }
            let fte = f2.eval_ext(&tau_e)?;
            Ok((f2.eval_ext(z)? - fte) / d)
        })
        .with_taylor_fn(move |order, ctx| {
            let fa = ExtReal::taylor_spec(&f3, order, ctx)?;
            let tau_e = ctx.real(tau);
            let fte = f3.eval_ext(&c_real(tau_e.clone()))?;
            // g_0 = (f(τ) − f_0)/τ, g_i = (g_{i−1} − f_i)/τ
            let mut out: Vec<C<ExtReal>> = Vec::with_capacity(order);
            for (i, a) in fa.iter().enumerate() {
                let prev = if i == 0 { fte.clone() } else { out[i - 1].clone() };
                let v = prev - a.clone();
                out.push(C::new(&v.re / &tau_e, &v.im / &tau_e));
            }
            Ok(out)
        })
        .with_radius(f.radius);
    Ok(match f.growth_hint {
        Some(s) => spec.with_growth((s - 1.0).max(0.0)),
        None => spec,
    })
}

/// Rule value plus `f(τ)` times the closed kernel; requires `μ ≥ ν`.
pub fn hilbert_eval(p: &HilbertProblem, omega: f64, n: usize, mu: u32) -> Result<f64> {
    if mu < p.nu {
        return Err(Error::InvalidSpec(format!("μ = {mu} must be at least ν = {}", p.nu)));
    }
    let g = hilbert_subtracted(p)?;
    let rule = build_hi_rule(n, mu, p.nu)?;
    let ft = p.f.eval(Cplx::new(p.tau, 0.0))?.re;
    let q = apply_hi_rule(&rule, &g, omega)?.re;
    Ok(q + ft * hilbert_kernel_closed(p.nu, omega, p.tau)?)
}

/// Reference value: rotated-path transform of `g` plus the same kernel term.
pub fn hilbert_reference(p: &HilbertProblem, omega: f64) -> Result<OracleResult> {
    let g = hilbert_subtracted(p)?;
    let r = rotated_hankel(&g, 0.0, p.nu as f64, omega)?;
    let ft = p.f.eval(Cplx::new(p.tau, 0.0))?.re;
    let value = r.value.re + ft * hilbert_kernel_closed(p.nu, omega, p.tau)?;
    Ok(OracleResult { value: Cplx::new(value, 0.0), est_error: r.est_error, method: Method::Rotated })
}
