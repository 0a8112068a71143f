//! Reference values for Hankel and Fourier transforms, independent of the
//! quadrature rules: integration along the rotated path, Abel-limit
//! extrapolation and a catalog of closed forms.
//!
//! The rotated path turns `∫ g(x) x^p J_ν(ωx) dx` into
//! `ω^{−p−1} ∫ ĝ(it/ω) t^p K_ν(t) dt` with
//! `ĝ(z) = (e^{(p−ν)πi/2} g(z) + e^{(ν−p)πi/2} g(−z))/π`, valid for
//! `Re(p ± ν) > −1`. Transforms outside that range are split: the leading
//! Taylor terms of `f` are integrated in closed form and only the remainder
//! `x^m g(x)` is rotated.

mod abel;
mod closed;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use abel::{abel_limit_eval, bessel_zero, partition_extrapolate, wynn_epsilon, BesselPartition};
pub use closed::{
    closed_form, gaussian_transform, gaussian_transform_ext, hilbert_kernel, monomial_transform,
    monomial_transform_ext, ClosedForm,
};

use crate::error::{Error, Result};
use crate::hankelrule::{Evaluable, IntegrandSpec};
use crate::numerics::bessel::{bessel_k, bessel_k_ext};
use crate::numerics::quad::{exp_sinh_range, ExpSinhGrid};
use crate::numerics::real::{c_real, c_to_f64, cabs, cpowi, scale, turn, C};
use crate::numerics::{gamma_ratio, gamma_ratio_f64, Cplx, ExtReal, PrecisionContext, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rotated,
    Abel,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rotated => "rotated",
            Method::Abel => "abel",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// A reference value with its error estimate (absolute).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: Cplx,
    pub est_error: f64,
    pub method: Method,
}

/// Number types the rotated oracle runs in.
pub trait OracleReal: Evaluable {
    fn bessel_k_in(nu: f64, x: &Self) -> Result<Self>;
    fn gamma_ratio_in(a: f64, b: f64, ctx: Self::Ctx) -> Result<Self>;
}

impl OracleReal for f64 {
    fn bessel_k_in(nu: f64, x: &f64) -> Result<f64> {
        bessel_k(nu, *x)
    }
    fn gamma_ratio_in(a: f64, b: f64, _: ()) -> Result<f64> {
        gamma_ratio_f64(a, b)
    }
}

impl OracleReal for ExtReal {
    fn bessel_k_in(nu: f64, x: &ExtReal) -> Result<ExtReal> {
        bessel_k_ext(nu, x)
    }
    fn gamma_ratio_in(a: f64, b: f64, ctx: PrecisionContext) -> Result<ExtReal> {
        gamma_ratio(a, b, ctx)
    }
}

fn real_pow<R: Real>(x: &R, p: f64, ctx: R::Ctx) -> R {
    if p.fract() == 0.0 {
        x.powi(p as i64)
    } else {
        (x.ln() * R::from_f64_in(p, ctx)).exp()
    }
}

const MAX_LEVEL: usize = 8;

/// Rotated-path evaluator of `∫ f(x) x^μ J_ν(ωx) dx` for fixed `(μ, ν)`,
/// reusable across integrands and frequencies. The kernel `t^p K_ν(t)` on the
/// exp-sinh grid is computed once per level on first use.
pub struct RotatedOracle<R: OracleReal> {
    pub mu: f64,
    pub nu: f64,
    /// Number of Taylor terms integrated in closed form.
    pub split: usize,
    grid: ExpSinhGrid<R>,
    kernel: Vec<OnceLock<Result<Vec<R>>>>,
    rel_tol: f64,
    ctx: R::Ctx,
}

impl<R: OracleReal> fmt::Debug for RotatedOracle<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RotatedOracle")
            .field("mu", &self.mu)
            .field("nu", &self.nu)
            .field("split", &self.split)
            .field("digits", &R::digits_in(self.ctx))
            .finish()
    }
}

impl<R: OracleReal> RotatedOracle<R> {
    pub fn new(mu: f64, nu: f64, ctx: R::Ctx) -> Result<Self> {
        if !(mu + nu > -1.0) {
            return Err(Error::Domain(format!("rotation needs μ + ν > −1, got μ={mu}, ν={nu}")));
        }
        let nu_abs = nu.abs();
        // smallest m with μ + m − |ν| > −1
        let mut split = 0usize;
        while mu + split as f64 - nu_abs <= -1.0 {
            split += 1;
        }
        let p = mu + split as f64;
        let digits = R::digits_in(ctx);
        // integrand ~ t^{p−|ν|} (log for ν = 0) at the origin
        let q = if nu_abs == 0.0 { p - 0.05 } else { p - nu_abs };
        let (lo, hi) = exp_sinh_range(q, digits + 2, 1.0);
        let grid = ExpSinhGrid::new(lo, hi, 0.5, MAX_LEVEL, ctx);
        let rel_tol = 10f64.powi(-(digits as i32 - 3)).max(1e-300);
        let kernel = (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect();
        Ok(Self { mu, nu, split, grid, kernel, rel_tol, ctx })
    }

    fn kernel_level(&self, level: usize) -> Result<&Vec<R>> {
        let p = self.mu + self.split as f64;
        self.kernel[level]
            .get_or_init(|| {
                self.grid.levels[level]
                    .iter()
                    .map(|n| Ok(real_pow(&n.t, p, self.ctx) * R::bessel_k_in(self.nu, &n.t)?))
                    .collect()
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Value and DE increment (absolute) of the transform at `ω`.
    pub fn eval(&self, f: &IntegrandSpec, omega: &R) -> Result<(C<R>, f64)> {
        if !(omega.to_f64() > 0.0) {
            return Err(Error::Domain(format!("omega must be positive, got {}", omega.to_f64())));
        }
        let ctx = self.ctx;
        let m = self.split;
        let digits = R::digits_in(ctx) as usize;
        let p = self.mu + m as f64;
        // Taylor data for the split and the series form of g near 0
        // exact Taylor data allow the series out to half the radius; circle
        // sums are only trusted well inside their own circle
        let exact = f.has_taylor();
        let (r0, n_terms) = if exact {
            (0.5 * f.radius.min(2.0), m + 4 * digits + 10)
        } else {
            (0.05 * f.radius.min(1.0), m + digits / 2 + 4)
        };
        let taylor = if m > 0 { R::taylor_spec(f, n_terms, ctx)? } else { Vec::new() };
        let r0 = R::from_f64_in(r0, ctx);
        let g = |z: &C<R>| -> Result<C<R>> {
            if m == 0 {
                return R::eval_spec(f, z);
            }
            if cabs(z) < r0 {
                let mut acc = C::<R>::new(R::zero(), R::zero());
                for a in taylor[m..].iter().rev() {
                    acc = acc * z.clone() + a.clone();
                }
                return Ok(acc);
            }
            let mut poly = C::<R>::new(R::zero(), R::zero());
            for a in taylor[..m].iter().rev() {
                poly = poly * z.clone() + a.clone();
            }
            Ok((R::eval_spec(f, z)? - poly) / cpowi(z, m as i64))
        };
        let pi = R::pi_in(ctx);
        let ph_plus: C<R> = turn(p - self.nu, ctx);
        let ph_minus: C<R> = turn(self.nu - p, ctx);
        let inv_omega = R::from_int_in(1, ctx) / omega.clone();
        let last = self.grid.levels[0].len() - 1;
        let mut tail = 0.0;
        let (integral, diff, _) = self.grid.integrate(self.rel_tol, |level, idx, node| {
            let k = &self.kernel_level(level)?[idx];
            let z = C::<R>::new(R::from_int_in(0, ctx), node.t.clone() * inv_omega.clone());
            let gh = (ph_plus.clone() * g(&z)? + ph_minus.clone() * g(&-z.clone())?) / c_real(pi.clone());
            let v = scale(&gh, k);
            if level == 0 && idx == last {
                tail = (cabs(&v) * node.dt.clone()).to_f64();
            }
            Ok(v)
        })?;
        let mag = cabs(&integral).to_f64();
        if !mag.is_finite() || !(tail <= 1e3 * self.rel_tol * mag.max(f64::MIN_POSITIVE)) {
            return Err(Error::Convergence(format!(
                "rotated integrand of {} does not decay along the imaginary axis (tail {tail:e}, value {mag:e})",
                f.name
            )));
        }
        let pref = real_pow(&inv_omega, p + 1.0, ctx);
        let mut value = scale(&integral, &pref);
        let err = diff * pref.to_f64();
        for (k, a) in taylor.iter().take(m).enumerate() {
            let q = self.mu + k as f64;
            let mono = monomial_in::<R>(q, self.nu, omega, ctx)?;
            value = value + a.clone() * c_real(mono);
        }
        Ok((value, err))
    }
}

/// `∫ x^q J_ν(ωx) dx` in the number type `R`.
fn monomial_in<R: OracleReal>(q: f64, nu: f64, omega: &R, ctx: R::Ctx) -> Result<R> {
    let r = R::gamma_ratio_in(0.5 * (nu + q + 1.0), 0.5 * (nu - q + 1.0), ctx)?;
    let two_q = real_pow(&R::from_int_in(2, ctx), q, ctx);
    Ok(two_q * r / real_pow(omega, q + 1.0, ctx))
}

/// Double-precision rotated evaluation of `∫ f(x) x^μ J_ν(ωx) dx`.
///
/// The rotation itself is only ever applied with exponents satisfying
/// `Re(μ ± ν) > −1`; Taylor terms of `f` below that range are integrated
/// exactly. Requires `μ + ν > −1`.
pub fn rotated_hankel(f: &IntegrandSpec, mu: f64, nu: f64, omega: f64) -> Result<OracleResult> {
    let oracle = cached_oracle(mu, nu)?;
    let (v, err) = oracle.eval(f, &omega)?;
    Ok(OracleResult { value: v, est_error: err, method: Method::Rotated })
}

fn cached_oracle(mu: f64, nu: f64) -> Result<Arc<RotatedOracle<f64>>> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    type Cache = Mutex<HashMap<(u64, u64), Arc<RotatedOracle<f64>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (mu.to_bits(), nu.to_bits());
    if let Some(o) = cache.lock().unwrap().get(&key) {
        return Ok(o.clone());
    }
    let o = Arc::new(RotatedOracle::new(mu, nu, ())?);
    cache.lock().unwrap().insert(key, o.clone());
    Ok(o)
}

/// Rotated evaluation of `∫ f(x) x^μ e^{iωx} dx
/// = e^{(μ+1)πi/2} ω^{−μ−1} ∫ f(it/ω) t^μ e^{−t} dt`, `μ > −1`.
pub fn rotated_fourier(f: &IntegrandSpec, mu: f64, omega: f64) -> Result<OracleResult> {
    if !(mu > -1.0) {
        return Err(Error::Domain(format!("rotated Fourier transform needs μ > −1, got {mu}")));
    }
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    let (lo, hi) = exp_sinh_range(mu, 18, 1.0);
    let grid: ExpSinhGrid<f64> = ExpSinhGrid::new(lo, hi, 0.5, MAX_LEVEL, ());
    let (v, diff, _) = grid.integrate(1e-13, |_, _, n| {
        let z = Cplx::new(0.0, n.t / omega);
        Ok(f.eval(z)? * (n.t.powf(mu) * (-n.t).exp()))
    })?;
    let pref = turn::<f64>(mu + 1.0, ()) * omega.powf(-mu - 1.0);
    Ok(OracleResult { value: v * pref, est_error: diff * pref.norm(), method: Method::Rotated })
}

/// Convenience: an extended-precision oracle value rounded to double.
pub fn rotated_hankel_ext(f: &IntegrandSpec, mu: f64, nu: f64, omega: f64, digits: u32) -> Result<OracleResult> {
    let ctx = PrecisionContext::new(digits)?;
    let oracle = RotatedOracle::<ExtReal>::new(mu, nu, ctx)?;
    let (v, err) = oracle.eval(f, &ctx.real(omega))?;
    Ok(OracleResult { value: c_to_f64(&v), est_error: err, method: Method::Rotated })
}
