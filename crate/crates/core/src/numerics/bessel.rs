//! Bessel functions of real order and real argument.
//!
//! Double precision: `J`, `Y` switch to the Hankel asymptotic expansion for
//! large arguments and otherwise defer to `puruspe`; `I`, `K` use `puruspe`.
//! Extended precision: `K` for integer and half-integer order, `I` by its
//! power series.

use std::f64::consts::{FRAC_PI_2, PI};

use super::ext::{ExtReal, PrecisionContext};
use super::gamma::{euler_gamma, gamma_ext};
use crate::error::{Error, Result};

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

fn asymptotic_ok(nu: f64, x: f64) -> bool {
    x >= 25.0_f64.max(nu * nu)
}

/// Hankel expansion of `(J_ν(x), Y_ν(x))` for large `x`, `ν ≥ 0`.
fn jy_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu4 - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last || mag < 1e-18 {
            break;
        }
        last = mag;
        // p collects k ≡ 0 (mod 2) with alternating sign, q the odd k
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
    }
    let phi = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let a = (2.0 / (PI * x)).sqrt();
    (a * (p * cos_chi - q * sin_chi), a * (p * sin_chi + q * cos_chi))
}

fn jy_nonneg(nu: f64, x: f64) -> (f64, f64) {
    if asymptotic_ok(nu, x) {
        jy_asymptotic(nu, x)
    } else {
        puruspe::Jnu_Ynu(nu, x)
    }
}

/// `(J_ν(x), Y_ν(x))` for `x > 0`.
fn jy(nu: f64, x: f64) -> (f64, f64) {
    if nu >= 0.0 {
        return jy_nonneg(nu, x);
    }
    let a = -nu;
    let (j, y) = jy_nonneg(a, x);
    if is_integer(a) {
        let s = if (a as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return (s * j, s * y);
    }
    let (s, c) = (a * PI).sin_cos();
    (c * j - s * y, s * j + c * y)
}

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("J_{nu}({x}) requires finite x >= 0")));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 || is_integer(nu) {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("J_{nu}(0) is unbounded")))
        };
    }
    Ok(jy(nu, x).0)
}

pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("Y_{nu}({x}) requires finite x > 0")));
    }
    Ok(jy(nu, x).1)
}

pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("I_{nu}({x}) requires finite x >= 0")));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 || is_integer(nu) {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("I_{nu}(0) is unbounded")))
        };
    }
    let a = nu.abs();
    let (i, k) = puruspe::Inu_Knu(a, x);
    let v = if nu >= 0.0 || is_integer(nu) { i } else { i + 2.0 / PI * (a * PI).sin() * k };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("I_{nu}({x}) overflows double precision")))
    }
}

pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("K_{nu}({x}) requires finite x > 0")));
    }
    let v = puruspe::Inu_Knu(nu.abs(), x).1;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("K_{nu}({x}) overflows double precision")))
    }
}

/// `I_ν(x)` at extended precision by its power series, `x ≥ 0`.
pub fn bessel_i_ext(nu: f64, x: &ExtReal) -> Result<ExtReal> {
    let ctx = x.context().ok_or_else(|| Error::Domain("argument without context".into()))?;
    if x.is_negative() {
        return Err(Error::Domain("I_nu at negative argument".into()));
    }
    if nu < 0.0 && is_integer(nu) {
        return bessel_i_ext(-nu, x);
    }
    if nu < 0.0 {
        return Err(Error::Domain(format!("extended I_{nu} supports nu >= 0 only")));
    }
    if x.is_zero_exact() {
        return Ok(ctx.int(if nu == 0.0 { 1 } else { 0 }));
    }
    let w = ctx.wider(10);
    let xw = x.with_context(w);
    let half = &xw / w.int(2);
    let y = &half * &half;
    let lead = if nu == 0.0 {
        w.int(1)
    } else if is_integer(nu) {
        half.powi(nu as i64)
    } else {
        (w.real(nu) * half.ln()).exp()
    };
    let mut term = lead / gamma_ext(nu + 1.0, w)?;
    let mut sum = term.clone();
    let eps = w.epsilon();
    let mut k = 1i64;
    loop {
        term = term * &y / (w.int(k) * (w.real(nu) + w.int(k)));
        sum = &sum + &term;
        if term < &eps * &sum {
            break;
        }
        k += 1;
    }
    Ok(sum.with_context(ctx))
}

fn k01_series(x: &ExtReal, ctx: PrecisionContext) -> (ExtReal, ExtReal) {
    let extra = (0.87 * x.to_f64()).ceil() as u32 + 10;
    let w = ctx.wider(extra);
    let xw = x.with_context(w);
    let y = &xw * &xw / w.int(4);
    let g = euler_gamma(w);
    let l = (&xw / w.int(2)).ln();
    let eps = w.epsilon();
    let mut a = w.int(1);
    let mut h = w.int(0);
    let mut i0 = w.int(0);
    let mut s0 = w.int(0);
    let mut i1 = w.int(0);
    let mut s1 = w.int(0);
    let mut k = 0i64;
    loop {
        let kp1 = w.int(k + 1);
        let b = &a / &kp1;
        i0 = &i0 + &a;
        s0 = &s0 + &h * &a;
        i1 = &i1 + &b;
        s1 = &s1 + (w.int(2) * (&h - &g) + w.int(1) / &kp1) * &b;
        if k > 2 && a < &eps * &i0 {
            break;
        }
        h = h + w.int(1) / &kp1;
        a = a * &y / (&kp1 * &kp1);
        k += 1;
    }
    let half_x = &xw / w.int(2);
    let k0 = -(&l + &g) * i0 + s0;
    let k1 = w.int(1) / &xw + &l * &half_x * i1 - &xw / w.int(4) * s1;
    (k0.with_context(ctx), k1.with_context(ctx))
}

fn k_asymptotic(nu: f64, x: &ExtReal, ctx: PrecisionContext) -> ExtReal {
    let w = ctx.wider(5);
    let xw = x.with_context(w);
    let mu4 = w.real(4.0 * nu * nu);
    let eps = w.epsilon();
    let mut term = w.int(1);
    let mut sum = w.int(1);
    for k in 1..100_000i64 {
        let odd = w.int(2 * k - 1);
        term = term * (&mu4 - &odd * &odd) / (w.int(8 * k) * &xw);
        sum = &sum + &term;
        if term.abs() < eps {
            break;
        }
    }
    let pref = (w.pi() / (w.int(2) * &xw)).sqrt() * (-&xw).exp();
    (pref * sum).with_context(ctx)
}

/// `K_ν(x)` at extended precision for integer or half-integer `ν`, `x > 0`.
pub fn bessel_k_ext(nu: f64, x: &ExtReal) -> Result<ExtReal> {
    let ctx = x.context().ok_or_else(|| Error::Domain("argument without context".into()))?;
    if x.is_negative() || x.is_zero_exact() {
        return Err(Error::Domain("K_nu requires x > 0".into()));
    }
    let a = nu.abs();
    let xf = x.to_f64();
    if !is_integer(a) && !is_integer(2.0 * a) {
        return Err(Error::Domain(format!("extended K_{nu} supports integer and half-integer orders")));
    }
    let asym = xf > 1.2 * (ctx.digits() as f64 + 5.0);
    if !is_integer(a) {
        // finite closed form
        let n = (a - 0.5) as i64;
        let w = ctx.wider(5);
        let xw = x.with_context(w);
        let mut sum = w.int(0);
        let two_x = w.int(2) * &xw;
        let mut coef = w.int(1);
        let mut pw = w.int(1);
        for k in 0..=n {
            if k > 0 {
                coef = coef * w.int((n + k) * (n - k + 1)) / w.int(k);
                pw = pw * &two_x;
            }
            sum = sum + &coef / &pw;
        }
        let pref = (w.pi() / &two_x).sqrt() * (-&xw).exp();
        return Ok((pref * sum).with_context(ctx));
    }
    let n = a as i64;
    if asym {
        return Ok(k_asymptotic(a, x, ctx));
    }
    let w = ctx.wider(8);
    let (k0, k1) = k01_series(x, w);
    if n == 0 {
        return Ok(k0.with_context(ctx));
    }
    let xw = x.with_context(w);
    let (mut prev, mut cur) = (k0, k1);
    for m in 1..n {
        let next = &prev + w.int(2 * m) / &xw * &cur;
        prev = cur;
        cur = next;
    }
    Ok(cur.with_context(ctx))
}

/// `K_{1/2}(x) = √(π/(2x)) e^{−x}`, exposed for tests and closed forms.
pub fn k_half(x: f64) -> f64 {
    (FRAC_PI_2 / x).sqrt() * (-x).exp()
}
