//! Gamma function at extended precision, Euler's constant, and the
//! pole-aware ratio `Γ(a)/Γ(b)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use dashu_int::IBig;

use super::ext::{Big, ExtReal, PrecisionContext};
use crate::error::{Error, Result};

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Bernoulli numbers `B_2, B_4, ...` as exact fractions, grown on demand
/// from tangent numbers.
fn bernoulli_even(count: usize) -> Vec<(IBig, IBig)> {
    static CACHE: OnceLock<Mutex<Vec<(IBig, IBig)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if guard.len() < count {
        let n = count.max(2 * guard.len()).max(8);
        let mut t: Vec<IBig> = vec![IBig::ZERO; n + 1];
        t[1] = IBig::ONE;
        for k in 2..=n {
            t[k] = IBig::from(k - 1) * &t[k - 1];
        }
        for k in 2..=n {
            for j in k..=n {
                t[j] = IBig::from(j - k) * &t[j - 1] + IBig::from(j - k + 2) * &t[j];
            }
        }
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let four_k = IBig::ONE << (2 * k);
            let num = IBig::from(2 * k) * &t[k];
            let den = &four_k * (&four_k - IBig::ONE);
            let num = if k % 2 == 1 { num } else { -num };
            out.push((num, den));
        }
        *guard = out;
    }
    guard[..count].to_vec()
}

fn ext_from_ibig(v: &IBig, ctx: PrecisionContext) -> ExtReal {
    ExtReal::from_big(Big::from(v.clone()), ctx.digits())
}

/// Euler's constant by the Brent–McMillan formula.
pub fn euler_gamma(ctx: PrecisionContext) -> ExtReal {
    static CACHE: OnceLock<Mutex<HashMap<u32, ExtReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&ctx.digits()) {
        return v.clone();
    }
    let n = (ctx.digits() as f64 * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 2;
    let w = ctx.wider((n as f64 * 2.0 / std::f64::consts::LN_10) as u32 + 10);
    let nn = w.int(n * n);
    let mut a = -w.int(n).ln();
    let mut b = w.int(1);
    let mut u = a.clone();
    let mut v = b.clone();
    let tiny = w.epsilon();
    let mut k = 1i64;
    loop {
        let kk = w.int(k);
        b = &b * &nn / (&kk * &kk);
        a = (&a * &nn / &kk + &b) / &kk;
        u = &u + &a;
        v = &v + &b;
        if k > 2 * n && a.abs() < &tiny * &u.abs() && b < &tiny * &v {
            break;
        }
        k += 1;
    }
    let g = (u / v).with_context(ctx);
    cache.lock().unwrap().insert(ctx.digits(), g.clone());
    g
}

fn factorial_ibig(n: u64) -> IBig {
    (2..=n).fold(IBig::ONE, |acc, k| acc * IBig::from(k))
}

/// `Γ(x)` for real `x` at the precision of `ctx`.
pub fn gamma_ext(x: f64, ctx: PrecisionContext) -> Result<ExtReal> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x.fract() == 0.0 && x <= 3000.0 {
        return Ok(ext_from_ibig(&factorial_ibig(x as u64 - 1), ctx));
    }
    if x > 0.0 && (2.0 * x).fract() == 0.0 && x <= 3000.0 {
        // Γ(m + 1/2) = (2m)! √π / (4^m m!)
        let m = (x - 0.5) as u64;
        let w = ctx.wider(5);
        let num = ext_from_ibig(&factorial_ibig(2 * m), w);
        let den = ext_from_ibig(&((IBig::ONE << (2 * m as usize)) * factorial_ibig(m)), w);
        return Ok((num / den * w.pi().sqrt()).with_context(ctx));
    }
    if x < 0.5 {
        let w = ctx.wider(10);
        let pi = w.pi();
        let s = (&pi * &w.real(x)).sin();
        let g = gamma_ext(1.0 - x, w)?;
        return Ok((pi / (s * g)).with_context(ctx));
    }
    Ok(stirling(x, ctx))
}

fn stirling(x: f64, ctx: PrecisionContext) -> ExtReal {
    let w = ctx.wider(12);
    let d = w.digits() as f64;
    let shift = if x < d { (d - x).ceil() as i64 } else { 0 };
    let z = w.real(x) + w.int(shift);
    let mut prod = w.int(1);
    for j in 0..shift {
        prod = prod * (w.real(x) + w.int(j));
    }
    let half_ln_2pi = (w.int(2) * w.pi()).ln() / w.int(2);
    let mut lg = (&z - &w.ratio(1, 2)) * z.ln() - &z + half_ln_2pi;
    let z2 = &z * &z;
    let mut zpow = z.clone();
    let tol = w.epsilon() * lg.abs().max_one();
    let nb = (d as usize).max(4);
    let bern = bernoulli_even(nb);
    for (k, (num, den)) in bern.iter().enumerate() {
        let k = k as i64 + 1;
        let b = ext_from_ibig(num, w) / ext_from_ibig(den, w);
        let term = b / (w.int(2 * k * (2 * k - 1)) * &zpow);
        let small = term.abs() < tol;
        lg = lg + term;
        if small {
            break;
        }
        zpow = &zpow * &z2;
    }
    (lg.exp() / prod).with_context(ctx)
}

trait MaxOne {
    fn max_one(self) -> Self;
}

impl MaxOne for ExtReal {
    fn max_one(self) -> Self {
        let one = self.context().map(|c| c.int(1)).unwrap_or_else(num_traits::One::one);
        if self < one {
            one
        } else {
            self
        }
    }
}

/// `1/Γ(x)`, exactly zero at the poles of `Γ`.
pub fn rgamma_ext(x: f64, ctx: PrecisionContext) -> Result<ExtReal> {
    if is_pole(x) {
        return Ok(ctx.int(0));
    }
    Ok(ctx.int(1) / gamma_ext(x, ctx)?)
}

/// `Γ(a)/Γ(b)`; exactly zero when `b` is a pole of `Γ`.
pub fn gamma_ratio(a: f64, b: f64, ctx: PrecisionContext) -> Result<ExtReal> {
    if is_pole(a) {
        return Err(Error::Domain(format!("gamma ratio numerator has a pole at {a}")));
    }
    if is_pole(b) {
        return Ok(ctx.int(0));
    }
    if a == b {
        return Ok(ctx.int(1));
    }
    let w = ctx.wider(5);
    Ok((gamma_ext(a, w)? / gamma_ext(b, w)?).with_context(ctx))
}

fn f64_ctx() -> PrecisionContext {
    PrecisionContext::new(24).expect("valid digits")
}

/// `Γ(x)` in double precision.
pub fn gamma(x: f64) -> Result<f64> {
    let v = gamma_ext(x, f64_ctx())?.to_f64();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("gamma({x}) overflows double precision")))
    }
}

/// `Γ(a)/Γ(b)` in double precision.
pub fn gamma_ratio_f64(a: f64, b: f64) -> Result<f64> {
    let v = gamma_ratio(a, b, f64_ctx())?.to_f64();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("gamma ratio ({a}, {b}) overflows double precision")))
    }
}
