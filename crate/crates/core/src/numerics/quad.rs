//! Basic quadrature kernels: Gauss–Legendre on `[-1, 1]` and a nested
//! exp-sinh (double exponential) grid for `(0, ∞)`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, LN_10, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;
use num_traits::Zero;

use super::real::{cabs, Real, C};
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    let r = Arc::new((x, w));
    cache.lock().unwrap().insert(n, r.clone());
    r
}

/// Integrate `f` over `[a, b]` with an `n`-point Gauss–Legendre rule.
pub fn gl_integrate<F: FnMut(f64) -> Complex<f64>>(a: f64, b: f64, n: usize, mut f: F) -> Complex<f64> {
    let rule = gauss_legendre(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = Complex::zero();
    for (x, w) in rule.0.iter().zip(&rule.1) {
        s += f(c + h * x) * *w;
    }
    s * h
}

/// One abscissa of the exp-sinh map `t = exp(π/2 · sinh s)`, with the
/// Jacobian `dt/ds`.
#[derive(Debug, Clone)]
pub struct DeNode<R> {
    pub t: R,
    pub dt: R,
}

/// Nested exp-sinh grid: level 0 holds nodes at step `h0`, level `l > 0`
/// only the new midpoints at step `h0 / 2^l`.
#[derive(Debug, Clone)]
pub struct ExpSinhGrid<R: Real> {
    pub h0: f64,
    pub levels: Vec<Vec<DeNode<R>>>,
    ctx: R::Ctx,
}

/// Range in `s` for an integrand behaving like `t^p` at 0 and `e^{-t}` at
/// infinity, accurate to `digits` decimal digits.
pub fn exp_sinh_range(p: f64, digits: u32, decay: f64) -> (f64, f64) {
    let dl = digits as f64 * LN_10 + 5.0;
    let lo = -(dl / (p + 1.0).max(0.05) / FRAC_PI_2).asinh();
    let t_hi = (dl + 3.0 * dl.ln() + 10.0) / decay.max(1e-3);
    let hi = (t_hi.ln() / FRAC_PI_2).asinh();
    (lo, hi)
}

impl<R: Real> ExpSinhGrid<R> {
    pub fn new(s_lo: f64, s_hi: f64, h0: f64, max_level: usize, ctx: R::Ctx) -> Self {
        let mut levels = Vec::with_capacity(max_level + 1);
        for level in 0..=max_level {
            let h = h0 / (1u64 << level) as f64;
            let k_lo = (s_lo / h).floor() as i64;
            let k_hi = (s_hi / h).ceil() as i64;
            let mut nodes = Vec::new();
            for k in k_lo..=k_hi {
                if level > 0 && k % 2 == 0 {
                    continue;
                }
                nodes.push(Self::node(k as f64 * h, ctx));
            }
            levels.push(nodes);
        }
        Self { h0, levels, ctx }
    }

    fn node(s: f64, ctx: R::Ctx) -> DeNode<R> {
        let two = R::from_int_in(2, ctx);
        let es = R::from_f64_in(s, ctx).exp();
        let inv = R::from_int_in(1, ctx) / es.clone();
        let sinh = (es.clone() - inv.clone()) / two.clone();
        let cosh = (es + inv) / two.clone();
        let half_pi = R::pi_in(ctx) / two;
        let t = (half_pi.clone() * sinh).exp();
        let dt = half_pi * cosh * t.clone();
        DeNode { t, dt }
    }

    pub fn step(&self, level: usize) -> R {
        R::from_f64_in(self.h0 / (1u64 << level) as f64, self.ctx)
    }

    /// Nested integration. `f(level, index, node)` returns the integrand at
    /// `node.t`; results of all levels are combined until two consecutive
    /// estimates agree to `rel_tol`. Returns the value, the last increment
    /// and the level reached.
    pub fn integrate<F>(&self, rel_tol: f64, mut f: F) -> Result<(C<R>, f64, usize)>
    where
        F: FnMut(usize, usize, &DeNode<R>) -> Result<C<R>>,
    {
        let zero = R::from_int_in(0, self.ctx);
        let mut acc: C<R> = Complex::new(zero.clone(), zero);
        let mut prev: Option<C<R>> = None;
        let mut last_diff = f64::INFINITY;
        for (level, nodes) in self.levels.iter().enumerate() {
            for (i, node) in nodes.iter().enumerate() {
                let v = f(level, i, node)?;
                let dt = node.dt.clone();
                acc = acc + Complex::new(v.re * dt.clone(), v.im * dt);
            }
            let h = self.step(level);
            let est = Complex::new(acc.re.clone() * h.clone(), acc.im.clone() * h);
            if let Some(p) = &prev {
                let diff = cabs(&(est.clone() - p.clone())).to_f64();
                let mag = cabs(&est).to_f64();
                last_diff = diff;
                if diff <= rel_tol * mag || (mag == 0.0 && diff == 0.0) {
                    return Ok((est, diff, level));
                }
            }
            prev = Some(est);
        }
        Err(Error::Convergence(format!(
            "exp-sinh quadrature stalled at level {}; last increment {last_diff:e}",
            self.levels.len() - 1
        )))
    }
}

/// Double-precision exp-sinh integral of a real integrand on `(0, ∞)`.
pub fn exp_sinh_f64<F: FnMut(f64) -> f64>(mut f: F, p: f64, decay: f64) -> Result<f64> {
    type Key = (u64, u64);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<ExpSinhGrid<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (p.to_bits(), decay.to_bits());
    let grid = {
        let mut c = cache.lock().unwrap();
        c.entry(key)
            .or_insert_with(|| {
                let (lo, hi) = exp_sinh_range(p, 17, decay);
                Arc::new(ExpSinhGrid::new(lo, hi, 0.5, 7, ()))
            })
            .clone()
    };
    let (v, _, _) = grid.integrate(1e-14, |_, _, n| Ok(Complex::new(f(n.t), 0.0)))?;
    Ok(v.re)
}
