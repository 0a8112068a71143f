//! Integrands: analytic functions evaluated at complex points in double or
//! extended precision, with Taylor data at the origin.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::real::{c_from_f64, c_to_f64, cexp, cpowi, C};
use crate::numerics::{Cplx, ExtReal, PrecisionContext, Real};

pub type EvalFn = Arc<dyn Fn(Cplx) -> Result<Cplx> + Send + Sync>;
pub type EvalExtFn = Arc<dyn Fn(&C<ExtReal>) -> Result<C<ExtReal>> + Send + Sync>;
/// Taylor coefficients `a_0..a_{order−1}` at the origin, at a given precision.
pub type TaylorFn = Arc<dyn Fn(usize, PrecisionContext) -> Result<Vec<C<ExtReal>>> + Send + Sync>;

/// Parity of an integrand, `f(−x) = ±f(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Even,
    Odd,
}

/// An integrand `f` analytic in the right half-plane with at most
/// polynomial growth there. The growth condition is trusted, not checked.
#[derive(Clone)]
pub struct IntegrandSpec {
    pub name: String,
    eval: EvalFn,
    eval_ext: Option<EvalExtFn>,
    taylor: Option<TaylorFn>,
    pub growth_hint: Option<f64>,
    pub symmetry: Option<Symmetry>,
    /// Distance from the origin to the nearest singularity (∞ for entire
    /// functions).
    pub radius: f64,
}

impl fmt::Debug for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegrandSpec")
            .field("name", &self.name)
            .field("has_ext", &self.eval_ext.is_some())
            .field("has_taylor", &self.taylor.is_some())
            .field("symmetry", &self.symmetry)
            .field("radius", &self.radius)
            .finish()
    }
}

/// A number type in which integrands can be evaluated.
pub trait Evaluable: Real {
    fn eval_spec(spec: &IntegrandSpec, z: &C<Self>) -> Result<C<Self>>;
    /// Taylor coefficients in this number type.
    fn taylor_spec(spec: &IntegrandSpec, order: usize, ctx: Self::Ctx) -> Result<Vec<C<Self>>>;
}

impl Evaluable for f64 {
    fn eval_spec(spec: &IntegrandSpec, z: &Cplx) -> Result<Cplx> {
        spec.eval(*z)
    }

    fn taylor_spec(spec: &IntegrandSpec, order: usize, _: ()) -> Result<Vec<Cplx>> {
        taylor_coeffs(spec, order)
    }
}

impl Evaluable for ExtReal {
    fn eval_spec(spec: &IntegrandSpec, z: &C<ExtReal>) -> Result<C<ExtReal>> {
        spec.eval_ext(z)
    }

    fn taylor_spec(spec: &IntegrandSpec, order: usize, ctx: PrecisionContext) -> Result<Vec<C<ExtReal>>> {
        match &spec.taylor {
            Some(t) => {
                let c = t(order, ctx)?;
                if c.len() < order {
                    return Err(Error::MissingDerivatives(format!(
                        "{} supplies {} Taylor coefficients, {order} needed",
                        spec.name,
                        c.len()
                    )));
                }
                Ok(c.into_iter().take(order).map(|z| Complex::new(z.re.with_context(ctx), z.im.with_context(ctx))).collect())
            }
            None => Ok(taylor_coeffs(spec, order)?.into_iter().map(|z| c_from_f64(z, ctx)).collect()),
        }
    }
}

fn ctx_of<R: Real>(z: &C<R>) -> R::Ctx {
    z.re.ctx_of().or_else(|| z.im.ctx_of()).expect("evaluation point carries a context")
}

fn exp_neg<R: Real>(z: &C<R>) -> C<R> {
    cexp(&-z.clone())
}

fn rational_sq<R: Real>(z: &C<R>) -> C<R> {
    let d = z.clone() + C::<R>::one();
    C::<R>::one() / (d.clone() * d)
}

fn gaussian<R: Real>(z: &C<R>) -> C<R> {
    cexp(&-(z.clone() * z.clone()))
}

fn shifted_rational<R: Real>(z: &C<R>) -> C<R> {
    let d = z.clone() + C::<R>::one();
    C::<R>::one() / (d.clone() * d + C::<R>::one())
}

fn polynomial<R: Real>(coeffs: &[Cplx], z: &C<R>) -> C<R> {
    let ctx = ctx_of(z);
    let mut acc = C::<R>::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z.clone() + c_from_f64::<R>(*c, ctx);
    }
    acc
}

fn real_coeffs(v: Vec<ExtReal>, ctx: PrecisionContext) -> Vec<C<ExtReal>> {
    v.into_iter().map(|re| Complex::new(re, ctx.int(0))).collect()
}

fn factorial(k: usize, ctx: PrecisionContext) -> ExtReal {
    (1..=k as i64).fold(ctx.int(1), |acc, j| acc * ctx.int(j))
}

impl IntegrandSpec {
    /// Integrand from a double-precision closure; extended evaluation falls
    /// back to rounding the argument.
    pub fn new(name: impl Into<String>, eval: impl Fn(Cplx) -> Result<Cplx> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            eval_ext: None,
            taylor: None,
            growth_hint: None,
            symmetry: None,
            radius: f64::INFINITY,
        }
    }

    pub fn with_ext(mut self, f: impl Fn(&C<ExtReal>) -> Result<C<ExtReal>> + Send + Sync + 'static) -> Self {
        self.eval_ext = Some(Arc::new(f));
        self
    }

    pub fn with_taylor_fn(
        mut self,
        f: impl Fn(usize, PrecisionContext) -> Result<Vec<C<ExtReal>>> + Send + Sync + 'static,
    ) -> Self {
        self.taylor = Some(Arc::new(f));
        self
    }

    /// Attach a fixed list of Taylor coefficients.
    pub fn with_taylor(self, coeffs: Vec<Cplx>) -> Self {
        self.with_taylor_fn(move |order, ctx| Ok(coeffs.iter().take(order).map(|c| c_from_f64(*c, ctx)).collect()))
    }

    pub fn with_symmetry(mut self, s: Symmetry) -> Self {
        self.symmetry = Some(s);
        self
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius = r;
        self
    }

    pub fn with_growth(mut self, sigma: f64) -> Self {
        self.growth_hint = Some(sigma);
        self
    }

    pub fn has_ext(&self) -> bool {
        self.eval_ext.is_some()
    }

    pub fn has_taylor(&self) -> bool {
        self.taylor.is_some()
    }

    pub fn eval(&self, z: Cplx) -> Result<Cplx> {
        let v = (self.eval)(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("{} is not finite at {z}", self.name)))
        }
    }

    pub fn eval_ext(&self, z: &C<ExtReal>) -> Result<C<ExtReal>> {
        match &self.eval_ext {
            Some(f) => f(z),
            None => {
                let ctx = ctx_of(z);
                Ok(c_from_f64(self.eval(c_to_f64(z))?, ctx))
            }
        }
    }

    /// `e^{−x}`.
    pub fn exp_neg() -> Self {
        Self::new("exp_neg", |z| Ok(exp_neg(&z)))
            .with_ext(|z| Ok(exp_neg(z)))
            .with_taylor_fn(|order, ctx| {
                let mut out = Vec::with_capacity(order);
                let mut fact = ctx.int(1);
                for k in 0..order {
                    if k > 0 {
                        fact = fact * ctx.int(k as i64);
                    }
                    let v = ctx.int(1) / &fact;
                    out.push(if k % 2 == 0 { v } else { -v });
                }
                Ok(real_coeffs(out, ctx))
            })
            .with_growth(0.0)
    }

    /// `1/(1 + x)²`.
    pub fn rational_sq() -> Self {
        Self::new("rational_sq", |z| Ok(rational_sq(&z)))
            .with_ext(|z| Ok(rational_sq(z)))
            .with_taylor_fn(|order, ctx| {
                let v = (0..order).map(|k| {
                    let a = ctx.int(k as i64 + 1);
                    if k % 2 == 0 {
                        a
                    } else {
                        -a
                    }
                });
                Ok(real_coeffs(v.collect(), ctx))
            })
            .with_radius(1.0)
            .with_growth(0.0)
    }

    /// `e^{−x²}`.
    pub fn gaussian() -> Self {
        Self::new("gauss", |z| Ok(gaussian(&z)))
            .with_ext(|z| Ok(gaussian(z)))
            .with_taylor_fn(|order, ctx| {
                let v = (0..order).map(|k| {
                    if k % 2 == 1 {
                        return ctx.int(0);
                    }
                    let j = k / 2;
                    let a = ctx.int(1) / factorial(j, ctx);
                    if j % 2 == 0 {
                        a
                    } else {
                        -a
                    }
                });
                Ok(real_coeffs(v.collect(), ctx))
            })
            .with_symmetry(Symmetry::Even)
    }

    /// `1/(1 + (1 + x)²)`.
    pub fn shifted_rational() -> Self {
        Self::new("shifted_rational", |z| Ok(shifted_rational(&z)))
            .with_ext(|z| Ok(shifted_rational(z)))
            .with_taylor_fn(|order, ctx| {
                // (2 + 2x + x²) Σ a_k x^k = 1
                let mut a: Vec<ExtReal> = Vec::with_capacity(order);
                let half = ctx.ratio(1, 2);
                for k in 0..order {
                    let v = match k {
                        0 => half.clone(),
                        1 => -a[0].clone(),
                        _ => -(&a[k - 1] + &(&a[k - 2] * &half)),
                    };
                    a.push(v);
                }
                Ok(real_coeffs(a, ctx))
            })
            .with_radius(2f64.sqrt())
            .with_growth(0.0)
    }

    /// `c`.
    pub fn constant(c: f64) -> Self {
        Self::polynomial_named("constant", vec![Cplx::new(c, 0.0)])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut s = Self::new(format!("x^{k}"), move |z| Ok(z.powi(k as i32)))
            .with_ext(move |z| Ok(cpowi(z, k as i64)))
            .with_taylor_fn(move |order, ctx| {
                Ok(real_coeffs((0..order).map(|j| ctx.int(i64::from(j == k))).collect(), ctx))
            })
            .with_growth(k as f64);
        s.symmetry = Some(if k.is_multiple_of(2) { Symmetry::Even } else { Symmetry::Odd });
        s
    }

    /// Polynomial with ascending coefficients.
    pub fn polynomial(coeffs: Vec<Cplx>) -> Self {
        Self::polynomial_named("polynomial", coeffs)
    }

    fn polynomial_named(name: &str, coeffs: Vec<Cplx>) -> Self {
        let c1 = coeffs.clone();
        let c2 = coeffs.clone();
        let c3 = coeffs.clone();
        let degree = coeffs.len().saturating_sub(1);
        Self::new(name, move |z| Ok(polynomial(&c1, &z)))
            .with_ext(move |z| Ok(polynomial(&c2, z)))
            .with_taylor_fn(move |order, ctx| {
                Ok((0..order).map(|k| c_from_f64(c3.get(k).copied().unwrap_or_default(), ctx)).collect())
            })
            .with_growth(degree as f64)
    }
}

const CAUCHY_RADIUS: f64 = 0.1;
const CAUCHY_POINTS: usize = 64;

fn cauchy(f: &IntegrandSpec, order: usize, rho: f64, points: usize) -> Result<Vec<Cplx>> {
    let vals: Vec<Cplx> = (0..points)
        .map(|j| f.eval(Cplx::from_polar(rho, 2.0 * PI * j as f64 / points as f64)))
        .collect::<Result<_>>()?;
    Ok((0..order)
        .map(|k| {
            let s: Cplx = vals
                .iter()
                .enumerate()
                .map(|(j, v)| v * Cplx::from_polar(1.0, -2.0 * PI * (j * k) as f64 / points as f64))
                .sum();
            s / (points as f64 * rho.powi(k as i32))
        })
        .collect())
}

/// Taylor coefficients `f^{(k)}(0)/k!` for `k < order`. Supplied data are
/// used when present; otherwise trapezoid sums of the Cauchy integral on a
/// circle of radius 0.1, checked against a coarser circle sum.
pub fn taylor_coeffs(f: &IntegrandSpec, order: usize) -> Result<Vec<Cplx>> {
    if order == 0 {
        return Ok(Vec::new());
    }
    if f.taylor.is_some() {
        let ctx = PrecisionContext::new(30)?;
        return Ok(ExtReal::taylor_spec(f, order, ctx)?.iter().map(c_to_f64).collect());
    }
    let rho = CAUCHY_RADIUS.min(0.5 * f.radius);
    let fine = cauchy(f, order, rho, CAUCHY_POINTS)?;
    let coarse = cauchy(f, order, rho, CAUCHY_POINTS / 2)?;
    let scale = fine.iter().enumerate().map(|(k, a)| a.norm() * rho.powi(k as i32)).fold(0.0, f64::max).max(1e-300);
    for (k, (a, b)) in fine.iter().zip(&coarse).enumerate() {
        let d = (a - b).norm() * rho.powi(k as i32);
        if !(d <= 1e-9 * scale) {
            return Err(Error::NonAnalytic(format!(
                "{}: circle sums for coefficient {k} disagree by {d:e}",
                f.name
            )));
        }
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Cplx, b: Cplx, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn builtin_taylor_examples() {
        let t = taylor_coeffs(&IntegrandSpec::exp_neg(), 3).unwrap();
        assert!(close(t[0], 1.0.into(), 1e-15) && close(t[1], (-1.0).into(), 1e-15) && close(t[2], 0.5.into(), 1e-15));
        let t = taylor_coeffs(&IntegrandSpec::rational_sq(), 2).unwrap();
        assert_eq!((t[0].re, t[1].re), (1.0, -2.0));
        let t = taylor_coeffs(&IntegrandSpec::monomial(2), 2).unwrap();
        assert_eq!((t[0].re, t[1].re), (0.0, 0.0));
    }

    #[test]
    fn cauchy_sums_match_supplied_data() {
        for f in [IntegrandSpec::exp_neg(), IntegrandSpec::rational_sq(), IntegrandSpec::gaussian(), IntegrandSpec::shifted_rational()] {
            let bare = IntegrandSpec::new("bare", {
                let g = f.clone();
                move |z| g.eval(z)
            })
            .with_radius(f.radius);
            let a = taylor_coeffs(&f, 6).unwrap();
            let b = taylor_coeffs(&bare, 6).unwrap();
            let rho = 0.1f64.min(0.5 * f.radius);
            for (k, (x, y)) in a.iter().zip(&b).enumerate() {
                assert!((x - y).norm() * rho.powi(k as i32) < 1e-14, "{}: {x} vs {y}", f.name);
            }
        }
    }

    #[test]
    fn cauchy_sum_detects_singularity() {
        let f = IntegrandSpec::new("pole", |z| Ok(1.0 / (z - 0.1005)));
        assert!(matches!(taylor_coeffs(&f, 3), Err(Error::NonAnalytic(_))));
    }

    #[test]
    fn ext_and_double_evaluations_agree() {
        let ctx = PrecisionContext::new(40).unwrap();
        let z = Cplx::new(0.3, -1.7);
        let zx = c_from_f64::<ExtReal>(z, ctx);
        for f in [
            IntegrandSpec::exp_neg(),
            IntegrandSpec::rational_sq(),
            IntegrandSpec::gaussian(),
            IntegrandSpec::shifted_rational(),
            IntegrandSpec::monomial(3),
            IntegrandSpec::constant(2.5),
        ] {
            let a = f.eval(z).unwrap();
            let b = c_to_f64(&f.eval_ext(&zx).unwrap());
            assert!(close(b, a, 1e-14), "{}", f.name);
        }
    }

    #[test]
    fn missing_taylor_data_is_reported() {
        let ctx = PrecisionContext::new(30).unwrap();
        let f = IntegrandSpec::new("short", Ok).with_taylor(vec![Cplx::new(0.0, 0.0)]);
        assert!(matches!(ExtReal::taylor_spec(&f, 3, ctx), Err(Error::MissingDerivatives(_))));
    }
}
