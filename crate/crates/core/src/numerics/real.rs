//! A small real-number abstraction so that rule construction, rule
//! application and the rotated oracle can run either in `f64` or in
//! [`ExtReal`].

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::Num;

use super::ext::{ExtReal, PrecisionContext};

pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Precision context carried by the values (`()` for `f64`).
    type Ctx: Copy + Debug + PartialEq + Send + Sync;

    fn ctx_of(&self) -> Option<Self::Ctx>;
    fn from_f64_in(v: f64, ctx: Self::Ctx) -> Self;
    fn from_int_in(v: i64, ctx: Self::Ctx) -> Self;
    fn pi_in(ctx: Self::Ctx) -> Self;
    /// Unit roundoff of the context.
    fn eps_in(ctx: Self::Ctx) -> Self;
    /// Number of reliable decimal digits of the context.
    fn digits_in(ctx: Self::Ctx) -> u32;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn powi(&self, n: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn ratio_in(p: i64, q: i64, ctx: Self::Ctx) -> Self {
        Self::from_int_in(p, ctx) / Self::from_int_in(q, ctx)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Real for f64 {
    type Ctx = ();

    fn ctx_of(&self) -> Option<()> {
        Some(())
    }
    fn from_f64_in(v: f64, _: ()) -> f64 {
        v
    }
    fn from_int_in(v: i64, _: ()) -> f64 {
        v as f64
    }
    fn pi_in(_: ()) -> f64 {
        std::f64::consts::PI
    }
    fn eps_in(_: ()) -> f64 {
        f64::EPSILON
    }
    fn digits_in(_: ()) -> u32 {
        15
    }
    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }
    fn exp(&self) -> f64 {
        f64::exp(*self)
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn sin(&self) -> f64 {
        f64::sin(*self)
    }
    fn cos(&self) -> f64 {
        f64::cos(*self)
    }
    fn atan2(&self, x: &f64) -> f64 {
        f64::atan2(*self, *x)
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn powi(&self, n: i64) -> f64 {
        f64::powi(*self, n as i32)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Real for ExtReal {
    type Ctx = PrecisionContext;

    fn ctx_of(&self) -> Option<PrecisionContext> {
        self.context()
    }
    fn from_f64_in(v: f64, ctx: PrecisionContext) -> ExtReal {
        ctx.real(v)
    }
    fn from_int_in(v: i64, ctx: PrecisionContext) -> ExtReal {
        ctx.int(v)
    }
    fn pi_in(ctx: PrecisionContext) -> ExtReal {
        ctx.pi()
    }
    fn eps_in(ctx: PrecisionContext) -> ExtReal {
        ctx.epsilon()
    }
    fn digits_in(ctx: PrecisionContext) -> u32 {
        ctx.digits()
    }
    fn sqrt(&self) -> ExtReal {
        ExtReal::sqrt(self)
    }
    fn exp(&self) -> ExtReal {
        ExtReal::exp(self)
    }
    fn ln(&self) -> ExtReal {
        ExtReal::ln(self)
    }
    fn sin(&self) -> ExtReal {
        ExtReal::sin(self)
    }
    fn cos(&self) -> ExtReal {
        ExtReal::cos(self)
    }
    fn atan2(&self, x: &ExtReal) -> ExtReal {
        ExtReal::atan2(self, x)
    }
    fn abs(&self) -> ExtReal {
        ExtReal::abs(self)
    }
    fn powi(&self, n: i64) -> ExtReal {
        ExtReal::powi(self, n)
    }
    fn to_f64(&self) -> f64 {
        ExtReal::to_f64(self)
    }
}

/// Complex number over a [`Real`] scalar.
pub type C<R> = Complex<R>;

pub fn c_real<R: Real>(re: R) -> C<R> {
    let im = R::zero();
    Complex::new(re, im)
}

pub fn c_from_f64<R: Real>(z: Complex<f64>, ctx: R::Ctx) -> C<R> {
    Complex::new(R::from_f64_in(z.re, ctx), R::from_f64_in(z.im, ctx))
}

pub fn c_to_f64<R: Real>(z: &C<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn cabs<R: Real>(z: &C<R>) -> R {
    let a = z.re.abs();
    let b = z.im.abs();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    (a.clone() * a + b.clone() * b).sqrt()
}

pub fn cexp<R: Real>(z: &C<R>) -> C<R> {
    let m = z.re.exp();
    if z.im.is_zero() {
        return Complex::new(m, R::zero());
    }
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

/// Principal square root.
pub fn csqrt<R: Real>(z: &C<R>) -> C<R> {
    if z.im.is_zero() {
        return if z.re >= R::zero() {
            Complex::new(z.re.sqrt(), R::zero())
        } else {
            Complex::new(R::zero(), (-z.re.clone()).sqrt())
        };
    }
    let r = cabs(z);
    let two = R::one() + R::one();
    let a = ((r.clone() + z.re.clone()) / two.clone()).sqrt();
    let b = ((r - z.re.clone()) / two).sqrt();
    if z.im < R::zero() {
        Complex::new(a, -b)
    } else {
        Complex::new(a, b)
    }
}

/// Principal logarithm.
pub fn cln<R: Real>(z: &C<R>) -> C<R> {
    Complex::new(cabs(z).ln(), z.im.atan2(&z.re))
}

/// `z^n` for integer `n` by repeated squaring.
pub fn cpowi<R: Real>(z: &C<R>, n: i64) -> C<R> {
    if n < 0 {
        let p = cpowi(z, -n);
        return lift_one(&p) / p;
    }
    let mut result: C<R> = Complex::new(R::one(), R::zero());
    let mut base = z.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    result
}

/// A context-carrying `1` compatible with `z`.
fn lift_one<R: Real>(z: &C<R>) -> C<R> {
    let ctx = z.re.ctx_of().or_else(|| z.im.ctx_of()).expect("value with a context");
    Complex::new(R::from_int_in(1, ctx), R::zero())
}

/// `e^{i θ}` for `θ = q π / 2` with integer `q`, exactly.
pub fn quarter_turn<R: Real>(q: i64) -> C<R> {
    match q.rem_euclid(4) {
        0 => Complex::new(R::one(), R::zero()),
        1 => Complex::new(R::zero(), R::one()),
        2 => Complex::new(-R::one(), R::zero()),
        _ => Complex::new(R::zero(), -R::one()),
    }
}

/// `e^{i t π / 2}` for real `t`.
pub fn turn<R: Real>(t: f64, ctx: R::Ctx) -> C<R> {
    if t.fract() == 0.0 {
        return quarter_turn(t as i64);
    }
    let theta = R::pi_in(ctx) * R::from_f64_in(t, ctx) / R::from_int_in(2, ctx);
    Complex::new(theta.cos(), theta.sin())
}

pub fn scale<R: Real>(z: &C<R>, s: &R) -> C<R> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}
