//! Extended-precision reals tied to a decimal precision context.
//!
//! Every [`ExtReal`] remembers the [`PrecisionContext`] it was created under.
//! Arithmetic between values of two different contexts is rejected. Small
//! exact constants produced through [`num_traits::Zero`] / [`num_traits::One`]
//! carry no context and adopt the context of the other operand.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

pub(crate) type Big = FBig<HalfEven, 2>;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: usize = 12;

/// Number of significant decimal digits carried by extended-precision values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 16;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidSpec(format!(
                "precision must be at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self { digits })
    }

    /// Context for rule construction at `n` points: `max(100, 12n + 20)` digits.
    pub fn for_rule(n: usize) -> Self {
        Self { digits: (12 * n as u32 + 20).max(100) }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub(crate) fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    /// The same context widened by `extra` digits.
    pub fn wider(&self, extra: u32) -> Self {
        Self { digits: self.digits + extra }
    }

    pub fn real(&self, v: f64) -> ExtReal {
        ExtReal::from_f64(v, *self)
    }

    pub fn int(&self, v: i64) -> ExtReal {
        ExtReal { value: Big::from(v).with_precision(self.bits()).value(), digits: self.digits }
    }

    /// Exact rational `p / q` rounded to this context.
    pub fn ratio(&self, p: i64, q: i64) -> ExtReal {
        self.int(p) / self.int(q)
    }

    pub fn pi(&self) -> ExtReal {
        ExtReal { value: Big::pi(self.bits()), digits: self.digits }
    }

    /// `10^-digits`, the unit roundoff of this context.
    pub fn epsilon(&self) -> ExtReal {
        let ten = self.int(10);
        ExtReal { value: ten.value.powi((-(self.digits as i64)).into()), digits: self.digits }
    }
}

fn bits_for(digits: u32) -> usize {
    (digits as f64 * BITS_PER_DIGIT).ceil() as usize + GUARD_BITS
}

/// Arbitrary-precision real number with an attached precision context.
#[derive(Clone)]
pub struct ExtReal {
    value: Big,
    /// 0 marks an exact context-free constant.
    digits: u32,
}

impl ExtReal {
    pub fn from_f64(v: f64, ctx: PrecisionContext) -> Self {
        let big = Big::try_from(v).expect("finite f64");
        Self { value: big.with_precision(ctx.bits()).value(), digits: ctx.digits }
    }

    pub(crate) fn from_big(value: Big, digits: u32) -> Self {
        let value = if digits == 0 { value } else { value.with_precision(bits_for(digits)).value() };
        Self { value, digits }
    }

    /// Context of this value, `None` for context-free constants.
    pub fn context(&self) -> Option<PrecisionContext> {
        (self.digits != 0).then_some(PrecisionContext { digits: self.digits })
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    /// Re-round into another context.
    pub fn with_context(&self, ctx: PrecisionContext) -> Self {
        Self { value: self.value.clone().with_precision(ctx.bits()).value(), digits: ctx.digits }
    }

    fn lifted(&self, digits: u32) -> Big {
        if self.digits == digits || digits == 0 {
            self.value.clone()
        } else {
            self.value.clone().with_precision(bits_for(digits)).value()
        }
    }

    fn join(&self, other: &Self) -> Result<u32> {
        match (self.digits, other.digits) {
            (a, 0) => Ok(a),
            (0, b) => Ok(b),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::ContextMismatch { left: a, right: b }),
        }
    }

    fn binary(&self, other: &Self, op: impl Fn(&Big, &Big) -> Big) -> Result<Self> {
        let digits = self.join(other)?;
        let v = op(&self.lifted(digits), &other.lifted(digits));
        Ok(Self::settled(v, digits))
    }

    /// Some exact results (e.g. `exp(0)`) come back with unlimited precision;
    /// pin them to the context again.
    fn settled(v: Big, digits: u32) -> Self {
        if digits != 0 && v.precision() != bits_for(digits) {
            Self::from_big(v, digits)
        } else {
            Self { value: v, digits }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let digits = self.join(other)?;
        if digits == 0 {
            return Err(Error::Domain("division of context-free constants".into()));
        }
        if other.value == Big::ZERO {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(Self::settled(self.lifted(digits) / other.lifted(digits), digits))
    }

    fn unary(&self, op: impl Fn(&Big) -> Big) -> Self {
        assert!(self.digits != 0, "transcendental operation on a context-free constant");
        Self::settled(op(&self.value), self.digits)
    }

    pub fn sqrt(&self) -> Self {
        if self.value == Big::ZERO {
            return self.clone();
        }
        assert!(self.value > Big::ZERO, "square root of a negative number");
        self.unary(|v| v.sqrt())
    }

    pub fn exp(&self) -> Self {
        self.unary(|v| v.exp())
    }

    pub fn ln(&self) -> Self {
        assert!(self.value > Big::ZERO, "logarithm of a nonpositive number");
        self.unary(|v| v.ln())
    }

    pub fn sin(&self) -> Self {
        self.unary(|v| v.sin())
    }

    pub fn cos(&self) -> Self {
        self.unary(|v| v.cos())
    }

    /// Angle of the point `(x, self)`.
    pub fn atan2(&self, x: &Self) -> Self {
        let digits = self.join(x).expect("atan2 operands share a context");
        assert!(digits != 0, "transcendental operation on a context-free constant");
        Self::settled(self.lifted(digits).atan2(&x.lifted(digits)), digits)
    }

    pub fn abs(&self) -> Self {
        if self.value < Big::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return self.context().map(|c| c.int(1)).unwrap_or_else(Self::one);
        }
        Self::settled(self.value.powi(n.into()), self.digits)
    }

    pub fn is_zero_exact(&self) -> bool {
        self.value == Big::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.value < Big::ZERO
    }

    /// Decimal rendering with the context's number of digits.
    pub fn to_decimal_string(&self) -> String {
        let dec = self.value.to_decimal().value();
        let digits = if self.digits == 0 { 40 } else { self.digits as usize };
        dec.with_precision(digits).value().to_string()
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtReal({:e}, {} digits)", self.to_f64(), self.digits)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal { value: -self.value, digits: self.digits }
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal { value: -self.value.clone(), digits: self.digits }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::ops::Rem for ExtReal {
    type Output = ExtReal;
    fn rem(self, _rhs: ExtReal) -> ExtReal {
        unimplemented!("remainder is not defined for extended reals")
    }
}

impl Zero for ExtReal {
    fn zero() -> Self {
        ExtReal { value: Big::ZERO, digits: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == Big::ZERO
    }
}

impl One for ExtReal {
    fn one() -> Self {
        ExtReal { value: Big::ONE, digits: 0 }
    }
}

impl Num for ExtReal {
    type FromStrRadixErr = Error;
    fn from_str_radix(_s: &str, _radix: u32) -> Result<Self> {
        Err(Error::Domain("parsing extended reals is not supported".into()))
    }
}
