use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::context::PrecisionContext;
use crate::error::{Error, Result};

/// Arbitrary-precision real carrying the context it was produced under.
#[derive(Clone, Debug)]
pub struct BigReal {
    value: Float,
    ctx: PrecisionContext,
}

impl BigReal {
    pub fn from_float(value: Float, ctx: &PrecisionContext) -> Self {
        let mut value = value;
        value.set_prec(ctx.bits());
        Self { value, ctx: *ctx }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::from_i64(0, ctx)
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_i64(1, ctx)
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        Self {
            value: Float::with_val(ctx.bits(), v),
            ctx: *ctx,
        }
    }

    pub fn from_f64(v: f64, ctx: &PrecisionContext) -> Self {
        Self {
            value: Float::with_val(ctx.bits(), v),
            ctx: *ctx,
        }
    }

    pub fn from_integer(v: &Integer, ctx: &PrecisionContext) -> Self {
        Self {
            value: Float::with_val(ctx.bits(), v),
            ctx: *ctx,
        }
    }

    pub fn from_rational(v: &Rational, ctx: &PrecisionContext) -> Self {
        Self {
            value: Float::with_val(ctx.bits(), v),
            ctx: *ctx,
        }
    }

    pub fn pi(ctx: &PrecisionContext) -> Self {
        Self {
            value: Float::with_val(ctx.bits(), Constant::Pi),
            ctx: *ctx,
        }
    }

    /// Euler's number, computed as exp(1) at full working precision.
    pub fn e(ctx: &PrecisionContext) -> Self {
        Self::one(ctx).exp()
    }

    /// Parses decimal or scientific notation (`-12.5`, `3e-4`) at `ctx`.
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Self {
            value: Float::with_val(ctx.bits(), parsed),
            ctx: *ctx,
        })
    }

    /// Parses the `mantissa@digits` serialization produced by `Display`.
    pub fn parse_serialized(s: &str) -> Result<Self> {
        let (mantissa, digits) = s
            .trim()
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse(format!("{s:?}: missing '@digits' suffix")))?;
        let digits: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("{s:?}: bad digit count")))?;
        let ctx = PrecisionContext::new(digits)?;
        Self::parse(mantissa, &ctx)
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn digits(&self) -> u32 {
        self.ctx.digits()
    }

    pub fn as_float(&self) -> &Float {
        &self.value
    }

    pub fn into_float(self) -> Float {
        self.value
    }

    /// Re-rounds (or zero-extends) the value into another context.
    pub fn with_ctx(&self, ctx: &PrecisionContext) -> Self {
        Self::from_float(self.value.clone(), ctx)
    }

    /// Exact rational value of the stored binary float.
    pub fn to_rational(&self) -> Rational {
        self.value
            .to_rational()
            .expect("BigReal values are always finite")
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_sign_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_sign_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.value.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    fn map(&self, f: impl FnOnce(Float) -> Float) -> Self {
        Self {
            value: f(self.value.clone()),
            ctx: self.ctx,
        }
    }

    pub fn abs(&self) -> Self {
        self.map(Float::abs)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(self.map(Float::recip))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_sign_negative() {
            return Err(Error::Domain(format!("sqrt of negative value {self}")));
        }
        Ok(self.map(Float::sqrt))
    }

    /// Real cube root; negative arguments give negative roots.
    pub fn cbrt(&self) -> Self {
        self.map(Float::cbrt)
    }

    pub fn exp(&self) -> Self {
        self.map(Float::exp)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain(format!("ln of non-positive value {self}")));
        }
        Ok(self.map(Float::ln))
    }

    pub fn sin(&self) -> Self {
        self.map(Float::sin)
    }

    pub fn cos(&self) -> Self {
        self.map(Float::cos)
    }

    pub fn powi(&self, k: i32) -> Self {
        self.map(|v| v.pow(k))
    }

    /// `self^p` for a real exponent; a zero base needs a positive exponent.
    pub fn pow(&self, p: &BigReal) -> Result<Self> {
        if self.is_zero() {
            return match p.signum() {
                1 => Ok(Self::zero(&self.ctx.max(p.ctx))),
                0 => Ok(Self::one(&self.ctx.max(p.ctx))),
                _ => Err(Error::Domain("zero raised to a negative power".into())),
            };
        }
        if self.is_sign_negative() {
            return Err(Error::Domain(format!(
                "real power of negative base {self}"
            )));
        }
        let ctx = self.ctx.max(p.ctx);
        let v = Float::with_val(ctx.bits(), (&self.value).pow(&p.value));
        Ok(Self { value: v, ctx })
    }

    pub fn pow_rational(&self, p: &Rational) -> Result<Self> {
        self.pow(&BigReal::from_rational(p, &self.ctx))
    }

    /// log₁₀|self| as an `f64`; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        Float::with_val(64, self.value.abs_ref()).log10().to_f64()
    }

    /// Number of leading significant digits on which `self` and `other`
    /// agree, measured relative to the larger magnitude.
    pub fn agreement_digits(&self, other: &BigReal) -> f64 {
        if self.value == other.value {
            return f64::INFINITY;
        }
        let bits = self.ctx.bits().max(other.ctx.bits());
        let diff = Float::with_val(bits, &self.value - &other.value).abs();
        let scale = if self.value.cmp_abs(&other.value) == Some(Ordering::Less) {
            other.value.clone().abs()
        } else {
            self.value.clone().abs()
        };
        let rel = Float::with_val(64, diff / scale);
        -rel.log10().to_f64()
    }

    /// |self − exact| / |exact|.
    pub fn rel_err(&self, exact: &BigReal) -> Result<BigReal> {
        if exact.is_zero() {
            return Err(Error::Domain("relative error against zero".into()));
        }
        Ok(((self - exact) / exact).abs())
    }

    /// Scientific notation with `sig` significant digits: `d.ddd…e±XX`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let (neg, digits, exp) = self.value.to_sign_string_exp(10, Some(sig));
        let sign = if neg { "-" } else { "" };
        match exp {
            None => format!("{sign}0.{}e+00", "0".repeat(sig - 1)),
            Some(e) => {
                let e = e - 1;
                let (head, tail) = digits.split_at(1);
                let esign = if e < 0 { '-' } else { '+' };
                if tail.is_empty() {
                    format!("{sign}{head}e{esign}{:02}", e.abs())
                } else {
                    format!("{sign}{head}.{tail}e{esign}{:02}", e.abs())
                }
            }
        }
    }
}

impl fmt::Display for BigReal {
    /// `-1.234…e+02@30`: all `digits` significant digits, then the digit count.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ctx.digits();
        write!(f, "{}@{}", self.to_sci_string(d as usize), d)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            value: -self.value,
            ctx: self.ctx,
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let ctx = self.ctx.max(rhs.ctx);
                BigReal {
                    value: Float::with_val(ctx.bits(), &self.value $op &rhs.value),
                    ctx,
                }
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
        impl $tr<i64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                BigReal {
                    value: Float::with_val(self.ctx.bits(), &self.value $op rhs),
                    ctx: self.ctx,
                }
            }
        }
        impl $tr<i64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

/// Exact rational from a plain decimal literal such as `0.80`, `-1.5` or `7`.
pub fn parse_decimal_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("{s:?} is not a decimal number"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
        .map_err(|_| bad())?;
    let denom = Integer::from(10).pow(frac_part.len() as u32);
    let r = Rational::from((numer, denom));
    Ok(if neg { -r } else { r })
}
