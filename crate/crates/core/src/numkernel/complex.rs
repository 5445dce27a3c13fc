use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Complex, Float};

use super::context::PrecisionContext;
use super::real::BigReal;
use crate::error::{Error, Result};

/// Arbitrary-precision complex number stored as a pair of [`BigReal`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

/// Elementary functions available through [`elementary`].
#[derive(Clone, Debug)]
pub enum Elementary {
    Exp,
    /// Logarithm with arg z ∈ (0, 2π): the cut runs along [0, ∞).
    LogBranched,
    /// Principal square root.
    Sqrt,
    /// Principal cube root.
    Cbrt,
    /// Principal-branch real power.
    PowReal(BigReal),
    Sin,
    Cos,
}

/// Evaluates `f(z)` at the precision of `ctx`.
pub fn elementary(f: &Elementary, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let z = z.with_ctx(ctx);
    match f {
        Elementary::Exp => Ok(z.exp()),
        Elementary::LogBranched => z.ln_branched(),
        Elementary::Sqrt => Ok(z.sqrt()),
        Elementary::Cbrt => Ok(z.cbrt()),
        Elementary::PowReal(p) => z.pow_real(p),
        Elementary::Sin => Ok(z.sin()),
        Elementary::Cos => Ok(z.cos()),
    }
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        let ctx = re.ctx().max(*im.ctx());
        Self {
            re: re.with_ctx(&ctx),
            im: im.with_ctx(&ctx),
        }
    }

    pub fn from_real(re: BigReal) -> Self {
        let im = BigReal::zero(re.ctx());
        Self { re, im }
    }

    pub fn from_i64(re: i64, im: i64, ctx: &PrecisionContext) -> Self {
        Self {
            re: BigReal::from_i64(re, ctx),
            im: BigReal::from_i64(im, ctx),
        }
    }

    pub fn i(ctx: &PrecisionContext) -> Self {
        Self::from_i64(0, 1, ctx)
    }

    pub fn ctx(&self) -> &PrecisionContext {
        self.re.ctx()
    }

    pub fn with_ctx(&self, ctx: &PrecisionContext) -> Self {
        Self {
            re: self.re.with_ctx(ctx),
            im: self.im.with_ctx(ctx),
        }
    }

    fn to_rug(&self) -> Complex {
        Complex::with_val(
            self.ctx().bits(),
            (self.re.as_float(), self.im.as_float()),
        )
    }

    fn from_rug(z: Complex, ctx: &PrecisionContext) -> Self {
        let (re, im) = z.into_real_imag();
        Self {
            re: BigReal::from_float(re, ctx),
            im: BigReal::from_float(im, ctx),
        }
    }

    fn map(&self, f: impl FnOnce(Complex) -> Complex) -> Self {
        let ctx = *self.ctx();
        Self::from_rug(f(self.to_rug()), &ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// re² + im² at working precision.
    pub fn norm_sqr(&self) -> BigReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> BigReal {
        let ctx = *self.ctx();
        BigReal::from_float(Float::with_val(ctx.bits(), self.to_rug().abs_ref()), &ctx)
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> BigReal {
        let ctx = *self.ctx();
        BigReal::from_float(Float::with_val(ctx.bits(), self.to_rug().arg_ref()), &ctx)
    }

    /// Argument in (0, 2π); positive reals and zero sit on the cut.
    pub fn arg_branched(&self) -> Result<BigReal> {
        if self.im.is_zero() && !self.re.is_sign_negative() {
            return Err(Error::Domain(format!(
                "{self} lies on the branch cut [0, ∞)"
            )));
        }
        let a = self.arg();
        if a.is_sign_negative() {
            let two_pi = BigReal::pi(self.ctx()) * 2;
            Ok(a + two_pi)
        } else {
            Ok(a)
        }
    }

    pub fn exp(&self) -> Self {
        self.map(Complex::exp)
    }

    /// Logarithm with Im ∈ (0, 2π).
    pub fn ln_branched(&self) -> Result<Self> {
        let arg = self.arg_branched()?;
        let modulus = self.abs().ln()?;
        Ok(Self { re: modulus, im: arg })
    }

    /// Principal logarithm, Im ∈ (−π, π].
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        Ok(self.map(Complex::ln))
    }

    pub fn sqrt(&self) -> Self {
        self.map(Complex::sqrt)
    }

    pub fn cbrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let third = BigReal::one(self.ctx()) / 3;
        self.pow_real(&third).expect("non-zero base")
    }

    /// `z^p` through the principal logarithm.
    pub fn pow_real(&self, p: &BigReal) -> Result<Self> {
        if self.is_zero() {
            return match p.signum() {
                1 => Ok(BigComplex::from_i64(0, 0, self.ctx())),
                0 => Ok(BigComplex::from_i64(1, 0, self.ctx())),
                _ => Err(Error::Domain("zero raised to a negative power".into())),
            };
        }
        let l = self.ln()?;
        Ok(l.scale(p).exp())
    }

    pub fn sin(&self) -> Self {
        self.map(Complex::sin)
    }

    pub fn cos(&self) -> Self {
        self.map(Complex::cos)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(self.map(Complex::recip))
    }

    pub fn scale(&self, k: &BigReal) -> Self {
        Self {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        use rug::ops::Pow;
        self.map(|z| z.pow(k))
    }

    /// `(re, im)` rounded to `f64`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -self.clone()
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let ctx = self.ctx().max(*rhs.ctx());
        BigComplex::from_rug(
            Complex::with_val(ctx.bits(), self.to_rug() * rhs.to_rug()),
            &ctx,
        )
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let ctx = self.ctx().max(*rhs.ctx());
        BigComplex::from_rug(
            Complex::with_val(ctx.bits(), self.to_rug() / rhs.to_rug()),
            &ctx,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
