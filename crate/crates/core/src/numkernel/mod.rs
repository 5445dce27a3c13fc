//! Arbitrary-precision scalars and the handful of special values the rest of
//! the crate needs.
//!
//! Every value remembers the [`PrecisionContext`] it was computed under. Binary
//! operations on values from different contexts produce a result in the wider
//! of the two. Arithmetic is delegated to MPFR through `rug`, which rounds
//! correctly at the requested binary precision; each context adds 16 guard bits
//! on top of its decimal request.

mod complex;
mod context;
mod real;

use std::fmt::Display;

use rug::Float;

pub use complex::{elementary, BigComplex, Elementary};
pub use context::{mk_context, PrecisionContext, DEFAULT_DIGITS, DIGITS_ENV, MIN_DIGITS};
pub use real::{parse_decimal_rational, BigReal};

use crate::error::{Error, Result};

/// Γ(x) for x > 0.
pub fn gamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("gamma needs x > 0, got {x}")));
    }
    let v = Float::with_val(ctx.bits(), x.as_float()).gamma();
    Ok(BigReal::from_float(v, ctx))
}

/// Result of a precision-doubling evaluation that stabilised.
#[derive(Clone, Debug)]
pub struct Stabilized<T> {
    pub value: T,
    /// Digits of the evaluation that was accepted.
    pub digits_used: u32,
    /// Agreement, in significant digits, between the last two evaluations.
    pub agreement: f64,
}

/// Evaluates at `ctx`, then at 2×, 4×, … the digits until two successive
/// evaluations agree to `ctx.digits() - 10` significant digits.
///
/// `agreement` returns the number of matching significant digits between two
/// evaluations. Gives up with [`Error::PrecisionExhausted`] after
/// `ctx.max_escalations()` doublings.
pub fn stabilize<T, F, A>(ctx: &PrecisionContext, mut eval: F, agreement: A) -> Result<Stabilized<T>>
where
    T: Display,
    F: FnMut(&PrecisionContext) -> Result<T>,
    A: Fn(&T, &T) -> f64,
{
    let target = f64::from(ctx.digits().saturating_sub(10));
    let mut level = *ctx;
    let mut prev = eval(&level)?;
    let mut older = None;
    for _ in 0..ctx.max_escalations() {
        level = level.scaled(2);
        let cur = eval(&level)?;
        let agree = agreement(&prev, &cur);
        if agree >= target {
            return Ok(Stabilized {
                value: cur,
                digits_used: level.digits(),
                agreement: agree,
            });
        }
        older = Some(std::mem::replace(&mut prev, cur));
    }
    Err(Error::PrecisionExhausted {
        digits: level.digits(),
        last: short(&prev),
        previous: older.as_ref().map(short).unwrap_or_default(),
    })
}

fn short<T: Display>(v: &T) -> String {
    let s = v.to_string();
    if s.len() > 80 {
        format!("{}…", &s[..80])
    } else {
        s
    }
}
