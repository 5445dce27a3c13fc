//! Leading term of the non-uniform saddle-point expansions, away from ξ = 1.
//!
//! Below coalescence only the saddle t₀ = W₀(−μ) contributes; above it the
//! upper conjugate saddle and its mirror image combine into a real part.
//! The leading series coefficient is taken as 1; [`decay_ratios`] is the
//! self-test for that choice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::{BigComplex, BigReal, PrecisionContext};
use crate::saddle::{solve_saddles, PhaseParams, SaddleKind};
use crate::stirling::{build_triangle, scaled_touchard, Argument};

/// Half-width of the refused band around μe = 1.
pub const EXCLUSION: f64 = 0.05;

pub const MIN_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Below,
    Above,
}

#[derive(Clone, Debug)]
pub struct PoincareResult {
    pub value: BigReal,
    pub regime: Regime,
    pub t0_used: BigComplex,
}

/// Leading-order estimate of T̂_{n−1}(−n/μ).
pub fn leading_order(n: usize, mu: &BigReal, ctx: &PrecisionContext) -> Result<PoincareResult> {
    if n < MIN_N {
        return Err(Error::Domain(format!("leading order needs n ≥ {MIN_N}, got {n}")));
    }
    let work = ctx.widened(10);
    let mu = mu.with_ctx(&work);
    let params = PhaseParams::from_mu(&mu)?;
    let off = (&mu * BigReal::e(&work) - 1).abs().to_f64();
    if off <= EXCLUSION {
        return Err(Error::Regime(format!(
            "|μe − 1| = {off:.4} is inside the coalescence band; use the Airy or double-saddle formulas"
        )));
    }
    let saddles = solve_saddles(&params, &work)?;
    let regime = match saddles.kind {
        SaddleKind::RealPair => Regime::Below,
        SaddleKind::ConjugatePair => Regime::Above,
        SaddleKind::Double => unreachable!("excluded above"),
    };
    let t0 = saddles.t0;
    let nn = BigReal::from_i64(n as i64, &work);
    let x = &nn / &mu;
    let one = BigComplex::from_i64(1, 0, &work);
    let expo = (&t0.recip()?.scale(&nn)) + &BigComplex::from_real(x);
    let num = expo.exp();
    // integer power, so no branch choice enters
    let den = (&one + &t0).sqrt() * t0.powi(n as i32 - 1);
    let pi = BigReal::pi(&work);
    let v = &num / &den;
    let value = match regime {
        Regime::Below => v.re / (pi * 2 * &nn).sqrt()?,
        Regime::Above => v.re * (BigReal::from_i64(2, &work) / (pi * &nn)).sqrt()?,
    };
    Ok(PoincareResult {
        value: value.with_ctx(ctx),
        regime,
        t0_used: t0.with_ctx(ctx),
    })
}

/// Relative error of the leading term against the exact sum at x = n/μ.
pub fn leading_order_error(n: usize, mu: &rug::Rational, ctx: &PrecisionContext) -> Result<f64> {
    let approx = leading_order(n, &BigReal::from_rational(mu, ctx), ctx)?;
    let tri = build_triangle(n)?;
    let x = Argument::Exact(rug::Rational::from(n as u32) / mu.clone());
    let exact = scaled_touchard(n - 1, &x.negated(), &tri, ctx)?;
    Ok(approx.value.rel_err(&exact.value)?.to_f64())
}

/// err(2n)/err(n) along n, 2n, 4n, …; an O(1/n) leading term gives about ½.
pub fn decay_ratios(mu: &rug::Rational, ns: &[usize], ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let errs = ns
        .iter()
        .map(|&n| leading_order_error(n, mu, ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(errs.windows(2).map(|w| w[1] / w[0]).collect())
}
