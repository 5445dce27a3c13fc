//! Two-term Airy approximation valid through the coalescence ξ = 1.
//!
//! The cubic change of variable ψ(t) = u³/3 − ζu + β sends the saddle pair
//! to u = ±ζ^{1/2}, which fixes ζ and β from the saddle values of ψ. The
//! prefactors A₀ and B₀ come from the Jacobian dt/du at those two points.
//!
//! Labeling for ξ < 1: the "first" saddle of the ζ formula is the one in the
//! lower half-plane. With the other order the extracted quantity is negative
//! and the approximation misses the exact values by orders of magnitude.

use std::fmt;

use crate::airy::{airy, airy_at_zero};
use crate::error::{Error, Result};
use crate::numkernel::{stabilize, BigComplex, BigReal, PrecisionContext};
use crate::saddle::{psi2_at_saddle, psi_at_saddle, psi_derivs, solve_saddles, PhaseParams, SaddleKind, SaddlePair};

#[derive(Clone, Debug)]
pub struct UniformIngredients {
    pub xi: BigReal,
    pub zeta: BigReal,
    pub beta: BigComplex,
    pub a0: BigReal,
    pub b0: BigReal,
    pub saddles: SaddlePair,
}

impl fmt::Display for UniformIngredients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ={} A₀={} B₀={}", self.zeta, self.a0, self.b0)
    }
}

fn tolerance(ctx: &PrecisionContext) -> BigReal {
    BigReal::from_i64(10, ctx).powi(-(ctx.digits() as i32 - 10))
}

// Accepts a complex value only if it is real and positive within tolerance.
fn real_positive(z: &BigComplex, what: &str, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigReal::one(ctx);
    let m = z.abs();
    let scale = if m > one { m } else { one };
    if z.im.abs() > tolerance(ctx) * &scale || !z.re.is_positive() {
        return Err(Error::Branch(format!(
            "{what} should be real and positive, got {z}"
        )));
    }
    Ok(z.re.clone())
}

/// ζ and β from the saddle values of ψ.
pub fn compute_zeta_beta(saddles: &SaddlePair, ctx: &PrecisionContext) -> Result<(BigReal, BigComplex)> {
    let three_halves = BigReal::from_i64(3, ctx) / 2;
    let two_thirds = BigReal::from_i64(2, ctx) / 3;
    match saddles.kind {
        SaddleKind::Double => {
            let beta = psi_at_saddle(&saddles.t0.with_ctx(ctx))?;
            Ok((BigReal::zero(ctx), beta))
        }
        SaddleKind::RealPair => {
            let p0 = psi_at_saddle(&saddles.t0.with_ctx(ctx))?;
            let p1 = psi_at_saddle(&saddles.t1.with_ctx(ctx))?;
            let half = BigReal::one(ctx) / 2;
            let r = (&p1 - &p0).scale(&half);
            let r = real_positive(&r, "½(ψ(t₁) − ψ(t₀))", ctx)?;
            let zeta = (r * three_halves).pow(&two_thirds)?;
            Ok((zeta, (&p0 + &p1).scale(&half)))
        }
        SaddleKind::ConjugatePair => {
            let (lower, upper) = saddles.lower_upper().expect("conjugate pair");
            let pl = psi_at_saddle(&lower.with_ctx(ctx))?;
            let pu = psi_at_saddle(&upper.with_ctx(ctx))?;
            let half = BigReal::one(ctx) / 2;
            let i_half = BigComplex::new(BigReal::zero(ctx), half.clone());
            let r = &i_half * &(&pl - &pu);
            let r = real_positive(&r, "½i(ψ(lower) − ψ(upper))", ctx)?;
            let zeta = -(r * three_halves).pow(&two_thirds)?;
            Ok((zeta, (&pl + &pu).scale(&half)))
        }
    }
}

/// A₀ and B₀ for separated saddles.
pub fn compute_a0_b0(saddles: &SaddlePair, zeta: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let quarter = BigReal::one(ctx) / 4;
    let root = zeta.abs().pow(&quarter)?;
    if root.is_zero() {
        return Err(Error::Regime("ζ = 0: use the coalescence limit".into()));
    }
    let sqrt2 = BigReal::from_i64(2, ctx).sqrt()?;
    match saddles.kind {
        SaddleKind::Double => Err(Error::Regime("double saddle: use the coalescence limit".into())),
        SaddleKind::RealPair => {
            let d0 = psi2_at_saddle(&saddles.t0.with_ctx(ctx))?;
            let d1 = psi2_at_saddle(&saddles.t1.with_ctx(ctx))?;
            let g0 = real_positive(&d0, "ψ″(t₀)", ctx)?.recip()?.sqrt()?;
            let g1 = real_positive(&-d1, "−ψ″(t₁)", ctx)?.recip()?.sqrt()?;
            let a0 = &root * (&g0 + &g1) / &sqrt2;
            let b0 = (&g0 - &g1) / (&root * &sqrt2);
            Ok((a0, b0))
        }
        SaddleKind::ConjugatePair => {
            let (_, upper) = saddles.lower_upper().expect("conjugate pair");
            let d = psi2_at_saddle(&upper.with_ctx(ctx))?;
            let s = (&BigComplex::i(ctx) / &d).sqrt();
            let a0 = &sqrt2 * &root * &s.re;
            let b0 = &sqrt2 * &s.im / &root;
            Ok((a0, b0))
        }
    }
}

/// (A₀, B₀, β) at ξ = 1 from the local expansion of t(u) about u = 0.
///
/// t′(0) = (2/ψ‴)^{1/3} and t″(0) = −(ψ⁗/6ψ‴)(2/ψ‴)^{2/3} at t = −1; A₀ is
/// the first and B₀ the second.
pub fn coalescence_limit_values(ctx: &PrecisionContext) -> Result<(BigReal, BigReal, BigComplex)> {
    let mu = BigReal::e(ctx).recip()?;
    let t = BigComplex::from_i64(-1, 0, ctx);
    let d = psi_derivs(&t, &mu, ctx)?;
    let p3 = real_positive(&d.d3, "ψ‴(−1)", ctx)?;
    let p4 = d.d4.re;
    let ratio = BigReal::from_i64(2, ctx) / &p3;
    let t1 = ratio.pow(&(BigReal::one(ctx) / 3))?;
    let t2 = -(p4 / (p3 * 6)) * &t1 * &t1;
    let beta = psi_at_saddle(&t)?;
    Ok((t1, t2, beta))
}

fn ingredients_at(params: &PhaseParams, ctx: &PrecisionContext) -> Result<UniformIngredients> {
    let saddles = solve_saddles(params, ctx)?;
    let (zeta, beta, a0, b0) = if saddles.kind == SaddleKind::Double {
        let (a0, b0, beta) = coalescence_limit_values(ctx)?;
        (BigReal::zero(ctx), beta, a0, b0)
    } else {
        let (zeta, beta) = compute_zeta_beta(&saddles, ctx)?;
        let (a0, b0) = compute_a0_b0(&saddles, &zeta, ctx)?;
        (zeta, beta, a0, b0)
    };
    Ok(UniformIngredients {
        xi: params.xi().with_ctx(ctx),
        zeta,
        beta,
        a0,
        b0,
        saddles,
    })
}

fn agreement(a: &UniformIngredients, b: &UniformIngredients) -> f64 {
    let z = if a.zeta.is_zero() && b.zeta.is_zero() {
        f64::INFINITY
    } else {
        a.zeta.agreement_digits(&b.zeta)
    };
    z.min(a.a0.agreement_digits(&b.a0))
        .min(a.b0.agreement_digits(&b.b0))
        .min(a.beta.re.agreement_digits(&b.beta.re))
}

/// ζ, β, A₀, B₀ at ξ, re-evaluated at doubled precision until stable.
pub fn ingredients(xi: &BigReal, ctx: &PrecisionContext) -> Result<UniformIngredients> {
    let s = stabilize(
        ctx,
        |level| ingredients_at(&PhaseParams::from_xi(&xi.with_ctx(level))?, level),
        agreement,
    )?;
    let v = s.value;
    Ok(UniformIngredients {
        xi: xi.with_ctx(ctx),
        zeta: v.zeta.with_ctx(ctx),
        beta: v.beta.with_ctx(ctx),
        a0: v.a0.with_ctx(ctx),
        b0: v.b0.with_ctx(ctx),
        saddles: v.saddles,
    })
}

/// Two-term approximation of T̂_{n−1}(−neξ) from precomputed ingredients.
pub fn theorem2_with(n: usize, ing: &UniformIngredients, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let work = ctx.widened(10);
    let nn = BigReal::from_i64(n as i64, &work);
    let x = &nn * BigReal::e(&work) * ing.xi.with_ctx(&work);
    let third = BigReal::one(&work) / 3;
    let n13 = nn.pow(&third)?;
    let n23 = &n13 * &n13;
    let (ai, aip) = if ing.zeta.is_zero() {
        airy_at_zero(&work)?
    } else {
        let v = airy(&(&n23 * ing.zeta.with_ctx(&work)), &work)?;
        (v.ai, v.ai_prime)
    };
    let brace = ing.a0.with_ctx(&work) * ai / &n13 - ing.b0.with_ctx(&work) * aip / &n23;
    let growth = (x + &nn * ing.beta.re.with_ctx(&work)).exp();
    let v = growth * brace;
    let v = if n.is_multiple_of(2) { -v } else { v };
    Ok(v.with_ctx(ctx))
}

pub fn theorem2_eval(n: usize, xi: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    theorem2_with(n, &ingredients(xi, ctx)?, ctx)
}

/// The ξ = 1 value in closed form:
/// (−1)^{n−1} e^{n(e−1)} (2^{1/3} n^{−1/3} Ai(0) + (5/6) 2^{2/3} n^{−2/3} Ai′(0)).
pub fn coalescence_closed_form(n: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let work = ctx.widened(10);
    let nn = BigReal::from_i64(n as i64, &work);
    let (ai0, aip0) = airy_at_zero(&work)?;
    let c = (BigReal::from_i64(2, &work) / &nn).pow(&(BigReal::one(&work) / 3))?;
    let brace = &c * ai0 + &c * &c * aip0 * 5 / 6;
    let v = (&nn * (BigReal::e(&work) - 1)).exp() * brace;
    let v = if n.is_multiple_of(2) { -v } else { v };
    Ok(v.with_ctx(ctx))
}

/// Checks that A₀ and B₀ approach their ξ = 1 values from both sides along
/// ξ = 1 ± 10⁻ᵏ, k = 2..=6.
pub fn verify_branch_continuity(ctx: &PrecisionContext) -> Result<()> {
    let (a_lim, b_lim, _) = coalescence_limit_values(ctx)?;
    for side in [1i64, -1] {
        let mut prev = f64::INFINITY;
        for k in 2..=6 {
            let xi = BigReal::one(ctx) + BigReal::from_i64(10, ctx).powi(-k) * side;
            let ing = ingredients(&xi, ctx)?;
            let gap = (&ing.a0 - &a_lim)
                .abs()
                .to_f64()
                .max((&ing.b0 - &b_lim).abs().to_f64());
            if !(gap < prev) || (k >= 4 && gap > 1e-2) {
                return Err(Error::Branch(format!(
                    "A₀/B₀ at ξ = {} are {} / {}, not continuous with {} / {}",
                    xi.to_sci_string(8),
                    ing.a0.to_sci_string(8),
                    ing.b0.to_sci_string(8),
                    a_lim.to_sci_string(8),
                    b_lim.to_sci_string(8)
                )));
            }
            prev = gap;
        }
    }
    Ok(())
}
