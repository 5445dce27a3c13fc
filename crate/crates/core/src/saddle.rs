//! The phase function ψ(t; μ) = −eᵗ/μ − log t and its saddle points.
//!
//! Saddles solve t·eᵗ = −μ. With μ = 1/(eξ) there are three regimes:
//! ξ > 1 gives two real saddles on (−∞, 0) separated by −1, ξ = 1 gives the
//! double saddle t = −1, and ξ < 1 gives a complex-conjugate pair. The
//! logarithm uses arg t ∈ (0, 2π), so the cut lies along [0, ∞).

use std::fmt;

use crate::error::{Error, Result};
use crate::numkernel::{BigComplex, BigReal, PrecisionContext};

const MAX_ITERATIONS: usize = 200;

/// μ and ξ tied together by μ·e·ξ = 1.
#[derive(Clone, Debug)]
pub struct PhaseParams {
    mu: BigReal,
    xi: BigReal,
}

impl PhaseParams {
    pub fn from_xi(xi: &BigReal) -> Result<Self> {
        if !xi.is_positive() {
            return Err(Error::Domain(format!("ξ must be positive, got {xi}")));
        }
        let e = BigReal::e(xi.ctx());
        let mu = (e * xi).recip()?;
        Ok(Self {
            mu,
            xi: xi.clone(),
        })
    }

    pub fn from_mu(mu: &BigReal) -> Result<Self> {
        if !mu.is_positive() {
            return Err(Error::Domain(format!("μ must be positive, got {mu}")));
        }
        let e = BigReal::e(mu.ctx());
        let xi = (e * mu).recip()?;
        Ok(Self {
            mu: mu.clone(),
            xi,
        })
    }

    pub fn mu(&self) -> &BigReal {
        &self.mu
    }

    pub fn xi(&self) -> &BigReal {
        &self.xi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleKind {
    RealPair,
    Double,
    ConjugatePair,
}

impl fmt::Display for SaddleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SaddleKind::RealPair => "real_pair",
            SaddleKind::Double => "double",
            SaddleKind::ConjugatePair => "conjugate_pair",
        })
    }
}

/// The two contributing saddles with their residuals |t·eᵗ + μ|.
///
/// Real pair: `t0` ∈ (−1, 0), `t1` < −1. Conjugate pair: `t0` in the upper
/// half-plane and `t1` its conjugate.
#[derive(Clone, Debug)]
pub struct SaddlePair {
    pub kind: SaddleKind,
    pub t0: BigComplex,
    pub t1: BigComplex,
    pub residual0: BigReal,
    pub residual1: BigReal,
}

impl SaddlePair {
    /// `(lower, upper)` half-plane members of a conjugate pair.
    pub fn lower_upper(&self) -> Option<(&BigComplex, &BigComplex)> {
        (self.kind == SaddleKind::ConjugatePair).then_some((&self.t1, &self.t0))
    }
}

/// ψ(t) = −eᵗ/μ − log t.
pub fn psi(t: &BigComplex, mu: &BigReal, ctx: &PrecisionContext) -> Result<BigComplex> {
    let t = t.with_ctx(ctx);
    let log_t = t.ln_branched()?;
    let e_t = t.exp().scale(&mu.with_ctx(ctx).recip()?);
    Ok(-(e_t + log_t))
}

/// ψ′ through ψ⁗ at one point.
#[derive(Clone, Debug)]
pub struct PsiDerivatives {
    pub d1: BigComplex,
    pub d2: BigComplex,
    pub d3: BigComplex,
    pub d4: BigComplex,
}

/// ψ⁽ᵏ⁾(t) = −eᵗ/μ + (−1)ᵏ (k−1)!/tᵏ for k = 1..4.
pub fn psi_derivs(t: &BigComplex, mu: &BigReal, ctx: &PrecisionContext) -> Result<PsiDerivatives> {
    let t = t.with_ctx(ctx);
    let inv = t.recip()?;
    let e_over_mu = t.exp().scale(&mu.with_ctx(ctx).recip()?);
    let inv2 = &inv * &inv;
    let inv3 = &inv2 * &inv;
    let inv4 = &inv2 * &inv2;
    let c = |k: i64| BigReal::from_i64(k, ctx);
    Ok(PsiDerivatives {
        d1: -(&e_over_mu + &inv),
        d2: &inv2 - &e_over_mu,
        d3: -(&e_over_mu + &inv3.scale(&c(2))),
        d4: &inv4.scale(&c(6)) - &e_over_mu,
    })
}

/// ψ′(t) alone.
pub fn psi_prime(t: &BigComplex, mu: &BigReal, ctx: &PrecisionContext) -> Result<BigComplex> {
    let t = t.with_ctx(ctx);
    let inv = t.recip()?;
    let e_over_mu = t.exp().scale(&mu.with_ctx(ctx).recip()?);
    Ok(-(e_over_mu + inv))
}

/// ψ at a saddle, where eᵗ = −μ/t turns ψ into 1/t − log t.
pub fn psi_at_saddle(t: &BigComplex) -> Result<BigComplex> {
    Ok(&t.recip()? - &t.ln_branched()?)
}

/// ψ″ at a saddle: (1 + t)/t².
pub fn psi2_at_saddle(t: &BigComplex) -> Result<BigComplex> {
    let one = BigComplex::from_i64(1, 0, t.ctx());
    let t2 = t * t;
    if t2.is_zero() {
        return Err(Error::Domain("ψ″ at t = 0".into()));
    }
    Ok(&(&one + t) / &t2)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum WBranch {
    Principal,
    Lower,
}

/// Principal real branch W₀ on [−1/e, 0): the root in [−1, 0).
pub fn lambert_w0(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    lambert_real(y, WBranch::Principal, ctx)
}

/// Lower real branch W₋₁ on [−1/e, 0): the root in (−∞, −1].
pub fn lambert_wm1(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    lambert_real(y, WBranch::Lower, ctx)
}

fn lambert_real(y: &BigReal, branch: WBranch, ctx: &PrecisionContext) -> Result<BigReal> {
    let y = y.with_ctx(ctx);
    if !y.is_sign_negative() {
        return Err(Error::Domain(format!("W(y) needs −1/e ≤ y < 0, got {y}")));
    }
    // q = e·y + 1 ∈ [0, 1)
    let q = BigReal::e(ctx) * &y + 1;
    let slack = BigReal::from_i64(10, ctx).powi(-(ctx.digits() as i32 - 5));
    if q.is_sign_negative() {
        if q.abs() > slack {
            return Err(Error::Domain(format!("W(y) needs y ≥ −1/e, got {y}")));
        }
        return Ok(BigReal::from_i64(-1, ctx));
    }
    if q.is_zero() {
        return Ok(BigReal::from_i64(-1, ctx));
    }
    let sigma = if branch == WBranch::Principal { 1 } else { -1 };
    let p = (q * 2).sqrt()?;
    let mut w = if p.to_f64() < 0.3 {
        // branch-point series in p = √(2(ey + 1))
        let sp = &p * sigma;
        let p2 = &p * &p;
        BigReal::from_i64(-1, ctx) + &sp - &p2 / 3 + (&sp * &p2) * 11 / 72
            - (&p2 * &p2) * 43 / 540
    } else {
        BigReal::from_f64(f64_guess(y.to_f64(), branch), ctx)
    };
    let tol_exp = -(ctx.digits() as i32 + 2);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = &w * &ew - &y;
        if f.is_zero() {
            return Ok(w);
        }
        let w1 = &w + 1;
        let denom = &ew * &w1 - (&w + 2) * &f / (&w1 * 2);
        if denom.is_zero() {
            break;
        }
        // near the branch point W is only as sharp as √ of the rounding
        // floor, so a residual at the floor also counts as converged
        let f_small = f.abs().log10_abs() - y.log10_abs() < f64::from(tol_exp);
        let step = f / denom;
        w = &w - &step;
        if f_small || step.is_zero() || step.abs().log10_abs() - w.log10_abs() < f64::from(tol_exp) {
            return Ok(w);
        }
    }
    Err(Error::Solver {
        iterations: MAX_ITERATIONS,
        message: format!("Halley iteration for W at y = {y} stalled"),
        trace: vec![(w.to_f64(), 0.0)],
    })
}

fn f64_guess(y: f64, branch: WBranch) -> f64 {
    let mut w = match branch {
        WBranch::Principal => {
            if y > -0.25 {
                y * (1.0 - y)
            } else {
                -0.5
            }
        }
        WBranch::Lower => {
            let l1 = (-y).ln();
            let l2 = (-l1).ln();
            (l1 - l2 + l2 / l1).min(-1.5)
        }
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - y;
        let d = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let s = f / d;
        w -= s;
        if s.abs() < 1e-15 * w.abs() {
            break;
        }
    }
    w
}

fn residual(t: &BigComplex, mu: &BigReal) -> BigReal {
    let v = t * &t.exp();
    let r = BigComplex::new(&v.re + mu, v.im.clone());
    r.abs()
}

/// Solves t·eᵗ = −μ for the contributing pair and classifies it.
pub fn solve_saddles(params: &PhaseParams, ctx: &PrecisionContext) -> Result<SaddlePair> {
    let mu = params.mu().with_ctx(ctx);
    let xi = params.xi().with_ctx(ctx);
    let tol = BigReal::from_i64(10, ctx).powi(-(ctx.digits() as i32 - 15));
    let gap = &xi - 1;
    if gap.abs() <= tol {
        let t = BigComplex::from_i64(-1, 0, ctx);
        let r = residual(&t, &mu);
        return Ok(SaddlePair {
            kind: SaddleKind::Double,
            t0: t.clone(),
            t1: t,
            residual0: r.clone(),
            residual1: r,
        });
    }
    if gap.is_positive() {
        let y = -&mu;
        let w0 = lambert_w0(&y, ctx)?;
        let wm1 = lambert_wm1(&y, ctx)?;
        let t0 = BigComplex::from_real(w0);
        let t1 = BigComplex::from_real(wm1);
        return Ok(SaddlePair {
            kind: SaddleKind::RealPair,
            residual0: residual(&t0, &mu),
            residual1: residual(&t1, &mu),
            t0,
            t1,
        });
    }
    let t0 = complex_saddle(&mu, &xi, ctx)?;
    let t1 = t0.conj();
    Ok(SaddlePair {
        kind: SaddleKind::ConjugatePair,
        residual0: residual(&t0, &mu),
        residual1: residual(&t1, &mu),
        t0,
        t1,
    })
}

// Newton on h(t) = t + log t − log μ − iπ, whose upper-half-plane roots are
// the roots of t·eᵗ = −μ there.
fn complex_saddle(mu: &BigReal, xi: &BigReal, ctx: &PrecisionContext) -> Result<BigComplex> {
    let seed_im = ((xi.recip()? - 1) * 2).sqrt()?;
    let mut t = BigComplex::new(BigReal::from_i64(-1, ctx), seed_im);
    let shift = BigComplex::new(mu.ln()?, BigReal::pi(ctx));
    let one = BigComplex::from_i64(1, 0, ctx);
    let h = |t: &BigComplex| -> Result<BigComplex> { Ok(&(t + &t.ln()?) - &shift) };
    let mut trace = vec![t.to_f64_pair()];
    let mut ht = h(&t)?;
    let tol = -f64::from(ctx.digits() + 2);
    for _ in 0..MAX_ITERATIONS {
        let dh = &one + &t.recip()?;
        let mut step = &ht / &dh;
        // halve the step until |h| decreases
        let mut next = &t - &step;
        let mut h_next = h(&next);
        let mut halvings = 0;
        while halvings < 30 {
            match &h_next {
                Ok(v) if next.im.is_positive() && v.abs() < ht.abs() => break,
                _ => {}
            }
            step = step.scale(&(BigReal::one(ctx) / 2));
            next = &t - &step;
            h_next = h(&next);
            halvings += 1;
        }
        let small = step.is_zero() || step.abs().log10_abs() - next.abs().log10_abs() < tol;
        t = next;
        ht = h_next?;
        trace.push(t.to_f64_pair());
        if small || ht.is_zero() {
            if !t.im.is_positive() {
                break;
            }
            return Ok(t);
        }
    }
    Err(Error::Solver {
        iterations: trace.len() - 1,
        message: format!("complex Newton for the conjugate saddle pair at ξ = {xi} failed"),
        trace,
    })
}
