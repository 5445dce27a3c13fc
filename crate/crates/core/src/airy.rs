//! Ai and Ai′ on the real line.
//!
//! Small and moderate |z| use the Maclaurin series at a widened precision
//! that absorbs the cancellation between growing terms. Past the switchover
//! the large-argument expansions take over, but only when their smallest term
//! is already below the requested accuracy; otherwise the series is used
//! anyway, since its radius of convergence is infinite.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::{gamma, BigReal, PrecisionContext};

/// Largest |z| accepted.
pub const MAX_ABS_Z: f64 = 1e6;

/// Default |z| beyond which the asymptotic expansions are tried.
pub const DEFAULT_SWITCHOVER: f64 = 12.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryMethod {
    Maclaurin,
    AsymptoticPos,
    AsymptoticNeg,
}

#[derive(Clone, Debug)]
pub struct AiryValue {
    pub ai: BigReal,
    pub ai_prime: BigReal,
    pub method: AiryMethod,
}

#[derive(Clone, Copy, Debug)]
pub struct AiryOptions {
    pub switchover: f64,
}

impl Default for AiryOptions {
    fn default() -> Self {
        Self {
            switchover: DEFAULT_SWITCHOVER,
        }
    }
}

/// Ai(z) and Ai′(z) with the default switchover.
pub fn airy(z: &BigReal, ctx: &PrecisionContext) -> Result<AiryValue> {
    airy_with(z, ctx, &AiryOptions::default())
}

pub fn airy_with(z: &BigReal, ctx: &PrecisionContext, opts: &AiryOptions) -> Result<AiryValue> {
    let zf = z.to_f64();
    if !(zf.abs() <= MAX_ABS_Z) {
        return Err(Error::Range(format!("|z| = {} exceeds {MAX_ABS_Z:e}", zf.abs())));
    }
    if zf.abs() > opts.switchover {
        if let Some(v) = asymptotic(z, ctx, f64::from(ctx.digits())) {
            return Ok(v);
        }
    }
    let (ai, ai_prime, _) = maclaurin(z, ctx)?;
    Ok(AiryValue {
        ai,
        ai_prime,
        method: AiryMethod::Maclaurin,
    })
}

/// Ai(0) = 3^{−2/3}/Γ(2/3) and Ai′(0) = −3^{−1/3}/Γ(1/3).
pub fn airy_at_zero(ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let three = BigReal::from_i64(3, ctx);
    let third = BigReal::one(ctx) / 3;
    let two_thirds = &third * 2;
    let ai0 = three.pow(&-&two_thirds)? / gamma(&two_thirds, ctx)?;
    let aip0 = -(three.pow(&-&third)? / gamma(&third, ctx)?);
    Ok((ai0, aip0))
}

/// Ai, Ai′ and Ai″ from the power series, each differentiated term by term.
pub fn maclaurin(z: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal, BigReal)> {
    let zf = z.to_f64().abs();
    let guard = (4.0 / 3.0) * zf.powf(1.5) / std::f64::consts::LN_10 + 10.0;
    let work = ctx.widened(guard.ceil() as u32);
    let z = z.with_ctx(&work);
    let (a0, a1) = airy_at_zero(&work)?;

    // α_{j+3} = α_j / ((j+2)(j+3)), with α₂ = 0
    let mut alpha = [a0, a1, BigReal::zero(&work)];
    let mut zpow = BigReal::one(&work); // z^j
    let mut zpow_m1 = BigReal::zero(&work); // z^{j−1}
    let mut zpow_m2 = BigReal::zero(&work); // z^{j−2}
    let mut ai = BigReal::zero(&work);
    let mut aip = BigReal::zero(&work);
    let mut aipp = BigReal::zero(&work);
    let stop = -f64::from(work.digits()) - 5.0;
    let mut max_log = f64::NEG_INFINITY;
    let mut j: i64 = 0;
    loop {
        let a = &alpha[(j % 3) as usize];
        if !a.is_zero() {
            let t = a * &zpow;
            max_log = max_log.max(t.log10_abs());
            ai = ai + &t;
            if j >= 1 {
                aip = aip + (a * &zpow_m1) * j;
            }
            if j >= 2 {
                aipp = aipp + (a * &zpow_m2) * (j * (j - 1));
            }
            // all three sums have converged once the z^{j−2} term is negligible
            let tail = (a * &zpow_m2).log10_abs() + ((j * j) as f64).log10();
            if j > 3 && tail - max_log.max(0.0) < stop {
                break;
            }
            if zf == 0.0 && j >= 2 {
                break;
            }
        }
        let next = &alpha[(j % 3) as usize] / ((j + 2) * (j + 3));
        alpha[(j % 3) as usize] = next;
        zpow_m2 = std::mem::replace(&mut zpow_m1, zpow.clone());
        zpow = &zpow * &z;
        j += 1;
        if j > 100_000 {
            return Err(Error::Range("Airy series did not converge".into()));
        }
    }
    Ok((ai.with_ctx(ctx), aip.with_ctx(ctx), aipp.with_ctx(ctx)))
}

fn u_coeffs(count: usize, ctx: &PrecisionContext) -> Vec<BigReal> {
    let mut u = vec![BigReal::one(ctx)];
    for k in 1..count as i64 {
        let prev = &u[(k - 1) as usize];
        let num = (6 * k - 5) * (6 * k - 3) * (6 * k - 1);
        u.push(prev * num / ((2 * k - 1) * 216 * k));
    }
    u
}

// Large-|z| expansions. Returns None when the smallest term of the series is
// not below 10^{−(digits + 2)}.
fn asymptotic(z: &BigReal, ctx: &PrecisionContext, digits: f64) -> Option<AiryValue> {
    let work = ctx.widened(5);
    let z = z.with_ctx(&work);
    let x = z.abs();
    let zeta = x.pow(&(BigReal::from_i64(3, &work) / 2)).ok()? * 2 / 3;
    let zf = zeta.to_f64();
    // terms shrink while k < about 2ζ; the smallest is near e^{−2ζ}
    let kmax = (2.0 * zf).floor().max(1.0) as usize;
    let u = u_coeffs(kmax + 1, &work);
    let v: Vec<BigReal> = u
        .iter()
        .enumerate()
        .map(|(k, uk)| {
            let k = k as i64;
            -(uk * (6 * k + 1)) / (6 * k - 1)
        })
        .collect();
    let target = -(digits + 2.0);
    let inv_zeta = zeta.recip().ok()?;
    // u_k/ζ^k and v_k/ζ^k up to the first negligible term
    let mut uz = Vec::new();
    let mut vz = Vec::new();
    let mut p = BigReal::one(&work);
    let mut converged = false;
    for k in 0..=kmax {
        let tu = &u[k] * &p;
        let tv = &v[k] * &p;
        let small = tu.log10_abs().max(tv.log10_abs()) < target;
        uz.push(tu);
        vz.push(tv);
        if small {
            converged = true;
            break;
        }
        p = &p * &inv_zeta;
    }
    if !converged {
        return None;
    }
    let sqrt_pi = BigReal::pi(&work).sqrt().ok()?;
    let x4 = x.sqrt().ok()?.sqrt().ok()?; // |z|^{1/4}
    let alt = |terms: &[BigReal], start: usize| {
        let mut s = BigReal::zero(&work);
        for (i, t) in terms.iter().enumerate().skip(start).step_by(2) {
            let k = (i - start) / 2;
            s = if k.is_multiple_of(2) { s + t } else { s - t };
        }
        s
    };
    let value = if z.is_positive() {
        let decay = (-&zeta).exp();
        let su = uz
            .iter()
            .enumerate()
            .fold(BigReal::zero(&work), |s, (k, t)| if k % 2 == 0 { s + t } else { s - t });
        let sv = vz
            .iter()
            .enumerate()
            .fold(BigReal::zero(&work), |s, (k, t)| if k % 2 == 0 { s + t } else { s - t });
        let ai = &decay * su / (&sqrt_pi * 2 * &x4);
        let aip = -(&decay * &x4 * sv / (&sqrt_pi * 2));
        AiryValue {
            ai: ai.with_ctx(ctx),
            ai_prime: aip.with_ctx(ctx),
            method: AiryMethod::AsymptoticPos,
        }
    } else {
        let phase = &zeta - BigReal::pi(&work) / 4;
        let (s, c) = (phase.sin(), phase.cos());
        let ai = (&c * alt(&uz, 0) + &s * alt(&uz, 1)) / (&sqrt_pi * &x4);
        let aip = &x4 * (&s * alt(&vz, 0) - &c * alt(&vz, 1)) / &sqrt_pi;
        AiryValue {
            ai: ai.with_ctx(ctx),
            ai_prime: aip.with_ctx(ctx),
            method: AiryMethod::AsymptoticNeg,
        }
    };
    Some(value)
}
