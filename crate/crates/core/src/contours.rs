//! Steepest descent and ascent paths through the saddles.
//!
//! Paths follow the unit-speed flow dt/ds = ∓ conj(ψ′)/|ψ′|, along which
//! Im ψ is constant and Re ψ is monotone. Integration is classical RK4 with
//! the step adapted so that Im ψ moves by at most [`STEP_DRIFT`] per step.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::{BigComplex, BigReal, PrecisionContext};
use crate::saddle::{psi, psi_derivs, psi_prime, solve_saddles, PhaseParams, SaddleKind};

/// Largest Im ψ change accepted in a single step.
pub const STEP_DRIFT: f64 = 1e-12;
/// Largest total Im ψ drift an emitted polyline may carry.
pub const MAX_DRIFT: f64 = 1e-8;
/// Distance from the saddle at which integration starts.
pub const LAUNCH_OFFSET: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Descent,
    Ascent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    RightEdge,
    Radius,
    NearOrigin,
    NearSaddle,
    BranchCut,
    MaxLength,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContourPolyline {
    /// Saddle as `(re, im)`.
    pub saddle: (f64, f64),
    pub kind: PathKind,
    /// Launch angle arg(t − saddle) in radians.
    pub launch_angle: f64,
    pub points: Vec<(f64, f64)>,
    /// max |Im ψ(p) − Im ψ(saddle)| over the emitted points.
    pub im_psi_drift: f64,
    pub stop: StopReason,
}

#[derive(Clone, Copy, Debug)]
pub struct ContourOptions {
    /// Largest arc-length step.
    pub step: f64,
    pub max_len: f64,
    /// Stop once Re t reaches this value.
    pub re_max: f64,
    /// Stop once |t| exceeds this value.
    pub radius: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            step: 0.05,
            max_len: 40.0,
            re_max: 8.0,
            radius: 12.0,
        }
    }
}

/// Local steepest directions (radians) at a saddle.
///
/// With ψ ≈ ψₛ + ψ″δ²/2 descent needs arg ψ″ + 2θ = π and ascent
/// arg ψ″ + 2θ = 0. At the double saddle ψ‴ = 1 and the cube δ³ decides.
pub fn launch_angles(kind: PathKind, psi2: Option<&BigComplex>) -> Vec<f64> {
    match (psi2, kind) {
        (None, PathKind::Descent) => vec![PI / 3.0, -PI / 3.0, PI],
        (None, PathKind::Ascent) => vec![0.0, 2.0 * PI / 3.0, -2.0 * PI / 3.0],
        (Some(d2), _) => {
            let a = d2.arg().to_f64();
            let base = match kind {
                PathKind::Descent => (PI - a) / 2.0,
                PathKind::Ascent => -a / 2.0,
            };
            vec![base, base + PI]
        }
    }
}

struct Tracer<'a> {
    mu: BigReal,
    ctx: &'a PrecisionContext,
    opts: ContourOptions,
    others: Vec<BigComplex>,
}

impl Tracer<'_> {
    fn im_psi(&self, t: &BigComplex) -> Result<f64> {
        Ok(psi(t, &self.mu, self.ctx)?.im.to_f64())
    }

    // Unit flow direction; None where ψ′ vanishes.
    fn field(&self, t: &BigComplex, sign: &BigReal) -> Result<Option<BigComplex>> {
        let d = psi_prime(t, &self.mu, self.ctx)?;
        let m = d.abs();
        if m.is_zero() {
            return Ok(None);
        }
        Ok(Some(d.conj().scale(&(sign / m))))
    }

    fn rk4(&self, t: &BigComplex, h: &BigReal, sign: &BigReal) -> Result<Option<BigComplex>> {
        let half = h / 2;
        let Some(k1) = self.field(t, sign)? else { return Ok(None) };
        let Some(k2) = self.field(&(t + &k1.scale(&half)), sign)? else { return Ok(None) };
        let Some(k3) = self.field(&(t + &k2.scale(&half)), sign)? else { return Ok(None) };
        let Some(k4) = self.field(&(t + &k3.scale(h)), sign)? else { return Ok(None) };
        let sum = &(&k1 + &k4) + &(&k2 + &k3).scale(&BigReal::from_i64(2, self.ctx));
        Ok(Some(t + &sum.scale(&(h / 6))))
    }

    fn stop_at(&self, prev: &BigComplex, t: &BigComplex, len: f64) -> Option<StopReason> {
        let (re, im) = t.to_f64_pair();
        let (pre, pim) = prev.to_f64_pair();
        if re > 0.0 && (im == 0.0 || (pre > 0.0 && im.signum() != pim.signum())) {
            return Some(StopReason::BranchCut);
        }
        let r = re.hypot(im);
        if r < 1e-6 {
            return Some(StopReason::NearOrigin);
        }
        if self.others.iter().any(|o| {
            let (ore, oim) = o.to_f64_pair();
            (re - ore).hypot(im - oim) < 1e-3
        }) {
            return Some(StopReason::NearSaddle);
        }
        if re >= self.opts.re_max {
            return Some(StopReason::RightEdge);
        }
        if r > self.opts.radius {
            return Some(StopReason::Radius);
        }
        if len >= self.opts.max_len {
            return Some(StopReason::MaxLength);
        }
        None
    }

    fn trace(&self, saddle: &BigComplex, kind: PathKind, angle: f64) -> Result<ContourPolyline> {
        let ctx = self.ctx;
        let c = self.im_psi(saddle)?;
        let sign = BigReal::from_i64(if kind == PathKind::Descent { -1 } else { 1 }, ctx);
        let dir = BigComplex::new(BigReal::from_f64(angle.cos(), ctx), BigReal::from_f64(angle.sin(), ctx));
        let mut t = saddle + &dir.scale(&BigReal::from_f64(LAUNCH_OFFSET, ctx));
        let mut points = vec![saddle.to_f64_pair(), t.to_f64_pair()];
        let mut drift = (self.im_psi(&t)? - c).abs();
        let mut h = LAUNCH_OFFSET;
        let mut len = LAUNCH_OFFSET;
        let mut last_im = self.im_psi(&t)?;
        let stop = loop {
            let hb = BigReal::from_f64(h, ctx);
            let Some(next) = self.rk4(&t, &hb, &sign)? else {
                break StopReason::NearSaddle;
            };
            let im = match self.im_psi(&next) {
                Ok(v) => v,
                Err(_) => break StopReason::BranchCut,
            };
            let change = (im - last_im).abs();
            if change > STEP_DRIFT {
                h /= 2.0;
                if h < 1e-14 {
                    return Err(Error::Step(format!(
                        "cannot hold Im ψ drift below {STEP_DRIFT:e} per step near {}",
                        fmt_pair(t.to_f64_pair())
                    )));
                }
                continue;
            }
            if let Some(reason) = self.stop_at(&t, &next, len + h) {
                if reason != StopReason::BranchCut {
                    points.push(next.to_f64_pair());
                    drift = drift.max((im - c).abs());
                }
                break reason;
            }
            len += h;
            t = next;
            last_im = im;
            drift = drift.max((im - c).abs());
            points.push(t.to_f64_pair());
            if change < STEP_DRIFT / 16.0 {
                h = (h * 2.0).min(self.opts.step);
            }
        };
        if drift >= MAX_DRIFT {
            return Err(Error::Step(format!(
                "Im ψ drift {drift:e} exceeds {MAX_DRIFT:e}; use a smaller --step"
            )));
        }
        Ok(ContourPolyline {
            saddle: saddle.to_f64_pair(),
            kind,
            launch_angle: angle,
            points,
            im_psi_drift: drift,
            stop,
        })
    }
}

fn fmt_pair((re, im): (f64, f64)) -> String {
    format!("{re:.6}{im:+.6}i")
}

/// Every steepest path leaving the contributing saddles at ξ.
pub fn trace_contours(xi: &BigReal, opts: &ContourOptions, ctx: &PrecisionContext) -> Result<Vec<ContourPolyline>> {
    if !(opts.step > 0.0 && opts.step <= 1.0) {
        return Err(Error::Step(format!("step must lie in (0, 1], got {}", opts.step)));
    }
    if !(opts.max_len > 0.0) {
        return Err(Error::Domain(format!("max_len must be positive, got {}", opts.max_len)));
    }
    let params = PhaseParams::from_xi(&xi.with_ctx(ctx))?;
    let saddles = solve_saddles(&params, ctx)?;
    let list: Vec<BigComplex> = if saddles.kind == SaddleKind::Double {
        vec![saddles.t0.clone()]
    } else {
        vec![saddles.t0.clone(), saddles.t1.clone()]
    };
    let mut out = Vec::new();
    for (i, s) in list.iter().enumerate() {
        let tracer = Tracer {
            mu: params.mu().with_ctx(ctx),
            ctx,
            opts: *opts,
            others: list.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect(),
        };
        let d2 = if saddles.kind == SaddleKind::Double {
            None
        } else {
            Some(psi_derivs(s, params.mu(), ctx)?.d2)
        };
        for kind in [PathKind::Descent, PathKind::Ascent] {
            for angle in launch_angles(kind, d2.as_ref()) {
                out.push(tracer.trace(s, kind, angle)?);
            }
        }
    }
    Ok(out)
}

pub fn write_json<W: Write>(paths: &[ContourPolyline], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, paths).map_err(|e| Error::Io(e.into()))
}

/// One row per point: path, kind, saddle_re, saddle_im, re, im.
pub fn write_csv<W: Write>(paths: &[ContourPolyline], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["path", "kind", "saddle_re", "saddle_im", "re", "im"])?;
    for (i, p) in paths.iter().enumerate() {
        let kind = match p.kind {
            PathKind::Descent => "descent",
            PathKind::Ascent => "ascent",
        };
        for (re, im) in &p.points {
            wr.write_record([
                i.to_string(),
                kind.to_string(),
                format!("{:.12e}", p.saddle.0),
                format!("{:.12e}", p.saddle.1),
                format!("{re:.12e}"),
                format!("{im:.12e}"),
            ])?;
        }
    }
    wr.flush()?;
    Ok(())
}
