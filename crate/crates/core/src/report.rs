//! Side-by-side evaluation of every method at one (n, ξ).

use rug::Rational;
use serde::Serialize;

use crate::coalescence::theorem1_eval;
use crate::error::{Error, Result};
use crate::numkernel::{BigComplex, BigReal, PrecisionContext};
use crate::poincare::{leading_order, EXCLUSION};
use crate::saddle::SaddleKind;
use crate::stirling::{build_triangle, scaled_touchard, Argument};
use crate::tables::format_rel_err;
use crate::uniform::{ingredients, theorem2_with};

/// |ξ − 1| below which the double-saddle expansion is reported.
pub const THEOREM1_WINDOW: f64 = 0.02;
/// Truncation used for that report entry.
pub const THEOREM1_ORDER: usize = 6;

/// Where to evaluate: by ξ (x = neξ) or by x directly.
#[derive(Clone, Debug)]
pub enum EvalPoint {
    Xi(Rational),
    X(Rational),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactEntry {
    pub value: String,
    pub cancellation_digits: i64,
    pub digits_used: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodEntry {
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exit_code: Option<i32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaddleReport {
    pub kind: SaddleKind,
    pub t0: [String; 2],
    pub t1: [String; 2],
    pub residual0: String,
    pub residual1: String,
    pub zeta: String,
    pub re_beta: String,
    pub a0: String,
    pub b0: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub n: usize,
    pub xi: String,
    pub x: String,
    pub digits: u32,
    pub exact: ExactEntry,
    pub methods: Vec<MethodEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saddles: Option<SaddleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saddle_error: Option<String>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn pair(z: &BigComplex) -> [String; 2] {
    [z.re.to_string(), z.im.to_string()]
}

fn entry(method: &'static str, order: Option<usize>, r: Result<BigReal>, exact: &BigReal) -> MethodEntry {
    let mut e = MethodEntry {
        method,
        order,
        value: None,
        rel_err: None,
        error: None,
        exit_code: None,
    };
    match r.and_then(|v| Ok((v.rel_err(exact)?, v))) {
        Ok((err, v)) => {
            e.value = Some(v.to_string());
            e.rel_err = Some(format_rel_err(&err));
        }
        Err(err) => {
            e.exit_code = Some(err.exit_code());
            e.error = Some(err.to_string());
        }
    }
    e
}

pub fn eval_report(n: usize, point: &EvalPoint, ctx: &PrecisionContext) -> Result<EvalReport> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let nn = BigReal::from_i64(n as i64, ctx);
    let e = BigReal::e(ctx);
    let (arg, xi, x) = match point {
        EvalPoint::Xi(xi) => {
            if *xi <= 0 {
                return Err(Error::Domain(format!("ξ must be positive, got {xi}")));
            }
            let xr = BigReal::from_rational(xi, ctx);
            (Argument::scaled_e(n, xi), xr.clone(), &nn * &e * xr)
        }
        EvalPoint::X(x) => {
            if *x <= 0 {
                return Err(Error::Domain(format!("x must be positive, got {x}")));
            }
            let xr = BigReal::from_rational(x, ctx);
            (Argument::Exact(x.clone()), &xr / (&nn * &e), xr)
        }
    };
    let tri = build_triangle(n - 1)?;
    let exact = scaled_touchard(n - 1, &arg.negated(), &tri, ctx)?;
    let ev = &exact.value;

    let mut methods = Vec::new();
    let gap = (&xi - 1).abs().to_f64();
    if gap < THEOREM1_WINDOW {
        methods.push(entry(
            "theorem1",
            Some(THEOREM1_ORDER),
            theorem1_eval(n, THEOREM1_ORDER, ctx),
            ev,
        ));
    }
    let ing = ingredients(&xi, ctx);
    let t2 = match &ing {
        Ok(i) => theorem2_with(n, i, ctx),
        Err(err) => Err(Error::Regime(format!("no uniform ingredients: {err}"))),
    };
    methods.push(entry("theorem2", None, t2, ev));
    let mu = (&e * &xi).recip()?;
    if (&mu * &e - 1).abs().to_f64() > EXCLUSION {
        let p = leading_order(n, &mu, ctx).map(|r| r.value);
        methods.push(entry("poincare", None, p, ev));
    }

    let (saddles, saddle_error) = match ing {
        Ok(i) => (
            Some(SaddleReport {
                kind: i.saddles.kind,
                t0: pair(&i.saddles.t0.with_ctx(ctx)),
                t1: pair(&i.saddles.t1.with_ctx(ctx)),
                residual0: i.saddles.residual0.to_sci_string(4),
                residual1: i.saddles.residual1.to_sci_string(4),
                zeta: i.zeta.to_string(),
                re_beta: i.beta.re.to_string(),
                a0: i.a0.to_string(),
                b0: i.b0.to_string(),
            }),
            None,
        ),
        Err(err) => (None, Some(err.to_string())),
    };
    Ok(EvalReport {
        n,
        xi: xi.to_string(),
        x: x.to_string(),
        digits: ctx.digits(),
        exact: ExactEntry {
            value: ev.to_string(),
            cancellation_digits: exact.cancellation_digits,
            digits_used: exact.final_digits,
        },
        methods,
        saddles,
        saddle_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::mk_context;

    #[test]
    fn small_case_is_exact() {
        let c = mk_context(40).unwrap();
        let r = eval_report(2, &EvalPoint::X(Rational::from(1)), &c).unwrap();
        assert!(r.exact.value.starts_with("-1.000"), "{}", r.exact.value);
        let poincare = r.methods.iter().find(|m| m.method == "poincare").unwrap();
        assert_eq!(poincare.exit_code, Some(2));
    }

    #[test]
    fn routing() {
        let c = mk_context(40).unwrap();
        let r = eval_report(100, &EvalPoint::Xi(Rational::from((1, 2))), &c).unwrap();
        let names: Vec<_> = r.methods.iter().map(|m| m.method).collect();
        assert_eq!(names, ["theorem2", "poincare"]);
        let r = eval_report(100, &EvalPoint::Xi(Rational::from(1)), &c).unwrap();
        let names: Vec<_> = r.methods.iter().map(|m| m.method).collect();
        assert_eq!(names, ["theorem1", "theorem2"]);
        assert_eq!(r.methods[1].rel_err.as_deref(), Some("4.326e-03"));
        assert_eq!(r.saddles.unwrap().kind, SaddleKind::Double);
    }
}
