//! Exact series for the double saddle at μ = 1/e.
//!
//! With τ = t + 1 the phase difference ψ(t) − ψ(−1) equals Σ (1/k − 1/k!) τᵏ,
//! which starts at τ³. Reverting w = Σ cₖτᵏ in powers of v = (6w)^{1/3} gives
//! τ = Σ aₘ v^{m+1}, and the expansion coefficients are Bₘ = (−1)ᵐ (m+1) aₘ.

use std::sync::OnceLock;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::{gamma, BigReal, PrecisionContext};

/// Order of the shared coefficient table.
pub const DEFAULT_ORDER: usize = 12;

/// ψ(t) − ψ(−1) in powers of τ = t + 1; `coeffs[k]` multiplies τᵏ.
#[derive(Clone, Debug, PartialEq)]
pub struct ForwardSeries {
    pub coeffs: Vec<Rational>,
}

impl ForwardSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// τ = Σ aₘ v^{m+1}, m = 0..=order.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSeries {
    pub coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct BmTable {
    pub b: Vec<Rational>,
    /// True where m ≡ 2 (mod 3); those terms vanish identically.
    pub zero_mask: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BmEntry {
    pub m: usize,
    pub numerator: String,
    pub denominator: String,
    pub contributes: bool,
}

/// Values that any correct table must reproduce exactly.
pub const PUBLISHED_BM: [(usize, i64, i64); 5] = [
    (0, 1, 1),
    (1, 5, 6),
    (3, 1463, 6480),
    (4, 126827, 1088640),
    (6, 4732223, 167961600),
];

pub fn forward_series(order: usize) -> Result<ForwardSeries> {
    if order < 3 {
        return Err(Error::Order {
            requested: order,
            available: 3,
        });
    }
    let mut coeffs = vec![Rational::new(); order + 1];
    let mut fact = Integer::from(1);
    for k in 1..=order {
        fact *= k as u32;
        coeffs[k] = Rational::from((1, k as u64)) - Rational::from((Integer::from(1), fact.clone()));
    }
    Ok(ForwardSeries { coeffs })
}

// Truncated product of two series indexed by power.
fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += Rational::from(x * y);
            }
        }
    }
    out
}

/// Σ cₖ τ(v)ᵏ as a polynomial in v up to v^{len−1}.
fn compose(fwd: &ForwardSeries, tau: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); len];
    let mut power = vec![Rational::new(); len];
    power[0] = Rational::from(1);
    for k in 1..=fwd.order() {
        power = mul_trunc(&power, tau, len);
        let c = &fwd.coeffs[k];
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(&power) {
            if !p.is_zero() {
                *o += Rational::from(c * p);
            }
        }
    }
    out
}

/// Reverts the forward series through order `m_max` by matching v^{m+3}.
pub fn revert_series(fwd: &ForwardSeries, m_max: usize) -> Result<RationalSeries> {
    if fwd.order() < m_max + 3 {
        return Err(Error::Order {
            requested: m_max + 3,
            available: fwd.order(),
        });
    }
    let len = m_max + 4;
    // tau[j] is the coefficient of v^j
    let mut tau = vec![Rational::new(); len];
    tau[1] = Rational::from(1);
    for m in 1..=m_max {
        // aₘ enters the v^{m+3} coefficient only through 3·c₃·aₘ = aₘ/2
        let w = compose(fwd, &tau, len);
        tau[m + 1] = -Rational::from(&w[m + 3] * 2u32);
    }
    Ok(RationalSeries {
        coeffs: tau[1..=m_max + 1].to_vec(),
    })
}

/// Coefficient residuals of u(τ(v)) − v³/6 through v^{order+3}; all zero for
/// a correct reversion.
pub fn reversion_residual(fwd: &ForwardSeries, rev: &RationalSeries) -> Vec<Rational> {
    let len = rev.order() + 4;
    let mut tau = vec![Rational::new(); len];
    for (m, a) in rev.coeffs.iter().enumerate() {
        tau[m + 1] = a.clone();
    }
    let mut w = compose(fwd, &tau, len);
    w[3] -= Rational::from((1, 6));
    w
}

pub fn compute_bm(rev: &RationalSeries) -> Result<BmTable> {
    let b: Vec<Rational> = rev
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let v = Rational::from(a * (m as u32 + 1));
            if m % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let zero_mask = (0..b.len()).map(|m| m % 3 == 2).collect();
    let table = BmTable { b, zero_mask };
    table.verify()?;
    Ok(table)
}

impl BmTable {
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    /// Checks every published entry the table covers.
    pub fn verify(&self) -> Result<()> {
        for &(m, p, q) in &PUBLISHED_BM {
            if m > self.order() {
                continue;
            }
            let expected = Rational::from((p, q));
            if self.b[m] != expected {
                return Err(Error::SeriesConsistency {
                    m,
                    expected: expected.to_string(),
                    found: self.b[m].to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> Vec<BmEntry> {
        self.b
            .iter()
            .enumerate()
            .map(|(m, v)| BmEntry {
                m,
                numerator: v.numer().to_string(),
                denominator: v.denom().to_string(),
                contributes: !self.zero_mask[m],
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries()).expect("plain data serializes")
    }
}

/// Table of order `m_max`, built and verified from scratch.
pub fn bm_table(m_max: usize) -> Result<BmTable> {
    let fwd = forward_series(m_max + 3)?;
    compute_bm(&revert_series(&fwd, m_max)?)
}

/// Shared table of order [`DEFAULT_ORDER`].
pub fn default_table() -> &'static BmTable {
    static TABLE: OnceLock<BmTable> = OnceLock::new();
    TABLE.get_or_init(|| bm_table(DEFAULT_ORDER).expect("default coefficient table verifies"))
}

/// sin(π(m+1)/3) as a multiple of √3/2: +1, +1, 0, −1, −1, 0 with period 6.
pub fn sin_sign(m: usize) -> i64 {
    [1, 1, 0, -1, -1, 0][m % 6]
}

/// Theorem-1 sum through index `m_max` for T̂_{n−1}(−ne).
pub fn theorem1_eval(n: usize, m_max: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let table = if m_max <= DEFAULT_ORDER {
        default_table()
    } else {
        return Err(Error::Order {
            requested: m_max,
            available: DEFAULT_ORDER,
        });
    };
    theorem1_eval_with(n, m_max, table, ctx)
}

pub fn theorem1_eval_with(
    n: usize,
    m_max: usize,
    table: &BmTable,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if m_max > table.order() {
        return Err(Error::Order {
            requested: m_max,
            available: table.order(),
        });
    }
    let work = ctx.widened(10);
    let nn = BigReal::from_i64(n as i64, &work);
    let x = &nn * BigReal::e(&work);
    let n6 = &nn / 6;
    let half_sqrt3 = BigReal::from_i64(3, &work).sqrt()? / 2;
    let mut sum = BigReal::zero(&work);
    for m in 0..=m_max {
        let s = sin_sign(m);
        if s == 0 {
            continue;
        }
        let p = BigReal::from_i64(m as i64 + 1, &work) / 3;
        let bm = BigReal::from_rational(&table.b[m], &work);
        let term = bm * gamma(&p, &work)? / n6.pow(&p)?;
        let signed = if (m % 2 == 1) ^ (s < 0) { -term } else { term };
        sum = sum + signed;
    }
    let pref = (&x - &nn).exp() / (BigReal::pi(&work) * 3);
    let v = pref * half_sqrt3 * sum;
    let v = if n.is_multiple_of(2) { -v } else { v };
    Ok(v.with_ctx(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::mk_context;

    // Lagrange inversion: aₘ = [τᵐ] (1 + h(τ))^{−(m+1)/3} / (m+1), where
    // 1 + h = 6 Σ c_{j+3} τʲ. The binomial series in h is truncated at τᵐ.
    fn lagrange(m: usize) -> Rational {
        let fwd = forward_series(m + 3).unwrap();
        let mut h = vec![Rational::new(); m + 1];
        for j in 1..=m {
            h[j] = Rational::from(&fwd.coeffs[j + 3] * 6u32);
        }
        let alpha = -Rational::from((m as u64 + 1, 3u64));
        let mut total = vec![Rational::new(); m + 1];
        total[0] = Rational::from(1);
        let mut hp = total.clone();
        let mut binom = Rational::from(1);
        for k in 1..=m {
            hp = mul_trunc(&hp, &h, m + 1);
            binom = binom * (alpha.clone() - Rational::from(k as u64 - 1)) / Rational::from(k as u64);
            for (t, p) in total.iter_mut().zip(&hp) {
                *t += Rational::from(&binom * p);
            }
        }
        Rational::from(&total[m] / (m as u32 + 1))
    }

    #[test]
    fn forward_coefficients() {
        let f = forward_series(7).unwrap();
        assert!(f.coeffs[1].is_zero() && f.coeffs[2].is_zero());
        let fact = [1u64, 1, 2, 6, 24, 120, 720, 5040];
        for (k, num) in [(3, 1), (4, 5), (5, 23), (6, 119), (7, 719)] {
            assert_eq!(f.coeffs[k], Rational::from((num, fact[k])));
        }
        assert!(forward_series(2).is_err());
    }

    #[test]
    fn reversion_matches_lagrange() {
        let fwd = forward_series(15).unwrap();
        let rev = revert_series(&fwd, 12).unwrap();
        assert_eq!(rev.coeffs[0], Rational::from(1));
        for m in 0..=12 {
            assert_eq!(rev.coeffs[m], lagrange(m), "m={m}");
        }
        assert_eq!(rev.coeffs[1], Rational::from((-5, 12)));
        assert_eq!(rev.coeffs[2], Rational::from((11, 80)));
        assert!(reversion_residual(&fwd, &rev).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn printed_inversion_terms() {
        // τ = v − 5v²/12 + 11v³/80 with v³ = 6w reads
        // (6w)^{1/3} − 5·6^{2/3}w^{2/3}/12 + 33w/40
        let rev = revert_series(&forward_series(6).unwrap(), 3).unwrap();
        assert_eq!(Rational::from(&rev.coeffs[2] * 6u32), Rational::from((33, 40)));
        // 5·6^{2/3}/12 = 5/(2·6^{1/3}) since 6^{2/3}·6^{1/3} = 6
        assert_eq!(
            Rational::from(&rev.coeffs[1] * 6u32),
            Rational::from((-5, 2))
        );
    }

    #[test]
    fn insufficient_forward_order() {
        let fwd = forward_series(5).unwrap();
        assert!(matches!(revert_series(&fwd, 3), Err(Error::Order { .. })));
    }

    #[test]
    fn published_coefficients() {
        let t = default_table();
        for &(m, p, q) in &PUBLISHED_BM {
            assert_eq!(t.b[m], Rational::from((p, q)));
        }
        assert_eq!(t.b[2], Rational::from((33, 80)));
        assert_eq!(t.b[5], Rational::from((15451, 268800)));
        assert_eq!(t.zero_mask.iter().filter(|z| **z).count(), 4);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut t = bm_table(6).unwrap();
        t.b[3] += Rational::from((1, 1000));
        assert!(matches!(t.verify(), Err(Error::SeriesConsistency { m: 3, .. })));
    }

    #[test]
    fn zero_terms_do_not_matter() {
        let c = mk_context(40).unwrap();
        let a = theorem1_eval(80, 1, &c).unwrap();
        let b = theorem1_eval(80, 2, &c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn order_limit() {
        let c = mk_context(30).unwrap();
        assert!(matches!(theorem1_eval(50, 13, &c), Err(Error::Order { .. })));
        assert!(theorem1_eval(1, 0, &c).is_err());
    }

    #[test]
    fn json_export() {
        let t = bm_table(3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[1]["numerator"], "5");
        assert_eq!(v[1]["denominator"], "6");
        assert_eq!(v[2]["contributes"], false);
        assert_eq!(v[3]["m"], 3);
    }
}
