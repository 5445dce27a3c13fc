//! Exact reference values of Touchard polynomials.
//!
//! Tₙ(z) = Σₖ S(n,k) zᵏ is summed from an exact table of Stirling numbers of
//! the second kind. At negative z the terms alternate and grow far beyond the
//! result, so the sum is repeated at doubled precision until two evaluations
//! agree (see [`stabilize`]). [`touchard_recurrence`] is a second, independent
//! route through the binomial recurrence T_{n+1}(z) = z Σₖ C(n,k) Tₖ(z).

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numkernel::{stabilize, BigReal, PrecisionContext};

/// Largest triangle order accepted by [`build_triangle`].
pub const MAX_TRIANGLE_ORDER: usize = 10_000;

/// S(n,k) for 0 ≤ k ≤ n ≤ n_max, stored row by row.
#[derive(Clone, Debug)]
pub struct StirlingTriangle {
    rows: Vec<Vec<Integer>>,
}

impl StirlingTriangle {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// S(n,k); zero when k > n.
    ///
    /// # Panics
    /// If `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> Integer {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[Integer] {
        &self.rows[n]
    }

    /// Σₖ S(n,k), the n-th Bell number.
    pub fn row_sum(&self, n: usize) -> Integer {
        self.rows[n].iter().sum()
    }
}

/// Builds S(n,k) with S(n,k) = k·S(n−1,k) + S(n−1,k−1).
pub fn build_triangle(n_max: usize) -> Result<StirlingTriangle> {
    if n_max > MAX_TRIANGLE_ORDER {
        return Err(Error::Capacity {
            requested: n_max,
            limit: MAX_TRIANGLE_ORDER,
        });
    }
    let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![Integer::from(1)]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = vec![Integer::new(); n + 1];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let mut v = prev.get(k).map(|s| Integer::from(s * k as u32)).unwrap_or_default();
            v += &prev[k - 1];
            *slot = v;
        }
        rows.push(row);
    }
    Ok(StirlingTriangle { rows })
}

/// An evaluation point that can be materialised at any precision.
///
/// Escalating precision is only meaningful if the argument itself is known to
/// every precision asked for, so arguments are kept symbolic.
#[derive(Clone, Debug, PartialEq)]
pub enum Argument {
    /// An exact rational value.
    Exact(Rational),
    /// q·e for an exact rational q.
    EMultiple(Rational),
}

impl Argument {
    /// x = n·e·ξ.
    pub fn scaled_e(n: usize, xi: &Rational) -> Self {
        Argument::EMultiple(Rational::from(n) * xi)
    }

    pub fn materialize(&self, ctx: &PrecisionContext) -> BigReal {
        match self {
            Argument::Exact(q) => BigReal::from_rational(q, ctx),
            Argument::EMultiple(q) => BigReal::e(ctx) * BigReal::from_rational(q, ctx),
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            Argument::Exact(q) => Argument::Exact(-q.clone()),
            Argument::EMultiple(q) => Argument::EMultiple(-q.clone()),
        }
    }
}

impl From<&BigReal> for Argument {
    /// The binary value of `x` is taken as exact.
    fn from(x: &BigReal) -> Self {
        Argument::Exact(x.to_rational())
    }
}

impl From<i64> for Argument {
    fn from(v: i64) -> Self {
        Argument::Exact(Rational::from(v))
    }
}

/// A stabilised exact evaluation.
#[derive(Clone, Debug)]
pub struct ExactValue {
    /// Result rounded into the caller's context.
    pub value: BigReal,
    /// log₁₀ of the largest term minus log₁₀ of the result, rounded up.
    /// When the result is exactly zero every working digit is counted as lost.
    pub cancellation_digits: i64,
    /// Two successive evaluations agreed to `digits − 10` significant digits.
    pub verified: bool,
    /// Digits of the accepted evaluation.
    pub final_digits: u32,
}

struct Summed {
    value: BigReal,
    max_term_log10: f64,
}

impl std::fmt::Display for Summed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.value.fmt(f)
    }
}

fn agreement(a: &BigReal, b: &BigReal) -> f64 {
    if a.is_zero() && b.is_zero() {
        f64::INFINITY
    } else {
        a.agreement_digits(b)
    }
}

fn check_order(n: usize, tri: &StirlingTriangle) -> Result<()> {
    if n > tri.n_max() {
        return Err(Error::Capacity {
            requested: n,
            limit: tri.n_max(),
        });
    }
    Ok(())
}

fn stirling_sum(n: usize, z: &BigReal, tri: &StirlingTriangle) -> Summed {
    let ctx = *z.ctx();
    let mut acc = BigReal::zero(&ctx);
    let mut power = BigReal::one(&ctx);
    let mut max_term = f64::NEG_INFINITY;
    for s in tri.row(n) {
        if *s != 0 {
            let term = BigReal::from_integer(s, &ctx) * &power;
            max_term = max_term.max(term.log10_abs());
            acc = acc + term;
        }
        power = power * z;
    }
    Summed {
        value: acc,
        max_term_log10: max_term,
    }
}

/// Tₙ(z) = Σₖ S(n,k) zᵏ with precision escalation.
pub fn touchard_exact(
    n: usize,
    z: &Argument,
    tri: &StirlingTriangle,
    ctx: &PrecisionContext,
) -> Result<ExactValue> {
    check_order(n, tri)?;
    let mut ev = touchard_exact_unrounded(n, z, tri, ctx)?;
    ev.value = ev.value.with_ctx(ctx);
    Ok(ev)
}

fn recurrence_at(n: usize, z: &BigReal) -> BigReal {
    let ctx = *z.ctx();
    let mut t: Vec<BigReal> = Vec::with_capacity(n + 1);
    t.push(BigReal::one(&ctx));
    let mut binom: Vec<Integer> = vec![Integer::from(1)];
    for m in 0..n {
        // binom holds C(m, k), k = 0..=m
        let mut acc = BigReal::zero(&ctx);
        for (k, c) in binom.iter().enumerate() {
            acc = acc + BigReal::from_integer(c, &ctx) * &t[k];
        }
        t.push(acc * z);
        let mut next = Vec::with_capacity(m + 2);
        next.push(Integer::from(1));
        for k in 1..=m {
            next.push(Integer::from(&binom[k - 1] + &binom[k]));
        }
        next.push(Integer::from(1));
        binom = next;
    }
    t.swap_remove(n)
}

/// Tₙ(z) through T_{m+1}(z) = z Σₖ C(m,k) Tₖ(z), with precision escalation.
pub fn touchard_recurrence(n: usize, z: &Argument, ctx: &PrecisionContext) -> Result<BigReal> {
    if n > MAX_TRIANGLE_ORDER {
        return Err(Error::Capacity {
            requested: n,
            limit: MAX_TRIANGLE_ORDER,
        });
    }
    let s = stabilize(
        ctx,
        |level| Ok(recurrence_at(n, &z.materialize(level))),
        agreement,
    )?;
    Ok(s.value.with_ctx(ctx))
}

/// n! as an exact integer.
pub fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// T̂ₙ(z) = Tₙ(z)/n!, dividing by the exact factorial last.
pub fn scaled_touchard(
    n: usize,
    z: &Argument,
    tri: &StirlingTriangle,
    ctx: &PrecisionContext,
) -> Result<ExactValue> {
    check_order(n, tri)?;
    let mut ev = touchard_exact_unrounded(n, z, tri, ctx)?;
    let wide = *ev.value.ctx();
    ev.value = (ev.value / BigReal::from_integer(&factorial(n), &wide)).with_ctx(ctx);
    Ok(ev)
}

// Same as touchard_exact but keeps the value at the accepted precision.
fn touchard_exact_unrounded(
    n: usize,
    z: &Argument,
    tri: &StirlingTriangle,
    ctx: &PrecisionContext,
) -> Result<ExactValue> {
    let s = stabilize(
        ctx,
        |level| Ok(stirling_sum(n, &z.materialize(level), tri)),
        |a, b| agreement(&a.value, &b.value),
    )?;
    let Summed {
        value,
        max_term_log10,
    } = s.value;
    let cancellation = if value.is_zero() {
        max_term_log10.max(0.0).ceil() as i64 + i64::from(s.digits_used)
    } else {
        (max_term_log10 - value.log10_abs()).ceil() as i64
    };
    Ok(ExactValue {
        value,
        cancellation_digits: cancellation,
        verified: true,
        final_digits: s.digits_used,
    })
}

/// T̂_{n−1}(−x) for x = n·e·ξ, the quantity every asymptotic formula targets.
pub fn scaled_at_xi(
    n: usize,
    xi: &Rational,
    tri: &StirlingTriangle,
    ctx: &PrecisionContext,
) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    scaled_touchard(n - 1, &Argument::scaled_e(n, xi).negated(), tri, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::mk_context;

    /// Counts set partitions of {0..n} into exactly k blocks by brute force
    /// over restricted growth strings.
    fn partitions_brute(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, k: usize, used: usize) -> u64 {
            if i == n {
                return u64::from(used == k);
            }
            let mut total = 0;
            for b in 0..=used.min(k - 1) {
                total += go(i + 1, n, k, used.max(b + 1));
            }
            total
        }
        if k == 0 {
            return u64::from(n == 0);
        }
        go(0, n, k, 0)
    }

    #[test]
    fn triangle_matches_brute_force() {
        let tri = build_triangle(8).unwrap();
        assert_eq!(tri.get(4, 2), 7);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(tri.get(n, k), partitions_brute(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn triangle_boundary_entries() {
        let tri = build_triangle(40).unwrap();
        assert_eq!(tri.get(0, 0), 1);
        for n in 1..=40 {
            assert_eq!(tri.get(n, 0), 0);
            assert_eq!(tri.get(n, n), 1);
            assert_eq!(tri.get(n, 1), 1);
            for k in 1..=n {
                let rec = (tri.get(n - 1, k) * k as u32) + tri.get(n - 1, k - 1);
                assert_eq!(tri.get(n, k), rec);
            }
        }
    }

    #[test]
    fn capacity_limit() {
        assert!(matches!(
            build_triangle(MAX_TRIANGLE_ORDER + 1),
            Err(Error::Capacity { .. })
        ));
        let tri = build_triangle(3).unwrap();
        let ctx = mk_context(30).unwrap();
        assert!(touchard_exact(4, &Argument::from(1), &tri, &ctx).is_err());
    }

    #[test]
    fn small_values() {
        let tri = build_triangle(10).unwrap();
        let ctx = mk_context(40).unwrap();
        let m1 = Argument::from(-1);
        let t = |n| touchard_exact(n, &m1, &tri, &ctx).unwrap();
        assert!(t(2).value.is_zero());
        assert_eq!(t(3).value, BigReal::one(&ctx));
        assert_eq!(t(0).value, BigReal::one(&ctx));
        assert!(t(2).verified);
        let five = Argument::from(-5);
        assert_eq!(
            touchard_exact(0, &five, &tri, &ctx).unwrap().value,
            BigReal::one(&ctx)
        );
    }

    #[test]
    fn recurrence_small_values() {
        let ctx = mk_context(40).unwrap();
        let m1 = Argument::from(-1);
        assert_eq!(touchard_recurrence(1, &m1, &ctx).unwrap(), BigReal::from_i64(-1, &ctx));
        assert!(touchard_recurrence(2, &m1, &ctx).unwrap().is_zero());
        // Bell number B₅
        let one = Argument::from(1);
        assert_eq!(touchard_recurrence(5, &one, &ctx).unwrap(), BigReal::from_i64(52, &ctx));
    }

    #[test]
    fn scaled_small_values() {
        let tri = build_triangle(5).unwrap();
        let ctx = mk_context(40).unwrap();
        let m1 = Argument::from(-1);
        assert_eq!(scaled_touchard(0, &m1, &tri, &ctx).unwrap().value, BigReal::one(&ctx));
        assert!(scaled_touchard(2, &m1, &tri, &ctx).unwrap().value.is_zero());
        // T₃(−1)/3! = 1/6
        let v = scaled_touchard(3, &m1, &tri, &ctx).unwrap().value;
        assert!(v.agreement_digits(&(BigReal::one(&ctx) / 6)) > 38.0);
    }

    #[test]
    fn scaled_sign_at_coalescence_for_n_50() {
        let tri = build_triangle(49).unwrap();
        let ctx = mk_context(60).unwrap();
        let v = scaled_at_xi(50, &Rational::from(1), &tri, &ctx).unwrap();
        assert!(!v.value.is_zero());
        // (−1)^{n−1} with n = 50
        assert_eq!(v.value.signum(), -1);
        assert!(v.cancellation_digits > 0);
    }
}
