//! Relative-error sweeps against the exact sums, and their CSV form.
//!
//! Cells are evaluated in parallel; rows come back in input order so that
//! repeated runs produce byte-identical files.

use std::fmt;
use std::io::{Read, Write};

use rayon::prelude::*;
use rug::Rational;

use crate::coalescence::theorem1_eval;
use crate::error::{Error, Result};
use crate::numkernel::{parse_decimal_rational, BigReal, PrecisionContext};
use crate::stirling::{build_triangle, scaled_at_xi, ExactValue, StirlingTriangle};
use crate::uniform::{ingredients, theorem2_with, verify_branch_continuity};

pub const DEFAULT_TABLE1_N: [usize; 3] = [50, 80, 121];
pub const DEFAULT_TABLE1_M: [usize; 5] = [0, 1, 3, 4, 6];
pub const DEFAULT_TABLE2_XI: [&str; 10] =
    ["0.80", "0.90", "0.95", "0.99", "1.00", "1.01", "1.05", "1.10", "1.20", "1.40"];
pub const DEFAULT_TABLE2_N: [usize; 2] = [81, 100];

pub const CSV_HEADER: [&str; 5] = ["n", "param", "exact", "approx", "rel_err"];

/// The swept parameter of a row.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    /// Truncation index of the double-saddle expansion.
    Order(usize),
    /// ξ, kept with its decimal spelling.
    Xi { value: Rational, text: String },
}

impl Param {
    pub fn xi(text: &str) -> Result<Self> {
        let value = parse_decimal_rational(text)?;
        if value <= 0 {
            return Err(Error::Domain(format!("ξ must be positive, got {text}")));
        }
        let text = text.trim();
        let text = if text.contains('.') {
            text.to_string()
        } else {
            format!("{text}.0")
        };
        Ok(Param::Xi { value, text })
    }

    pub fn value(&self, ctx: &PrecisionContext) -> BigReal {
        match self {
            Param::Order(m) => BigReal::from_i64(*m as i64, ctx),
            Param::Xi { value, .. } => BigReal::from_rational(value, ctx),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        if s.contains('.') {
            Param::xi(s)
        } else {
            s.parse()
                .map(Param::Order)
                .map_err(|_| Error::Parse(format!("bad param {s:?}")))
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Order(m) => write!(f, "{m}"),
            Param::Xi { text, .. } => f.write_str(text),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ErrorRow {
    pub n: usize,
    pub param: Param,
    pub exact: BigReal,
    pub approx: BigReal,
    pub rel_err: BigReal,
}

impl ErrorRow {
    pub fn new(n: usize, param: Param, exact: BigReal, approx: BigReal) -> Result<Self> {
        let rel_err = approx.rel_err(&exact)?;
        Ok(Self {
            n,
            param,
            exact,
            approx,
            rel_err,
        })
    }
}

/// Four significant digits in scientific notation, e.g. `2.514e-01`.
pub fn format_rel_err(v: &BigReal) -> String {
    v.to_sci_string(4)
}

fn exact_values(
    points: &[(usize, Rational)],
    tri: &StirlingTriangle,
    ctx: &PrecisionContext,
) -> Result<Vec<ExactValue>> {
    points
        .par_iter()
        .map(|(n, xi)| scaled_at_xi(*n, xi, tri, ctx))
        .collect()
}

/// Double-saddle expansion truncated at each m, against T̂_{n−1}(−ne).
pub fn table1(ns: &[usize], ms: &[usize], ctx: &PrecisionContext) -> Result<Vec<ErrorRow>> {
    let tri = build_triangle(ns.iter().copied().max().unwrap_or(1))?;
    let points: Vec<_> = ns.iter().map(|&n| (n, Rational::from(1))).collect();
    let exact = exact_values(&points, &tri, ctx)?;
    let cells: Vec<(usize, usize)> = (0..ns.len())
        .flat_map(|i| ms.iter().map(move |&m| (i, m)))
        .collect();
    cells
        .par_iter()
        .map(|&(i, m)| {
            let approx = theorem1_eval(ns[i], m, ctx)?;
            ErrorRow::new(ns[i], Param::Order(m), exact[i].value.clone(), approx)
        })
        .collect()
}

/// Two-term Airy approximation against T̂_{n−1}(−neξ).
pub fn table2(xis: &[Param], ns: &[usize], ctx: &PrecisionContext) -> Result<Vec<ErrorRow>> {
    verify_branch_continuity(ctx)?;
    let tri = build_triangle(ns.iter().copied().max().unwrap_or(1))?;
    let xi_values: Vec<Rational> = xis
        .iter()
        .map(|p| match p {
            Param::Xi { value, .. } => Ok(value.clone()),
            Param::Order(_) => Err(Error::Domain("table2 sweeps ξ, not an order".into())),
        })
        .collect::<Result<_>>()?;
    let ings = xi_values
        .par_iter()
        .map(|xi| ingredients(&BigReal::from_rational(xi, ctx), ctx))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(usize, Rational)> = xi_values
        .iter()
        .flat_map(|xi| ns.iter().map(move |&n| (n, xi.clone())))
        .collect();
    let exact = exact_values(&points, &tri, ctx)?;
    (0..points.len())
        .into_par_iter()
        .map(|k| {
            let (i, n) = (k / ns.len(), ns[k % ns.len()]);
            let approx = theorem2_with(n, &ings[i], ctx)?;
            ErrorRow::new(n, xis[i].clone(), exact[k].value.clone(), approx)
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[ErrorRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in rows {
        wr.write_record([
            r.n.to_string(),
            r.param.to_string(),
            r.exact.to_string(),
            r.approx.to_string(),
            format_rel_err(&r.rel_err),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads rows back, recomputing each relative error from `exact` and
/// `approx` and rejecting files whose printed value disagrees.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<ErrorRow>> {
    let mut rd = csv::Reader::from_reader(r);
    if rd.headers()?.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("expected columns {}", CSV_HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let n = rec[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n {:?}", &rec[0])))?;
        let row = ErrorRow::new(
            n,
            Param::parse(&rec[1])?,
            BigReal::parse_serialized(&rec[2])?,
            BigReal::parse_serialized(&rec[3])?,
        )?;
        if format_rel_err(&row.rel_err) != rec[4].trim() {
            return Err(Error::Parse(format!(
                "row n={} param={}: stored rel_err {} but recomputed {}",
                row.n,
                row.param,
                &rec[4],
                format_rel_err(&row.rel_err)
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::mk_context;

    #[test]
    fn param_spelling() {
        assert_eq!(Param::xi("0.80").unwrap().to_string(), "0.80");
        assert_eq!(Param::xi("1").unwrap().to_string(), "1.0");
        assert!(Param::xi("-0.5").is_err());
        assert_eq!(Param::parse("4").unwrap(), Param::Order(4));
    }

    #[test]
    fn csv_round_trip() {
        let c = mk_context(40).unwrap();
        let rows = table1(&[50], &[0, 1], &c).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,param,exact,approx,rel_err\n50,0,"));
        assert!(text.lines().nth(1).unwrap().ends_with("2.515e-01"), "{text}");
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].param, Param::Order(1));

        let tampered = text.replace("2.515e-01", "2.600e-01");
        assert!(matches!(read_csv(tampered.as_bytes()), Err(Error::Parse(_))));
    }

    #[test]
    fn rows_keep_input_order() {
        let c = mk_context(40).unwrap();
        let xis = [Param::xi("1.20").unwrap(), Param::xi("0.90").unwrap()];
        let rows = table2(&xis, &[100, 81], &c).unwrap();
        let order: Vec<_> = rows.iter().map(|r| (r.param.to_string(), r.n)).collect();
        assert_eq!(
            order,
            [("1.20".into(), 100), ("1.20".into(), 81), ("0.90".into(), 100), ("0.90".into(), 81)]
        );
    }
}
