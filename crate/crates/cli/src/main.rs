use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use touchard::coalescence::bm_table;
use touchard::contours::{self, ContourOptions};
use touchard::numkernel::{parse_decimal_rational, BigReal, PrecisionContext, DEFAULT_DIGITS, DIGITS_ENV};
use touchard::report::{eval_report, EvalPoint};
use touchard::tables::{self, Param};
use touchard::{Error, Result};

/// Largest Bₘ index the `bm` command will build.
const BM_CAPACITY: usize = 60;

#[derive(Parser)]
#[command(name = "touchard", version, about = "Touchard polynomials at negative arguments: exact values and asymptotics")]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = DIGITS_ENV, default_value_t = DEFAULT_DIGITS)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Relative errors of the double-saddle expansion at ξ = 1.
    Table1 {
        #[arg(long, value_delimiter = ',', default_values_t = tables::DEFAULT_TABLE1_N)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = tables::DEFAULT_TABLE1_M)]
        m: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Relative errors of the uniform Airy approximation over ξ.
    Table2 {
        #[arg(long, value_delimiter = ',', default_values_t = tables::DEFAULT_TABLE2_XI.map(String::from))]
        xi: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = tables::DEFAULT_TABLE2_N)]
        n: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Every method at one point, as JSON.
    Eval {
        #[arg(long)]
        n: usize,
        /// Coalescence parameter; x = n·e·ξ.
        #[arg(long, required_unless_present = "x", conflicts_with = "x")]
        xi: Option<String>,
        /// The argument x itself.
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Steepest descent and ascent paths through the saddles.
    Contours {
        #[arg(long)]
        xi: String,
        /// Largest arc-length step.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Longest path to trace.
        #[arg(long, default_value_t = 40.0)]
        max_len: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// The Bₘ coefficients as exact fractions.
    Bm {
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn run(cli: Cli) -> Result<()> {
    let ctx = PrecisionContext::new(cli.digits)?;
    match cli.command {
        Command::Table1 { n, m, out } => {
            let rows = tables::table1(&n, &m, &ctx)?;
            tables::write_csv(&rows, out.writer()?)
        }
        Command::Table2 { xi, n, out } => {
            let xis = xi.iter().map(|s| Param::xi(s)).collect::<Result<Vec<_>>>()?;
            let rows = tables::table2(&xis, &n, &ctx)?;
            tables::write_csv(&rows, out.writer()?)
        }
        Command::Eval { n, xi, x, out } => {
            let point = match (xi, x) {
                (Some(xi), _) => EvalPoint::Xi(parse_decimal_rational(&xi)?),
                (None, Some(x)) => EvalPoint::X(parse_decimal_rational(&x)?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let report = eval_report(n, &point, &ctx)?;
            writeln!(out.writer()?, "{}", report.to_json())?;
            Ok(())
        }
        Command::Contours { xi, step, max_len, format, out } => {
            let xi = BigReal::from_rational(&parse_decimal_rational(&xi)?, &ctx);
            let opts = ContourOptions { step, max_len, ..Default::default() };
            let paths = contours::trace_contours(&xi, &opts, &ctx)?;
            match format {
                Format::Json => contours::write_json(&paths, out.writer()?),
                Format::Csv => contours::write_csv(&paths, out.writer()?),
            }
        }
        Command::Bm { max, out } => {
            if max > BM_CAPACITY {
                return Err(Error::Order { requested: max, available: BM_CAPACITY });
            }
            let table = bm_table(max)?;
            let mut w = out.writer()?;
            writeln!(w, "{}", table.to_json())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("touchard: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
