//! `hankelquad`: build complex Gauss–Radau rules for Hankel transforms,
//! evaluate and sweep them against reference values, map polynomial zeros,
//! and run the Hilbert-transform and layered-earth applications.
//!
//! Exit status: 0 on success, 1 for invalid input, 2 for numerical failure.

mod commands;
mod expr;
mod functions;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::{Failure, Outcome};
use functions::Custom;

/// Default working precision for extended evaluations.
const DEFAULT_DIGITS: u32 = 40;
const DIGITS_ENV: &str = "HANKELQUAD_DIGITS";

#[derive(Parser, Debug)]
#[command(name = "hankelquad", version, about = "Complex Gauss-Radau quadrature for Hankel transforms of integer order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the rule as JSON.
    Rule {
        #[command(flatten)]
        order: Order,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Rule value of ∫ f(x) J_ν(ωx) dx at each ω.
    Eval {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        func: Func,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Out,
    },
    /// Rule against the reference over an ω grid, with errors.
    Sweep {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        func: Func,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        prec: Precision,
        #[command(flatten)]
        out: Out,
    },
    /// Zeros of the monic orthogonal polynomial for x^μ J_ν(x).
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Principal value ⨍ f(x) J_ν(ωx)/(x − τ) dx by singularity subtraction.
    Hilbert {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        func: Func,
        #[arg(long)]
        tau: f64,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        prec: Precision,
        #[command(flatten)]
        out: Out,
    },
    /// Magnetic fields H_z, H_ρ over a layered half-space, with errors.
    Em {
        /// Model JSON file, or inline JSON starting with `{`.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        mu: u32,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct Order {
    #[arg(long)]
    nu: u32,
    #[arg(long)]
    mu: u32,
    /// Half the number of interior nodes.
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct Func {
    /// exp_neg, rational_sq, gauss, shifted_rational or custom-taylor.
    #[arg(long = "f", default_value = "exp_neg")]
    name: String,
    /// Expression in x for custom-taylor, e.g. "exp(-x)/(1+x^2)".
    #[arg(long)]
    expr: Option<String>,
    /// Taylor coefficients f^(k)(0)/k! for custom-taylor, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    taylor: Option<Vec<f64>>,
    /// Distance from 0 to the nearest singularity of the expression.
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args, Debug)]
struct Grid {
    /// `a..b` (log-spaced), a comma list, or a single value.
    #[arg(long)]
    omega: String,
    /// Number of points for a range.
    #[arg(long, default_value_t = 12)]
    points: usize,
}

#[derive(Args, Debug)]
struct Precision {
    /// Working digits; defaults to $HANKELQUAD_DIGITS or 40. At most 16 selects double precision.
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Args, Debug)]
struct Out {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Func {
    fn spec(&self) -> Outcome<hankelquad::hankelrule::IntegrandSpec> {
        let custom = Custom { expr: self.expr.clone(), taylor: self.taylor.clone(), radius: self.radius };
        functions::lookup(&self.name, &custom).map_err(Failure::Usage)
    }
}

impl Grid {
    fn values(&self) -> Outcome<Vec<f64>> {
        commands::parse_grid(&self.omega, self.points)
    }
}

impl Precision {
    fn digits(&self) -> Outcome<u32> {
        if let Some(d) = self.digits {
            return Ok(d);
        }
        match std::env::var(DIGITS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{DIGITS_ENV}={v:?} is not a digit count"))),
            Err(_) => Ok(DEFAULT_DIGITS),
        }
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Outcome<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Numerical(e.to_string()))
        }
    }
}

fn render<T: Serialize>(rows: &[T], format: Format) -> Outcome<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| Failure::Numerical(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Failure::Numerical(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Numerical(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Numerical(e.to_string()))
        }
    }
}

fn report_slope(label: &str, pts: impl Iterator<Item = (f64, f64)>) {
    if let Some(s) = commands::loglog_slope(pts) {
        eprintln!("{label} log-log slope: {s:.3}");
    }
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Rule { order, output } => {
            let rule = commands::rule(order.n, order.mu, order.nu)?;
            emit(&(rule.to_json() + "\n"), &output)
        }
        Command::Eval { order, func, grid, out } => {
            let rows = commands::eval(&func.spec()?, order.n, order.mu, order.nu, &grid.values()?)?;
            emit(&render(&rows, out.format)?, &out.output)
        }
        Command::Sweep { order, func, grid, prec, out } => {
            let rows = commands::sweep(&func.spec()?, order.n, order.mu, order.nu, &grid.values()?, prec.digits()?)?;
            report_slope("abs_err", rows.iter().map(|r| (r.omega, r.abs_err)));
            emit(&render(&rows, out.format)?, &out.output)
        }
        Command::Zeros { nu, mu, n, out } => {
            let (report, csv) = commands::zeros(mu, nu, n)?;
            eprintln!("cluster estimate {:.4}, classified {}", report.cluster_estimate, report.classified);
            let text = match out.format {
                Format::Csv => csv,
                Format::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| Failure::Numerical(e.to_string()))? + "\n"
                }
            };
            emit(&text, &out.output)
        }
        Command::Hilbert { order, func, tau, grid, prec, out } => {
            let rows =
                commands::hilbert(func.spec()?, tau, order.n, order.mu, order.nu, &grid.values()?, prec.digits()?)?;
            report_slope("abs_err", rows.iter().map(|r| (r.omega, r.abs_err)));
            emit(&render(&rows, out.format)?, &out.output)
        }
        Command::Em { model, n, mu, grid, out } => {
            let model = commands::load_model(&model)?;
            let rows = commands::em(&model, n, mu, &grid.values()?)?;
            report_slope("H_z rel_err", rows.iter().map(|r| (r.omega, r.hz_rel_err)));
            report_slope("H_rho rel_err", rows.iter().map(|r| (r.omega, r.hrho_rel_err)));
            emit(&render(&rows, out.format)?, &out.output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(2)
        }
    }
}
