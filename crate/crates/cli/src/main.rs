use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rct_core::hypergeometric::hyp2f1_with;
use rct_core::lab::{default_grid, find_turning_point_with, scan_params, uniform_grid};
use rct_core::regions::classify_with_eps;
use rct_core::transforms::{
    verify_differentiated_rct, verify_landen, verify_rct1, verify_rct2, Landen,
};
use rct_core::{ClaimId, Error, HypParams, Params, Quotient, ScanConfig, SeriesOptions};

const MAX_SCAN_POINTS: usize = 1_000_000;
const MAX_TERMS_ENV: &str = "RCT_HYPER_MAX_TERMS";

#[derive(Parser, Debug)]
#[command(
    name = "rct-hyper",
    version,
    about = "Zero-balanced hypergeometric functions and cubic-transformation inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; defaults to plain, or csv for `scan`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Margin tolerance for inequality checks.
    #[arg(long, global = true, default_value_t = rct_core::lab::DEFAULT_MARGIN_TOL)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate F(a, b; c; x) for x in [0, 1).
    Eval {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        x: f64,
    },
    /// Check a transformation identity on the grid {k/(n+1) : k = 1..n}.
    Verify {
        #[arg(long, value_enum)]
        name: Identity,
        #[arg(long, default_value_t = 99)]
        n: usize,
    },
    /// Print the regions containing (a, b).
    Classify {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Widen every closed region condition by this amount.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Check a claim over a grid of (a, b), one row per point.
    Scan {
        #[arg(long)]
        claim: ClaimId,
        /// Inclusive range `lo:hi`.
        #[arg(long = "a")]
        a_range: Range,
        /// Inclusive range `lo:hi`.
        #[arg(long = "b")]
        b_range: Range,
        #[arg(long, default_value_t = 20)]
        na: usize,
        #[arg(long, default_value_t = 20)]
        nb: usize,
        /// Grid is {k/nr : k = 1..nr-1}, plus 1 - 10^-k for k = 3..6 on r-grids.
        #[arg(long, default_value_t = 200)]
        nr: usize,
    },
    /// Locate the interior extremum of F/F* or G/G*.
    TurningPoint {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value = "f")]
        which: Quotient,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Identity {
    Rct1,
    Rct2,
    Landen1,
    Landen2,
    Drct,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Range {
    lo: f64,
    hi: f64,
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("range `{s}` is not of the form lo:hi"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad range bound `{v}`: {e}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(format!("range `{s}` must satisfy 0 < lo ≤ hi < ∞"));
        }
        Ok(Range { lo, hi })
    }
}

impl Range {
    /// `n` evenly spaced values including both ends; a single value when
    /// `lo == hi`.
    fn values(&self, n: usize) -> Vec<f64> {
        if n == 1 || self.lo == self.hi {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug)]
enum Failure {
    /// Bad flags or out-of-domain input.
    Usage(String),
    /// A contract was violated or nothing was found.
    Contract(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Contract(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Contract(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("json error: {e}"))
    }
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct EvalRow {
    value: String,
    abs_err_estimate: String,
    method: &'static str,
}

#[derive(Serialize)]
struct VerifyRow {
    name: String,
    max_residual: String,
    worst_r: String,
    n_samples: usize,
    contract: String,
    within: bool,
}

#[derive(Serialize)]
struct ClassifyRow {
    a: String,
    b: String,
    regions: String,
    equality_point: bool,
}

#[derive(Serialize)]
struct ScanRow {
    a: String,
    b: String,
    regions: String,
    claim: &'static str,
    holds: bool,
    worst_r: String,
    worst_margin: String,
    n_samples: usize,
}

#[derive(Serialize)]
struct TurningRow {
    r0: String,
    lo: String,
    hi: String,
    kind: &'static str,
    derivative_residual: String,
}

/// Writes `rows` in the chosen format. Plain output is `key=value` pairs,
/// one row per line.
fn emit<T: Serialize>(out: &mut dyn Write, format: Format, rows: &[T]) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Plain => {
            for row in rows {
                let value = serde_json::to_value(row)?;
                let fields: Vec<String> = value
                    .as_object()
                    .map(|m| {
                        m.iter()
                            .map(|(k, v)| match v {
                                serde_json::Value::String(s) => format!("{k}={s}"),
                                other => format!("{k}={other}"),
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                writeln!(out, "{}", fields.join(" "))?;
            }
        }
    }
    Ok(())
}

fn series_options(max_terms: Option<&str>) -> Result<SeriesOptions, Failure> {
    match max_terms {
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(SeriesOptions::with_max_terms(n)),
            _ => Err(Failure::Usage(format!(
                "{MAX_TERMS_ENV}=`{v}` is not a positive integer"
            ))),
        },
        None => Ok(SeriesOptions::default()),
    }
}

fn run(cli: Cli, max_terms: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(Failure::Usage(format!(
            "--tol {} must be finite and ≥ 0",
            cli.tol
        )));
    }
    let opts = series_options(max_terms)?;
    let cfg = ScanConfig {
        tol: cli.tol,
        series: opts,
    };
    match cli.command {
        Command::Eval { a, b, c, x } => {
            let p = HypParams::new(a, b, c)?;
            let r = hyp2f1_with(&p, x, &opts)?;
            let row = EvalRow {
                value: real(r.value),
                abs_err_estimate: real(r.abs_err_estimate),
                method: r.method.as_str(),
            };
            emit(out, cli.format.unwrap_or(Format::Plain), &[row])
        }
        Command::Verify { name, n } => {
            if n < 2 {
                return Err(Failure::Usage(format!("--n {n} must be at least 2")));
            }
            let grid = uniform_grid(n);
            let (label, residual, contract) = match name {
                Identity::Rct1 => ("rct1", verify_rct1(&grid)?, 1e-10),
                Identity::Rct2 => ("rct2", verify_rct2(&grid)?, 1e-10),
                Identity::Landen1 => ("landen1", verify_landen(&grid, Landen::Ascending)?, 1e-10),
                Identity::Landen2 => ("landen2", verify_landen(&grid, Landen::Descending)?, 1e-10),
                Identity::Drct => ("drct", verify_differentiated_rct(&grid)?, 1e-9),
            };
            let within = residual.max <= contract;
            let row = VerifyRow {
                name: label.to_string(),
                max_residual: real(residual.max),
                worst_r: real(residual.worst_r),
                n_samples: residual.n_samples,
                contract: real(contract),
                within,
            };
            emit(out, cli.format.unwrap_or(Format::Plain), &[row])?;
            if within {
                Ok(())
            } else {
                Err(Failure::Contract(format!(
                    "{label}: residual {:e} exceeds {contract:e}",
                    residual.max
                )))
            }
        }
        Command::Classify { a, b, eps } => {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Failure::Usage(format!(
                    "--eps {eps} must be finite and ≥ 0"
                )));
            }
            let p = Params::new(a, b)?;
            let label = classify_with_eps(&p, eps);
            let row = ClassifyRow {
                a: real(a),
                b: real(b),
                regions: label.joined(","),
                equality_point: label.is_equality_point,
            };
            emit(out, cli.format.unwrap_or(Format::Plain), &[row])
        }
        Command::Scan {
            claim,
            a_range,
            b_range,
            na,
            nb,
            nr,
        } => {
            if na == 0 || nb == 0 || na.saturating_mul(nb) > MAX_SCAN_POINTS {
                return Err(Failure::Usage(format!(
                    "--na·--nb must be in 1..={MAX_SCAN_POINTS}"
                )));
            }
            if nr < 3 {
                return Err(Failure::Usage(format!("--nr {nr} must be at least 3")));
            }
            let grid = scan_grid(claim, nr);
            let rows = scan_params(claim, &a_range.values(na), &b_range.values(nb), &grid, &cfg)?;
            let inconsistent = rows.iter().filter(|r| !r.consistent()).count();
            let table: Vec<ScanRow> = rows
                .iter()
                .map(|r| ScanRow {
                    a: real(r.params.a()),
                    b: real(r.params.b()),
                    regions: r.region.joined(","),
                    claim: r.claim.as_str(),
                    holds: r.holds,
                    worst_r: real(r.worst_r),
                    worst_margin: real(r.worst_margin),
                    n_samples: r.n_samples,
                })
                .collect();
            emit(out, cli.format.unwrap_or(Format::Csv), &table)?;
            if inconsistent == 0 {
                Ok(())
            } else {
                Err(Failure::Contract(format!(
                    "{inconsistent} of {} points disagree with the region's claim",
                    rows.len()
                )))
            }
        }
        Command::TurningPoint { a, b, which } => {
            let p = Params::new(a, b)?;
            let tp = find_turning_point_with(&p, which, &default_grid(), &cfg)?;
            let row = TurningRow {
                r0: real(tp.r0),
                lo: real(tp.bracket.0),
                hi: real(tp.bracket.1),
                kind: tp.kind.as_str(),
                derivative_residual: real(tp.derivative_residual),
            };
            emit(out, cli.format.unwrap_or(Format::Plain), &[row])
        }
    }
}

fn scan_grid(claim: ClaimId, nr: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (1..nr).map(|k| k as f64 / nr as f64).collect();
    if !claim.uses_x_grid() {
        grid.extend((3..=6).map(|k| 1.0 - 10f64.powi(-k)));
    }
    grid
}

/// Runs a parsed command, honouring `--out`.
fn execute(cli: Cli, max_terms: Option<&str>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match cli.out.clone() {
        Some(path) => match File::create(&path) {
            Ok(file) => {
                let mut w = io::BufWriter::new(file);
                run(cli, max_terms, &mut w).and_then(|()| w.flush().map_err(Failure::from))
            }
            Err(e) => Err(Failure::Usage(format!(
                "cannot create {}: {e}",
                path.display()
            ))),
        },
        None => run(cli, max_terms, stdout),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_terms = std::env::var(MAX_TERMS_ENV).ok();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, max_terms.as_deref(), &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Contract(m) => eprintln!("rct-hyper: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests;
