//! Command-line front end. Every command computes its full output before
//! writing it, to `--out` or stdout.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::analysis::{
    extrema_evolution, log_product_bound, subsequence_limits, threshold_k, ExtremumKind,
    SubseqOptions, DEFAULT_N_BUDGET,
};
use crate::cf::{cf_expand, ContinuedFraction};
use crate::error::Error;
use crate::ostrowski::OstrowskiBase;
use crate::precision::{RealSpec, DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS};
use crate::sudler::{fibonacci, sudler_series, sup_norm, SUP_NORM_GRID_PER_FACTOR, SUP_NORM_REFINE_ITERS};

const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Coefficients expanded numerically when `alpha` has no known periodic form.
const EXPANSION_TERMS: usize = 128;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 3 for numeric failures, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_usage() => 2,
            CliError::Core(_) => 3,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "sudler", version, about = "Sudler product experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working precision in bits for the fractional parts {r alpha}.
    #[arg(long, global = true, env = "SUDLER_PRECISION", default_value_t = DEFAULT_PRECISION_BITS,
          value_parser = clap::value_parser!(u32).range(MIN_PRECISION_BITS as i64..))]
    pub precision: u32,

    /// Output file; stdout when absent.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AlphaArg {
    /// Continued fraction literal such as "[0;(1,2)]" or one of phi, sqrt2, sqrt3, e, pi.
    #[arg(long, short, default_value = "phi", value_parser = parse_spec)]
    pub alpha: RealSpec,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P_n(alpha) for n = 1..=nmax.
    Series {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 250)]
        nmax: u64,
    },
    /// P_{q_n}(alpha) along convergent denominators, one residue per period position.
    Subseq {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 20)]
        mmax: usize,
        /// Checkpoints with q_n above this are skipped.
        #[arg(long, default_value_t = DEFAULT_N_BUDGET)]
        budget: u64,
    },
    /// Running minima or maxima of P_n(alpha).
    Minmax {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 50_000)]
        nmax: u64,
        #[arg(long, default_value = "min")]
        kind: ExtremumKind,
        /// Also write the full series with F_m and F_m - 1 marked.
        #[arg(long)]
        overlay: Option<PathBuf>,
    },
    /// Terms of the digit-wise upper bound for log P_n(alpha).
    Bound {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        n: u64,
    },
    /// Smallest K with 802 + 151 log M / K - log K < 0, or "none".
    Threshold {
        /// M as a number ("1e4") or as "e^803" / "exp(803)".
        m: String,
    },
    /// Ostrowski digits of N to the given base.
    Ostrowski {
        n: BigUint,
        #[arg(default_value = "phi", value_parser = parse_spec)]
        base: RealSpec,
    },
    /// Maximum of P_n over (0, 1).
    Supnorm {
        n: u64,
        /// Grid cells; defaults to 8n.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = SUP_NORM_REFINE_ITERS)]
        refine: usize,
    },
}

fn parse_spec(s: &str) -> Result<RealSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses M into `log M`.
pub fn parse_log_m(s: &str) -> CliResult<f64> {
    let t = s.trim();
    let exponent = t
        .strip_prefix("e^")
        .or_else(|| t.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')));
    let bad = || CliError::Usage(format!("cannot read M from {s:?}"));
    let log_m = match exponent {
        Some(x) => x.trim().parse::<f64>().map_err(|_| bad())?,
        None => t.parse::<f64>().map_err(|_| bad())?.ln(),
    };
    if log_m.is_nan() || log_m < 0.0 || log_m == f64::INFINITY {
        return Err(CliError::Usage(format!("M must be finite and at least 1, got {s}")));
    }
    Ok(log_m)
}

/// Shortest round-trip form; scientific outside `[1e-5, 1e16)`.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn header(config: &str, columns: &str) -> String {
    format!("# sudler {VERSION} {config}\n{columns}\n")
}

fn continued_fraction(spec: &RealSpec, bits: u32) -> CliResult<ContinuedFraction> {
    if let Some(cf) = spec.continued_fraction() {
        return Ok(cf);
    }
    Ok(cf_expand(&spec.to_irrational(bits)?, EXPANSION_TERMS).cf)
}

/// Runs one command and returns the text it produces.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let bits = cli.precision;
    let mut out = String::new();
    match &cli.command {
        Command::Series { alpha, nmax } => {
            let a = &alpha.alpha;
            let series = sudler_series(a, *nmax, bits)?;
            out += &header(&format!("series alpha={a} nmax={nmax} precision={bits}"), "n,log_p,p,err");
            for point in series {
                let p = point?;
                let _ = writeln!(out, "{},{},{},{}", p.n, fmt_float(p.log_p), fmt_float(p.p), fmt_float(p.err));
            }
        }
        Command::Subseq { alpha, mmax, budget } => {
            let a = &alpha.alpha;
            let cf = a
                .continued_fraction()
                .filter(|c| c.is_periodic())
                .ok_or_else(|| CliError::Usage(format!("{a} has no known periodic continued fraction")))?;
            let options = SubseqOptions {
                m_max: *mmax,
                n_budget: *budget,
                precision_bits: bits,
            };
            let reports = subsequence_limits(&cf, options)?;
            let truncated = reports.iter().any(|r| r.truncated);
            let mut config = format!("subseq alpha={a} mmax={mmax} budget={budget} precision={bits}");
            if truncated {
                config += " truncated";
                eprintln!("warning: checkpoints with q_n > {budget} were skipped");
            }
            out += &header(&config, "m,residue,index,q,p,log_p,err");
            let mut rows: Vec<_> = reports.iter().flat_map(|r| r.samples.iter().map(move |s| (r.residue, s))).collect();
            rows.sort_by_key(|(_, s)| s.index);
            for (k, s) in rows {
                let p = &s.point;
                let _ = writeln!(
                    out,
                    "{},{k},{},{},{},{},{}",
                    s.m,
                    s.index,
                    s.q,
                    fmt_float(p.p),
                    fmt_float(p.log_p),
                    fmt_float(p.err)
                );
            }
        }
        Command::Minmax { alpha, nmax, kind, overlay } => {
            let a = &alpha.alpha;
            let records = extrema_evolution(a, *nmax, *kind, bits)?;
            let config = format!("minmax alpha={a} nmax={nmax} kind={kind} precision={bits}");
            out += &header(&config, "n,value,log_value,err,kind");
            for r in &records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    fmt_float(r.value),
                    fmt_float(r.log_value),
                    fmt_float(r.err),
                    r.kind
                );
            }
            if let Some(path) = overlay {
                let text = overlay_csv(a, *nmax, bits, &config)?;
                write_file(path, &text)?;
            }
        }
        Command::Bound { alpha, n } => {
            let a = &alpha.alpha;
            let cf = continued_fraction(a, bits)?;
            let b = log_product_bound(&cf, *n, bits)?;
            out += &header(
                &format!("bound alpha={a} n={n} precision={bits}"),
                "n,digits,z,z_sharp,term1,term2,term3,term4,total,lhs,lhs_err,holds",
            );
            let _ = writeln!(
                out,
                "{n},{},{},{},{},{},{},{},{},{},{},{}",
                b.digits,
                b.digits.z(),
                b.digits.z_sharp(),
                fmt_float(b.term1),
                fmt_float(b.term2),
                fmt_float(b.term3),
                fmt_float(b.term4),
                fmt_float(b.total),
                fmt_float(b.lhs),
                fmt_float(b.lhs_err),
                b.holds()
            );
        }
        Command::Threshold { m } => {
            let log_m = parse_log_m(m)?;
            match threshold_k(log_m) {
                Some(k) => out += &format!("{k}\n"),
                None => out += "none\n",
            }
        }
        Command::Ostrowski { n, base } => {
            let cf = continued_fraction(base, bits)?;
            let digits = OstrowskiBase::new(cf, n)?.encode(n)?;
            out += &format!("{digits}\n");
        }
        Command::Supnorm { n, grid, refine } => {
            let grid = grid.unwrap_or(SUP_NORM_GRID_PER_FACTOR * *n as usize);
            let s = sup_norm(*n, grid, *refine)?;
            out += &header(
                &format!("supnorm n={n} grid={grid} refine={refine}"),
                "n,alpha_star,norm,root,log_norm",
            );
            let _ = writeln!(
                out,
                "{n},{},{},{},{}",
                fmt_float(s.alpha_star),
                fmt_float(s.norm),
                fmt_float(s.root),
                fmt_float(s.log_norm)
            );
        }
    }
    Ok(out)
}

/// Full series with a marker column: `F` at Fibonacci indices, `F-1` just
/// before them.
fn overlay_csv(alpha: &RealSpec, n_max: u64, bits: u32, config: &str) -> CliResult<String> {
    let mut fib = std::collections::BTreeMap::new();
    let mut j = 2;
    while let Some(f) = fibonacci(j).filter(|&f| f <= n_max + 1) {
        fib.insert(f, "F");
        fib.entry(f - 1).or_insert("F-1");
        j += 1;
    }
    let mut out = header(&format!("{config} overlay"), "n,p,log_p,marker");
    for point in sudler_series(alpha, n_max, bits)? {
        let p = point?;
        let marker = fib.get(&p.n).copied().unwrap_or("");
        let _ = writeln!(out, "{},{},{},{marker}", p.n, fmt_float(p.p), fmt_float(p.log_p));
    }
    Ok(out)
}

fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

/// Parses the process arguments, runs the command and reports errors.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
