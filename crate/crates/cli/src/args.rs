use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use kickwalk::LimitCase;
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "kickwalk",
    version,
    about = "Kicked two-state quantum walk: simulation, limit laws, comparisons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position distribution at the analysis time (or at --t) as CSV.
    Simulate(SimulateArgs),
    /// Limit density on a uniform grid over (-1, 1) as CSV.
    Limit(LimitArgs),
    /// Simulation vs limit law report as JSON.
    Compare(CompareArgs),
    /// Limit moments from the spectral integral as JSON.
    Moments(MomentsArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Coin angle: radians or a multiple of pi such as `pi/4`, `3pi/4`, `2*pi/3`.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: f64,
    /// Upper amplitude as `re,im`; `1/sqrt2` is accepted for either part.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    /// Lower amplitude as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Size of the worker pool.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub tau: i64,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    /// `usual` stops at t = tau; `m,n` sets the kick counts.
    #[arg(long, value_parser = parse_case)]
    pub case: Option<LimitCase>,
    /// Final time; defaults to (m + n) tau + m.
    #[arg(long)]
    pub t: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_parser = parse_case)]
    pub case: LimitCase,
    /// Odd number of interior grid points, at least 101.
    #[arg(long, default_value_t = 1001)]
    pub grid_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_parser = parse_case)]
    pub case: LimitCase,
    #[arg(long)]
    pub tau: i64,
    /// Half-width of the atom window as a fraction of the scale.
    #[arg(long, default_value_t = kickwalk::verify::DEFAULT_WINDOW_FRACTION)]
    pub window_fraction: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub orders: Vec<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_parser = parse_case)]
    pub case: LimitCase,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    pub orders: Vec<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn parse_case(s: &str) -> Result<LimitCase, String> {
    s.parse::<LimitCase>().map_err(|e| e.to_string())
}

/// Radians, or `[sign][k][*]pi[/d]`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let text = s.trim().to_ascii_lowercase();
    if let Ok(v) = text.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("cannot read angle `{s}`");
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, text.strip_prefix('+').unwrap_or(&text)),
    };
    let at = rest.find("pi").ok_or_else(bad)?;
    let coef = rest[..at].trim_end_matches('*').trim();
    let coef: f64 = if coef.is_empty() {
        1.0
    } else {
        coef.parse().map_err(|_| bad())?
    };
    let tail = rest[at + 2..].trim();
    let den: f64 = match tail.strip_prefix('/') {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None if tail.is_empty() => 1.0,
        None => return Err(bad()),
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(sign * coef * PI / den)
}

fn parse_real(s: &str) -> Option<f64> {
    let t = s.trim().to_ascii_lowercase();
    let (sign, body) = match t.strip_prefix('-') {
        Some(b) => (-1.0, b.to_string()),
        None => (1.0, t.clone()),
    };
    if body == "1/sqrt2" || body == "1/sqrt(2)" {
        return Some(sign * FRAC_1_SQRT_2);
    }
    t.parse().ok()
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("expected `re,im`, got `{s}`");
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(
        parse_real(re).ok_or_else(bad)?,
        parse_real(im).ok_or_else(bad)?,
    ))
}
