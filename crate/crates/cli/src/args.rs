use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(name = "mgk", version, about = "Multiple gamma functions and their q-analogues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate log G_n(z+1).
    Eval(EvalArgs),
    /// Evaluate log G_n(z+1; q).
    Qeval(QevalArgs),
    /// Pairwise residuals between evaluation methods on a grid.
    Xcheck(XcheckArgs),
    /// Distance to the classical value along a sequence q -> 1.
    Sweep(SweepArgs),
    /// Exact coefficients of the higher Stirling or Weierstrass form.
    Coeffs(CoeffsArgs),
    /// Table of zeta'(-j).
    #[command(name = "zeta-table")]
    ZetaTable(ZetaTableArgs),
    /// Check the characterising properties of G_n on a grid.
    Props(PropsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnMethodArg {
    Auto,
    Weierstrass,
    Stirling,
    Em,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMethodArg {
    Product,
    Em,
    Moak,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Stirling,
    Weierstrass,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    /// Real number or "re,im".
    #[arg(long, value_parser = parse_z, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: GnMethodArg,
    /// Product length (weierstrass only).
    #[arg(long = "K", alias = "k")]
    pub k: Option<usize>,
    /// Expansion order (em only).
    #[arg(long)]
    pub m: Option<usize>,
    /// Fixed number of series terms (stirling only).
    #[arg(long)]
    pub terms: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct QevalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_z, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, value_enum, default_value = "product")]
    pub method: QMethodArg,
    /// Product length (product only); adaptive when omitted.
    #[arg(long = "K", alias = "k")]
    pub k: Option<usize>,
    /// Expansion order (em and moak).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct XcheckArgs {
    #[arg(long = "n-max")]
    pub n_max: usize,
    /// Comma-separated real grid.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Grid,
    /// Weierstrass product length.
    #[arg(long = "K", alias = "k")]
    pub k: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_z, allow_hyphen_values = true)]
    pub z: Complex64,
    /// "1-10^-k:1..5" or a comma-separated list.
    #[arg(long = "q-seq", value_parser = parse_q_seq)]
    pub q_seq: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "stirling")]
    pub form: Form,
    /// Number of series terms (stirling only).
    #[arg(long = "r-max")]
    pub r_max: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ZetaTableArgs {
    #[arg(long = "j-max", default_value_t = 12)]
    pub j_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0.25,1,2.5,5,9.5")]
    pub grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Newtype so clap does not treat the list as repeated values.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_z(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let v = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty grid".into());
    }
    Ok(Grid(v))
}

/// `1-B^-k:a..b` gives `1 - B^{-k}` for `k = a..=b`; anything else is read
/// as a comma-separated list.
pub fn parse_q_seq(s: &str) -> Result<Grid, String> {
    let Some((expr, range)) = s.split_once(':') else {
        return parse_grid(s);
    };
    let base = expr
        .trim()
        .strip_prefix("1-")
        .and_then(|r| r.strip_suffix("^-k"))
        .ok_or_else(|| format!("unsupported q expression '{expr}', expected 1-B^-k"))?;
    let base = parse_f64(base)?;
    if base <= 1.0 {
        return Err(format!("base must exceed 1, got {base}"));
    }
    let (a, b) = range.split_once("..").ok_or_else(|| format!("range '{range}' must be a..b"))?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad range end '{b}'"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(Grid((a..=b).map(|k| 1.0 - base.powi(-k)).collect()))
}
