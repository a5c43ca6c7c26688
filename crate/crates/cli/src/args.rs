use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fibcat::rational::{parse_rational, Rational};

use crate::output::Format;

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "fibcat", version, about = "Exact intersection calculus on elliptic fibrations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalan numbers c_0..c_upto.
    Catalan {
        #[arg(long)]
        upto: usize,
    },
    /// Series solution of u = (A + B u²) w.
    SolveSeries(SeriesArgs),
    /// Radius of convergence, formula and ratio-test estimate.
    Radius(RadiusArgs),
    /// u as a series in 1/(2v) solving h u² + 2 v u = r.
    Prop41(Prop41Args),
    /// Rewrites the surface relation as u = (P + Q u²)(1/v).
    SurfaceReduce(SurfaceArgs),
    /// Product and degree of a list of classes.
    ChowEval(ChowEvalArgs),
    /// Cohomological Fourier-Mukai transform of Chern data.
    FmTransform(FmArgs),
    /// Z^δ_{ω,B} of Chern data.
    CentralCharge(ChargeArgs),
    /// Solves the four matching constraints for (k, l).
    SolveConstraints(ConstraintArgs),
    /// Checks the central-charge equation on random Chern data.
    VerifyCceq(VerifyArgs),
    /// Partial sums against the closed-form root over a grid of w.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long = "A", value_parser = rational, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long = "B", value_parser = rational, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    /// Truncation order.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// JSON `{A, B, N}`, inline, a path, or `-` for stdin. Flags override.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long = "A", value_parser = rational, allow_hyphen_values = true, requires = "b")]
    pub a: Option<Rational>,
    #[arg(long = "B", value_parser = rational, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, conflicts_with_all = ["a", "b"], requires = "h")]
    pub r: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub h: Option<Rational>,
    /// Order of the series used by the ratio test.
    #[arg(long = "N", default_value_t = 199)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct Prop41Args {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub r: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub h: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub v: Option<Rational>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// JSON `{r, h, v, N}`. Flags override.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub m: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub alpha: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub e: Rational,
}

#[derive(Debug, Args)]
pub struct ChowEvalArgs {
    /// Model JSON, inline or a path.
    #[arg(long)]
    pub model: String,
    /// JSON list of factors: divisors `{theta, base}` or full classes.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct FmArgs {
    #[arg(long)]
    pub model: String,
    /// Chern data JSON `{n, x, S, eta, a, s}`.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    #[arg(long)]
    pub model: String,
    /// Chern data JSON `{n, x, S, eta, a, s}`.
    #[arg(long)]
    pub input: String,
    /// ω as `{theta, base}`.
    #[arg(long)]
    pub omega: String,
    /// V for B = p*V, as a JSON list; zero when omitted.
    #[arg(long = "B")]
    pub b: Option<String>,
    #[arg(long, value_parser = rational, default_value = "1")]
    pub delta: Rational,
}

#[derive(Debug, Args)]
pub struct ConstraintArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long, value_parser = rational)]
    pub k: Rational,
    #[arg(long, value_parser = rational)]
    pub l: Rational,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long, value_parser = rational, required_unless_present = "input")]
    pub k: Option<Rational>,
    #[arg(long, value_parser = rational, required_unless_present = "input")]
    pub l: Option<Rational>,
    /// A `solve-constraints` JSON output; supplies k and l.
    #[arg(long, conflicts_with_all = ["k", "l"])]
    pub input: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Added to the first constraint's target before solving.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub c1_shift: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Comma-separated sample points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["from", "to", "steps"])]
    pub w: Vec<f64>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["to", "steps"])]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}
