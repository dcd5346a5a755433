use clap::{Args, Parser, Subcommand, ValueEnum};

use orderfour::bench::OutputFormat;
use orderfour::numeric::Precision;

#[derive(Debug, Parser)]
#[command(
    name = "orderfour",
    version,
    about = "High-precision third- and fourth-order root finders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "ORDERFOUR_PRECISION", default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,

    /// Step and residual tolerance (default: 10^(20 - precision)).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<String>,

    #[arg(long = "max-iter", global = true, default_value_t = 100)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Md => OutputFormat::Markdown,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate a method on a registry problem or an expression in x.
    Solve(SolveArgs),
    /// Reproduce the published error tables and diff them cell by cell.
    Bench(BenchArgs),
    /// Order of convergence, efficiency index and error constants.
    Analyze(AnalyzeArgs),
    /// Check a weight function against the order-four conditions.
    ValidateWeight(WeightArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Registry problem: f1, f2 or f3.
    #[arg(long, conflicts_with = "expr")]
    pub problem: Option<String>,

    /// Expression in x, e.g. "exp(-x)-1+x/5".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,

    /// Starting point (defaults to the registry problem's).
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,

    /// Root bracket "lo,hi"; enables error columns for --expr.
    #[arg(long, allow_hyphen_values = true)]
    pub bracket: Option<String>,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// newton, weerakoon, homeier, bisectrix, inverse-bisectrix, chun3 or weighted4.
    #[arg(long, default_value = "weighted4")]
    pub method: String,

    /// Weight for weighted4: "chun" or "poly:c0,c1,...".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,

    /// Step fraction for weighted4's first substep.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// 1, 2, 3 or all.
    #[arg(long, default_value = "all")]
    pub table: String,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// "chun", "poly:c0,c1,..." or either prefixed with "weight=".
    #[arg(allow_hyphen_values = true)]
    pub spec: String,
}
