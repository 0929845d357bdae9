use clap::{Args, Parser, Subcommand, ValueEnum};
use radconvex_core::radical;

#[derive(Debug, Parser)]
#[command(name = "radconvex", version, about = "Classify functions by radical-convexity order and check refined convex inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the largest radical order p and screen it with the average-value test
    Classify(ClassifyArgs),
    /// Check one inequality on explicit parameters or on seeded random instances
    Verify(VerifyArgs),
    /// Print every term of the refined Jensen, upper-curve and m-radical bounds
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Function spec, e.g. "pow(2) + 3*exptrunc(1)"
    pub spec: String,
    #[arg(long, default_value_t = radical::DEFAULT_P_CAP)]
    pub p_cap: f64,
    #[arg(long, default_value_t = radical::DEFAULT_ITERS)]
    pub iters: u32,
    #[arg(long, default_value_t = radical::DEFAULT_GRID_N)]
    pub grid_n: usize,
    /// Right end of the u-grid; pulled inside finite domains
    #[arg(long, default_value_t = radical::DEFAULT_X_MAX)]
    pub x_max: f64,
    #[arg(long, default_value_t = radical::DEFAULT_TOL_CONVEX)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// f(M) + f(sqrt(t(1-t))|a-b|) <= (1-t)f(a) + t f(b)
    Jensen2,
    /// five-link weighted chain Q1 <= ... <= Q5
    Jensen,
    /// f(t) <= f(1)t - f(sqrt(t(1-t))) <= f(1)t
    Upper,
    /// refined weighted AM-GM
    Amgm,
    /// f(a) + f(b) + f(sqrt(2ab)) <= f(a+b)
    Superadd,
    /// even-m multi-term bound
    Mradical,
    /// three-term bound for 4-radical f
    Fourradical,
    /// the quadratic identity behind the refinements (spec ignored)
    Identity,
    /// first Hermite-Hadamard refinement
    Hh1,
    /// second Hermite-Hadamard refinement
    Hh2,
    /// unit-interval chain
    Unit,
    /// interval-splitting bound on [0, 1]
    Split,
    /// Hermite-Hadamard chain on [a, b]
    Hhgen,
    /// continuous Jensen refinement for g on [a, b]
    Cjensen,
    /// Hardy-type bound on [a, b] with exponent p
    Hardy,
    /// average-value bound at x with order p
    Avg,
}

impl Theorem {
    pub fn is_integral(self) -> bool {
        matches!(
            self,
            Theorem::Hh1
                | Theorem::Hh2
                | Theorem::Unit
                | Theorem::Split
                | Theorem::Hhgen
                | Theorem::Cjensen
                | Theorem::Hardy
                | Theorem::Avg
        )
    }

    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: Theorem,
    /// Function spec
    pub spec: String,
    /// Left point or interval start [default: 0, or 1 for integral theorems]
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Right point or interval end [default: 1, or 2 for integral theorems]
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    /// Radical order for hardy and avg
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Even order for mradical
    #[arg(long, default_value_t = 4)]
    pub m: u32,
    /// Evaluation point for avg
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    /// Weights for jensen and amgm [default: uniform]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub weights: Vec<f64>,
    /// Points for jensen [default: a,b] and amgm [default: 1,9]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub points: Vec<f64>,
    /// Inner function for cjensen, as a spec [default: identity]
    #[arg(long)]
    pub g: Option<String>,
    /// Run this many random instances instead of the explicit one
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, env = "RADCONVEX_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Upper end of the sampling range; pulled inside finite domains
    #[arg(long, default_value_t = 10.0)]
    pub x_max: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Function spec
    pub spec: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    /// Add the m-radical terms for this even m
    #[arg(long)]
    pub m: Option<u32>,
    /// Add the m-radical terms for the largest even m <= p
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}
