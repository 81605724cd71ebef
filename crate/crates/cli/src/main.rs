//! `periodica`: command-line driver for the periodica library.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use periodica::report::Verdict;
use periodica::Error;

pub const EXIT_PARSE: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;
pub const EXIT_INCONCLUSIVE: u8 = 5;
pub const EXIT_CHECK_FAILED: u8 = 6;

#[derive(Parser, Debug)]
#[command(name = "periodica", version, about = "Exact computations with periodic complexes over quiver algebras")]
pub struct Cli {
    /// Output format of the report.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Default field for inputs that do not name one (Q, F2, F5, ...).
    #[arg(long, global = true, env = "PERIODICA_FIELD", default_value = "Q")]
    pub field: String,
    /// Default bound on resolution lengths and searches.
    #[arg(long, global = true, env = "PERIODICA_TRUNCATION", default_value_t = 8)]
    pub truncation: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArg {
    /// Algebra presentation file.
    #[arg(long, conflicts_with = "preset")]
    pub algebra: Option<String>,
    /// Preset instead of a file: `linear N`, `cyclic N M`, `semisimple N`, `dual-numbers`.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebra data.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Operations on a periodic complex file.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Cohomology of a periodic complex (same as `complex cohomology`).
    Cohomology(ComplexArg),
    /// `dim K_m(V, W[p])`.
    Hom(PairArgs),
    /// `dim D_m(V, W[p])` via K-projective replacements.
    DerivedHom(PairArgs),
    /// `dim D_m(M, N)` against `Σ_i dim Ext^{mi}(M, N)`.
    ExtSumCheck(ExtSumArgs),
    /// Hochschild cohomology.
    #[command(subcommand)]
    Hochschild(HochschildCmd),
    /// Periods of modules and algebras.
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Periodic tilting checks.
    #[command(subcommand)]
    Tilting(TiltingCmd),
    /// Reproduction targets.
    #[command(subcommand)]
    Reproduce(ReproduceCmd),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Show(AlgebraArg),
}

#[derive(Args, Debug)]
pub struct ComplexArg {
    #[arg(long)]
    pub complex: String,
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    Cohomology(ComplexArg),
    /// Cone of a chain map `V -> W`.
    Cone {
        #[arg(long)]
        complex: String,
        /// Target complex; defaults to the source.
        #[arg(long)]
        target: Option<String>,
        /// `identity`, `zero`, or `basis:K` for the K-th basis class of `K_m(V, W)`.
        #[arg(long, default_value = "identity")]
        map: String,
    },
    Shift {
        #[arg(long)]
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        by: i64,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub complex: String,
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub degree: i64,
}

#[derive(Args, Debug)]
pub struct ExtSumArgs {
    #[command(flatten)]
    pub alg: AlgebraArg,
    #[arg(long)]
    pub m: usize,
    /// Module expression, e.g. `S(2)` or `P(1)+M(2,1)`.
    #[arg(long, required_unless_present = "all")]
    pub source: Option<String>,
    #[arg(long, required_unless_present = "all")]
    pub target: Option<String>,
    /// Check every ordered pair of test indecomposables.
    #[arg(long)]
    pub all: bool,
}

#[derive(Subcommand, Debug)]
pub enum HochschildCmd {
    /// Grid of `HH^{p,q}` for the Laurent extension with `deg t = m`.
    Table {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value = "-6..6")]
        qrange: String,
    },
    /// `HH^{q,2-q} = 0` for `q >= 3`.
    Formality {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        qmax: usize,
    },
    /// Projective dimension of the algebra as a bimodule.
    SmoothDim {
        #[command(flatten)]
        alg: AlgebraArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum PeriodCmd {
    Module {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: String,
    },
    Algebra {
        #[command(flatten)]
        alg: AlgebraArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum TiltingCmd {
    /// Rigidity and generation of a module in the stable category.
    Stable {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        summands: String,
        #[arg(long)]
        m: usize,
        /// Preset the stable endomorphism algebra is compared with, e.g. `linear 2`.
        #[arg(long)]
        end_target: Option<String>,
    },
    /// The stalk complex of the regular module in `D_m`.
    Stalk {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReproduceCmd {
    #[command(name = "ex5.6")]
    Ex56 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    #[command(name = "ex5.8")]
    Ex58 {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    #[command(name = "ex5.9")]
    Ex59,
    #[command(name = "lemma4.1")]
    Lemma41 {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    #[command(name = "prop3.10")]
    Prop310 {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    #[command(name = "prop3.25")]
    Prop325 {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Precondition(_) | Error::AlgebraMismatch => EXIT_PRECONDITION,
        Error::Truncated(_) | Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::CheckFailed(_) => EXIT_CHECK_FAILED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            print!("{text}");
            match report.verdict {
                Verdict::Pass | Verdict::Computed => ExitCode::SUCCESS,
                Verdict::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
                Verdict::Fail => ExitCode::from(EXIT_CHECK_FAILED),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
