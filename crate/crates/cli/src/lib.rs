//! The `qlab` command line: symbolic computations in the expression grammar and the
//! numerical experiments, each producing a canonical report.
//!
//! Exit codes: 0 success (verdict true where applicable), 1 verdict false,
//! 2 usage or parse errors, 3 numeric failures.

pub mod commands;
pub mod parse;
pub mod session;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qlab_core::{Algebra, AlgebraError, LabError};

pub use parse::{infer_algebra, parse_expression, parse_scalar, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::AlgebraMismatch { .. }
            | AlgebraError::ForeignMonomial { .. }
            | AlgebraError::IllegalGenerator { .. }
            | AlgebraError::NotHopf(_)
            | AlgebraError::NotSquare { .. }
            | AlgebraError::DimensionMismatch { .. }
            | AlgebraError::IncompatibleRep { .. }
            | AlgebraError::NonUnitModulus(_)
            | AlgebraError::NotACorepresentation => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Algebra(a) => a.into(),
            LabError::InvalidParameter(_)
            | LabError::Empty(_)
            | LabError::Unbound(_)
            | LabError::CutoffTooSmall { .. }
            | LabError::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    #[value(name = "SUq2", alias = "suq2")]
    SUq2,
    #[value(name = "GqTheta", alias = "gqtheta")]
    GqTheta,
    #[value(name = "Torus", alias = "torus")]
    Torus,
    #[value(name = "Circle", alias = "circle")]
    Circle,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::SUq2 => Algebra::SUq2,
            AlgebraArg::GqTheta => Algebra::GqTheta,
            AlgebraArg::Torus => Algebra::Torus,
            AlgebraArg::Circle => Algebra::Circle,
        }
    }
}

/// Session options shared by every subcommand.
#[derive(Clone, Debug, clap::Args)]
pub struct Opts {
    /// Deformation parameter: a fraction `1/2`, a decimal `0.5`; 0 < |q| < 1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Rotation angle: `L/N`, a decimal, or `golden`.
    #[arg(long, global = true)]
    pub theta: Option<String>,
    /// Highest level K of the truncation.
    #[arg(long, global = true)]
    pub levels: Option<usize>,
    /// Fourier modes per level N.
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    /// Angles G of the half-circle grid.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Chebyshev degree D.
    #[arg(long = "cheb-degree", global = true)]
    pub cheb_degree: Option<usize>,
    /// Level cutoff M of the block-matrix form.
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    /// Closure cap of the local-finiteness check.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed of the random element suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Torus model `N:L` (clock) or `shift:THETA:J` (cyclic window).
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// Algebra of the expressions; inferred from the generators when omitted.
    #[arg(long, global = true, value_enum)]
    pub algebra: Option<AlgebraArg>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "qlab", version, about = "Symbolic and numerical laboratory for SU_q(2), its crossed product and the noncommutative torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Nf { expr: String },
    /// The adjoint x*.
    Adjoint { expr: String },
    /// The coproduct Δ(x).
    Delta { expr: String },
    /// The counit ε(x).
    Counit { expr: String },
    /// The antipode S(x).
    Antipode { expr: String },
    /// The Haar state h(x), exactly as a rational function of q.
    Haar { expr: String },
    /// The conditional expectation E(x) = Σ h(a_l) u^l on the crossed product.
    Condexp { expr: String },
    /// Projection onto the invariant subalgebra Pol(SU_q(2)/T).
    Invariant { expr: String },
    /// Checks comultiplicativity and unitarity of a matrix over the algebra.
    Corepcheck {
        /// `fundamental`, `fundamental2`, `unitary:L`, or `[[x11, x12], [x21, x22]]`.
        #[arg(default_value = "fundamental")]
        matrix: String,
    },
    /// Σ_p π(u*_{j,p} u_{i,p}) = δ_ij under a one-dimensional representation.
    Cor24 {
        /// Image of α (unit modulus), e.g. `3/5+4/5i`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        z: String,
        /// Image of u_θ (unit modulus).
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Matrix to test, as for `corepcheck`.
        #[arg(long, default_value = "fundamental")]
        matrix: String,
    },
    /// Spectrum of π(γ*γ) in the truncated representation.
    Spectrum {
        /// Include the origin vector.
        #[arg(long)]
        origin: bool,
    },
    /// Operator norm of π(x) in the truncated (or torus) representation.
    Norm {
        expr: String,
        #[arg(long)]
        origin: bool,
    },
    /// Full versus half-circle norm separation.
    #[command(name = "exp-thm31")]
    ExpThm31 {
        /// A polynomial in g, g* to use instead of the Chebyshev ramp.
        #[arg(long)]
        target: Option<String>,
    },
    /// Shift decomposition of π(α*) on the crossed product.
    #[command(name = "exp-lemma44")]
    ExpLemma44 {
        #[arg(long = "max-power", default_value_t = 8)]
        max_power: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Block-matrix norms of a random suite under two torus models.
    #[command(name = "exp-thm46")]
    ExpThm46(SuiteOpts),
    /// Norms of random torus elements under two models.
    #[command(name = "exp-torus")]
    ExpTorus(SuiteOpts),
    /// Does a finite label set generate a finite fusion ring?
    #[command(name = "fusion-lf")]
    FusionLf {
        /// `su2`, `integers`, `cyclic:N`, or `product`.
        #[arg(long, default_value = "product")]
        ring: String,
        /// Generators, e.g. `"(0,1)"` or `"2, 4"`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
}

#[derive(Debug, clap::Args)]
pub struct SuiteOpts {
    /// First model `N:L` or `shift:THETA:J`; default: convergent of θ with N ≤ 100.
    #[arg(long = "model-a")]
    pub model_a: Option<String>,
    /// Second model; default: convergent of θ with N ≤ 200.
    #[arg(long = "model-b")]
    pub model_b: Option<String>,
    /// Number of random elements in the suite.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Maximal total degree of the random elements.
    #[arg(long, default_value_t = 3)]
    pub degree: u32,
    /// Terms per random element.
    #[arg(long, default_value_t = 5)]
    pub terms: usize,
    /// Largest accepted relative norm difference.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

impl SuiteOpts {
    fn args(&self) -> commands::SuiteArgs<'_> {
        commands::SuiteArgs {
            model_a: self.model_a.as_deref(),
            model_b: self.model_b.as_deref(),
            count: self.count,
            degree: self.degree,
            terms: self.terms,
            tolerance: self.tolerance,
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Nf { expr } => commands::symbolic(o, "nf", expr),
        Command::Adjoint { expr } => commands::symbolic(o, "adjoint", expr),
        Command::Delta { expr } => commands::symbolic(o, "delta", expr),
        Command::Counit { expr } => commands::symbolic(o, "counit", expr),
        Command::Antipode { expr } => commands::symbolic(o, "antipode", expr),
        Command::Haar { expr } => commands::haar(o, expr),
        Command::Condexp { expr } => commands::condexp(o, expr),
        Command::Invariant { expr } => commands::invariant(o, expr),
        Command::Corepcheck { matrix } => commands::corepcheck(o, matrix),
        Command::Cor24 { z, w, matrix } => commands::cor24(o, z, w.as_deref(), matrix),
        Command::Spectrum { origin } => commands::spectrum(o, *origin),
        Command::Norm { expr, origin } => commands::norm(o, expr, *origin),
        Command::ExpThm31 { target } => commands::exp_thm31(o, target.as_deref()),
        Command::ExpLemma44 { max_power, tolerance } => commands::exp_lemma44(o, *max_power, *tolerance),
        Command::ExpThm46(s) => commands::exp_thm46(o, &s.args()),
        Command::ExpTorus(s) => commands::exp_torus(o, &s.args()),
        Command::FusionLf { ring, gens } => commands::fusion_lf(o, ring, gens),
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &commands::Outcome, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", outcome.text),
        Format::Json => format!("{}\n", outcome.report.to_canonical_json()),
        Format::Csv => outcome.report.to_csv(),
    }
}

/// Parses `args`, runs the command, writes the result, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let rendered = render(&outcome, cli.opts.format);
    let written = match &cli.opts.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    if outcome.report.passed() {
        0
    } else {
        1
    }
}
