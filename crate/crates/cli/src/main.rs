mod commands;

use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use polygcd::{FloatDomain, Normalization, RationalField, SymbolicDomain, DEFAULT_ZERO_TOLERANCE};

use commands::{CliError, Ctx, Report};

/// Polynomial gcd, Bezout certificates and discriminants by division-free
/// head/tail reduction.
#[derive(Debug, Parser)]
#[command(name = "polygcd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Coefficient domain.
    #[arg(long, value_enum, default_value_t = Mode::Rational, global = true)]
    mode: Mode,
    /// Per-step normalization (default: primitive for rational, max for
    /// float, none for symbolic).
    #[arg(long, value_enum, global = true)]
    normalize: Option<Strategy>,
    /// Name of the main variable.
    #[arg(long, default_value = "x", global = true)]
    var: String,
    /// Comma-separated parameter names (symbolic mode). Inferred from the
    /// input when omitted.
    #[arg(long, value_delimiter = ',', global = true)]
    params: Option<Vec<String>>,
    /// Relative zero tolerance (float mode). Defaults to $POLYGCD_TOL, then 1e-12.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    None,
    Sum,
    Max,
    Primitive,
}

impl From<Strategy> for Normalization {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::None => Normalization::None,
            Strategy::Sum => Normalization::SumAbs,
            Strategy::Max => Normalization::MaxAbs,
            Strategy::Primitive => Normalization::Primitive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Sylvester,
    Engine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greatest common divisor of two polynomials.
    Gcd {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Bezout certificate s·P + t·Q = gcd (exact modes only).
    Bezout {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Run P against its derivative and report the terminal constant.
    Disc {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Full step trace of a run.
    Trace {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Resultant by the Sylvester oracle, or the engine's coprimality verdict.
    Resultant {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = Oracle::Sylvester)]
        oracle: Oracle,
    },
}

impl Command {
    fn inputs(&self) -> Vec<&str> {
        match self {
            Command::Gcd { p, q } | Command::Bezout { p, q } | Command::Trace { p, q } => {
                vec![p, q]
            }
            Command::Resultant { p, q, .. } => vec![p, q],
            Command::Disc { p } => vec![p],
        }
    }
}

fn dispatch<D: commands::CliDomain>(
    dom: &D,
    cmd: &Command,
    opts: &Options,
) -> Result<Report, CliError> {
    let ctx = Ctx::new(dom, &opts.var, opts.normalize.map(Into::into));
    match cmd {
        Command::Gcd { p, q } => ctx.gcd(p, q),
        Command::Bezout { p, q } => ctx.bezout(p, q),
        Command::Disc { p } => ctx.disc(p),
        Command::Trace { p, q } => ctx.trace(p, q),
        Command::Resultant { p, q, oracle } => match oracle {
            Oracle::Sylvester => ctx.resultant_sylvester(p, q),
            Oracle::Engine => ctx.resultant_engine(p, q),
        },
    }
}

fn tolerance(opts: &Options) -> Result<f64, CliError> {
    let tol = match (opts.tol, std::env::var("POLYGCD_TOL")) {
        (Some(t), _) => t,
        (None, Ok(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("POLYGCD_TOL is not a number: {s:?}")))?,
        (None, Err(_)) => DEFAULT_ZERO_TOLERANCE,
    };
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(CliError::Usage(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(tol)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let opts = &cli.opts;
    if opts.mode != Mode::Float && opts.tol.is_some() {
        return Err(CliError::Usage("--tol only applies in float mode".into()));
    }
    if opts.mode != Mode::Symbolic && opts.params.is_some() {
        return Err(CliError::Usage(
            "--params only applies in symbolic mode".into(),
        ));
    }
    match opts.mode {
        Mode::Rational => dispatch(&RationalField, &cli.command, opts),
        Mode::Float => dispatch(
            &FloatDomain {
                tolerance: tolerance(opts)?,
            },
            &cli.command,
            opts,
        ),
        Mode::Symbolic => {
            let params = match &opts.params {
                Some(p) => p.clone(),
                None => commands::infer_params(&cli.command.inputs(), &opts.var),
            };
            let dom = commands::symbolic_domain(params, &opts.var)?;
            dispatch::<SymbolicDomain>(&dom, &cli.command, opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if cli.opts.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("polygcd: {e}");
            ExitCode::from(e.code())
        }
    }
}
