//! `gammalcm`: evaluate, classify and numerically falsify complete monotonicity
//! claims for gamma-ratio families.
//!
//! Exit status: 0 consistent / success, 1 violation located, 2 usage or domain error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammalcm::checker::{GridSpec, Mode, ParamRange, Spacing};
use gammalcm::families::{text::parse_real, FamilyTemplate};
use gammalcm::Target;

use output::{Format, Payload};

#[derive(Debug, Parser)]
#[command(name = "gammalcm", version, about)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Write to this file instead of stdout; relative paths resolve under $GAMMALCM_OUTPUT_DIR when set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Accepts decimals and the named constants `pi`, `sqrtpi`, `2sqrtpi`.
fn real(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: gammalcm::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpacingArg {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Lcm,
    Cm,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value = "0.01", value_parser = real, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value = "100", value_parser = real)]
    x_max: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, value_enum, default_value = "log")]
    spacing: SpacingArg,
    /// Highest derivative order.
    #[arg(long, default_value_t = 10)]
    k: usize,
}

impl GridArgs {
    fn grid(&self) -> gammalcm::Result<GridSpec> {
        let spacing = match self.spacing {
            SpacingArg::Log => Spacing::Log,
            SpacingArg::Linear => Spacing::Linear,
        };
        GridSpec::new(self.x_min, self.x_max, self.points, spacing)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a family at one point.
    Eval {
        #[arg(value_parser = target)]
        family: Target,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        x: f64,
    },
    /// Locate (a, b, c) relative to the sufficient LCM conditions.
    Classify {
        #[arg(long, value_parser = real)]
        a: f64,
        #[arg(long, value_parser = real)]
        b: f64,
        #[arg(long, value_parser = real)]
        c: f64,
    },
    /// Sign table of (-1)^k [ln f]^(k) (or (-1)^k f^(k) with --mode cm) on a grid.
    Check {
        #[arg(value_parser = target)]
        family: Target,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "lcm")]
        mode: ModeArg,
    },
    /// Scan the closed form for a negative k-th signed log-derivative near 0.
    FindViolation {
        #[arg(long, value_parser = real)]
        a: f64,
        #[arg(long, value_parser = real)]
        b: f64,
        #[arg(long, value_parser = real)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "100", value_parser = real)]
        x_max: f64,
    },
    /// LCM verdicts while one parameter of a family varies.
    Sweep {
        /// Family text with the free parameter omitted, e.g. `general-ratio:a=1,b=0.5`.
        template: String,
        #[arg(long)]
        free: String,
        #[arg(long, value_parser = real, allow_hyphen_values = true, requires_all = ["to", "step"], conflicts_with = "values")]
        from: Option<f64>,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long, value_parser = real)]
        step: Option<f64>,
        /// Comma-separated explicit values.
        #[arg(long, value_delimiter = ',', value_parser = real, allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Independent cross-checks of the special functions and series engine.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Debug, Subcommand)]
enum Oracle {
    /// Asymptotic polygamma against its integral representation.
    PolygammaQuadrature {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = real)]
        x: f64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// exp(ln Gamma) against Euler's integral.
    GammaQuadrature {
        #[arg(long, value_parser = real)]
        x: f64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Series derivative of ln f against extrapolated central differences.
    FiniteDifference {
        #[arg(value_parser = target)]
        family: Target,
        #[arg(long, value_parser = real, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
}

fn run(command: Command) -> gammalcm::Result<Payload> {
    match command {
        Command::Eval { family, x } => commands::eval(&family, x),
        Command::Classify { a, b, c } => commands::classify(a, b, c),
        Command::Check { family, grid, mode } => {
            let mode = match mode {
                ModeArg::Lcm => Mode::Lcm,
                ModeArg::Cm => Mode::Cm,
            };
            commands::check(&family, &grid.grid()?, grid.k, mode)
        }
        Command::FindViolation { a, b, c, k, x_max } => commands::find_violation(a, b, c, k, x_max),
        Command::Sweep {
            template,
            free,
            from,
            to,
            step,
            values,
            grid,
        } => {
            let template = FamilyTemplate::parse(&template)?;
            let range = match (from, to, step, values) {
                (Some(from), Some(to), Some(step), None) => ParamRange::Stepped { from, to, step },
                (None, None, None, Some(v)) => ParamRange::Values(v),
                (None, None, None, None) => ParamRange::Values(Vec::new()),
                _ => {
                    return Err(gammalcm::Error::InvalidParameter(
                        "give either --from/--to/--step or --values".into(),
                    ))
                }
            };
            commands::sweep(&template, &free, &range, &grid.grid()?, grid.k)
        }
        Command::Oracle(Oracle::PolygammaQuadrature { n, x, tolerance }) => {
            commands::oracle_polygamma(n, x, tolerance)
        }
        Command::Oracle(Oracle::GammaQuadrature { x, tolerance }) => {
            commands::oracle_gamma(x, tolerance)
        }
        Command::Oracle(Oracle::FiniteDifference {
            family,
            x,
            k,
            tolerance,
        }) => commands::oracle_fd(&family, x, k, tolerance),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let payload = match run(cli.command) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = payload
        .render(cli.format)
        .and_then(|bytes| output::emit(&bytes, cli.output.as_deref()));
    match written {
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(2);
        }
        _ => {}
    }
    ExitCode::from(payload.status.code())
}
