use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use equimatch::conventions::{ConfLift, Conventions, LabelConvention, Metric};
use equimatch_cli::{commands, Cache, CliError, Format, Output, RunConfig, Suite, CACHE_ENV};

/// Equivariant matching between configuration space and flag manifold
/// cohomology.
#[derive(Parser)]
#[command(name = "equimatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré series of both sides, phi and psi (or a Grassmannian with --r/--s).
    Poincare,
    /// Matching matrix A(u') as JSON, or A_K(q) with --ktheory.
    Matrix,
    /// Run a verification suite; exits 1 if any required check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Flag produced by the map for a point configuration file.
    Map {
        /// JSON file `{"n": .., "points": [[x, y, z], ..]}`; `-` reads stdin.
        input: PathBuf,
    },
    /// Graded characters of both sides.
    Characters,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    s: Option<usize>,
    #[arg(long, global = true, default_value = "apolar", value_parser = parse::<Metric>)]
    metric: Metric,
    #[arg(long, global = true, default_value = "inverse", value_parser = parse::<LabelConvention>)]
    label_convention: LabelConvention,
    #[arg(long, global = true, default_value = "orthogonal", value_parser = parse::<ConfLift>)]
    lift: ConfLift,
    #[arg(long, global = true)]
    ktheory: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Configurations per Monte-Carlo run.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Include wall-clock timing in verification reports.
    #[arg(long, global = true)]
    timing: bool,
}

fn parse<T: FromStr<Err = equimatch::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: equimatch::Error| e.to_string())
}

impl Opts {
    fn config(&self) -> RunConfig {
        RunConfig {
            n: self.n,
            r: self.r,
            s: self.s,
            conventions: Conventions {
                metric: self.metric,
                label: self.label_convention,
                lift: self.lift,
            },
            ktheory: self.ktheory,
            seed: self.seed,
            samples: self.samples,
            tolerance: self.tolerance,
            cache: self.cache_dir.clone().map(Cache::new),
            timing: self.timing,
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = cli.opts.config();
    cfg.validate()?;
    let output: Output = match &cli.command {
        Command::Poincare => commands::poincare(&cfg)?,
        Command::Matrix => commands::matrix(&cfg)?,
        Command::Characters => commands::characters(&cfg)?,
        Command::Map { input } => {
            let text = if input.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(input)?
            };
            commands::map(&cfg, &commands::parse_points(&text)?)?
        }
        Command::Verify { suite } => {
            let report = commands::verify(&cfg, *suite)?;
            let output = Output {
                json: report.to_json(),
                csv: report.csv_rows(),
            };
            emit(&cli.opts.out, &output.render(cli.opts.format))?;
            return Ok(report.passed());
        }
    };
    emit(&cli.opts.out, &output.render(cli.opts.format))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("equimatch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
