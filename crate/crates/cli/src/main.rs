use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use cartan_cli::problem::ProblemFile;
use cartan_cli::{cmd_decompose, cmd_fuzz, cmd_householder, cmd_verify, CliError, Format, FuzzConfig};
use cartan_core::{NumberMode, Signature};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Factor isometries of R^(p,q) into hyperplane reflections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor the matrix of a problem file into reflections.
    Decompose(InputArgs),
    /// Check that the file's reflectors compose to its matrix.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Also print the Householder matrix of each reflector.
        #[arg(long)]
        householder: bool,
    },
    /// Print the Householder matrix of each reflector in the file.
    Householder(InputArgs),
    /// Decompose seeded random isometries and check every invariant.
    Fuzz {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Defaults to p + q.
        #[arg(long)]
        max_reflections: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Problem file, or `-` for stdin.
    input: PathBuf,
    /// Overrides the file's `mode`.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Float-mode tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

impl InputArgs {
    fn load(&self) -> Result<ProblemFile, CliError> {
        let text = if self.input.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(&self.input)
                .map_err(|e| CliError::Parse(format!("{}: {e}", self.input.display())))?
        };
        ProblemFile::from_json(&text)
    }

    fn mode(&self) -> Result<Option<NumberMode>, CliError> {
        match (self.mode, self.tol) {
            (Some(ModeArg::Exact), Some(_)) => Err(CliError::Parse("--tol requires --mode float".into())),
            (Some(ModeArg::Exact), None) => Ok(Some(NumberMode::Exact)),
            (Some(ModeArg::Float), tol) | (None, tol @ Some(_)) => {
                let tolerance = tol.unwrap_or(cartan_core::scalar::DEFAULT_TOLERANCE);
                if !(tolerance > 0.0) {
                    return Err(CliError::Parse("--tol must be positive".into()));
                }
                Ok(Some(NumberMode::Float { tolerance }))
            }
            (None, None) => Ok(None),
        }
    }
}

fn run(cli: Cli) -> Result<String, (String, CliError)> {
    let plain = |e: CliError| (String::new(), e);
    match cli.command {
        Command::Decompose(args) => {
            let file = args.load().map_err(plain)?;
            cmd_decompose(&file, args.mode().map_err(plain)?, args.format.into()).map_err(plain)
        }
        Command::Verify { input, householder } => {
            let file = input.load().map_err(plain)?;
            cmd_verify(&file, input.mode().map_err(plain)?, input.format.into(), householder).map_err(plain)
        }
        Command::Householder(args) => {
            let file = args.load().map_err(plain)?;
            cmd_householder(&file, args.mode().map_err(plain)?, args.format.into()).map_err(plain)
        }
        Command::Fuzz {
            p,
            q,
            count,
            max_reflections,
            seed,
            format,
        } => {
            let signature = Signature::new(p, q).map_err(|e| plain(CliError::Parse(e.to_string())))?;
            let config = FuzzConfig {
                signature,
                count,
                max_reflections: max_reflections.unwrap_or(p + q),
                seed,
            };
            cmd_fuzz(&config, format.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, err)) => {
            print!("{out}");
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
