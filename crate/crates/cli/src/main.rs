use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use constacode::cli::{self, Command, OutputFormat, RunConfig, EXIT_BAD_INPUT};

/// Constacyclic codes over F_{p^m} + uF_{p^m}.
#[derive(Parser)]
#[command(name = "constacode", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor x^N - lambda into pairwise coprime monic factors.
    Factor(Params),
    /// List every code with its size, generator and dual.
    Codes(Params),
    /// Show the dual ring and the dual of each code.
    Dual {
        #[command(flatten)]
        params: Params,
        /// Only this code, e.g. 1,3
        #[arg(long)]
        exponents: Option<String>,
    },
    /// Cross-check the classification by exhaustive enumeration.
    Verify(Params),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct Params {
    /// Characteristic (prime).
    #[arg(short)]
    p: u32,
    /// Extension degree of the residue field.
    #[arg(short, default_value_t = 1)]
    m: usize,
    /// Exponent of p in the length.
    #[arg(short)]
    s: u32,
    /// Part of the length coprime to p.
    #[arg(short)]
    n: usize,
    /// alpha as F_p coordinates, e.g. 2 or 1,1
    #[arg(long)]
    alpha: String,
    /// beta as F_p coordinates.
    #[arg(long)]
    beta: String,
    /// Coefficients c0,..,cm of a monic irreducible defining the field.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    output: Format,
    /// Largest ring or code count enumerated before giving up.
    #[arg(long, default_value_t = constacode::oracle::DEFAULT_CAP)]
    cap: u64,
    /// Seed for polynomial factorization.
    #[arg(long, default_value_t = constacode::poly::DEFAULT_SEED)]
    seed: u64,
}

fn config(command: Command, p: Params, exponents: Option<String>) -> constacode::Result<RunConfig> {
    let mut cfg = RunConfig::new(command, p.p, p.m, p.s, p.n, cli::parse_literal(&p.alpha)?, cli::parse_literal(&p.beta)?);
    cfg.modulus = p.modulus.as_deref().map(cli::parse_literal).transpose()?;
    cfg.output = match p.output {
        Format::Table => OutputFormat::Table,
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    cfg.cap = p.cap;
    cfg.seed = p.seed;
    cfg.exponents = exponents.as_deref().map(cli::parse_literal).transpose()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_INPUT as u8 } else { 0 });
        }
    };
    let built = match args.command {
        Cmd::Factor(p) => config(Command::Factor, p, None),
        Cmd::Codes(p) => config(Command::Codes, p, None),
        Cmd::Dual { params, exponents } => config(Command::Dual, params, exponents),
        Cmd::Verify(p) => config(Command::Verify, p, None),
    };
    let out = match built {
        Ok(cfg) => cli::run(&cfg),
        Err(e) => cli::CommandOutput { stdout: String::new(), stderr: format!("error: {e}\n"), exit_code: EXIT_BAD_INPUT },
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
