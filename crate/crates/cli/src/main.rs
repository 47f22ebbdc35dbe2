use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(name = "ceresa", version, about = "Fractional parts of f(N,k) and related checks for Fermat curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Correct fractional digits to compute (at least 10).
    #[arg(long, global = true, env = "CERESA_DIGITS", default_value_t = 30)]
    pub digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// f(N,k) for 4 <= N < n-max.
    Table {
        #[arg(long, default_value_t = 100)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// f(N,k) for one pair.
    Value {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Non-integrality verdict for f(N,k); exit status 1 when inconclusive.
    Check {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Check m f(N,k) for 1 <= m <= m-max; exit status 1 when inconclusive.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        m_max: u64,
    },
    /// The Klein quartic value for 1 <= k <= 13.
    Klein {
        #[arg(long, default_value_t = 13)]
        k: u32,
    },
    /// Agreement of the ten Euler double-integral expressions on random parameters.
    DixonTest {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// δ-iterated integrals against quadrature for every index pair at one N.
    OracleTest {
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
}

/// Outcome of a command, mapped to the exit status.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
    Usage(String),
    Failed(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            eprintln!("{USAGE}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let mut buf = Vec::new();
    let status = run(&cli, &mut buf);
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        eprintln!("error: write failed: {e}");
        return ExitCode::from(1);
    }
    match &status {
        Status::Ok | Status::Inconclusive => {}
        Status::Failed(msg) => eprintln!("error: {msg}"),
        Status::Usage(msg) => {
            eprintln!("error: {msg}\n");
            eprintln!("{USAGE}");
        }
    }
    ExitCode::from(exit_code(&status))
}

const USAGE: &str = "Usage: ceresa <table|value|check|scan|klein|dixon-test|oracle-test> [--n N] [--k K] [--n-max N] [--m-max M] [--digits D] [--format csv|json|text] [--threads T]";

fn exit_code(s: &Status) -> u8 {
    match s {
        Status::Ok => 0,
        Status::Inconclusive | Status::Failed(_) => 1,
        Status::Usage(_) => 2,
    }
}

fn run(cli: &Cli, out: &mut Vec<u8>) -> Status {
    if cli.common.digits < 10 {
        return Status::Usage(format!("--digits must be at least 10, got {}", cli.common.digits));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.common.threads {
        if t == 0 {
            return Status::Usage("--threads must be positive".into());
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Status::Failed(e.to_string()),
    };
    pool.install(|| commands::dispatch(&cli.command, &cli.common, out))
}
