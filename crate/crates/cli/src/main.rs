mod commands;
mod config;
mod output;
mod suites;

use clap::{Args, Parser, Subcommand};
use goldtwin_core::Error;
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const AFTER_HELP: &str = "\
JSON artifacts share the envelope
  {command, config, results, provenance: {version, seed, runtime_ms}}
with keys sorted. CSV artifacts carry a fixed header per subcommand.

A --config FILE holds key=value lines (same names as the long flags,
`flag=true` for switches). Its entries override flags given on the command
line. GOLDTWIN_MEM_BUDGET caps table and sequence sizes (entries).

Exit status: 0 success, 1 verification failure, 2 usage error,
3 configuration or resource error, 4 out-of-range input, 5 degenerate input.";

#[derive(Parser, Debug)]
#[command(name = "goldtwin", version, about = "Goldbach and almost-twin prime computations", after_help = AFTER_HELP)]
#[command(args_override_self = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Worker threads for the parallel engines (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Artifact path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// key=value file whose entries override command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report runtime_ms as 0 so artifacts are byte-comparable.
    #[arg(long, global = true)]
    reproducible: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    Scan(commands::ScanArgs),
    Convolve(commands::ConvolveArgs),
    Sseries(commands::SseriesArgs),
    Sievefn(commands::SievefnArgs),
    Bv(commands::BvArgs),
    Verify(commands::VerifyArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => 2,
        Error::Config(_) => 3,
        Error::Range(_) => 4,
        Error::Degenerate(_) => 5,
    }
}

fn main() -> ExitCode {
    let args = match config::expand_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("goldtwin: {e}");
            return ExitCode::from(3);
        }
    };
    let cli = Cli::parse_from(args);
    let g = &cli.global;
    if g.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global() {
            eprintln!("goldtwin: {e}");
            return ExitCode::from(3);
        }
    }
    let budget = match config::memory_budget() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("goldtwin: configuration error: {e}");
            return ExitCode::from(3);
        }
    };
    let ctx = commands::Context { seed: g.seed, budget, out: g.out.clone() };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Scan(a) => commands::scan(a, &ctx),
        Command::Convolve(a) => commands::convolve(a, &ctx),
        Command::Sseries(a) => commands::sseries(a, &ctx),
        Command::Sievefn(a) => commands::sievefn(a, &ctx),
        Command::Bv(a) => commands::bv(a, &ctx),
        Command::Verify(a) => commands::verify(a, &ctx),
    };
    let (report, ok) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("goldtwin: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let runtime = if g.reproducible { 0 } else { start.elapsed().as_millis() };
    let written = output::render(&report, g.format, g.seed, runtime).and_then(|b| output::emit(&b, g.out.as_deref()));
    if let Err(e) = written {
        eprintln!("goldtwin: {e}");
        return ExitCode::from(3);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
