use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use resconv::expcli::{emit, load_scenario, member_operator, run_sweep, verify, Scenario};

#[derive(Parser)]
#[command(version, about = "Resolvent-convergence sweeps for Sturm–Liouville families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write sweep.csv, verdicts.txt and <column>.dat files.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a sweep and check every verdict; exits nonzero on the first failure.
    Verify {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the spectrum of family member n.
    Spectrum {
        config: PathBuf,
        #[arg(long)]
        n: u32,
    },
}

fn load(path: &PathBuf, seed: Option<u64>) -> resconv::Result<Scenario> {
    let mut s = load_scenario(path)?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, out, threads, seed } => load(&config, seed)
            .and_then(|s| run_sweep(&s, threads))
            .and_then(|r| {
                emit(&r, &out)?;
                eprintln!("{} rows written to {}", r.rows.len(), out.display());
                Ok(ExitCode::SUCCESS)
            }),
        Command::Verify { config, threads } => load(&config, None).and_then(|s| verify(&s, threads)).map(|r| {
            for v in &r.verdicts {
                println!("{}", v.line());
            }
            match r.first_failure() {
                None => ExitCode::SUCCESS,
                Some(v) => {
                    eprintln!("verify failed: {}", v.name);
                    ExitCode::FAILURE
                }
            }
        }),
        Command::Spectrum { config, n } => load(&config, None).and_then(|s| member_operator(&s, n)).map(|op| {
            // a closed pipe (e.g. `| head`) just ends the listing
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "# n = {n}, dim = {}", op.dim());
            for l in op.spectrum() {
                if writeln!(out, "{l}").is_err() {
                    break;
                }
            }
            ExitCode::SUCCESS
        }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
