use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grover_noise::harness::{execute, ExperimentConfig, ExperimentKind};
use grover_noise::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Grover search under a noisy phase oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean peak success against N for several error magnitudes
    Fig2(Common),
    /// Error magnitude tolerated at fixed success, and its scaling with N
    Fig3(Common),
    /// Continuous-time search exponent against the noise scaling
    Fig4(Common),
    /// Per-step ensemble moments for one discrete configuration
    RunDiscrete(Common),
    /// Dephased Bloch trajectories for one library size
    RunContinuous(Common),
    /// Optimal run length and expected cost against N
    Complexity(Common),
}

#[derive(Args)]
struct Common {
    /// TOML file overriding the experiment defaults
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads; results do not depend on this
    #[arg(long)]
    threads: Option<usize>,
}

fn run(cli: Cli) -> Result<()> {
    let (kind, common) = match cli.command {
        Command::Fig2(c) => (ExperimentKind::Fig2, c),
        Command::Fig3(c) => (ExperimentKind::Fig3, c),
        Command::Fig4(c) => (ExperimentKind::Fig4, c),
        Command::RunDiscrete(c) => (ExperimentKind::RunDiscrete, c),
        Command::RunContinuous(c) => (ExperimentKind::RunContinuous, c),
        Command::Complexity(c) => (ExperimentKind::Complexity, c),
    };
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(kind, path)?,
        None => ExperimentConfig::defaults(kind),
    };
    cfg.kind = kind;
    if let Some(seed) = common.seed {
        cfg.base_seed = seed;
    }
    if let Some(trials) = common.trials {
        cfg.trials = trials;
    }
    if let Some(out) = common.out {
        cfg.out_dir = out;
    }
    cfg.validate()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::Config(e.to_string()))?;
    let manifest = pool.install(|| execute(&cfg, &cfg.out_dir))?;

    println!("{} finished in {:.2} s", kind, manifest.wall_clock_seconds);
    for (file, digest) in &manifest.files {
        println!("  {} {}", digest, cfg.out_dir.join(file).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
