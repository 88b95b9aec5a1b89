use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use otlab::cli;

#[derive(Parser)]
#[command(
    name = "otlab",
    version,
    about = "Optimal transport and probability metrics on finite measures"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two measure files.
    Dist {
        /// wp, tv, ks, kuiper, levy or lp.
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        a: PathBuf,
        b: PathBuf,
    },
    /// Optimal transport plan between two measure files.
    Transport {
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
        a: PathBuf,
        b: PathBuf,
    },
    /// Seeded random measure.
    Gen {
        /// line, euclidean, sphere or discrete.
        #[arg(long)]
        space: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match &args.command {
        Command::Dist { metric, p, a, b } => cli::cmd_dist(metric, *p, a, b),
        Command::Transport { p, emit_plan, a, b } => cli::cmd_transport(a, b, *p, emit_plan.as_deref()),
        Command::Gen {
            space,
            dim,
            atoms,
            seed,
            out,
        } => cli::cmd_gen(space, *dim, *atoms, *seed, out.as_deref()),
        Command::Verify { suite, seed, trials } => cli::cmd_verify(suite, *seed, *trials),
    };
    match result {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(text) = &e.output {
                println!("{text}");
            }
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code as u8)
        }
    }
}
