use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ivp_funnel::{Precision, SolveConfig};

mod commands;

/// Rigorous enclosures of all solutions of y' = f(x, y), y(x0) = y0.
#[derive(Parser, Debug)]
#[command(name = "ivp-funnel", version, about)]
struct Cli {
    /// Worker threads for the solver (default: one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enclose every solution on the automatically chosen local interval
    Solve {
        instance: PathBuf,
        /// Solve through x,y1,...,yn instead of the instance's (x0, y0)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<f64>>,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Grow the enclosure round by round towards the maximal interval
    Extend {
        instance: PathBuf,
        #[arg(long, default_value_t = 8)]
        rounds: usize,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Write an instance file for the parallel gadget over the given streams
    Gadget {
        /// Streams as a JSON list of lists over {0,1,2}, e.g. "[[0],[2,1]]"
        #[arg(long)]
        streams: String,
        #[arg(long, default_value_t = 24)]
        cell_budget: u32,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode LLPO bits from a solve or extension result of a gadget instance
    Decode {
        result: PathBuf,
        instance: PathBuf,
        /// Decode streams 0..bits
        #[arg(long)]
        bits: usize,
        /// Highest cell index the decoder may use
        #[arg(long, default_value_t = 48)]
        max_cell: u32,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Run an oracle comparison suite
    Verify {
        /// closed-forms, funnel, decode, extension or interval
        #[arg(long)]
        suite: String,
        /// Random samples for the interval suite
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Structured)]
        format: Format,
    },
}

#[derive(Args, Debug, Default)]
struct SolveFlags {
    /// Grid depth L (2^L cells per tube)
    #[arg(long)]
    grid_depth: Option<u32>,
    /// Picard refinement rounds per branch
    #[arg(long)]
    refine_rounds: Option<usize>,
    /// Bisection budget of the branch-and-prune search
    #[arg(long)]
    max_bisections: Option<usize>,
    /// Working precision in bits (1..=53)
    #[arg(long)]
    precision: Option<u32>,
}

impl SolveFlags {
    fn apply(&self, base: SolveConfig) -> Result<SolveConfig, commands::Failure> {
        let precision = match self.precision {
            Some(bits) => Precision::new(bits)
                .ok_or_else(|| commands::Failure::usage(format!("precision must be in 1..=53, got {bits}")))?,
            None => base.precision,
        };
        let depth = self.grid_depth.unwrap_or(base.depth);
        if depth > ivp_funnel::tube::MAX_DEPTH {
            return Err(commands::Failure::usage(format!(
                "grid depth must be at most {}, got {depth}",
                ivp_funnel::tube::MAX_DEPTH
            )));
        }
        Ok(SolveConfig {
            depth,
            refine_rounds: self.refine_rounds.unwrap_or(base.refine_rounds),
            max_bisections: self.max_bisections.unwrap_or(base.max_bisections),
            precision,
            ..base
        })
    }
}

#[derive(Args, Debug)]
struct OutFlags {
    /// Output directory for result documents and CSV dumps
    #[arg(long, env = "FUNNEL_OUT_DIR", default_value = ".")]
    out: PathBuf,
    /// What goes to standard output
    #[arg(long, value_enum, default_value_t = Format::Structured)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Structured,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
