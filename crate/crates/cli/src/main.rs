//! `netlsd`: compute, compare and benchmark spectral graph signatures.

mod commands;
mod config;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{GlobalArgs, RunConfig};
use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "netlsd", version, about = "Heat and wave trace signatures of graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one signature per graph listed in a manifest
    Embed {
        /// Lines of `<graph-id> <path> [label]`; relative paths resolve against the manifest
        manifest: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Failure log; defaults to `<out>.errors`
        #[arg(long)]
        errors: Option<PathBuf>,
        /// Read node tokens as integer ids (unseen ids become isolated nodes)
        #[arg(long)]
        dense_ids: bool,
    },
    /// Distance between two signatures
    Dist {
        file: PathBuf,
        id_a: String,
        id_b: String,
        /// Look `id_b` up in this file instead
        #[arg(long)]
        file_b: Option<PathBuf>,
    },
    /// Nearest signatures to one entry of a file, as `rank,id,distance`
    Knn {
        file: PathBuf,
        query: String,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Write a generated graph as an edge list
    Gen {
        /// ring, wheel, complete, empty, path, er or sbm
        family: String,
        nodes: usize,
        #[arg(long, default_value_t = 10.0)]
        degree: f64,
        #[arg(long, default_value_t = 10)]
        blocks: usize,
        /// Fraction of block model edges that leave their block
        #[arg(long, default_value_t = netlsd::DEFAULT_MIXING_RATIO)]
        mixing: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Degree-preserving randomization of an edge list
    Rewire {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        sweeps: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Classification benchmarks
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Erdős–Rényi against block model graphs, scored by 1-NN accuracy
    Communities {
        /// Size law: n, fixed(n), poisson(l) or uniform(10,m)
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 100)]
        per_class: usize,
        /// heat, heat-empty, wave-complete, ...; overrides --kernel and --norm
        #[arg(long)]
        method: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        #[arg(long, default_value_t = 10.0)]
        degree: f64,
        #[arg(long, default_value_t = 10)]
        blocks: usize,
        /// Mixing ratio, or `degenerate` for p_in = p_out
        #[arg(long, default_value = "0.1")]
        mixing: String,
        /// Also print one `trial,<index>,<value>` line per trial
        #[arg(long)]
        per_trial: bool,
    },
    /// Real graphs against their rewired copies
    Rewired {
        manifest: PathBuf,
        #[arg(long, default_value_t = 10)]
        sweeps: usize,
        #[arg(long)]
        method: Option<String>,
        /// roc_auc or accuracy
        #[arg(long, default_value = "roc_auc")]
        metric: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        #[arg(long)]
        per_trial: bool,
    },
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = RunConfig::from_args(&cli.global)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| Failure::Data(format!("cannot start worker pool: {e}")))?;
    let explicit_grid = cli.global.grid.is_some();
    let with_method = |name: &Option<String>| match name {
        Some(name) => cfg.with_method_name(name, explicit_grid),
        None => Ok(cfg.clone()),
    };
    match cli.command {
        Command::Embed { manifest, out, errors, dense_ids } => {
            commands::embed(&cfg, &manifest, &out, errors.as_deref(), dense_ids)
        }
        Command::Dist { file, id_a, id_b, file_b } => commands::dist(&file, &id_a, &id_b, file_b.as_deref()),
        Command::Knn { file, query, count } => commands::knn(&file, &query, count as usize),
        Command::Gen { family, nodes, degree, blocks, mixing, out } => {
            commands::gen(&family, nodes, degree, blocks, mixing, cfg.seed, out.as_deref())
        }
        Command::Rewire { input, sweeps, out } => commands::rewire(&input, sweeps, cfg.seed, out.as_deref()),
        Command::Bench { which } => match which {
            BenchCommand::Communities {
                n,
                per_class,
                method,
                trials,
                train_fraction,
                degree,
                blocks,
                mixing,
                per_trial,
            } => {
                let cfg = with_method(&method)?;
                let bench = commands::CommunityArgs {
                    sizes: n,
                    per_class,
                    trials,
                    train_fraction,
                    degree,
                    blocks,
                    mixing,
                };
                commands::bench_communities(&cfg, &bench, per_trial)
            }
            BenchCommand::Rewired {
                manifest,
                sweeps,
                method,
                metric,
                trials,
                train_fraction,
                per_trial,
            } => {
                let cfg = with_method(&method)?;
                commands::bench_rewired(&cfg, &manifest, sweeps, &metric, trials, train_fraction, per_trial)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("netlsd: {err}");
            ExitCode::from(err.code())
        }
    }
}
