mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmless_core::solvers::{DEFAULT_BRUTE_FORCE_CAP, DEFAULT_COVER_CAP};
use harmless_core::sparsity::{WaterlilyParams, DEFAULT_CLOSURE_BOUND, DEFAULT_MAX_HUBS};
use serde::Serialize;

use report::Format;

/// Exact solvers, kernelization and hardness gadgets for Harmless Set.
///
/// Exit status: 0 on success, 1 when a requested decision is NO, 2 on errors.
#[derive(Parser, Serialize)]
#[command(name = "harmless", version)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Maximum harmless set of an instance.
    Solve(SolveArgs),
    /// Shrink an instance to an equivalent kernel.
    Kernelize(KernelizeArgs),
    /// Turn a Multicoloured Clique file into a harmless-set instance.
    ReduceMcc(ReduceArgs),
    /// Build the reduction of an MCC file and check equivalence exhaustively.
    VerifyReduction(VerifyArgs),
    /// Structural statistics: core, projection profiles, waterlilies.
    Stats(StatsArgs),
    /// Generate random instances and cross-check the solvers and the kernel.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Vc,
}

#[derive(Args, Serialize)]
pub struct Caps {
    /// Most selectable vertices the branch and bound solver accepts.
    #[arg(long, env = "HARMLESS_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_FORCE_CAP, value_parser = positive)]
    pub brute_cap: usize,

    /// Largest vertex cover the cover-based solver accepts.
    #[arg(long, env = "HARMLESS_COVER_CAP", default_value_t = DEFAULT_COVER_CAP, value_parser = positive)]
    pub cover_cap: usize,
}

#[derive(Args, Serialize)]
pub struct LilyArgs {
    /// Projection bound of the closure step.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_BOUND, value_parser = positive)]
    pub closure_bound: usize,

    /// Hub budget of the scattering step.
    #[arg(long, default_value_t = DEFAULT_MAX_HUBS)]
    pub max_hubs: usize,

    /// Profile classes tried as waterlily seeds.
    #[arg(long, default_value_t = 8, value_parser = positive)]
    pub max_classes: usize,
}

impl LilyArgs {
    pub fn params(&self) -> WaterlilyParams {
        WaterlilyParams {
            closure_bound: self.closure_bound,
            max_hubs: self.max_hubs,
            max_classes: self.max_classes,
        }
    }
}

#[derive(Args, Serialize)]
pub struct SolveArgs {
    /// Instance file (text or JSON), `-` for stdin.
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Method::Brute)]
    pub method: Method,

    /// Override the instance's k.
    #[arg(short, long)]
    pub k: Option<usize>,

    /// Worker threads for the cover-based solver (default: all cores).
    #[arg(long, value_parser = positive)]
    pub workers: Option<usize>,

    #[command(flatten)]
    pub caps: Caps,

    /// Report whether a solution of size k exists; exit 1 if not.
    #[arg(long)]
    pub decide: bool,

    /// Include wall-clock time (makes reports non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Serialize)]
pub struct KernelizeArgs {
    /// Instance file (text or JSON), `-` for stdin.
    pub input: PathBuf,

    /// Override the instance's k.
    #[arg(short, long)]
    pub k: Option<usize>,

    /// Threshold bound for the exchange rule. Without it thresholds are
    /// capped at k + 1.
    #[arg(short, long)]
    pub p: Option<usize>,

    /// Write the kernel, with the core encoded by two extra vertices.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    #[command(flatten)]
    pub lily: LilyArgs,

    /// Cap for deciding the kernel by branch and bound.
    #[arg(long, env = "HARMLESS_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_FORCE_CAP, value_parser = positive)]
    pub brute_cap: usize,

    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Serialize)]
pub struct ReduceArgs {
    /// MCC file: `p mcc <k> <n>` then `e <i> <x> <j> <y>`, 1-indexed.
    pub input: PathBuf,

    /// Where to write the instance (`.json` selects the JSON format).
    #[arg(short, long)]
    pub output: PathBuf,

    /// Role registry path (default: output path plus `.roles.json`).
    #[arg(long)]
    pub roles: Option<PathBuf>,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    /// MCC file.
    pub input: PathBuf,

    #[arg(long, env = "HARMLESS_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_FORCE_CAP, value_parser = positive)]
    pub brute_cap: usize,
}

#[derive(Args, Serialize)]
pub struct StatsArgs {
    /// Instance file (text or JSON), `-` for stdin.
    pub input: PathBuf,

    /// Largest projection radius to profile.
    #[arg(long, default_value_t = 2, value_parser = positive)]
    pub radius: usize,

    /// Target set, 0-based and comma separated (default: a 1-dominating set
    /// of the core).
    #[arg(long, value_delimiter = ',')]
    pub targets: Option<Vec<usize>>,

    /// Dump the best waterlily for the core.
    #[arg(long)]
    pub waterlily: bool,

    /// Waterlily radius.
    #[arg(long, default_value_t = 2)]
    pub lily_radius: usize,

    /// Waterlily depth.
    #[arg(long, default_value_t = 1)]
    pub lily_depth: usize,

    #[command(flatten)]
    pub lily: LilyArgs,
}

#[derive(Args, Serialize)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 200)]
    pub count: usize,

    /// Largest instance size.
    #[arg(long, default_value_t = 10, value_parser = positive)]
    pub max_n: usize,

    /// Directory to write the generated corpus into.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_parser = positive)]
    pub workers: Option<usize>,

    #[command(flatten)]
    pub caps: Caps,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.report);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
