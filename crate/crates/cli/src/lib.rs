//! The `sofic` command-line tool.
//!
//! Every subcommand produces an [`Outcome`]: a JSON payload wrapped in a
//! deterministic envelope, plus a short text table for the terminal.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
mod error;
pub mod report;

pub use error::CliError;
pub use report::Outcome;

#[derive(Debug, Parser)]
#[command(name = "sofic", version, about = "Sofic approximations and rank transfer over F_p group rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct LimitArgs {
    /// Largest Cayley ball that may be built.
    #[arg(long, env = "SOFIC_MAX_BALL", default_value_t = sofic_core::groups::DEFAULT_MAX_BALL)]
    pub max_ball: usize,
    /// Largest approximation graph that may be built.
    #[arg(long, env = "SOFIC_MAX_VERTICES", default_value_t = sofic_core::sofic::DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Size and edge count of the ball N_r(B).
    CayleyBall {
        /// `Z^k` or `finite:<table file>`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Verify a graph file as a sofic approximation.
    SoficVerify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        /// `auto` (every vertex with a Cayley ball), `all`, or a comma-separated list.
        #[arg(long, default_value = "auto")]
        good: String,
        /// Tolerance `a/b`; defaults to `(|V|-|V0|+1)/(|V|+1)`.
        #[arg(long)]
        epsilon: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Greedy separated selection of good vertices.
    WeissSelect {
        #[arg(long)]
        group: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r0: usize,
        /// `auto` (every vertex with a Cayley (2r0+1)-ball), `all`, or a comma-separated list.
        #[arg(long, default_value = "auto")]
        good: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Compute xy and yx for two elements of an instance file.
    DfCheck {
        instance: PathBuf,
        /// Defaults to the first `check` directive.
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
    },
    /// Run the rank-counting transfer on a torus or finite-group approximation.
    TransferRun {
        instance: PathBuf,
        /// Defaults to the first `transfer` directive.
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, requires = "phi")]
        psi: Option<String>,
        #[arg(long, default_value = "both")]
        mode: sofic_core::Mode,
        /// Torus side; defaults to the smallest admissible value.
        #[arg(long)]
        torus_n: Option<usize>,
        /// Kernel search bound; defaults to 3·(support radius)+3.
        #[arg(long, env = "SOFIC_MAX_KERNEL_RADIUS")]
        max_kernel_radius: Option<usize>,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::CayleyBall { group, radius, limits } => commands::cayley_ball(group, *radius, limits),
        Command::SoficVerify { group, graph, radius, good, epsilon, limits } => {
            commands::sofic_verify(group, graph, *radius, good, epsilon.as_deref(), limits)
        }
        Command::WeissSelect { group, graph, r0, good, limits } => {
            commands::weiss_select(group, graph, *r0, good, limits)
        }
        Command::DfCheck { instance, x, y } => {
            commands::df_check(instance, x.as_deref().zip(y.as_deref()))
        }
        Command::TransferRun { instance, phi, psi, mode, torus_n, max_kernel_radius, limits } => {
            commands::transfer_run(
                instance,
                phi.as_deref().map(|phi| (phi, psi.as_deref())),
                *mode,
                *torus_n,
                *max_kernel_radius,
                limits,
            )
        }
    }
}
