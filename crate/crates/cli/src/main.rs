use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dubreach::{GridSpec, Point};
use dubreach_cli::{cmd_query, cmd_reach, cmd_svg, cmd_verify, load_instance, CliError, LoadOptions, VerifyOptions};

#[derive(Parser)]
#[command(name = "dubreach", version, about = "Reachable regions of a forward-only unit-radius vehicle in a convex polygon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file (TOML)
    instance: PathBuf,
    /// Multiply all input coordinates by this factor
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Length and angle tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Boundary band width
    #[arg(long)]
    band: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reachable region and write it as JSON
    Reach {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Classify one point, optionally printing a witness path
    Query {
        #[command(flatten)]
        common: Common,
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        witness: bool,
    },
    /// Compare the analytic region against the grid oracle
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = GridSpec::default().dx)]
        grid_dx: f64,
        #[arg(long, default_value_t = GridSpec::default().dtheta)]
        grid_dtheta: f64,
        /// Forward step of the motion primitives (defaults to the grid spacing)
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.98)]
        threshold: f64,
    },
    /// Render polygon, region, core, Bfil disks and start to SVG
    Svg {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        out: PathBuf,
        /// Overlay a witness path to this point
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
        show_witness: Option<Vec<f64>>,
    },
}

fn load(c: &Common) -> Result<dubreach_cli::Instance, CliError> {
    load_instance(&c.instance, &LoadOptions { scale: c.scale, tol: c.tol, band: c.band })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Reach { common, out } => cmd_reach(&load(&common)?, &out),
        Command::Query { common, x, y, witness } => cmd_query(&load(&common)?, Point::new(x, y), witness),
        Command::Verify { common, samples, grid_dx, grid_dtheta, grid_step, seed, threshold } => {
            let grid = GridSpec { dx: grid_dx, dtheta: grid_dtheta, step: grid_step.unwrap_or(grid_dx) };
            cmd_verify(&load(&common)?, &VerifyOptions { samples, grid, seed, threshold })
        }
        Command::Svg { common, out, show_witness } => {
            let target = show_witness.map(|v| Point::new(v[0], v[1]));
            cmd_svg(&load(&common)?, &out, target)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
