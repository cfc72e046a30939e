use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use dce::acceptance::Settings;
use dce::commands::{self, parse_values, SimulateOptions, SweepAxis};
use dce::config::RunConfig;
use dce::Error;

#[derive(Parser)]
#[command(name = "dce", version, about = "Photon pairs from vacuum in a lossy, time-modulated cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Photon number against time for the configured methods
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        no_timestamp: bool,
        /// Override a config key, e.g. `--set Q=250` (repeatable)
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Asymptotic pair numbers and saturation time across one parameter
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// epsilon, Q or Omega
        #[arg(long)]
        axis: String,
        /// Comma-separated values
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Resonance branches of the drive
    Resonances {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        lmin: i32,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        lmax: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite
    Validate {
        /// Print the report as JSON and write validate.json
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace one criterion's tolerance by an unattainable one (harness self-test)
        #[arg(long, hide = true)]
        corrupt_tolerance: Option<String>,
    },
}

fn load(config: Option<&PathBuf>, overrides: &[String]) -> Result<RunConfig, Error> {
    let mut cfg = match config {
        Some(path) => RunConfig::parse(&fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?)?,
        None => RunConfig::default(),
    };
    for o in overrides {
        cfg.apply_override(o)?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            svg,
            no_timestamp,
            overrides,
        } => {
            let cfg = load(config.as_ref(), &overrides)?;
            let outcome = commands::simulate(&cfg, &SimulateOptions { out, svg, no_timestamp })?;
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            for c in &outcome.run.metadata.cross_checks {
                println!("{} vs {}: max relative difference {:.3e}", c.a, c.b, c.max_relative_difference);
            }
            Ok(0)
        }
        Command::Sweep {
            config,
            axis,
            values,
            out,
            overrides,
        } => {
            let cfg = load(config.as_ref(), &overrides)?;
            let axis: SweepAxis = axis.parse()?;
            let values = parse_values(&values)?;
            let dir = out.unwrap_or_else(|| cfg.output.dir.clone());
            let rows = commands::sweep(&cfg, axis, &values, &dir)?;
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            println!("wrote {} ({} rows, {failed} failed)", dir.join("sweep.csv").display(), rows.len());
            Ok(0)
        }
        Command::Resonances { config, lmin, lmax, out } => {
            let cfg = load(config.as_ref(), &[])?;
            let dir = out.unwrap_or_else(|| cfg.output.dir.clone());
            let table = commands::resonances(&cfg, lmin, lmax, &dir)?;
            println!("wrote {} ({} branches)", dir.join("resonances.csv").display(), table.len());
            Ok(0)
        }
        Command::Validate {
            json,
            out,
            corrupt_tolerance,
        } => {
            let settings = Settings {
                corrupt: corrupt_tolerance,
            };
            let dir = if json { Some(out.unwrap_or_else(|| PathBuf::from("."))) } else { out };
            let report = commands::validate(&settings, dir.as_deref())?;
            if json {
                print!("{}", report.to_json()?);
            } else {
                print!("{}", report.table());
            }
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = e.exit_code();
            let record = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": code });
            eprintln!("{record}");
            ExitCode::from(code as u8)
        }
    }
}
