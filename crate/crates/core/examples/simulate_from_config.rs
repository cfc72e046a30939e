//! Runs a config file through the same path as `dce simulate`.
//!
//! Usage: `cargo run --example simulate_from_config -- [config] [out dir]`

use std::path::PathBuf;

use dce::commands::{simulate, SimulateOptions};
use dce::config::RunConfig;

fn main() -> dce::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/weak.cfg").into());
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("dce-example"));

    let cfg = RunConfig::parse(&std::fs::read_to_string(&path)?)?;
    let outcome = simulate(&cfg, &SimulateOptions { out: Some(out), svg: true, no_timestamp: true })?;
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    for c in &outcome.run.metadata.cross_checks {
        println!("{:>16} vs {:<16} max rel diff {:.2e}", c.a.as_str(), c.b.as_str(), c.max_relative_difference);
    }
    Ok(())
}
