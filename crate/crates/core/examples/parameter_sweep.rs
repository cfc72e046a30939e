//! Asymptotic pair number and saturation time across modulation depths.

use dce::commands::{sweep, SweepAxis};
use dce::config::RunConfig;

fn main() -> dce::Result<()> {
    let dir = tempfile::tempdir()?;
    let mut cfg = RunConfig::default();
    cfg.apply_override("Q=100")?;
    let values = [0.001, 0.005, 0.01, 0.02, 0.04, 0.08];
    let rows = sweep(&cfg, SweepAxis::Epsilon, &values, dir.path())?;

    println!("{:>8} {:>12} {:>14} {:>14} {:>10}", "epsilon", "nu0/gamma", "N_inf weak", "N_inf general", "t_sat/tau");
    for r in &rows {
        let ratio = r.nu0.zip(r.gamma).map(|(n, g)| n / g).unwrap_or(f64::NAN);
        println!(
            "{:>8} {ratio:>12.3} {:>14.6e} {:>14.6e} {:>10.3}",
            r.value,
            r.n_inf_weak.unwrap_or(f64::NAN),
            r.n_inf_general.unwrap_or(f64::NAN),
            r.t_sat_over_tau.unwrap_or(f64::NAN)
        );
    }
    print!("{}", std::fs::read_to_string(dir.path().join("sweep.csv"))?);
    Ok(())
}
