//! The four driver operations behind the `dce` binary: simulate, sweep,
//! resonances and validate. Each returns its results and writes its artifacts.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::acceptance::{run_all, CriterionReport, Settings};
use crate::config::{DriveSpec, Loss, RunConfig};
use crate::error::{Error, Result};
use crate::modulation::{resonance_table, ResonanceBranch};
use crate::output::{
    resonances_csv, series_csv, series_json, sweep_csv, write_atomic, SweepRow,
};
use crate::photon::{asymptotic_pair_number, compute_series, pair_coupling, saturation_time, Regime, SeriesRun};
use crate::plot::render_svg;

#[derive(Clone, Debug, Default)]
pub struct SimulateOptions {
    /// Overrides `[output] dir`.
    pub out: Option<PathBuf>,
    /// Forces SVG output on (the config can also request it).
    pub svg: bool,
    /// Suppresses the SVG timestamp regardless of the config.
    pub no_timestamp: bool,
}

#[derive(Debug)]
pub struct SimulateOutcome {
    pub run: SeriesRun,
    pub files: Vec<PathBuf>,
}

/// Computes the photon-number series and writes `series.csv`, `series.json`
/// and optionally `series.svg`. Nothing is written unless the computation succeeds.
pub fn simulate(cfg: &RunConfig, opts: &SimulateOptions) -> Result<SimulateOutcome> {
    cfg.validate()?;
    let model = cfg.model()?;
    let run = compute_series(&model.cavity, &model.mode, &model.profile, &cfg.grid, &cfg.methods, &cfg.numerics)?;

    let dir = opts.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    let csv = series_csv(&run.series);
    let json = series_json(&run.series, &run.metadata)?;
    let svg = (opts.svg || cfg.output.svg).then(|| {
        let stamp = (cfg.output.timestamp && !opts.no_timestamp)
            .then(|| format!("generated {}", chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ")));
        render_svg(&run.series, Some(run.metadata.asymptote_general), stamp.as_deref())
    });

    let mut files = vec![dir.join("series.csv"), dir.join("series.json")];
    write_atomic(&files[0], csv.as_bytes())?;
    write_atomic(&files[1], json.as_bytes())?;
    if let Some(svg) = svg {
        let p = dir.join("series.svg");
        write_atomic(&p, svg.as_bytes())?;
        files.push(p);
    }
    Ok(SimulateOutcome { run, files })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    Epsilon,
    Q,
    Omega,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::Epsilon => "epsilon",
            SweepAxis::Q => "Q",
            SweepAxis::Omega => "Omega",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(SweepAxis::Epsilon),
            "Q" => Ok(SweepAxis::Q),
            "Omega" => Ok(SweepAxis::Omega),
            other => Err(Error::validation(
                "axis",
                format!("expected epsilon, Q or Omega, got `{other}`"),
            )),
        }
    }
}

/// Parses a comma-separated list of numbers.
pub fn parse_values(list: &str) -> Result<Vec<f64>> {
    let values = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::validation("values", format!("cannot parse `{s}` as a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::validation("values", "need at least one value"));
    }
    Ok(values)
}

fn sweep_row(cfg: &RunConfig, axis: SweepAxis, value: f64) -> SweepRow {
    let mut row = SweepRow {
        value,
        nu0: None,
        gamma: None,
        n_inf_weak: None,
        n_inf_general: None,
        t_sat: None,
        t_sat_over_tau: None,
        error: None,
    };
    let mut c = cfg.clone();
    match axis {
        SweepAxis::Epsilon => c.epsilon = value,
        SweepAxis::Q => c.loss = Loss::Quality(value),
        SweepAxis::Omega => c.drive = DriveSpec::Frequency(value),
    }
    let result = (|| -> Result<()> {
        let model = c.model()?;
        let gamma = model.mode.linewidth();
        let nu0 = pair_coupling(&model.profile);
        row.nu0 = Some(nu0);
        row.gamma = Some(gamma);
        row.n_inf_weak = Some(asymptotic_pair_number(nu0, gamma, Regime::Weak)?);
        row.n_inf_general = Some(asymptotic_pair_number(nu0, gamma, Regime::General)?);
        let ts = saturation_time(nu0, gamma)?;
        row.t_sat = ts;
        row.t_sat_over_tau = ts.map(|t| t * gamma);
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(format!("{}: {e}", e.kind()));
    }
    row
}

/// Asymptotic pair numbers and saturation time for each value of one parameter,
/// written to `sweep.csv` in input order. Failing values are recorded in their row.
pub fn sweep(cfg: &RunConfig, axis: SweepAxis, values: &[f64], out: &Path) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::validation("values", "need at least one value"));
    }
    let rows: Vec<SweepRow> = values.iter().map(|&v| sweep_row(cfg, axis, v)).collect();
    write_atomic(&out.join("sweep.csv"), sweep_csv(axis.as_str(), &rows).as_bytes())?;
    Ok(rows)
}

/// Resonance branches for `l ∈ [l_min, l_max]`, written to `resonances.csv`.
pub fn resonances(cfg: &RunConfig, l_min: i32, l_max: i32, out: &Path) -> Result<Vec<ResonanceBranch>> {
    if l_min > l_max {
        return Err(Error::validation("lmin", format!("range [{l_min}, {l_max}] is empty")));
    }
    let model = cfg.model()?;
    let table = resonance_table(&model.profile, l_min..=l_max);
    write_atomic(&out.join("resonances.csv"), resonances_csv(&table).as_bytes())?;
    Ok(table)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

impl ValidationReport {
    pub fn table(&self) -> String {
        let mut s: String = self.criteria.iter().map(|c| c.line() + "\n").collect();
        let failed: Vec<&str> = self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
        if failed.is_empty() {
            s.push_str("all criteria passed\n");
        } else {
            s.push_str(&format!("failed: {}\n", failed.join(", ")));
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Runs the acceptance suite. With `out`, also writes `validate.json` there.
pub fn validate(settings: &Settings, out: Option<&Path>) -> Result<ValidationReport> {
    let criteria = run_all(settings);
    let report = ValidationReport {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    };
    if let Some(dir) = out {
        write_atomic(&dir.join("validate.json"), report.to_json()?.as_bytes())?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_sweep_gives_sinh_squared_of_half_eps_q() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig::parse("epsilon = 0.01").unwrap();
        let rows = sweep(&cfg, SweepAxis::Q, &[50.0, 100.0, 200.0], dir.path()).unwrap();
        for (row, x) in rows.iter().zip([0.25f64, 0.5, 1.0]) {
            let want = x.sinh().powi(2);
            assert!((row.n_inf_general.unwrap() - want).abs() < 1e-14 * want);
        }
        let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn epsilon_sweep_keeps_failures_in_row() {
        let dir = tempfile::tempdir().unwrap();
        let rows = sweep(&RunConfig::default(), SweepAxis::Epsilon, &[0.0, 0.02, 1.5], dir.path()).unwrap();
        assert_eq!(rows[0].n_inf_general, Some(0.0));
        assert_eq!(rows[0].t_sat, None);
        assert!(rows[1].error.is_none());
        assert!(rows[2].error.as_deref().unwrap().starts_with("validation"));
        assert!(sweep(&RunConfig::default(), SweepAxis::Q, &[], dir.path()).is_err());
    }

    #[test]
    fn omega_sweep_uses_the_stationary_coupling() {
        let dir = tempfile::tempdir().unwrap();
        let rows = sweep(&RunConfig::default(), SweepAxis::Omega, &[2.0, 1.0, 3.0], dir.path()).unwrap();
        assert_eq!(rows[0].nu0, Some(0.005));
        // Ω = 1 is the l = −3 / l = −1 branch: weaker than the principal one
        assert!(rows[1].nu0.unwrap() < 1e-4 && rows[1].nu0.unwrap() > 0.0);
        assert_eq!(rows[2].nu0, Some(0.0));
    }

    #[test]
    fn axis_and_values_parse() {
        assert_eq!("Q".parse::<SweepAxis>().unwrap(), SweepAxis::Q);
        assert!("q".parse::<SweepAxis>().is_err());
        assert_eq!(parse_values("1, 2.5,3e2").unwrap(), vec![1.0, 2.5, 300.0]);
        assert!(parse_values("").is_err());
        assert!(parse_values("1,x").is_err());
    }

    #[test]
    fn resonance_command() {
        let dir = tempfile::tempdir().unwrap();
        let t = resonances(&RunConfig::default(), -5, 5, dir.path()).unwrap();
        assert_eq!((t[0].harmonic_order, t[0].sign), (0, -1));
        let empty = resonances(&RunConfig::default(), 2, 4, dir.path()).unwrap();
        assert!(empty.is_empty());
        let csv = std::fs::read_to_string(dir.path().join("resonances.csv")).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(resonances(&RunConfig::default(), 3, 2, dir.path()).is_err());
    }

    #[test]
    fn simulate_writes_nothing_on_failure() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::parse("epsilon = 0.9\ngamma = 0.001\nmethods = quadrature_general").unwrap();
        cfg.output.dir = dir.path().to_path_buf();
        let err = simulate(&cfg, &SimulateOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn simulate_writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig::parse("epsilon = 0.04\ngamma = 0.01\npoints = 30\nmethods = closed_general, phenomenological")
            .unwrap();
        let opts = SimulateOptions {
            out: Some(dir.path().to_path_buf()),
            svg: true,
            no_timestamp: true,
        };
        let a = simulate(&cfg, &opts).unwrap();
        assert_eq!(a.files.len(), 3);
        let first: Vec<String> = a.files.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect();
        simulate(&cfg, &opts).unwrap();
        let second: Vec<String> = a.files.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect();
        assert_eq!(first, second);
    }
}
