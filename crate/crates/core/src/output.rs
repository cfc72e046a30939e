//! CSV and JSON serialization of results, written atomically.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::model::PhotonNumberSeries;
use crate::modulation::ResonanceBranch;
use crate::photon::SeriesMetadata;

/// Full double precision: 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `contents` to `path` through a temporary file in the same directory
/// and an atomic rename, so readers see either nothing or the whole file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Columns `t, t_over_tau`, then one per method in canonical order.
pub fn series_csv(series: &PhotonNumberSeries) -> String {
    let mut out = String::from("t,t_over_tau");
    for (tag, _) in series.curves() {
        out.push(',');
        out.push_str(tag.as_str());
    }
    out.push('\n');
    let curves: Vec<&[f64]> = series.curves().map(|(_, v)| v).collect();
    for (i, (t, s)) in series.times().iter().zip(series.times_over_tau()).enumerate() {
        out.push_str(&fmt_f64(*t));
        out.push(',');
        out.push_str(&fmt_f64(s));
        for c in &curves {
            out.push(',');
            out.push_str(&fmt_f64(c[i]));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    metadata: &'a SeriesMetadata,
    t: &'a [f64],
    t_over_tau: Vec<f64>,
    curves: serde_json::Map<String, serde_json::Value>,
}

/// JSON document with the metadata and every curve.
pub fn series_json(series: &PhotonNumberSeries, metadata: &SeriesMetadata) -> Result<String> {
    let mut curves = serde_json::Map::new();
    for (tag, values) in series.curves() {
        curves.insert(tag.as_str().into(), serde_json::to_value(values)?);
    }
    let doc = SeriesDocument {
        metadata,
        t: series.times(),
        t_over_tau: series.times_over_tau().collect(),
        curves,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

/// `l, sign, Omega_over_omega0, alpha, bessel_weight, dominant`; the first row is the dominant branch.
pub fn resonances_csv(table: &[ResonanceBranch]) -> String {
    let mut out = String::from("l,sign,Omega_over_omega0,alpha,bessel_weight,dominant\n");
    for (i, b) in table.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            b.harmonic_order,
            b.sign,
            fmt_f64(b.resonant_frequency),
            fmt_f64(b.bessel_argument),
            fmt_f64(b.bessel_weight),
            i == 0
        );
    }
    out
}

/// One row of a parameter sweep; failures are kept in-row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub nu0: Option<f64>,
    pub gamma: Option<f64>,
    pub n_inf_weak: Option<f64>,
    pub n_inf_general: Option<f64>,
    pub t_sat: Option<f64>,
    pub t_sat_over_tau: Option<f64>,
    pub error: Option<String>,
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn sweep_csv(axis: &str, rows: &[SweepRow]) -> String {
    let mut out = format!("{axis},nu0,gamma,N_inf_weak,N_inf_general,t_sat,t_sat_over_tau,error\n");
    for r in rows {
        let err = r.error.as_deref().unwrap_or("").replace(['"', '\n'], " ");
        let err = if err.is_empty() { err } else { format!("\"{err}\"") };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(r.value),
            opt(r.nu0),
            opt(r.gamma),
            opt(r.n_inf_weak),
            opt(r.n_inf_general),
            opt(r.t_sat),
            opt(r.t_sat_over_tau),
            err
        );
    }
    out
}
