//! Domain types shared by every computation module.
//!
//! Internally all times are measured in units of `1/ω₀` and all frequencies in
//! units of `ω₀`, so the base cavity frequency is exactly 1. Physical-unit
//! values enter through [`CavityConfig`] and are converted on ingestion.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

/// Unit system of the physical-layer cavity description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// `c = 1`; lengths and times share one arbitrary unit.
    Normalized,
    /// Metres, seconds, rad/s.
    Si,
}

impl UnitSystem {
    pub fn light_speed(self) -> f64 {
        match self {
            UnitSystem::Normalized => 1.0,
            UnitSystem::Si => SPEED_OF_LIGHT_SI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            UnitSystem::Normalized => "normalized",
            UnitSystem::Si => "si",
        }
    }
}

impl FromStr for UnitSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(UnitSystem::Normalized),
            "si" => Ok(UnitSystem::Si),
            other => Err(Error::validation(
                "units",
                format!("expected `normalized` or `si`, got `{other}`"),
            )),
        }
    }
}

/// Static cavity geometry and medium.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    mode_index: u32,
    refractive_index_base: f64,
    cavity_length: f64,
    units: UnitSystem,
    wavenumber: f64,
    base_frequency: f64,
}

fn wavenumber_of(mode_index: u32, length: f64) -> f64 {
    2.0 * PI * f64::from(mode_index) / length
}

fn base_frequency_of(wavenumber: f64, n0: f64, units: UnitSystem) -> f64 {
    wavenumber * units.light_speed() / n0
}

impl CavityConfig {
    /// Cavity in normalized units (`c = 1`).
    pub fn new(mode_index: i64, length: f64, refractive_index: f64) -> Result<Self> {
        Self::with_units(mode_index, length, refractive_index, UnitSystem::Normalized)
    }

    pub fn with_units(
        mode_index: i64,
        length: f64,
        refractive_index: f64,
        units: UnitSystem,
    ) -> Result<Self> {
        if mode_index < 1 || mode_index > i64::from(u32::MAX) {
            return Err(Error::validation(
                "mode_index",
                format!("must be a positive integer, got {mode_index}"),
            ));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::validation(
                "length",
                format!("must be positive and finite, got {length}"),
            ));
        }
        if !(refractive_index > 0.0 && refractive_index.is_finite()) {
            return Err(Error::validation(
                "refractive_index",
                format!("must be positive and finite, got {refractive_index}"),
            ));
        }
        let mode_index = mode_index as u32;
        let wavenumber = wavenumber_of(mode_index, length);
        let base_frequency = base_frequency_of(wavenumber, refractive_index, units);
        Ok(Self {
            mode_index,
            refractive_index_base: refractive_index,
            cavity_length: length,
            units,
            wavenumber,
            base_frequency,
        })
    }

    /// The normalized cavity with `ω₀ = 1`: `m = 1`, `n₀ = 1`, `L = 2π`.
    pub fn unit() -> Self {
        Self::new(1, 2.0 * PI, 1.0).expect("unit cavity is valid")
    }

    pub fn mode_index(&self) -> u32 {
        self.mode_index
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index_base
    }

    pub fn length(&self) -> f64 {
        self.cavity_length
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    /// `k_m = 2πm/L`.
    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    /// `ω₀ = k_m c / n₀` in the cavity's own unit system.
    pub fn base_frequency(&self) -> f64 {
        self.base_frequency
    }

    /// Recomputes `ω₀` from `(m, L, n₀)`; equals [`Self::base_frequency`] bit for bit.
    pub fn recomputed_base_frequency(&self) -> f64 {
        base_frequency_of(
            wavenumber_of(self.mode_index, self.cavity_length),
            self.refractive_index_base,
            self.units,
        )
    }

    /// Physical time to dimensionless `ω₀t`.
    pub fn to_internal_time(&self, t: f64) -> f64 {
        t * self.base_frequency
    }

    pub fn from_internal_time(&self, t: f64) -> f64 {
        t / self.base_frequency
    }

    /// Physical angular frequency to units of `ω₀`.
    pub fn to_internal_frequency(&self, omega: f64) -> f64 {
        omega / self.base_frequency
    }

    pub fn from_internal_frequency(&self, omega: f64) -> f64 {
        omega * self.base_frequency
    }
}

/// A lossy cavity mode in internal units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiMode {
    mode_index: u32,
    center_frequency: f64,
    quality_factor: f64,
    linewidth: f64,
    coherence_time: f64,
}

impl QuasiMode {
    /// Quasi-mode with quality factor `Q`; `ω_m` is the static-medium value, 1 internally.
    pub fn new(cfg: &CavityConfig, quality_factor: f64) -> Result<Self> {
        if !(quality_factor > 0.0 && quality_factor.is_finite()) {
            return Err(Error::validation(
                "Q",
                format!("must be positive and finite, got {quality_factor}"),
            ));
        }
        let center_frequency = 1.0;
        let linewidth = center_frequency / quality_factor;
        Ok(Self {
            mode_index: cfg.mode_index(),
            center_frequency,
            quality_factor,
            linewidth,
            coherence_time: 1.0 / linewidth,
        })
    }

    /// Quasi-mode from its linewidth `γ` (units of `ω₀`).
    pub fn from_linewidth(cfg: &CavityConfig, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::validation(
                "gamma",
                format!("must be positive and finite, got {gamma}"),
            ));
        }
        let center_frequency = 1.0;
        Ok(Self {
            mode_index: cfg.mode_index(),
            center_frequency,
            quality_factor: center_frequency / gamma,
            linewidth: gamma,
            coherence_time: 1.0 / gamma,
        })
    }

    pub fn mode_index(&self) -> u32 {
        self.mode_index
    }

    pub fn center_frequency(&self) -> f64 {
        self.center_frequency
    }

    pub fn quality_factor(&self) -> f64 {
        self.quality_factor
    }

    /// Half-width `γ_m = ω_m / Q_m`.
    pub fn linewidth(&self) -> f64 {
        self.linewidth
    }

    /// `τ = 1/γ_m`.
    pub fn coherence_time(&self) -> f64 {
        self.coherence_time
    }
}

/// Sinusoidal refractive-index drive `n(t) = n₀(1 + ε sin Ωt)`, internal units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulationProfile {
    amplitude: f64,
    drive_frequency: f64,
    coupling_rate: f64,
    bessel_argument: f64,
}

impl ModulationProfile {
    pub fn new(amplitude: f64, drive_frequency: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&amplitude) {
            return Err(Error::validation(
                "epsilon",
                format!("must satisfy 0 <= epsilon < 1, got {amplitude}"),
            ));
        }
        if !(drive_frequency > 0.0 && drive_frequency.is_finite()) {
            return Err(Error::validation(
                "drive",
                format!("drive frequency must be positive and finite, got {drive_frequency}"),
            ));
        }
        Ok(Self {
            amplitude,
            drive_frequency,
            coupling_rate: amplitude / 2.0,
            bessel_argument: 2.0 * amplitude / drive_frequency,
        })
    }

    /// Drive at the dominant `l = 0` resonance, `Ω = 2ω₀`.
    pub fn at_principal_resonance(amplitude: f64) -> Result<Self> {
        Self::new(amplitude, 2.0)
    }

    /// `ε`
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `Ω` in units of `ω₀`.
    pub fn drive_frequency(&self) -> f64 {
        self.drive_frequency
    }

    /// `ν₀ = εω₀/2`.
    pub fn coupling_rate(&self) -> f64 {
        self.coupling_rate
    }

    /// `α = 2εω₀/Ω`.
    pub fn bessel_argument(&self) -> f64 {
        self.bessel_argument
    }
}

/// Coefficients of the two-mode Bogoliubov transformation
/// `A(t) = u A(0) + v A†₋(0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BogoliubovPair {
    pub u: Complex64,
    pub v: Complex64,
}

impl BogoliubovPair {
    pub fn vacuum() -> Self {
        Self {
            u: Complex64::new(1.0, 0.0),
            v: Complex64::new(0.0, 0.0),
        }
    }

    /// Mean pair number `|v|²`.
    pub fn photon_number(&self) -> f64 {
        self.v.norm_sqr()
    }

    /// `|u|² − |v|² − 1`, zero for an exact symplectic evolution.
    pub fn unitarity_defect(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr() - 1.0
    }
}

/// Which route produced a photon-number curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodTag {
    /// Spectral quadrature of the weak-squeezing pair number.
    Quadrature,
    /// Spectral quadrature of the analytically continued `sinh²(r)`.
    QuadratureGeneral,
    ClosedWeak,
    ClosedGeneral,
    /// Term-by-term power series of the general result.
    SeriesOracle,
    Phenomenological,
    /// Bogoliubov ODE at `ξ = 0` with the full oscillatory drive (lossless).
    OdeOracle,
}

impl MethodTag {
    pub const ALL: [MethodTag; 7] = [
        MethodTag::Quadrature,
        MethodTag::QuadratureGeneral,
        MethodTag::ClosedWeak,
        MethodTag::ClosedGeneral,
        MethodTag::SeriesOracle,
        MethodTag::Phenomenological,
        MethodTag::OdeOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodTag::Quadrature => "quadrature",
            MethodTag::QuadratureGeneral => "quadrature_general",
            MethodTag::ClosedWeak => "closed_weak",
            MethodTag::ClosedGeneral => "closed_general",
            MethodTag::SeriesOracle => "series_oracle",
            MethodTag::Phenomenological => "phenomenological",
            MethodTag::OdeOracle => "ode_oracle",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodTag::ALL
            .iter()
            .copied()
            .find(|tag| tag.as_str() == s)
            .ok_or_else(|| Error::validation("methods", format!("unknown method tag `{s}`")))
    }
}

/// Unit in which a [`TimeGrid`] is specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    /// Multiples of the coherence time `τ`.
    Tau,
    /// Dimensionless `ω₀t`.
    Omega0,
}

impl TimeUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            TimeUnit::Tau => "tau",
            TimeUnit::Omega0 => "omega0",
        }
    }
}

impl FromStr for TimeUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(TimeUnit::Tau),
            "omega0" => Ok(TimeUnit::Omega0),
            other => Err(Error::validation(
                "time_unit",
                format!("expected `tau` or `omega0`, got `{other}`"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

impl Spacing {
    pub fn as_str(self) -> &'static str {
        match self {
            Spacing::Log => "log",
            Spacing::Linear => "linear",
        }
    }
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Spacing::Log),
            "linear" => Ok(Spacing::Linear),
            other => Err(Error::validation(
                "spacing",
                format!("expected `log` or `linear`, got `{other}`"),
            )),
        }
    }
}

/// Evaluation times for a photon-number series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub unit: TimeUnit,
}

impl Default for TimeGrid {
    /// 200 log-spaced points over `[1e-3 τ, 10 τ]`.
    fn default() -> Self {
        Self {
            start: 1e-3,
            end: 10.0,
            points: 200,
            spacing: Spacing::Log,
            unit: TimeUnit::Tau,
        }
    }
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::validation("points", "grid must contain at least one point"));
        }
        if !(self.start >= 0.0 && self.start.is_finite()) {
            return Err(Error::validation("t_start", "must be finite and non-negative"));
        }
        if !self.end.is_finite() {
            return Err(Error::validation("t_end", "must be finite"));
        }
        if self.points > 1 && self.end <= self.start {
            return Err(Error::validation("t_end", "must exceed t_start"));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(Error::validation("t_start", "log spacing needs t_start > 0"));
        }
        Ok(())
    }

    /// Grid times in internal units (`ω₀t`), strictly increasing.
    pub fn times(&self, mode: &QuasiMode) -> Result<Vec<f64>> {
        self.validate()?;
        let scale = match self.unit {
            TimeUnit::Tau => mode.coherence_time(),
            TimeUnit::Omega0 => 1.0,
        };
        let n = self.points;
        let raw: Vec<f64> = if n == 1 {
            vec![self.start]
        } else {
            (0..n)
                .map(|i| {
                    let s = i as f64 / (n - 1) as f64;
                    match self.spacing {
                        Spacing::Linear => self.start + s * (self.end - self.start),
                        Spacing::Log => {
                            let (a, b) = (self.start.ln(), self.end.ln());
                            (a + s * (b - a)).exp()
                        }
                    }
                })
                .collect()
        };
        Ok(raw.into_iter().map(|t| t * scale).collect())
    }
}

/// Time grid plus one photon-number curve per computation method.
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonNumberSeries {
    times: Vec<f64>,
    coherence_time: f64,
    values: BTreeMap<MethodTag, Vec<f64>>,
}

impl PhotonNumberSeries {
    pub fn new(times: Vec<f64>, coherence_time: f64) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::validation("grid", "time grid is empty"));
        }
        if times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
            return Err(Error::validation("grid", "times must be finite and non-negative"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation("grid", "times must be strictly increasing"));
        }
        Ok(Self {
            times,
            coherence_time,
            values: BTreeMap::new(),
        })
    }

    pub fn insert(&mut self, tag: MethodTag, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::validation(
                tag.as_str(),
                format!("{} values for {} times", values.len(), self.times.len()),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::validation(
                tag.as_str(),
                format!("photon numbers must be non-negative, got {bad}"),
            ));
        }
        self.values.insert(tag, values);
        Ok(())
    }

    /// Times in internal units.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn coherence_time(&self) -> f64 {
        self.coherence_time
    }

    pub fn times_over_tau(&self) -> impl Iterator<Item = f64> + '_ {
        self.times.iter().map(move |t| t / self.coherence_time)
    }

    pub fn get(&self, tag: MethodTag) -> Option<&[f64]> {
        self.values.get(&tag).map(Vec::as_slice)
    }

    /// Curves in canonical method order.
    pub fn curves(&self) -> impl Iterator<Item = (MethodTag, &[f64])> {
        self.values.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cavity_has_unit_frequency() {
        let c = CavityConfig::new(1, 2.0 * PI, 1.0).unwrap();
        assert_eq!(c.base_frequency(), 1.0);
        let n0 = 1.5;
        let c = CavityConfig::new(1, 2.0 * PI / n0, n0).unwrap();
        assert!((c.base_frequency() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn base_frequency_is_linear_in_mode_index() {
        let a = CavityConfig::new(1, 3.7, 1.3).unwrap();
        let b = CavityConfig::new(2, 3.7, 1.3).unwrap();
        assert_eq!(b.base_frequency(), 2.0 * a.base_frequency());
        assert_eq!(b.wavenumber(), 2.0 * a.wavenumber());
    }

    #[test]
    fn recomputed_frequency_is_exact() {
        for m in 1..20 {
            let c = CavityConfig::with_units(m, 0.0123, 1.77, UnitSystem::Si).unwrap();
            assert_eq!(c.recomputed_base_frequency(), c.base_frequency());
            assert!(c.base_frequency() > 0.0 && c.wavenumber() > 0.0);
        }
    }

    #[test]
    fn bad_cavity_inputs_name_the_field() {
        let check = |r: Result<CavityConfig>, field: &str| match r {
            Err(Error::Validation { field: f, .. }) => assert_eq!(f, field),
            other => panic!("expected validation error for {field}, got {other:?}"),
        };
        check(CavityConfig::new(0, 1.0, 1.0), "mode_index");
        check(CavityConfig::new(-3, 1.0, 1.0), "mode_index");
        check(CavityConfig::new(1, 0.0, 1.0), "length");
        check(CavityConfig::new(1, 1.0, -1.0), "refractive_index");
    }

    #[test]
    fn quasimode_definitions() {
        let cfg = CavityConfig::unit();
        let q = QuasiMode::new(&cfg, 100.0).unwrap();
        assert_eq!(q.linewidth(), 0.01);
        assert!((q.coherence_time() - 100.0).abs() < 1e-12);
        assert!((q.coherence_time() * q.linewidth() - 1.0).abs() <= f64::EPSILON);
        assert!((q.linewidth() * q.quality_factor() - q.center_frequency()).abs() <= f64::EPSILON);
        assert_eq!(QuasiMode::new(&cfg, 50.0).unwrap().linewidth(), 0.02);
        assert!(QuasiMode::new(&cfg, f64::INFINITY).is_err());
        assert!(QuasiMode::new(&cfg, 0.0).is_err());
        assert!(QuasiMode::new(&cfg, -5.0).is_err());
    }

    #[test]
    fn modulation_profile_identities() {
        let p = ModulationProfile::at_principal_resonance(0.01).unwrap();
        assert_eq!(p.coupling_rate(), 0.005);
        assert_eq!(p.bessel_argument(), 0.01);
        let p = ModulationProfile::new(0.0, 1.3).unwrap();
        assert_eq!(p.coupling_rate(), 0.0);
        assert_eq!(p.bessel_argument(), 0.0);
        assert!(ModulationProfile::new(1.0, 2.0).is_err());
        assert!(ModulationProfile::new(0.1, 0.0).is_err());
    }

    #[test]
    fn vacuum_pair_is_unitary() {
        let p = BogoliubovPair::vacuum();
        assert_eq!(p.photon_number(), 0.0);
        assert_eq!(p.unitarity_defect(), 0.0);
    }

    #[test]
    fn series_rejects_bad_shapes() {
        assert!(PhotonNumberSeries::new(vec![], 1.0).is_err());
        assert!(PhotonNumberSeries::new(vec![1.0, 1.0], 1.0).is_err());
        let mut s = PhotonNumberSeries::new(vec![0.0, 1.0], 1.0).unwrap();
        assert!(s.insert(MethodTag::ClosedWeak, vec![0.0]).is_err());
        assert!(s.insert(MethodTag::ClosedWeak, vec![0.0, -1.0]).is_err());
        assert!(s.insert(MethodTag::ClosedWeak, vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn default_grid_spans_onset_and_plateau() {
        let q = QuasiMode::new(&CavityConfig::unit(), 100.0).unwrap();
        let ts = TimeGrid::default().times(&q).unwrap();
        assert_eq!(ts.len(), 200);
        assert!((ts[0] - 0.1).abs() < 1e-12);
        assert!((ts[199] - 1000.0).abs() < 1e-9);
        assert!(ts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn method_tags_round_trip_through_strings() {
        for tag in MethodTag::ALL {
            assert_eq!(tag.as_str().parse::<MethodTag>().unwrap(), tag);
        }
        assert!("quadratur".parse::<MethodTag>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn unit_conversion_round_trips(
                m in 1i64..50,
                length in 1e-3f64..10.0,
                n0 in 1.0f64..4.0,
                t in 0.0f64..1e-6,
                omega in 1e3f64..1e12,
            ) {
                let c = CavityConfig::with_units(m, length, n0, UnitSystem::Si).unwrap();
                let t_back = c.from_internal_time(c.to_internal_time(t));
                let w_back = c.from_internal_frequency(c.to_internal_frequency(omega));
                prop_assert!((t_back - t).abs() <= 1e-12 * t.abs().max(f64::MIN_POSITIVE));
                prop_assert!((w_back - omega).abs() <= 1e-12 * omega);
            }

            #[test]
            fn profile_relations_hold(eps in 0.0f64..0.5, omega in 0.05f64..10.0) {
                let p = ModulationProfile::new(eps, omega).unwrap();
                prop_assert!((2.0 * p.coupling_rate() - eps).abs() <= 1e-12);
                prop_assert!((p.bessel_argument() * omega / 2.0 - eps).abs() <= 1e-12);
            }
        }
    }
}
