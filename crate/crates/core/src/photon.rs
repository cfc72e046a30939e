//! Mean photon number of the quasi-mode: spectral quadrature, closed forms,
//! a power-series oracle, the saturation asymptotes and the phenomenological
//! loss model used for comparison.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{evolve_trajectory, phase_integral, Detuning, Drive, DEFAULT_ODE_TOLERANCE};
use crate::error::{Error, Result};
use crate::model::{CavityConfig, MethodTag, ModulationProfile, PhotonNumberSeries, QuasiMode, TimeGrid};
use crate::modulation::effective_coupling;
use crate::spectral::{integrate_over_linewidth, SpectralShape, ShapeFunction, DEFAULT_CUTOFF, DEFAULT_TOLERANCE};

/// Above this `ν₀/γ` the weak-squeezing quadrature is outside its validity range.
pub const WEAK_SQUEEZING_LIMIT: f64 = 0.3;

/// Largest argument accepted by [`sinh_sq`].
pub const SINH_SQ_MAX_ARG: f64 = 350.0;

/// Largest `ν₀t` for which the complex `sinh²(r)` quadrature is attempted; beyond
/// it the integrand exceeds the result by more than `e^{20}`.
pub const GENERAL_QUADRATURE_MAX_GAIN: f64 = 10.0;

/// Fraction of the asymptote that defines the saturation time.
pub const SATURATION_FRACTION: f64 = 0.99;

/// `sinh²x`, via `e^{2x}(1 − e^{−2x})²/4` for `|x| > 20`; `|x| > 350` is a range error.
pub fn sinh_sq(x: f64) -> Result<f64> {
    let a = x.abs();
    if a.is_nan() {
        return Err(Error::Domain("sinh² of NaN".into()));
    }
    if a > SINH_SQ_MAX_ARG {
        return Err(Error::Range(format!(
            "sinh² argument {a} exceeds {SINH_SQ_MAX_ARG}"
        )));
    }
    if a > 20.0 {
        let s = -(-2.0 * a).exp_m1();
        Ok(0.25 * (2.0 * a).exp() * s * s)
    } else {
        Ok(a.sinh().powi(2))
    }
}

/// `(1 − e^{−γt})/γ` without cancellation at small `γt`.
fn saturating_time(t: f64, gamma: f64) -> f64 {
    -(-gamma * t).exp_m1() / gamma
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::validation("t", format!("must be finite and non-negative, got {t}")))
    }
}

fn check_rates(nu0: f64, gamma: f64) -> Result<()> {
    if !(nu0 >= 0.0 && nu0.is_finite()) {
        return Err(Error::validation("nu0", format!("must be finite and non-negative, got {nu0}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::validation("gamma", format!("must be positive, got {gamma}")));
    }
    Ok(())
}

fn real_part_checked(value: Complex64, tol: f64, error: f64) -> Result<f64> {
    let limit = 10.0 * tol * value.re.abs() + 10.0 * error;
    if value.im.abs() > limit {
        return Err(Error::ImaginaryResidue {
            real: value.re,
            imag: value.im,
            limit,
        });
    }
    Ok(value.re)
}

/// Weak-squeezing pair number by quadrature,
/// `ν₀² ∫ (dξ/2π) |g(ξ)|² [∫₀ᵗ e^{idξt′} dt′]²` with the analytic square of the inner
/// integral and `d` set by `detuning`. The imaginary part must vanish by
/// symmetry and is checked against the quadrature tolerance.
pub fn photon_number_quadrature_weak(t: f64, nu0: f64, shape: &SpectralShape, detuning: Detuning) -> Result<f64> {
    check_time(t)?;
    check_rates(nu0, shape.linewidth())?;
    if t == 0.0 || nu0 == 0.0 {
        return Ok(0.0);
    }
    let d = detuning.factor();
    let est = integrate_over_linewidth(
        |xi| {
            let i = phase_integral(d * xi, t);
            i * i
        },
        shape,
        2.0 * d * t,
    )?;
    let re = real_part_checked(est.value, shape.quadrature_tolerance(), est.error)?;
    Ok(nu0 * nu0 * re.max(0.0))
}

/// General pair number by quadrature of the analytically continued
/// `sinh²(r(ξ, t))` with `r = ν₀ ∫₀ᵗ e^{idξt′} dt′`.
pub fn photon_number_quadrature_general(
    t: f64,
    nu0: f64,
    shape: &SpectralShape,
    detuning: Detuning,
) -> Result<f64> {
    check_time(t)?;
    check_rates(nu0, shape.linewidth())?;
    if nu0 * t > GENERAL_QUADRATURE_MAX_GAIN {
        return Err(Error::Range(format!(
            "nu0*t = {} exceeds {GENERAL_QUADRATURE_MAX_GAIN}; the sinh² quadrature would cancel catastrophically",
            nu0 * t
        )));
    }
    if t == 0.0 || nu0 == 0.0 {
        return Ok(0.0);
    }
    let d = detuning.factor();
    let est = integrate_over_linewidth(
        |xi| {
            let s = (nu0 * phase_integral(d * xi, t)).sinh();
            s * s
        },
        shape,
        2.0 * d * t,
    )?;
    let re = real_part_checked(est.value, shape.quadrature_tolerance(), est.error)?;
    Ok(re.max(0.0))
}

/// `(ν₀/γ)²(1 − e^{−γt})²`.
pub fn photon_number_weak_closed(t: f64, nu0: f64, gamma: f64) -> Result<f64> {
    check_time(t)?;
    check_rates(nu0, gamma)?;
    Ok((nu0 * saturating_time(t, gamma)).powi(2))
}

/// `sinh²[(ν₀/γ)(1 − e^{−γt})]`.
pub fn photon_number_general_closed(t: f64, nu0: f64, gamma: f64) -> Result<f64> {
    check_time(t)?;
    check_rates(nu0, gamma)?;
    sinh_sq(nu0 * saturating_time(t, gamma))
}

/// Partial sum of the `sinh²` power series with a bound on the discarded tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesEstimate {
    pub value: f64,
    pub remainder_bound: f64,
    pub terms: usize,
}

/// `Σ_{n=1}^{n_max} 2^{2n-1} ν₀^{2n} M_n / (2n)!`, where `M_n = [(1 − e^{−γt})/γ]^{2n}`
/// is the linewidth average of the `2n`-th power of the squeezing integral.
///
/// Fails with [`Error::SeriesNotConverged`] when the tail bound exceeds `rel_tol`
/// times the partial sum.
pub fn photon_number_series_oracle(t: f64, nu0: f64, gamma: f64, n_max: usize, rel_tol: f64) -> Result<SeriesEstimate> {
    check_time(t)?;
    check_rates(nu0, gamma)?;
    if n_max == 0 {
        return Err(Error::validation("n_max", "must be at least 1"));
    }
    let moment = saturating_time(t, gamma);
    let x = nu0 * moment;
    let q = 4.0 * x * x;
    // term_n = (2x)^{2n} / (2 (2n)!)
    let mut term = 0.5 * q / 2.0;
    let mut sum = 0.0;
    for n in 1..=n_max {
        if n > 1 {
            let k = 2.0 * n as f64;
            term *= q / (k * (k - 1.0));
        }
        sum += term;
    }
    // every later ratio is below r = q / ((2N+1)(2N+2))
    let k = 2.0 * n_max as f64;
    let r = q / ((k + 1.0) * (k + 2.0));
    let bound = if r < 1.0 { term * r / (1.0 - r) } else { f64::INFINITY };
    if !(bound <= rel_tol * sum) && sum > 0.0 {
        return Err(Error::SeriesNotConverged { n_max, bound });
    }
    Ok(SeriesEstimate {
        value: sum,
        remainder_bound: bound,
        terms: n_max,
    })
}

/// `sinh²(ν₀t) e^{−γt}`, evaluated in log space.
pub fn phenomenological_model(t: f64, nu0: f64, gamma: f64) -> Result<f64> {
    check_time(t)?;
    check_rates(nu0, gamma)?;
    let x = nu0 * t;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= 20.0 {
        return Ok(x.sinh().powi(2) * (-gamma * t).exp());
    }
    // ln sinh²x = 2x + 2 ln((1 − e^{−2x})/2)
    let log = 2.0 * x + 2.0 * (0.5 * -(-2.0 * x).exp_m1()).ln() - gamma * t;
    if log > f64::MAX.ln() {
        return Err(Error::Range(format!("phenomenological model overflows at t = {t}")));
    }
    Ok(log.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Weak,
    General,
}

/// Long-time pair number: `ν₀²τ²` (weak) or `sinh²(ν₀/γ)` (general).
pub fn asymptotic_pair_number(nu0: f64, gamma: f64, regime: Regime) -> Result<f64> {
    check_rates(nu0, gamma)?;
    match regime {
        Regime::Weak => Ok((nu0 / gamma).powi(2)),
        Regime::General => sinh_sq(nu0 / gamma),
    }
}

/// First time at which the general closed form reaches [`SATURATION_FRACTION`] of its
/// asymptote, `t_sat = −τ ln(1 − asinh(√(0.99 sinh²(ν₀/γ))) γ/ν₀)`. `None` without drive.
pub fn saturation_time(nu0: f64, gamma: f64) -> Result<Option<f64>> {
    check_rates(nu0, gamma)?;
    if nu0 == 0.0 {
        return Ok(None);
    }
    let target = SATURATION_FRACTION * asymptotic_pair_number(nu0, gamma, Regime::General)?;
    let x = target.sqrt().asinh();
    let fraction = x * gamma / nu0;
    Ok(Some(-(-fraction).ln_1p() / gamma))
}

/// Pair coupling used by the analytic methods: `ν₀ = εω₀/2` on the principal
/// resonance `Ω = 2ω₀`, otherwise the stationary part of the Bessel-expanded drive.
pub fn pair_coupling(prof: &ModulationProfile) -> f64 {
    if prof.drive_frequency() == 2.0 {
        prof.coupling_rate()
    } else {
        effective_coupling(prof)
    }
}

/// Numerical settings shared by the computation routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Numerics {
    pub quad_tolerance: f64,
    pub cutoff: f64,
    pub ode_tolerance: f64,
    pub l_max: u32,
    pub n_max: usize,
    pub detuning: Detuning,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            quad_tolerance: DEFAULT_TOLERANCE,
            cutoff: DEFAULT_CUTOFF,
            ode_tolerance: DEFAULT_ODE_TOLERANCE,
            l_max: 8,
            n_max: 30,
            detuning: Detuning::Pair,
        }
    }
}

impl Numerics {
    pub fn validate(&self) -> Result<()> {
        if !(self.quad_tolerance > 0.0 && self.quad_tolerance < 1.0) {
            return Err(Error::validation("quad_tolerance", "must lie in (0, 1)"));
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(Error::validation("cutoff", "must be positive and finite"));
        }
        if !(self.ode_tolerance > 0.0 && self.ode_tolerance < 1.0) {
            return Err(Error::validation("ode_tolerance", "must lie in (0, 1)"));
        }
        if self.l_max > 64 {
            return Err(Error::validation("l_max", "must not exceed 64"));
        }
        if self.n_max == 0 {
            return Err(Error::validation("n_max", "must be at least 1"));
        }
        Ok(())
    }
}

/// Largest relative difference between two curves over the points where either is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub a: MethodTag,
    pub b: MethodTag,
    pub max_relative_difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesParameters {
    pub mode_index: u32,
    pub epsilon: f64,
    pub drive_frequency: f64,
    pub quality_factor: f64,
    pub linewidth: f64,
    pub coherence_time: f64,
    pub coupling_rate: f64,
    pub nu0_over_gamma: f64,
    pub bessel_argument: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesMetadata {
    pub version: &'static str,
    pub parameters: SeriesParameters,
    pub numerics: Numerics,
    pub grid: TimeGrid,
    pub methods: Vec<MethodTag>,
    pub asymptote_weak: f64,
    pub asymptote_general: f64,
    pub cross_checks: Vec<CrossCheck>,
    pub notes: Vec<String>,
}

/// A computed series together with the metadata needed to reproduce it.
#[derive(Clone, Debug)]
pub struct SeriesRun {
    pub series: PhotonNumberSeries,
    pub metadata: SeriesMetadata,
}

fn per_point<F>(tag: MethodTag, times: &[f64], mut f: F) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    times
        .iter()
        .map(|&t| {
            f(t).map_err(|e| Error::SeriesPoint {
                method: tag.as_str().into(),
                t,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Evaluates every requested method on the grid.
pub fn compute_series(
    cfg: &CavityConfig,
    mode: &QuasiMode,
    prof: &ModulationProfile,
    grid: &TimeGrid,
    methods: &BTreeSet<MethodTag>,
    numerics: &Numerics,
) -> Result<SeriesRun> {
    if methods.is_empty() {
        return Err(Error::validation("methods", "at least one method is required"));
    }
    numerics.validate()?;
    let times = grid.times(mode)?;
    let mut series = PhotonNumberSeries::new(times.clone(), mode.coherence_time())?;

    let gamma = mode.linewidth();
    let nu0 = pair_coupling(prof);
    let shape = SpectralShape::with_window(gamma, numerics.cutoff, numerics.quad_tolerance)?;
    let mut notes = vec![format!(
        "t_sat is the first time the general closed form reaches {SATURATION_FRACTION} of sinh^2(nu0/gamma); a tooling convention"
    )];
    if nu0 / gamma > WEAK_SQUEEZING_LIMIT && methods.contains(&MethodTag::Quadrature) {
        notes.push(format!(
            "nu0/gamma = {} exceeds the weak-squeezing range {WEAK_SQUEEZING_LIMIT}",
            nu0 / gamma
        ));
    }
    if prof.drive_frequency() != 2.0 {
        notes.push("drive is off the principal resonance; analytic methods use the stationary Bessel coupling".into());
    }

    for &tag in methods {
        let values = match tag {
            MethodTag::Quadrature => per_point(tag, &times, |t| {
                photon_number_quadrature_weak(t, nu0, &shape, numerics.detuning)
            })?,
            MethodTag::QuadratureGeneral => per_point(tag, &times, |t| {
                photon_number_quadrature_general(t, nu0, &shape, numerics.detuning)
            })?,
            MethodTag::ClosedWeak => per_point(tag, &times, |t| photon_number_weak_closed(t, nu0, gamma))?,
            MethodTag::ClosedGeneral => per_point(tag, &times, |t| photon_number_general_closed(t, nu0, gamma))?,
            MethodTag::SeriesOracle => per_point(tag, &times, |t| {
                photon_number_series_oracle(t, nu0, gamma, numerics.n_max, 1e-12).map(|s| s.value)
            })?,
            MethodTag::Phenomenological => per_point(tag, &times, |t| phenomenological_model(t, nu0, gamma))?,
            MethodTag::OdeOracle => {
                let tr = evolve_trajectory(0.0, prof, Drive::Exact, &times, numerics.ode_tolerance).map_err(|e| {
                    let t = match &e {
                        Error::Integration { t, .. } => *t,
                        _ => times[0],
                    };
                    Error::SeriesPoint {
                        method: tag.as_str().into(),
                        t,
                        source: Box::new(e),
                    }
                })?;
                notes.push("ode_oracle integrates the lossless cavity (xi = 0, exact drive)".into());
                tr.pairs.iter().map(|p| p.photon_number()).collect()
            }
        };
        series.insert(tag, values)?;
    }

    let tags: Vec<MethodTag> = methods.iter().copied().collect();
    let mut cross_checks = Vec::new();
    for (i, &a) in tags.iter().enumerate() {
        for &b in &tags[i + 1..] {
            let (xa, xb) = (series.get(a).unwrap(), series.get(b).unwrap());
            let worst = xa
                .iter()
                .zip(xb)
                .filter(|(p, q)| p.abs().max(q.abs()) > 0.0)
                .map(|(p, q)| (p - q).abs() / p.abs().max(q.abs()))
                .fold(0.0, f64::max);
            cross_checks.push(CrossCheck {
                a,
                b,
                max_relative_difference: worst,
            });
        }
    }

    let metadata = SeriesMetadata {
        version: env!("CARGO_PKG_VERSION"),
        parameters: SeriesParameters {
            mode_index: cfg.mode_index(),
            epsilon: prof.amplitude(),
            drive_frequency: prof.drive_frequency(),
            quality_factor: mode.quality_factor(),
            linewidth: gamma,
            coherence_time: mode.coherence_time(),
            coupling_rate: nu0,
            nu0_over_gamma: nu0 / gamma,
            bessel_argument: prof.bessel_argument(),
        },
        numerics: *numerics,
        grid: *grid,
        methods: tags,
        asymptote_weak: asymptotic_pair_number(nu0, gamma, Regime::Weak)?,
        asymptote_general: asymptotic_pair_number(nu0, gamma, Regime::General)?,
        cross_checks,
        notes,
    };
    Ok(SeriesRun { series, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(gamma: f64) -> SpectralShape {
        SpectralShape::new(gamma).unwrap()
    }

    /// Independent oracle for the pair-convention weak quadrature: the ξ-average turns
    /// the square of the inner integral into `∫₀ᵗ∫₀ᵗ e^{−γ(t′+t″)} dt′ dt″`, which is
    /// evaluated here by a 2-D midpoint rule.
    fn double_time_integral(t: f64, gamma: f64, kernel_rate: f64) -> f64 {
        let n = 600;
        let h = t / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                s += (-kernel_rate * gamma * (a + b)).exp();
            }
        }
        s * h * h
    }

    #[test]
    fn sinh_sq_guard() {
        assert_eq!(sinh_sq(0.0).unwrap(), 0.0);
        assert!((sinh_sq(1.0).unwrap() - 1.381_097_845_541_816).abs() < 1e-14);
        let big = sinh_sq(25.0).unwrap();
        assert!((big / 25f64.sinh().powi(2) - 1.0).abs() < 1e-14);
        let near = sinh_sq(20.0 + 1e-9).unwrap() / sinh_sq(20.0).unwrap();
        assert!((near - 1.0).abs() < 1e-8);
        assert!(matches!(sinh_sq(351.0), Err(Error::Range(_))));
        assert!(sinh_sq(-2.0).unwrap() == sinh_sq(2.0).unwrap());
    }

    #[test]
    fn quadrature_weak_matches_closed_form() {
        let gamma = 0.01;
        let nu0 = 0.001;
        for gt in [0.01, 0.1, 1.0, 5.0, 10.0] {
            let t = gt / gamma;
            let q = photon_number_quadrature_weak(t, nu0, &shape(gamma), Detuning::Pair).unwrap();
            let c = photon_number_weak_closed(t, nu0, gamma).unwrap();
            assert!(((q - c) / c).abs() < 1e-4, "gt={gt} q={q} c={c}");
        }
        assert_eq!(photon_number_quadrature_weak(0.0, nu0, &shape(gamma), Detuning::Pair).unwrap(), 0.0);
    }

    #[test]
    fn quadrature_weak_matches_double_time_oracle() {
        let gamma = 0.5;
        for (t, d) in [(0.7, Detuning::Pair), (3.0, Detuning::Pair), (0.7, Detuning::Photon), (3.0, Detuning::Photon)] {
            let q = photon_number_quadrature_weak(t, 1.0, &SpectralShape::with_window(gamma, 1e6, 1e-10).unwrap(), d).unwrap();
            let oracle = double_time_integral(t, gamma, d.factor());
            assert!(((q - oracle) / oracle).abs() < 2e-5, "{d:?} t={t} {q} vs {oracle}");
        }
    }

    #[test]
    fn photon_convention_is_the_doubled_linewidth_law() {
        let (gamma, nu0, t) = (0.02, 0.001, 80.0);
        let q = photon_number_quadrature_weak(t, nu0, &shape(gamma), Detuning::Photon).unwrap();
        let c = photon_number_weak_closed(t, nu0 / 2.0, 2.0 * gamma).unwrap() * 4.0;
        // (ν₀/2γ)²(1 − e^{−2γt})² equals ν₀² M(t; 2γ)
        let want = (nu0 / (2.0 * gamma) * (1.0 - (-2.0 * gamma * t).exp())).powi(2);
        assert!((c / 4.0 - want / 4.0).abs() < 1e-18);
        assert!(((q - want) / want).abs() < 1e-4, "{q} vs {want}");
    }

    #[test]
    fn short_time_and_asymptote() {
        let (nu0, gamma) = (0.001, 0.01);
        let t = 0.01 / gamma;
        let q = photon_number_quadrature_weak(t, nu0, &shape(gamma), Detuning::Pair).unwrap();
        assert!(((q - (nu0 * t).powi(2)) / (nu0 * t).powi(2)).abs() < 0.02);
        let q = photon_number_quadrature_weak(20.0 / gamma, nu0, &shape(gamma), Detuning::Pair).unwrap();
        assert!(((q - 0.01) / 0.01).abs() < 1e-4, "{q}");
    }

    #[test]
    fn quadrature_general_matches_closed_form() {
        let gamma = 0.05;
        for nu0_over_gamma in [0.5, 1.0, 2.0] {
            let nu0 = nu0_over_gamma * gamma;
            for gt in [0.05, 0.5, 2.0] {
                let t = gt / gamma;
                let q = photon_number_quadrature_general(t, nu0, &shape(gamma), Detuning::Pair).unwrap();
                let c = photon_number_general_closed(t, nu0, gamma).unwrap();
                assert!(((q - c) / c).abs() < 1e-4, "x={nu0_over_gamma} gt={gt} {q} vs {c}");
            }
        }
        assert!(matches!(
            photon_number_quadrature_general(300.0, 0.05, &shape(0.05), Detuning::Pair),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(photon_number_weak_closed(0.0, 0.3, 1.0).unwrap(), 0.0);
        let v = photon_number_weak_closed(1.0, 0.1, 1.0).unwrap();
        assert!((v - 0.01 * (1.0 - (-1.0f64).exp()).powi(2)).abs() < 1e-17);
        assert!((v - 0.003_995_764_008_937_946).abs() < 1e-15);
        let late = photon_number_general_closed(1e4, 1.0, 1.0).unwrap();
        assert!((late - 1.381_097_845_541_816).abs() < 1e-14);
        assert!(photon_number_weak_closed(-1.0, 0.1, 1.0).is_err());
    }

    #[test]
    fn series_oracle_examples() {
        for (t, nu0, gamma) in [(0.3, 0.05, 1.0), (50.0, 0.02, 0.01), (2.0, 1.0, 1.0)] {
            let one = photon_number_series_oracle(t, nu0, gamma, 1, f64::INFINITY).unwrap();
            assert_eq!(one.value, photon_number_weak_closed(t, nu0, gamma).unwrap());
        }
        let s = photon_number_series_oracle(1e6, 1.0, 1.0, 12, 1e-10).unwrap();
        assert!((s.value - 1f64.sinh().powi(2)).abs() < 1e-10);
        let s = photon_number_series_oracle(0.7, 3.0, 1.0, 30, 1e-12).unwrap();
        let c = photon_number_general_closed(0.7, 3.0, 1.0).unwrap();
        assert!(((s.value - c) / c).abs() < 1e-8);
        let err = photon_number_series_oracle(100.0, 3.0, 1.0, 3, 1e-8).unwrap_err();
        assert!(matches!(err, Error::SeriesNotConverged { n_max: 3, .. }));
    }

    #[test]
    fn phenomenological_examples() {
        assert_eq!(phenomenological_model(0.0, 1.0, 0.5).unwrap(), 0.0);
        // ν₀ > γ: grows like e^{(2ν₀−γ)t}
        let a = phenomenological_model(100.0, 1.0, 0.5).unwrap();
        let b = phenomenological_model(101.0, 1.0, 0.5).unwrap();
        assert!(((b / a).ln() - 1.5).abs() < 1e-10);
        // ν₀ < γ/2: decays
        assert!(phenomenological_model(400.0, 0.2, 1.0).unwrap() < 1e-40);
        let x = phenomenological_model(10.0, 0.5, 0.1).unwrap();
        assert!((x - 5f64.sinh().powi(2) * (-1.0f64).exp()).abs() < 1e-12 * x);
        assert!(phenomenological_model(1e4, 1.0, 0.1).is_err());
    }

    #[test]
    fn asymptote_examples() {
        assert!((asymptotic_pair_number(0.1, 1.0, Regime::Weak).unwrap() - 0.01).abs() < 1e-17);
        let g = asymptotic_pair_number(0.1, 1.0, Regime::General).unwrap();
        assert!((g - 0.010_033_377_809_537_924).abs() < 1e-15);
    }

    #[test]
    fn saturation_time_reaches_threshold() {
        let (nu0, gamma) = (0.02, 0.01);
        let ts = saturation_time(nu0, gamma).unwrap().unwrap();
        let n = photon_number_general_closed(ts, nu0, gamma).unwrap();
        let inf = asymptotic_pair_number(nu0, gamma, Regime::General).unwrap();
        assert!((n / inf - SATURATION_FRACTION).abs() < 1e-12);
        assert_eq!(saturation_time(0.0, 0.1).unwrap(), None);
    }

    #[test]
    fn compute_series_examples() {
        let cfg = CavityConfig::unit();
        let prof = ModulationProfile::at_principal_resonance(0.04).unwrap();
        let mode = QuasiMode::from_linewidth(&cfg, 0.01).unwrap(); // ν₀/γ = 2
        let grid = TimeGrid {
            points: 40,
            ..TimeGrid::default()
        };
        let methods: BTreeSet<_> = [MethodTag::ClosedGeneral, MethodTag::Phenomenological].into();
        let run = compute_series(&cfg, &mode, &prof, &grid, &methods, &Numerics::default()).unwrap();
        let sat = run.series.get(MethodTag::ClosedGeneral).unwrap();
        let phen = run.series.get(MethodTag::Phenomenological).unwrap();
        let cap = 2f64.sinh().powi(2);
        assert!(sat.iter().all(|v| *v <= cap));
        assert!(phen.last().unwrap() > &(100.0 * cap));
        assert_eq!(run.metadata.cross_checks.len(), 1);

        let prof = ModulationProfile::at_principal_resonance(0.001).unwrap(); // ν₀/γ = 0.05
        let methods: BTreeSet<_> = [MethodTag::Quadrature, MethodTag::ClosedWeak].into();
        let run = compute_series(&cfg, &mode, &prof, &grid, &methods, &Numerics::default()).unwrap();
        assert!(run.metadata.cross_checks[0].max_relative_difference < 1e-4);

        assert!(compute_series(&cfg, &mode, &prof, &grid, &BTreeSet::new(), &Numerics::default()).is_err());
        let empty = TimeGrid { points: 0, ..grid };
        assert!(matches!(
            compute_series(&cfg, &mode, &prof, &empty, &methods, &Numerics::default()),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn failing_point_is_identified() {
        let cfg = CavityConfig::unit();
        let prof = ModulationProfile::at_principal_resonance(0.5).unwrap();
        let mode = QuasiMode::from_linewidth(&cfg, 0.001).unwrap();
        let methods: BTreeSet<_> = [MethodTag::QuadratureGeneral].into();
        let err = compute_series(&cfg, &mode, &prof, &TimeGrid::default(), &methods, &Numerics::default()).unwrap_err();
        match err {
            Error::SeriesPoint { method, t, .. } => {
                assert_eq!(method, "quadrature_general");
                assert!(t * 0.25 > GENERAL_QUADRATURE_MAX_GAIN);
            }
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn general_closed_saturates_monotonically(x in 0.01f64..4.0, gt in 0.0f64..30.0, dt in 0.0f64..5.0) {
            let gamma = 0.01;
            let nu0 = x * gamma;
            let a = photon_number_general_closed(gt / gamma, nu0, gamma).unwrap();
            let b = photon_number_general_closed((gt + dt) / gamma, nu0, gamma).unwrap();
            let cap = asymptotic_pair_number(nu0, gamma, Regime::General).unwrap();
            prop_assert!(b >= a);
            prop_assert!(b <= cap * (1.0 + 1e-15));
        }

        #[test]
        fn weak_and_general_agree_for_weak_drive(x in 1e-4f64..0.1, gt in 0.0f64..50.0) {
            let gamma = 0.02;
            let t = gt / gamma;
            let w = photon_number_weak_closed(t, x * gamma, gamma).unwrap();
            let g = photon_number_general_closed(t, x * gamma, gamma).unwrap();
            if g > 0.0 {
                prop_assert!((g - w) / g <= 0.004);
            }
        }

        #[test]
        fn series_oracle_matches_closed_form(x in 0.01f64..3.0, gt in 0.0f64..20.0) {
            let gamma = 0.1;
            let t = gt / gamma;
            let s = photon_number_series_oracle(t, x * gamma, gamma, 30, 1e-12).unwrap();
            let c = photon_number_general_closed(t, x * gamma, gamma).unwrap();
            if c > 0.0 {
                prop_assert!(((s.value - c) / c).abs() <= 1e-8);
            }
        }

        #[test]
        fn general_asymptote_dominates_weak(x in 1e-3f64..20.0) {
            let w = asymptotic_pair_number(x, 1.0, Regime::Weak).unwrap();
            let g = asymptotic_pair_number(x, 1.0, Regime::General).unwrap();
            prop_assert!(g >= w);
        }

        #[test]
        fn lossless_limit_has_the_derived_error(nu_t in 0.01f64..3.0) {
            // γ = 1e-8: relative error ν₀t·coth(ν₀t)·γt to first order in γt
            let gamma = 1e-8;
            let t = 100.0;
            let nu0 = nu_t / t;
            let c = photon_number_general_closed(t, nu0, gamma).unwrap();
            let ideal = nu_t.sinh().powi(2);
            let rel = (ideal - c) / ideal;
            let predicted = nu_t / nu_t.tanh() * gamma * t;
            prop_assert!((rel - predicted).abs() <= 1e-3 * predicted + 1e-12);
        }
    }
}
