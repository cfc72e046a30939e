//! Two-mode amplitudes: the squeezing function `r(ξ, t)` in closed form and a
//! direct integration of the Bogoliubov coefficient equations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::model::{BogoliubovPair, ModulationProfile};
use crate::modulation::{i_pow, modulation_rate, modulation_rate_exact};
use crate::ode::{integrate, OdeOptions};

/// Default relative tolerance of the Bogoliubov integrator.
pub const DEFAULT_ODE_TOLERANCE: f64 = 1e-9;

/// `∫₀ᵗ e^{iθs} ds`, with a series branch where `|θt| < 1e-6`.
pub fn phase_integral(theta: f64, t: f64) -> Complex64 {
    let x = 0.5 * theta * t;
    // (e^{iθt} − 1)/(iθ) = t e^{ix} sin(x)/x
    let sinc = if x.abs() < 0.5e-6 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    Complex64::from_polar(t * sinc, x)
}

/// How the spectral offset `ξ` enters the pair phase.
///
/// `Pair` accrues `e^{iξt}`, which is the convention under which the
/// Lorentzian average of the squared squeezing integral has a decay kernel
/// `e^{−γ|t′+t″|}` and reproduces the `(ν₀/γ)²(1 − e^{−γt})²` law.
/// `Photon` takes the coupling `e^{2iξt}` literally; its averages are the
/// `Pair` ones with `γ → 2γ` and `ν₀/γ → ν₀/2γ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detuning {
    #[default]
    Pair,
    Photon,
}

impl Detuning {
    /// Multiplier of `ξt` in the pair phase.
    pub fn factor(self) -> f64 {
        match self {
            Detuning::Pair => 1.0,
            Detuning::Photon => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Detuning::Pair => "pair",
            Detuning::Photon => "photon",
        }
    }
}

impl fmt::Display for Detuning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Detuning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair" => Ok(Detuning::Pair),
            "photon" => Ok(Detuning::Photon),
            other => Err(Error::validation(
                "detuning",
                format!("expected `pair` or `photon`, got `{other}`"),
            )),
        }
    }
}

/// A value of the squeezing function with the point it was evaluated at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezingAmplitude {
    pub value: Complex64,
    pub xi: f64,
    pub t: f64,
}

impl SqueezingAmplitude {
    pub fn resonant(xi: f64, t: f64, nu0: f64) -> Self {
        Self {
            value: squeezing_resonant(xi, t, nu0),
            xi,
            t,
        }
    }

    /// Pairs per internal mode, `sinh²|r|`.
    pub fn photon_number(&self) -> f64 {
        internal_photon_number(self.value)
    }
}

/// Resonant squeezing `ν₀ ∫₀ᵗ e^{2iξt′} dt′`.
pub fn squeezing_resonant(xi: f64, t: f64, nu0: f64) -> Complex64 {
    nu0 * phase_integral(2.0 * xi, t)
}

/// Resonant squeezing with the offset entering as `e^{i d ξ t}`, `d` from the convention.
pub fn squeezing_resonant_with(xi: f64, t: f64, nu0: f64, detuning: Detuning) -> Complex64 {
    nu0 * phase_integral(detuning.factor() * xi, t)
}

/// Squeezing under the full Bessel-expanded drive,
/// `(εΩ/4) Σ_l i^l J_l(α) ∫₀ᵗ [e^{iω₊t′} + e^{iω₋t′}] e^{2iξt′} dt′`,
/// `ω_± = 2ω₀ + (l ± 1)Ω`.
pub fn squeezing_general(xi: f64, t: f64, prof: &ModulationProfile, l_max: u32) -> Complex64 {
    let eps = prof.amplitude();
    let w = prof.drive_frequency();
    let alpha = prof.bessel_argument();
    let l_max = l_max as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    for l in (-l_max..0).chain((0..=l_max).rev()) {
        let j = bessel_j(l, alpha);
        if j == 0.0 {
            continue;
        }
        let lf = f64::from(l);
        let plus = 2.0 + (lf + 1.0) * w + 2.0 * xi;
        let minus = 2.0 + (lf - 1.0) * w + 2.0 * xi;
        sum += i_pow(l) * j * (phase_integral(plus, t) + phase_integral(minus, t));
    }
    0.25 * eps * w * sum
}

/// Pairs in one internal mode for a realized squeezing `r`: `sinh²|r|`.
pub fn internal_photon_number(r: Complex64) -> f64 {
    r.norm().sinh().powi(2)
}

/// Which coupling drives the Bogoliubov equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Drive {
    /// Constant-magnitude resonant coupling `ν₀ e^{2iξt}`.
    RotatingWave,
    /// `(εΩ/2) cos Ωt · exp[2i(t + (ε/Ω) cos Ωt + ξt)]`.
    LeadingOrder,
    /// Exact rate `(1/2n) dn/dt` and the exact phase `∫ω(t′)dt′` with
    /// `ω(t) = 1/(1 + ε sin Ωt)`, integrated alongside the amplitudes.
    Exact,
}

/// Bogoliubov evolution sampled at requested times.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub pairs: Vec<BogoliubovPair>,
    /// Largest `| |u|² − |v|² − 1 |` over all accepted steps.
    pub max_unitarity_defect: f64,
    pub steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> BogoliubovPair {
        *self.pairs.last().expect("trajectory has at least one sample")
    }
}

/// Integrates `du/dt = ν_ξ(t) v*`, `dv/dt = ν_ξ(t) u*` from the vacuum `(1, 0)` to `t_end`
/// with the exact drive. `|v|²` is the pair number.
pub fn evolve_bogoliubov(xi: f64, prof: &ModulationProfile, t_end: f64, tol: f64) -> Result<BogoliubovPair> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::validation("t_end", "must be finite and non-negative"));
    }
    Ok(evolve_trajectory(xi, prof, Drive::Exact, &[t_end], tol)?.last())
}

/// Like [`evolve_bogoliubov`] with a chosen drive, sampled at every time in `times`.
pub fn evolve_trajectory(
    xi: f64,
    prof: &ModulationProfile,
    drive: Drive,
    times: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::validation("ode_tolerance", "must lie in (0, 1)"));
    }
    if times.is_empty() {
        return Err(Error::validation("times", "need at least one output time"));
    }
    let eps = prof.amplitude();
    let w = prof.drive_frequency();
    let nu0 = prof.coupling_rate();

    // state: Re u, Im u, Re v, Im v, phase correction δφ with φ = t + δφ
    let rhs = move |t: f64, y: &[f64; 5]| -> [f64; 5] {
        let (nu, dphi) = match drive {
            Drive::RotatingWave => (Complex64::from_polar(nu0, 2.0 * xi * t), 0.0),
            Drive::LeadingOrder => {
                let phase = 2.0 * (t + eps / w * (w * t).cos() + xi * t);
                (Complex64::from_polar(modulation_rate(t, prof), phase), 0.0)
            }
            Drive::Exact => {
                let s = 1.0 + eps * (w * t).sin();
                let phase = 2.0 * (t + y[4] + xi * t);
                (Complex64::from_polar(modulation_rate_exact(t, prof), phase), 1.0 / s - 1.0)
            }
        };
        let u = Complex64::new(y[0], y[1]);
        let v = Complex64::new(y[2], y[3]);
        let du = nu * v.conj();
        let dv = nu * u.conj();
        [du.re, du.im, dv.re, dv.im, dphi]
    };

    let y0 = [1.0, 0.0, 0.0, 0.0, eps / w];
    let opts = OdeOptions::new(tol);
    let mut worst = 0.0f64;
    let (states, stats) = integrate(rhs, 0.0, y0, times, &opts, |_, y| {
        let defect = y[0] * y[0] + y[1] * y[1] - y[2] * y[2] - y[3] * y[3] - 1.0;
        worst = worst.max(defect.abs());
    })?;
    let pairs = states
        .iter()
        .map(|y| BogoliubovPair {
            u: Complex64::new(y[0], y[1]),
            v: Complex64::new(y[2], y[3]),
        })
        .collect();
    Ok(Trajectory {
        times: times.to_vec(),
        pairs,
        max_unitarity_defect: worst,
        steps: stats.accepted,
    })
}
