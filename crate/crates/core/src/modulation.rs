//! The time-dependent drive: refractive index, modulation rate, dynamical phase,
//! its Bessel expansion, the pair coupling `ν_ξ(t)`, and resonance selection.
//!
//! Everything is in internal units (`ω₀ = 1`). The phase origin is fixed so that
//! `φ_m(0) = ε/Ω`; a constant offset only rotates the pair phase and never
//! reaches a photon number.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::{bessel_j, bessel_small_arg};
use crate::model::{CavityConfig, ModulationProfile};

/// `n(t) = n₀(1 + ε sin Ωt)`.
pub fn refractive_index(t: f64, cfg: &CavityConfig, prof: &ModulationProfile) -> f64 {
    cfg.refractive_index() * (1.0 + prof.amplitude() * (prof.drive_frequency() * t).sin())
}

/// Leading-order rate `f(t) ≃ (εΩ/2) cos Ωt`.
pub fn modulation_rate(t: f64, prof: &ModulationProfile) -> f64 {
    let w = prof.drive_frequency();
    0.5 * prof.amplitude() * w * (w * t).cos()
}

/// Exact rate `(1/2n) dn/dt = εΩ cos Ωt / (2(1 + ε sin Ωt))`.
pub fn modulation_rate_exact(t: f64, prof: &ModulationProfile) -> f64 {
    let (eps, w) = (prof.amplitude(), prof.drive_frequency());
    0.5 * eps * w * (w * t).cos() / (1.0 + eps * (w * t).sin())
}

/// Leading-order dynamical phase `φ_m(t) = ω₀t + (εω₀/Ω) cos Ωt`.
pub fn dynamical_phase(t: f64, prof: &ModulationProfile) -> f64 {
    let w = prof.drive_frequency();
    t + prof.amplitude() / w * (w * t).cos()
}

/// Truncated Jacobi–Anger expansion `Σ_{|l|≤l_max} i^l J_l(α) e^{i(2ω₀ + lΩ)t}` of `e^{2iφ_m(t)}`.
pub fn phase_factor_series(t: f64, prof: &ModulationProfile, l_max: u32) -> Complex64 {
    let alpha = prof.bessel_argument();
    let w = prof.drive_frequency();
    let l_max = l_max as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    // ascending |J_l| order keeps the sum well-conditioned
    for l in (-l_max..0).chain((0..=l_max).rev()) {
        let j = bessel_j(l, alpha);
        if j == 0.0 {
            continue;
        }
        let phase = (2.0 + f64::from(l) * w) * t;
        sum += i_pow(l) * Complex64::from_polar(j, phase);
    }
    sum
}

/// `i^l` for integer `l`.
pub(crate) fn i_pow(l: i32) -> Complex64 {
    match l.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Pair coupling `ν_ξ(t) = f(t) exp[2i(φ_m(t) + ξt)]`, leading-order rate.
pub fn coupling(t: f64, xi: f64, prof: &ModulationProfile) -> Complex64 {
    let phase = 2.0 * (dynamical_phase(t, prof) + xi * t);
    Complex64::from_polar(modulation_rate(t, prof), phase)
}

/// Magnitude of the stationary (secular) part of `ν_0(t)`: the sum of the
/// `ω_± = 0` terms of the Bessel expansion, `(εΩ/4) |Σ i^l J_l(α)|`. Zero when
/// the drive sits on no resonance.
pub fn effective_coupling(prof: &ModulationProfile) -> f64 {
    let w = prof.drive_frequency();
    let alpha = prof.bessel_argument();
    let mut sum = Complex64::new(0.0, 0.0);
    for sign in [1.0, -1.0] {
        // ω_± = 2 + (l ± 1)Ω = 0
        let l = -2.0 / w - sign;
        let rounded = l.round();
        if (l - rounded).abs() <= 1e-9 * l.abs().max(1.0) && rounded.abs() < 1e6 {
            let l = rounded as i32;
            sum += i_pow(l) * bessel_j(l, alpha);
        }
    }
    0.25 * prof.amplitude() * w * sum.norm()
}

/// One `(l, ±)` branch of the resonance condition `ω_± = 2ω₀ + (l ± 1)Ω = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResonanceBranch {
    pub harmonic_order: i32,
    pub sign: i32,
    /// `Ω_l = −2ω₀/(l ± 1)`.
    pub resonant_frequency: f64,
    /// `α_l = −ε(l ± 1)`.
    pub bessel_argument: f64,
    /// Small-argument magnitude `|α_l|^{|l|} / (2^{|l|} |l|!)` of the secular term.
    pub bessel_weight: f64,
}

impl ResonanceBranch {
    /// `None` for unphysical branches (`l ± 1 = 0` or `Ω_l ≤ 0`).
    pub fn new(harmonic_order: i32, sign: i32, amplitude: f64) -> Option<Self> {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        let shift = harmonic_order + sign;
        if shift == 0 {
            return None;
        }
        let omega = -2.0 / f64::from(shift);
        if omega <= 0.0 {
            return None;
        }
        let alpha = -amplitude * f64::from(shift);
        Some(Self {
            harmonic_order,
            sign,
            resonant_frequency: omega,
            bessel_argument: alpha,
            bessel_weight: bessel_small_arg(harmonic_order.unsigned_abs(), alpha).abs(),
        })
    }

    /// `α` recomputed as `2εω₀/Ω_l`.
    pub fn bessel_argument_from_frequency(&self, amplitude: f64) -> f64 {
        2.0 * amplitude / self.resonant_frequency
    }
}

/// Physical resonance branches for every `l` in range and both signs, strongest first.
pub fn resonance_table(prof: &ModulationProfile, l_range: RangeInclusive<i32>) -> Vec<ResonanceBranch> {
    let eps = prof.amplitude();
    let mut table: Vec<ResonanceBranch> = l_range
        .flat_map(|l| [-1, 1].into_iter().filter_map(move |s| ResonanceBranch::new(l, s, eps)))
        .collect();
    table.sort_by(|a, b| {
        b.bessel_weight
            .partial_cmp(&a.bessel_weight)
            .unwrap_or(Ordering::Equal)
            .then(a.harmonic_order.abs().cmp(&b.harmonic_order.abs()))
            .then(a.harmonic_order.cmp(&b.harmonic_order))
            .then(a.sign.cmp(&b.sign))
    });
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn prof(eps: f64, omega: f64) -> ModulationProfile {
        ModulationProfile::new(eps, omega).unwrap()
    }

    #[test]
    fn index_values() {
        let cfg = CavityConfig::new(1, 2.0 * PI / 1.5, 1.5).unwrap();
        let p = prof(0.01, 2.0);
        assert_eq!(refractive_index(0.0, &cfg, &p), 1.5);
        let quarter = PI / 2.0 / p.drive_frequency();
        assert!((refractive_index(quarter, &cfg, &p) - 1.515).abs() < 1e-14);
        let still = prof(0.0, 2.0);
        for t in [0.0, 0.3, 17.0] {
            assert_eq!(refractive_index(t, &cfg, &still), 1.5);
        }
    }

    #[test]
    fn rate_values() {
        let p = prof(0.01, 2.0);
        assert_eq!(modulation_rate(0.0, &p), 0.01);
        assert!(modulation_rate(PI / 4.0, &p).abs() < 1e-17);
        assert_eq!(modulation_rate_exact(0.0, &p), 0.01);
    }

    #[test]
    fn exact_rate_differs_by_order_epsilon() {
        let p = prof(0.01, 2.0);
        let period = 2.0 * PI / p.drive_frequency();
        let mut worst: f64 = 0.0;
        for i in 0..=1000 {
            let t = period * i as f64 / 1000.0;
            let lead = modulation_rate(t, &p);
            if lead.abs() < 1e-6 {
                continue;
            }
            worst = worst.max(((modulation_rate_exact(t, &p) - lead) / lead).abs());
        }
        assert!(worst <= 0.011, "max relative deviation {worst}");
        assert!(worst > 0.009);
    }

    #[test]
    fn phase_origin_and_period() {
        let p = prof(0.01, 2.0);
        assert_eq!(dynamical_phase(0.0, &p), 0.01 / 2.0);
        assert_eq!(dynamical_phase(3.3, &prof(0.0, 2.0)), 3.3);
        let period = 2.0 * PI / p.drive_frequency();
        for t in [0.0, 0.7, 5.0] {
            let gain = dynamical_phase(t + period, &p) - dynamical_phase(t, &p);
            assert!((gain - period).abs() < 1e-12);
        }
    }

    #[test]
    fn series_without_drive_is_free_rotation() {
        let p = prof(0.0, 2.0);
        for t in [0.0, 1.0, 9.5] {
            let s = phase_factor_series(t, &p, 4);
            assert!((s - Complex64::from_polar(1.0, 2.0 * t)).norm() < 1e-15);
        }
    }

    #[test]
    fn series_matches_direct_phase() {
        for (eps, omega) in [(0.01, 1.0), (0.02, 2.0), (0.05, 1.0), (0.1, 2.0)] {
            let p = prof(eps, omega);
            assert!(p.bessel_argument() <= 0.1 + 1e-15);
            for i in 0..=400 {
                let t = 100.0 * i as f64 / 400.0;
                let direct = Complex64::from_polar(1.0, 2.0 * dynamical_phase(t, &p));
                let s = phase_factor_series(t, &p, 8);
                assert!((s - direct).norm() < 1e-9, "eps={eps} t={t}");
            }
        }
        let p = prof(0.01, 1.0);
        assert!((p.bessel_argument() - 0.02).abs() < 1e-16);
        for i in 0..=200 {
            let t = 20.0 * i as f64 / 200.0;
            let direct = Complex64::from_polar(1.0, 2.0 * dynamical_phase(t, &p));
            assert!((phase_factor_series(t, &p, 8) - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn series_modulus_tends_to_one() {
        let p = prof(0.3, 0.5);
        let t = 3.7;
        let errs: Vec<f64> = [0, 2, 4, 8, 16]
            .iter()
            .map(|&l| (phase_factor_series(t, &p, l).norm() - 1.0).abs())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        assert!(errs[4] < 1e-14);
    }

    #[test]
    fn coupling_values() {
        assert_eq!(coupling(2.0, 0.3, &prof(0.0, 2.0)), Complex64::new(0.0, 0.0));
        let p = prof(0.01, 2.0);
        let c0 = coupling(0.0, 0.0, &p);
        let want = Complex64::from_polar(0.01, 2.0 * 0.01 / 2.0);
        assert!((c0 - want).norm() < 1e-17);
        for (t, xi) in [(0.3, 0.0), (1.7, 0.2), (40.0, -0.05)] {
            assert!((coupling(t, xi, &p).norm() - modulation_rate(t, &p).abs()).abs() < 1e-17);
        }
    }

    #[test]
    fn principal_branch_ranks_first() {
        let p = prof(0.01, 2.0);
        let table = resonance_table(&p, -5..=5);
        let first = table[0];
        assert_eq!((first.harmonic_order, first.sign), (0, -1));
        assert_eq!(first.resonant_frequency, 2.0);
        assert_eq!(first.bessel_argument, 0.01);
        assert!(table.iter().all(|b| b.resonant_frequency > 0.0));
        assert!(!table.iter().any(|b| b.harmonic_order == 1 && b.sign == 1));
    }

    #[test]
    fn branch_examples() {
        assert!(ResonanceBranch::new(1, 1, 0.01).is_none());
        assert!(ResonanceBranch::new(1, -1, 0.01).is_none());
        let b = ResonanceBranch::new(-3, 1, 0.01).unwrap();
        assert_eq!(b.resonant_frequency, 1.0);
        assert!((b.bessel_argument - 0.02).abs() < 1e-17);
        assert!((b.bessel_argument - b.bessel_argument_from_frequency(0.01)).abs() < 1e-12);
    }

    #[test]
    fn empty_range_gives_empty_table() {
        assert!(resonance_table(&prof(0.01, 2.0), 2..=6).is_empty());
    }

    #[test]
    fn zero_drive_ranks_by_order() {
        let table = resonance_table(&prof(0.0, 2.0), -4..=4);
        assert!(table.iter().all(|b| b.bessel_argument == 0.0));
        assert_eq!(table[0].harmonic_order, 0);
        let orders: Vec<i32> = table.iter().map(|b| b.harmonic_order.abs()).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn principal_term_dominates_neighbours() {
        for alpha in [1e-4, 1e-3, 0.01, 0.05, 0.1] {
            let j0 = bessel_j(0, alpha).abs();
            for l in [-1, 1, -2, 2] {
                assert!(j0 >= 10.0 * bessel_j(l, alpha).abs());
            }
        }
    }

    #[test]
    fn effective_coupling_at_principal_resonance() {
        let p = prof(0.01, 2.0);
        let want = 0.25 * 0.01 * 2.0 * (bessel_j(0, 0.01) - bessel_j(2, 0.01));
        assert!((effective_coupling(&p) - want).abs() < 1e-16);
        assert!((effective_coupling(&p) / p.coupling_rate() - 1.0).abs() < 1e-4);
        assert_eq!(effective_coupling(&prof(0.01, 3.0)), 0.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn both_alpha_formulas_agree(l in -40i32..40, s in prop::bool::ANY, eps in 0.0f64..0.9) {
                let sign = if s { 1 } else { -1 };
                if let Some(b) = ResonanceBranch::new(l, sign, eps) {
                    prop_assert!(b.resonant_frequency > 0.0);
                    prop_assert!((b.bessel_argument - b.bessel_argument_from_frequency(eps)).abs() <= 1e-12);
                }
            }
        }
    }
}
