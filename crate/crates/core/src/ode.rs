//! Adaptive Dormand–Prince 5(4) integrator for small real systems.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Smallest step accepted before giving up, relative to `max(|t|, 1)`.
    pub min_step: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            rel_tol: tol,
            abs_tol: tol,
            min_step: 1e-14,
            max_steps: 5_000_000,
        }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self::new(1e-9)
    }
}

#[derive(Clone, Debug)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

// fifth-order weights (also the last stage row, FSAL)
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// difference between fifth- and fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        *o += h * acc;
    }
    out
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` and returns the state at each of
/// `outputs` (non-decreasing, all `≥ t0`). Steps land exactly on output times.
/// `on_step` sees every accepted state.
pub fn integrate<const N: usize, F, S>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    outputs: &[f64],
    opts: &OdeOptions,
    mut on_step: S,
) -> Result<(Vec<[f64; N]>, OdeStats)>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    S: FnMut(f64, &[f64; N]),
{
    if !(opts.rel_tol > 0.0 && opts.abs_tol >= 0.0) {
        return Err(Error::validation("ode_tolerance", "must be positive"));
    }
    if outputs.iter().any(|t| !(*t >= t0) || !t.is_finite()) || outputs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("output times must be finite, ordered and not before t0".into()));
    }

    let mut stats = OdeStats {
        accepted: 0,
        rejected: 0,
    };
    let mut results = Vec::with_capacity(outputs.len());
    let mut t = t0;
    let mut y = y0;
    on_step(t, &y);
    let mut k1 = f(t, &y);
    let mut h = 0.0f64;

    for &target in outputs {
        if h == 0.0 {
            h = initial_step(&y, &k1, opts, (target - t).abs().max(1e-3));
        }
        while t < target {
            if stats.accepted + stats.rejected >= opts.max_steps {
                return Err(integration_error(t, &y, "step budget exhausted"));
            }
            let last = t + h >= target;
            let step = if last { target - t } else { h };
            if step <= opts.min_step * t.abs().max(1.0) && !last {
                return Err(integration_error(t, &y, "step size underflow"));
            }

            let k2 = f(t + C2 * step, &combine(&y, step, &[(A21, &k1)]));
            let k3 = f(t + C3 * step, &combine(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(t + C4 * step, &combine(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(
                t + C5 * step,
                &combine(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = f(
                t + step,
                &combine(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = combine(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let t_new = if last { target } else { t + step };
            let k7 = f(t_new, &y_new);

            let mut err = 0.0;
            for i in 0..N {
                let e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
                err += (e / scale).powi(2);
            }
            let err = (err / N as f64).sqrt();
            if !err.is_finite() {
                return Err(integration_error(t, &y, "non-finite error estimate"));
            }

            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                t = t_new;
                y = y_new;
                k1 = k7;
                stats.accepted += 1;
                on_step(t, &y);
                // a step shortened to hit an output says nothing about the next one
                if !last || step >= h {
                    h = step * factor;
                }
            } else {
                stats.rejected += 1;
                h = step * factor.min(1.0);
            }
        }
        results.push(y);
    }
    Ok((results, stats))
}

fn initial_step<const N: usize>(y: &[f64; N], dy: &[f64; N], opts: &OdeOptions, span: f64) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..N {
        let scale = opts.abs_tol + opts.rel_tol * y[i].abs();
        d0 += (y[i] / scale).powi(2);
        d1 += (dy[i] / scale).powi(2);
    }
    let (d0, d1) = ((d0 / N as f64).sqrt(), (d1 / N as f64).sqrt());
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span).max(1e-12)
}

fn integration_error<const N: usize>(t: f64, y: &[f64; N], reason: &str) -> Error {
    Error::Integration {
        t,
        state: y.to_vec(),
        reason: reason.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let opts = OdeOptions::new(1e-11);
        let outs = [0.5, 1.0, 4.0];
        let (ys, _) = integrate(|_, y: &[f64; 1]| [-y[0]], 0.0, [1.0], &outs, &opts, |_, _| {}).unwrap();
        for (t, y) in outs.iter().zip(&ys) {
            assert!((y[0] - (-t).exp()).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn harmonic_oscillator_keeps_energy() {
        let opts = OdeOptions::new(1e-10);
        let mut worst = 0.0f64;
        let (ys, stats) = integrate(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [1.0, 0.0],
            &[100.0],
            &opts,
            |_, y| worst = worst.max((y[0] * y[0] + y[1] * y[1] - 1.0).abs()),
        )
        .unwrap();
        assert!((ys[0][0] - 100f64.cos()).abs() < 1e-7);
        assert!(worst < 1e-7);
        assert!(stats.accepted > 0);
    }

    #[test]
    fn lands_on_outputs_including_start() {
        let opts = OdeOptions::default();
        let (ys, _) = integrate(|t, _: &[f64; 1]| [2.0 * t], 0.0, [0.0], &[0.0, 3.0, 3.0], &opts, |_, _| {}).unwrap();
        assert_eq!(ys[0][0], 0.0);
        assert!((ys[1][0] - 9.0).abs() < 1e-12);
        assert_eq!(ys[1], ys[2]);
    }

    #[test]
    fn reports_failure_with_state() {
        let opts = OdeOptions {
            max_steps: 10,
            ..OdeOptions::new(1e-12)
        };
        let err = integrate(|_, y: &[f64; 1]| [y[0].cos() * 50.0], 0.0, [0.0], &[1e4], &opts, |_, _| {}).unwrap_err();
        assert!(matches!(err, Error::Integration { ref state, .. } if state.len() == 1));
    }

    #[test]
    fn rejects_unordered_outputs() {
        let opts = OdeOptions::default();
        assert!(integrate(|_, y: &[f64; 1]| *y, 0.0, [1.0], &[2.0, 1.0], &opts, |_, _| {}).is_err());
    }
}
