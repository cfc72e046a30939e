//! Globally adaptive Gauss–Kronrod quadrature and a half-cycle extrapolation
//! scheme for Fourier integrals over a half line.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: reals and complex numbers (component-wise).
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn real_part(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn real_part(&self) -> f64 {
        *self
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn real_part(&self) -> f64 {
        self.re
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One application of the 21-point Kronrod rule with its embedded 10-point Gauss rule.
#[derive(Clone, Copy, Debug)]
pub struct PanelEstimate<T> {
    pub value: T,
    pub error: f64,
    /// Estimate of `∫|f|` over the panel.
    pub abs_value: f64,
}

pub fn gauss_kronrod21<T, F>(f: &mut F, a: f64, b: f64) -> PanelEstimate<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = f_center * WGK[10];
    let mut abs = WGK[10] * f_center.magnitude();
    let mut gauss = T::zero();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..5 {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        gauss = gauss + (f1 + f2) * WG[j];
        kronrod = kronrod + (f1 + f2) * WGK[k];
        abs += WGK[k] * (f1.magnitude() + f2.magnitude());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[k];
        abs += WGK[k] * (f1.magnitude() + f2.magnitude());
    }

    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (f_center - mean).magnitude();
    for k in 0..10 {
        asc += WGK[k] * ((fv1[k] - mean).magnitude() + (fv2[k] - mean).magnitude());
    }
    asc *= half.abs();

    let mut error = ((kronrod - gauss) * half).magnitude();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }

    PanelEstimate {
        value: kronrod * half,
        error,
        abs_value: abs * half.abs(),
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Estimate<T> {
    pub value: T,
    /// Estimated absolute error.
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    abs_value: f64,
}

struct Ranked {
    error: f64,
    a: f64,
    index: usize,
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive bisection driven by the largest local error.
///
/// Stops once the summed error estimate is below
/// `max(abs_tol, rel_tol · max(|I|, 1e-3 ∫|f|))`; the `∫|f|` floor keeps
/// integrals that cancel to (nearly) zero from refining forever.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveQuadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveQuadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_intervals: 200_000,
        }
    }
}

impl AdaptiveQuadrature {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from the
    /// partition the breakpoints define. Breakpoints must be increasing.
    pub fn integrate<T, F>(&self, mut f: F, breakpoints: &[f64]) -> Result<Estimate<T>>
    where
        T: QuadValue,
        F: FnMut(f64) -> T,
    {
        if breakpoints.len() < 2 {
            return Err(Error::Domain("need at least two breakpoints".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }

        let mut segments: Vec<Segment<T>> = Vec::with_capacity(breakpoints.len() * 2);
        let mut heap = BinaryHeap::new();
        let mut total = T::zero();
        let mut total_err = 0.0;
        let mut total_abs = 0.0;

        for w in breakpoints.windows(2) {
            let est = gauss_kronrod21(&mut f, w[0], w[1]);
            total = total + est.value;
            total_err += est.error;
            total_abs += est.abs_value;
            heap.push(Ranked {
                error: est.error,
                a: w[0],
                index: segments.len(),
            });
            segments.push(Segment {
                a: w[0],
                b: w[1],
                value: est.value,
                error: est.error,
                abs_value: est.abs_value,
            });
        }

        let mut iterations = 0usize;
        loop {
            let scale = total.magnitude().max(1e-3 * total_abs);
            let target = self.abs_tol.max(self.rel_tol * scale);
            if total_err <= target {
                break;
            }
            if segments.len() >= self.max_intervals {
                return Err(Error::Quadrature {
                    estimate: sum_in_order(&segments).real_part(),
                    error_bound: total_err,
                });
            }
            let Some(worst) = heap.pop() else {
                // every segment is at the resolution limit of f64
                if total_err <= 1e3 * target {
                    break;
                }
                return Err(Error::Quadrature {
                    estimate: sum_in_order(&segments).real_part(),
                    error_bound: total_err,
                });
            };
            let seg = segments[worst.index];
            let mid = 0.5 * (seg.a + seg.b);
            if !(mid > seg.a && mid < seg.b) || (seg.b - seg.a) <= 4.0 * f64::EPSILON * mid.abs() {
                continue;
            }
            let left = gauss_kronrod21(&mut f, seg.a, mid);
            let right = gauss_kronrod21(&mut f, mid, seg.b);

            total = total - seg.value + left.value + right.value;
            total_err += left.error + right.error - seg.error;
            total_abs += left.abs_value + right.abs_value - seg.abs_value;

            segments[worst.index] = Segment {
                a: seg.a,
                b: mid,
                value: left.value,
                error: left.error,
                abs_value: left.abs_value,
            };
            heap.push(Ranked {
                error: left.error,
                a: seg.a,
                index: worst.index,
            });
            heap.push(Ranked {
                error: right.error,
                a: mid,
                index: segments.len(),
            });
            segments.push(Segment {
                a: mid,
                b: seg.b,
                value: right.value,
                error: right.error,
                abs_value: right.abs_value,
            });

            iterations += 1;
            if iterations % 64 == 0 {
                total = sum_in_order(&segments);
                total_err = segments.iter().map(|s| s.error).sum();
                total_abs = segments.iter().map(|s| s.abs_value).sum();
            }
        }

        let value = sum_in_order(&segments);
        let error = segments.iter().map(|s| s.error).sum();
        Ok(Estimate {
            value,
            error,
            intervals: segments.len(),
        })
    }
}

/// Sum of segment values ordered by left endpoint (deterministic), compensated.
fn sum_in_order<T: QuadValue>(segments: &[Segment<T>]) -> T {
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&i, &j| segments[i].a.total_cmp(&segments[j].a));
    let mut sum = T::zero();
    let mut comp = T::zero();
    for i in order {
        let y = segments[i].value - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns the
/// best extrapolated limit from the highest even column available.
pub fn wynn_epsilon(partial_sums: &[f64]) -> f64 {
    let n = partial_sums.len();
    if n < 3 {
        return partial_sums.last().copied().unwrap_or(0.0);
    }
    // prev holds column k-1, cur holds column k
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial_sums.to_vec();
    let mut best = *partial_sums.last().unwrap();
    for k in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                return if k % 2 == 1 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            if let Some(v) = cur.last() {
                if v.is_finite() {
                    best = *v;
                }
            }
        }
        if cur.len() < 2 {
            break;
        }
    }
    best
}

/// `∫₀^∞ g(ω) cos(ωt) dω` for a smooth, eventually monotone decaying `g`.
///
/// For `t > 0` the half line is cut at the zeros of `cos(ωt)`; each half cycle is
/// integrated adaptively and the alternating sequence of partial sums is
/// extrapolated with Wynn's epsilon algorithm. For `t = 0` the half line is
/// mapped onto `[0, 1)`.
pub fn fourier_cosine<G>(mut g: G, t: f64, quad: &AdaptiveQuadrature) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    let t = t.abs();
    if t == 0.0 {
        let est = quad.integrate(
            |s: f64| {
                if s >= 1.0 {
                    0.0
                } else {
                    let w = s / (1.0 - s);
                    g(w) / ((1.0 - s) * (1.0 - s))
                }
            },
            &[0.0, 0.5, 0.9, 0.99, 1.0],
        )?;
        return Ok(est.value);
    }

    let half = PI / t;
    let inner = AdaptiveQuadrature {
        rel_tol: quad.rel_tol.min(1e-12),
        abs_tol: 0.0,
        max_intervals: quad.max_intervals,
    };
    let cycle = |a: f64, b: f64, g: &mut G| -> Result<f64> {
        let est = inner.integrate(|w: f64| g(w) * (w * t).cos(), &[a, b])?;
        Ok(est.value)
    };

    let mut sums = Vec::new();
    let mut sum = cycle(0.0, 0.5 * half, &mut g)?;
    sums.push(sum);
    let mut last = f64::NAN;
    let mut stable = 0;
    let max_cycles = 4000;
    for k in 0..max_cycles {
        let a = (k as f64 + 0.5) * half;
        sum += cycle(a, a + half, &mut g)?;
        sums.push(sum);
        if sums.len() >= 12 {
            let window = &sums[sums.len() - 12..];
            let extrapolated = wynn_epsilon(window);
            let scale = extrapolated.abs().max(quad.abs_tol);
            if (extrapolated - last).abs() <= quad.rel_tol.min(1e-10) * scale {
                stable += 1;
                if stable >= 2 {
                    return Ok(extrapolated);
                }
            } else {
                stable = 0;
            }
            last = extrapolated;
        }
    }
    Err(Error::Quadrature {
        estimate: last,
        error_bound: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = AdaptiveQuadrature::default();
        let r = q.integrate(|x: f64| x.powi(5) - 3.0 * x * x, &[-1.0, 2.0]).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn peaked_integrand_converges() {
        let q = AdaptiveQuadrature::new(1e-12, 0.0);
        let g = 1e-3;
        let r = q
            .integrate(|x: f64| g / (x * x + g * g), &[-1.0, 0.0, 1.0])
            .unwrap();
        let exact = 2.0 * (1.0f64 / g).atan();
        assert!((r.value - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn complex_integrands_are_component_wise() {
        let q = AdaptiveQuadrature::new(1e-12, 0.0);
        let r = q
            .integrate(|x: f64| Complex64::new(0.0, x).exp(), &[0.0, PI])
            .unwrap();
        assert!((r.value.re - 0.0).abs() < 1e-13);
        assert!((r.value.im - 2.0).abs() < 1e-13);
    }

    #[test]
    fn interval_budget_is_enforced() {
        let q = AdaptiveQuadrature {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_intervals: 4,
        };
        let err = q.integrate(|x: f64| (1.0 / x).sin(), &[1e-4, 1.0]).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=15)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn fourier_cosine_of_exponential() {
        // ∫ e^{-w} cos(wt) dw = 1/(1+t²)
        let q = AdaptiveQuadrature::new(1e-12, 0.0);
        for t in [0.0, 0.3, 2.0, 15.0] {
            let v = fourier_cosine(|w: f64| (-w).exp(), t, &q).unwrap();
            let exact = 1.0 / (1.0 + t * t);
            assert!((v - exact).abs() < 1e-10 * exact, "t={t} v={v} exact={exact}");
        }
    }
}
