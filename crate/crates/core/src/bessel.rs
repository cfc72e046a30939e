//! Bessel functions of the first kind for integer order.

/// `J_n(x)` for integer `n` of either sign and real `x`.
///
/// Ascending power series where it converges without cancellation (small `x`
/// or `x²/4` below the order), Miller's backward recurrence otherwise.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let order = n.unsigned_abs();
    let mut sign = if n < 0 && order % 2 == 1 { -1.0 } else { 1.0 };
    if x < 0.0 && order % 2 == 1 {
        sign = -sign;
    }
    let x = x.abs();
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let value = if x <= 2.0 || 0.25 * x * x < f64::from(order) + 1.0 {
        series(order, x)
    } else {
        miller(order, x)
    };
    sign * value
}

fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for j in 1..=n {
        term *= half / f64::from(j);
    }
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + f64::from(n)));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || term == 0.0 {
            break;
        }
    }
    sum
}

fn miller(n: u32, x: f64) -> f64 {
    let top = f64::from(n).max(x);
    let mut start = (top + 20.0 + (40.0 * top).sqrt()) as u32;
    start += start % 2;

    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut wanted = 0.0;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * f64::from(k) / x * cur - next;
        next = cur;
        cur = prev;
        if k - 1 == n {
            wanted = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            wanted *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += cur;
    wanted / norm
}

/// Leading small-argument form `α^l / (2^l l!)`, valid for `|α| ≪ 1`.
pub fn bessel_small_arg(l: u32, alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    (1..=l).fold(1.0, |acc, j| acc * half / f64::from(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// `J_n(x) = (1/π) ∫₀^π cos(nθ − x sin θ) dθ` by the trapezoid rule, which
    /// converges geometrically for this periodic integrand.
    fn integral_oracle(n: i32, x: f64) -> f64 {
        let steps = 400;
        let h = PI / steps as f64;
        let f = |th: f64| (f64::from(n) * th - x * th.sin()).cos();
        let mut s = 0.5 * (f(0.0) + f(PI));
        for i in 1..steps {
            s += f(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 1.0, 0.440_050_585_744_933_55),
            (2, 1.0, 0.114_903_484_931_900_5),
            (2, 0.02, 4.999_833_335_416_657_5e-5),
            (5, 0.1, 2.603_081_790_964_442e-9),
            (32, 1.0, 8.781_686_222_395_074e-46),
            (8, 0.02, 2.480_131_172_977_304e-21),
            (0, 10.0, -0.245_935_764_451_348_32),
            (5, 10.0, -0.234_061_528_186_793_6),
            (30, 25.0, 0.011_809_026_124_268_96),
            (3, -0.7, -0.006_929_654_826_750_834),
            (1, 50.0, -0.097_511_828_125_175_14),
        ];
        for (n, x, want) in cases {
            let got = bessel_j(n, x);
            assert!((got - want).abs() <= 1e-12 * want.abs(), "J_{n}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn agrees_with_integral_representation() {
        for n in -32..=32 {
            for x in [-7.5, -1.0, -0.3, 0.0, 0.02, 0.5, 1.0, 2.5, 6.0, 15.0, 30.0] {
                let a = bessel_j(n, x);
                let b = integral_oracle(n, x);
                assert!((a - b).abs() < 1e-13, "n={n} x={x} {a} vs {b}");
            }
        }
    }

    #[test]
    fn reflection_and_normalization() {
        for x in [0.1, 0.9, 4.0, 12.0] {
            assert_eq!(bessel_j(-3, x), -bessel_j(3, x));
            assert_eq!(bessel_j(-4, x), bessel_j(4, x));
            let sum: f64 = bessel_j(0, x) + 2.0 * (1..60).map(|k| bessel_j(2 * k, x)).sum::<f64>();
            assert!((sum - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn small_argument_form() {
        assert_eq!(bessel_small_arg(0, 0.03), 1.0);
        assert!((bessel_small_arg(1, 0.02) - 0.01).abs() < 1e-17);
        let approx = bessel_small_arg(2, 0.02);
        assert!((approx - 5e-5).abs() < 1e-18);
        let exact = bessel_j(2, 0.02);
        assert!(((approx - exact) / exact).abs() < 1e-4);
    }
}
