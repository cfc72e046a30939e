//! Lorentzian quasi-mode spectral shape and the quadrature kernel over the
//! internal frequency offset `ξ = ω − ω_m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{fourier_cosine, AdaptiveQuadrature, Estimate};

/// Default integration window `|ξ| ≤ Kγ`.
pub const DEFAULT_CUTOFF: f64 = 1e4;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Half-width of the finely partitioned core of the window, in units of `γ`.
const CORE_HALF_WIDTH: f64 = 64.0;

/// Spectral profile `|g(ξ)|²` of a quasi-mode.
pub trait ShapeFunction {
    fn linewidth(&self) -> f64;
    /// `|g(ξ)|²`, normalized so that `∫ |g|² dξ/2π = 1` over the real line.
    fn weight(&self, xi: f64) -> f64;
}

fn check_linewidth(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("linewidth must be positive, got {gamma}")))
    }
}

/// `g(ξ) = √(2γ) / (ξ² + γ²)^{1/2}`.
pub fn lorentzian_shape(xi: f64, gamma: f64) -> Result<f64> {
    check_linewidth(gamma)?;
    Ok((2.0 * gamma).sqrt() / xi.hypot(gamma))
}

/// `(1/2γ) e^{−γ|t|}`, the transform `∫ e^{−iωt}/(ω²+γ²) dω/2π`.
pub fn lorentzian_fourier(t: f64, gamma: f64) -> Result<f64> {
    check_linewidth(gamma)?;
    Ok((-gamma * t.abs()).exp() / (2.0 * gamma))
}

/// The same transform evaluated by quadrature of its defining integral over
/// the whole real line (no window truncation).
pub fn lorentzian_fourier_quadrature(t: f64, gamma: f64, rel_tol: f64) -> Result<f64> {
    check_linewidth(gamma)?;
    let quad = AdaptiveQuadrature::new(rel_tol, 0.0);
    // the integrand is even: ∫_ℝ e^{−iωt} h(ω) dω = 2∫₀^∞ cos(ωt) h(ω) dω
    let half = fourier_cosine(|w| 1.0 / (w * w + gamma * gamma), t, &quad)?;
    Ok(half / PI)
}

/// Lorentzian shape with its integration window and tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralShape {
    linewidth: f64,
    cutoff_multiplier: f64,
    quadrature_tolerance: f64,
}

impl SpectralShape {
    pub fn new(linewidth: f64) -> Result<Self> {
        Self::with_window(linewidth, DEFAULT_CUTOFF, DEFAULT_TOLERANCE)
    }

    pub fn with_window(linewidth: f64, cutoff_multiplier: f64, quadrature_tolerance: f64) -> Result<Self> {
        check_linewidth(linewidth)?;
        if !(cutoff_multiplier > 0.0 && cutoff_multiplier.is_finite()) {
            return Err(Error::validation("cutoff", "must be positive and finite"));
        }
        if !(quadrature_tolerance > 0.0 && quadrature_tolerance < 1.0) {
            return Err(Error::validation("quad_tolerance", "must lie in (0, 1)"));
        }
        Ok(Self {
            linewidth,
            cutoff_multiplier,
            quadrature_tolerance,
        })
    }

    pub fn cutoff_multiplier(&self) -> f64 {
        self.cutoff_multiplier
    }

    pub fn quadrature_tolerance(&self) -> f64 {
        self.quadrature_tolerance
    }

    /// Half-width of the integration window, `Kγ`.
    pub fn window(&self) -> f64 {
        self.cutoff_multiplier * self.linewidth
    }

    /// Lorentzian mass outside the window, `1 − (2/π) arctan K`.
    pub fn tail_mass(&self) -> f64 {
        2.0 / PI * (1.0 / self.cutoff_multiplier).atan()
    }

    /// Symmetric partition of the window: fine uniform panels in the core, sized
    /// to at most a quarter oscillation of `e^{i rate ξ}`, then geometric panels
    /// out to the window edge.
    fn breakpoints(&self, phase_rate: f64) -> Vec<f64> {
        let gamma = self.linewidth;
        let window = self.window();
        let core = window.min(CORE_HALF_WIDTH * gamma);
        let mut width = 0.5 * gamma;
        if phase_rate > 0.0 {
            width = width.min(PI / (2.0 * phase_rate));
        }
        let panels = (core / width).ceil().max(1.0) as usize;
        let mut right = Vec::with_capacity(panels + 16);
        for i in 1..=panels {
            right.push(core * i as f64 / panels as f64);
        }
        let mut edge = core;
        while edge < window {
            edge = (2.0 * edge).min(window);
            right.push(edge);
        }
        let mut points: Vec<f64> = right.iter().rev().map(|x| -x).collect();
        points.push(0.0);
        points.extend(right);
        points
    }
}

impl ShapeFunction for SpectralShape {
    fn linewidth(&self) -> f64 {
        self.linewidth
    }

    fn weight(&self, xi: f64) -> f64 {
        let g = self.linewidth;
        2.0 * g / (xi * xi + g * g)
    }
}

/// Numerical `∫ |g(ξ)|² dξ/2π` over the truncated window.
pub fn shape_norm(shape: &SpectralShape) -> Result<f64> {
    let est = integrate_over_linewidth(|_| Complex64::new(1.0, 0.0), shape, 0.0)?;
    Ok(est.value.re)
}

/// `∫ integrand(ξ) |g(ξ)|² dξ/2π` over `|ξ| ≤ Kγ` to the shape's relative tolerance.
///
/// `phase_rate` bounds how fast the integrand oscillates in `ξ` (e.g. `t` for
/// `e^{iξt}`); pass 0 for non-oscillatory integrands.
pub fn integrate_over_linewidth<F>(
    mut integrand: F,
    shape: &SpectralShape,
    phase_rate: f64,
) -> Result<Estimate<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    let quad = AdaptiveQuadrature::new(shape.quadrature_tolerance, 0.0);
    let breakpoints = shape.breakpoints(phase_rate.abs());
    let est = quad.integrate(
        |xi| integrand(xi) * (shape.weight(xi) / (2.0 * PI)),
        &breakpoints,
    )?;
    Ok(est)
}
