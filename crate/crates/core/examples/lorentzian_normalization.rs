//! Normalization of the quasi-mode Lorentzian over a truncated window.
//!
//! The mass outside `|ξ| ≤ Kγ` is `1 − (2/π) atan K`, so the numerical norm
//! should fall short of one by exactly that amount.

use dce::spectral::{shape_norm, SpectralShape};

fn main() -> dce::Result<()> {
    println!("{:>8} {:>8} {:>22} {:>12} {:>10}", "gamma", "K", "norm", "tail", "residual");
    for gamma in [0.01, 0.1, 1.0] {
        for k in [1e2, 1e4, 1e6] {
            let shape = SpectralShape::with_window(gamma, k, 1e-10)?;
            let norm = shape_norm(&shape)?;
            let residual = (1.0 - norm - shape.tail_mass()).abs();
            println!("{gamma:>8} {k:>8.0e} {norm:>22.16} {:>12.3e} {residual:>10.1e}", shape.tail_mass());
        }
    }
    Ok(())
}
