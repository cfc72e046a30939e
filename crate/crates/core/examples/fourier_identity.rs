//! Fourier transform of the Lorentzian weight against `e^{-γ|t|}/2`.

use dce::spectral::{lorentzian_fourier, lorentzian_fourier_quadrature};

fn main() -> dce::Result<()> {
    let gamma = 0.01;
    println!("{:>10} {:>24} {:>24} {:>10}", "gamma t", "quadrature", "closed form", "rel err");
    for gt in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let t = gt / gamma;
        let q = lorentzian_fourier_quadrature(t, gamma, 1e-12)?;
        let exact = lorentzian_fourier(t, gamma)?;
        println!("{gt:>10} {q:>24.16e} {exact:>24.16e} {:>10.1e}", ((q - exact) / exact).abs());
    }
    Ok(())
}
