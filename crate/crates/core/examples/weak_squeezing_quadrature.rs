//! Photon number of a lossy mode in the weak-squeezing regime, by integrating
//! single-frequency squeezing over the Lorentzian, next to its closed form.

use dce::dynamics::Detuning;
use dce::photon::{photon_number_quadrature_weak, photon_number_weak_closed};
use dce::spectral::SpectralShape;

fn main() -> dce::Result<()> {
    let (nu0, gamma) = (0.001, 0.01);
    let shape = SpectralShape::new(gamma)?;
    println!("{:>8} {:>16} {:>16} {:>10}", "t/tau", "quadrature", "closed", "rel diff");
    for s in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let t = s / gamma;
        let q = photon_number_quadrature_weak(t, nu0, &shape, Detuning::Pair)?;
        let c = photon_number_weak_closed(t, nu0, gamma)?;
        println!("{s:>8} {q:>16.8e} {c:>16.8e} {:>10.1e}", ((q - c) / c).abs());
    }

    // The literal per-photon detuning behaves like a mode of twice the linewidth.
    let t = 3.0 / gamma;
    let photon = photon_number_quadrature_weak(t, nu0, &shape, Detuning::Photon)?;
    let doubled = photon_number_weak_closed(t, nu0, 2.0 * gamma)?;
    println!("photon detuning at t = 3 tau: {photon:.8e} vs closed form with 2 gamma {doubled:.8e}");
    Ok(())
}
