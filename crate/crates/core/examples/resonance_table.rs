//! Resonance branches of a sinusoidally modulated refractive index.
//!
//! Usage: `cargo run --example resonance_table -- [epsilon]`

use dce::model::ModulationProfile;
use dce::modulation::resonance_table;

fn main() -> dce::Result<()> {
    let eps: f64 = std::env::args().nth(1).map(|s| s.parse().expect("epsilon")).unwrap_or(0.01);
    let prof = ModulationProfile::at_principal_resonance(eps)?;
    println!("{:>4} {:>5} {:>12} {:>12} {:>12}", "l", "sign", "Omega/w0", "alpha", "weight");
    for b in resonance_table(&prof, -5..=5) {
        println!(
            "{:>4} {:>5} {:>12.6} {:>12.6} {:>12.3e}",
            b.harmonic_order, b.sign, b.resonant_frequency, b.bessel_argument, b.bessel_weight
        );
        assert!((b.bessel_argument.abs() - b.bessel_argument_from_frequency(eps).abs()).abs() < 1e-12);
    }
    Ok(())
}
