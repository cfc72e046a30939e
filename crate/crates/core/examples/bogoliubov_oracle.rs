//! Direct integration of the Bogoliubov equations for a single mode.
//!
//! On resonance the pair number grows as `sinh²(ν₀t)`. The exact drive adds
//! fast oscillations and a slow phase drift on top of that.

use dce::dynamics::{evolve_trajectory, Drive, DEFAULT_ODE_TOLERANCE};
use dce::model::ModulationProfile;

fn main() -> dce::Result<()> {
    let eps = 0.01;
    let prof = ModulationProfile::at_principal_resonance(eps)?;
    let nu0 = prof.coupling_rate();
    let times: Vec<f64> = (1..=8).map(|k| k as f64 * 0.5 / nu0).collect();

    let rwa = evolve_trajectory(0.0, &prof, Drive::RotatingWave, &times, DEFAULT_ODE_TOLERANCE)?;
    let full = evolve_trajectory(0.0, &prof, Drive::Exact, &times, DEFAULT_ODE_TOLERANCE)?;

    println!("{:>8} {:>14} {:>14} {:>14}", "nu0 t", "sinh^2", "rotating", "exact drive");
    for (i, t) in times.iter().enumerate() {
        let exact = (nu0 * t).sinh().powi(2);
        println!(
            "{:>8.2} {exact:>14.6e} {:>14.6e} {:>14.6e}",
            nu0 * t,
            rwa.pairs[i].photon_number(),
            full.pairs[i].photon_number()
        );
    }
    println!(
        "max |u|^2 - |v|^2 - 1: rotating {:.1e}, exact {:.1e} ({} steps)",
        rwa.max_unitarity_defect, full.max_unitarity_defect, full.steps
    );
    Ok(())
}
