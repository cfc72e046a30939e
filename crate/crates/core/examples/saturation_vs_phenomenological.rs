//! Saturating closed form against the exponential-gain phenomenological model,
//! rendered to an SVG.
//!
//! Usage: `cargo run --example saturation_vs_phenomenological -- [out.svg]`

use dce::model::{MethodTag, PhotonNumberSeries};
use dce::output::write_atomic;
use dce::photon::{
    asymptotic_pair_number, phenomenological_model, photon_number_general_closed, saturation_time, Regime,
};
use dce::plot::render_svg;

fn main() -> dce::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "saturation.svg".into());
    let (nu0, gamma) = (0.02, 0.01);
    let times: Vec<f64> = (0..=120).map(|i| 10f64.powf(-2.0 + 3.0 * i as f64 / 120.0) / gamma).collect();

    let mut series = PhotonNumberSeries::new(times.clone(), 1.0 / gamma)?;
    let closed = times.iter().map(|&t| photon_number_general_closed(t, nu0, gamma)).collect::<dce::Result<Vec<_>>>()?;
    let phen = times.iter().map(|&t| phenomenological_model(t, nu0, gamma)).collect::<dce::Result<Vec<_>>>()?;
    series.insert(MethodTag::ClosedGeneral, closed)?;
    series.insert(MethodTag::Phenomenological, phen)?;

    let n_inf = asymptotic_pair_number(nu0, gamma, Regime::General)?;
    let t_sat = saturation_time(nu0, gamma)?.expect("driven");
    println!("N_inf = {n_inf:.6}, t_sat = {:.3} tau", t_sat * gamma);
    println!(
        "at 10 tau: saturating {:.6}, phenomenological {:.3e}",
        photon_number_general_closed(10.0 / gamma, nu0, gamma)?,
        phenomenological_model(10.0 / gamma, nu0, gamma)?
    );

    write_atomic(path.as_ref(), render_svg(&series, Some(n_inf), None).as_bytes())?;
    println!("wrote {path}");
    Ok(())
}
