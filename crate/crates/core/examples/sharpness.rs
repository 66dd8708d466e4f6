//! Extremal scans just below and just above each radius.

use bohrkit::functionals::{Extras, Shape, TheoremId};
use bohrkit::multidim::sharpness_scan;
use bohrkit::radius::{solve_radius, RadiusSpec};

fn main() -> bohrkit::Result<()> {
    let grid: Vec<f64> = (0..4000).map(|i| i as f64 / 4000.0).collect();
    let cases = [
        (TheoremId::Thm32, RadiusSpec::thm32(0, 1)?),
        (TheoremId::Thm32, RadiusSpec::thm32(1, 2)?),
        (TheoremId::Thm34, RadiusSpec::thm_c34(1, 1)?),
        (TheoremId::Thm41, RadiusSpec::thm_c34(2, 3)?),
        (TheoremId::Cor43, RadiusSpec::cor43(0, 3)?),
    ];
    for (id, spec) in cases {
        let radius = solve_radius(&spec, 1e-12)?;
        let below = sharpness_scan(id, spec.shape, radius - 0.01, &grid, Extras::default())?;
        let above = sharpness_scan(id, spec.shape, radius + 0.01, &grid, Extras::default())?;
        println!(
            "{id} {}: radius {radius:.6}  below {below:.6}  above {above:.6}",
            spec.shape
        );
    }

    let at = sharpness_scan(TheoremId::Thm32, Shape::FULL, 0.6, &grid, Extras::default())?;
    println!("Thm32 on (0, 1) at r = 3/5: {at:.12}");
    Ok(())
}
