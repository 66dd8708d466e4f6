//! Radii of the lacunary inequalities for small gaps, next to their closed
//! forms where one exists.

use bohrkit::harness::{format_g15, radius_table};
use bohrkit::radius::{solve_radius, RadiusId, RadiusSpec};

fn main() -> bohrkit::Result<()> {
    for id in [RadiusId::ThmC34, RadiusId::Thm32, RadiusId::Cor43] {
        println!("{}", id.name());
        for row in radius_table(id, 3, 1e-12)? {
            let closed = row
                .closed_form
                .map(format_g15)
                .unwrap_or_else(|| "-".into());
            println!(
                "  p={} m={}  r={:<18} closed={closed}",
                row.p,
                row.m,
                format_g15(row.radius)
            );
        }
    }

    for s in [0.5, 1.0, 2.0, 3.0] {
        let r = solve_radius(&RadiusSpec::thm31(0.5, s)?, 1e-12)?;
        println!("Thm31 |f(0)|=0.5 s={s}: r={}", format_g15(r));
    }
    Ok(())
}
