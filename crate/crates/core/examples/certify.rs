//! Certifies the refined Bohr inequality and the lacunary bounds on seeded
//! Schur samples below their radii.

use bohrkit::functionals::{evaluate_theorem, Extras, LacunaryProfile, Shape, TheoremId};
use bohrkit::powerseries::required_order;
use bohrkit::radius::{solve_radius, RadiusSpec};
use bohrkit::schur::{inner_order, lift_to_order, sample_schur};

fn main() -> bohrkit::Result<()> {
    let shape = Shape::new(1, 3)?;
    let radius = solve_radius(&RadiusSpec::thm_c34(shape.m, shape.p)?, 1e-12)?;
    let order = required_order(radius, 1e-12);
    println!("ThmC on {shape}: radius {radius:.12}, order {order}");

    let mut worst = f64::INFINITY;
    for seed in 0..200 {
        let phi = sample_schur(seed, 6, inner_order(order, shape.m, shape.p))?;
        let f = lift_to_order(&phi, shape.m, shape.p, order)?;
        let profile = LacunaryProfile::from_series(&f, shape)?;
        for step in 1..=100 {
            let r = radius * step as f64 / 100.0 - 1e-3;
            if r <= 0.0 {
                continue;
            }
            let check = evaluate_theorem(TheoremId::ThmC, &profile, r, Extras::default())?;
            worst = worst.min(check.margin);
        }
    }
    println!("smallest margin over 200 samples: {worst:.3e}");

    let f = sample_schur(42, 8, required_order(0.9, 1e-12))?;
    let full = LacunaryProfile::from_series(&f, Shape::FULL)?;
    for r in [0.2, 0.5, 0.9] {
        let b = evaluate_theorem(TheoremId::ThmB, &full, r, Extras::default())?;
        println!("ThmB r={r}: lhs {:.6} <= rhs {:.6}", b.lhs, b.rhs);
    }
    Ok(())
}
