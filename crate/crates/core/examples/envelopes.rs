//! Bohr sums of random Schur functions above 1/3 against the Bombieri and
//! Bombieri-Bourgain envelopes.

use bohrkit::functionals::{Evaluator, Extras, LacunaryProfile, Shape, TheoremId};
use bohrkit::powerseries::required_order;
use bohrkit::schur::sample_schur;
use std::f64::consts::FRAC_1_SQRT_2;

fn main() -> bohrkit::Result<()> {
    let evaluator = Evaluator::default();
    let order = required_order(0.99, 1e-12);
    let f = sample_schur(3, 8, order)?;
    let profile = LacunaryProfile::from_series(&f, Shape::FULL)?;

    for r in [1.0 / 3.0, 0.5, FRAC_1_SQRT_2, 0.8, 0.9, 0.99] {
        let id = if r <= FRAC_1_SQRT_2 {
            TheoremId::BombieriUpper
        } else {
            TheoremId::BBUpper
        };
        let check = evaluator.evaluate_theorem(id, &profile, r, Extras::default())?;
        println!(
            "r={r:.4} {id:<13} B_f={:.6}  envelope={:.6}",
            check.lhs, check.rhs
        );
    }
    Ok(())
}
