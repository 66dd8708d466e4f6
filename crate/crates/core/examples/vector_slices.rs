//! Slices of maps f = z g on the unit ball of l_t^n.

use bohrkit::functionals::{Extras, TheoremId};
use bohrkit::multidim::{
    frechet_norms, slice_from_direction, vector_check, Direction, LtIndex, MapSpec,
};
use bohrkit::schur::sample_schur;

fn main() -> bohrkit::Result<()> {
    let t = LtIndex::Finite(2.0);
    let e1 = Direction::e1(3, t)?;

    let monomial = slice_from_direction(&MapSpec::SharpThm41 { m: 1, p: 1 }, &e1, 16)?;
    println!(
        "z_1^2 slice norms at r=0.5: {:?}",
        &frechet_norms(&monomial, 0.5)?[..4]
    );
    for r in [0.7, 0.8] {
        let check = vector_check(TheoremId::Thm41, &monomial, r, Extras::default())?;
        println!(
            "Thm41 r={r}: lhs {:.6} satisfied {}",
            check.lhs, check.satisfied
        );
    }

    let direction = Direction::random(5, 3, t)?;
    let g = sample_schur(9, 6, 400)?;
    let map = MapSpec::GeneralZG {
        g,
        shape: bohrkit::Shape::FULL,
    };
    let slice = slice_from_direction(&map, &direction, 400)?;
    for r in [0.3, 0.5, 0.6] {
        let check = vector_check(TheoremId::Cor42, &slice, r, Extras::default())?;
        println!(
            "Cor42 r={r}: lhs {:.6} margin {:.6}",
            check.lhs, check.margin
        );
    }
    Ok(())
}
