//! Expanding Schur-class functions from their Schur parameters.

use bohrkit::schur::{sample_parameters, schur_to_taylor};
use num_complex::Complex64;

fn main() -> bohrkit::Result<()> {
    let params = sample_parameters(7, 5)?;
    for (j, g) in params.gammas().iter().enumerate() {
        println!("gamma_{j} = {:.4} {:+.4}i", g.re, g.im);
    }

    let series = schur_to_taylor(&params, 64)?;
    for (k, a) in series.coeffs().iter().take(6).enumerate() {
        println!(
            "a_{k} = {:.6} {:+.6}i  |a_{k}| = {:.6}",
            a.re,
            a.im,
            a.norm()
        );
    }

    // The truncated series and the continued fraction agree inside the disk.
    let z = Complex64::from_polar(0.5, 1.0);
    println!("f(z) series   = {:.12}", series.eval(z));
    println!("f(z) pointwise = {:.12}", params.eval(z));
    println!("majorant at 1/3 = {:.6}", series.majorant(1.0 / 3.0)?);
    Ok(())
}
