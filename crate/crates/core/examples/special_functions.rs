//! Gamma, Bessel functions of the first kind and their zeros.

use bkh::specfun::{bessel_j, bessel_j_norm, bessel_j_zeros, gamma};
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    println!(
        "Gamma(0.5)^2 = {:.15} (pi = {:.15})",
        gamma(0.5)?.powi(2),
        std::f64::consts::PI
    );

    for nu in [0.5, 1.0, 2.5] {
        let zeros = bessel_j_zeros(nu, 4)?;
        println!("J_{nu}(10) = {:+.15e}, first zeros {zeros:.6?}", bessel_j(nu, 10.0)?);
    }

    let alpha = Alpha::new(1.5)?;
    for x in [0.0, 1.0, 10.0, 100.0] {
        println!("j_1.5({x}) = {:+.15e}", bessel_j_norm(&alpha, x));
    }
    Ok(())
}
