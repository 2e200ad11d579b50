//! Convolution of two functions and the mass identity it satisfies.

use bkh::bessel_kingman::{convolve, haar_integral, TestFunction};
use bkh::quadrature::QuadSpec;
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    let spec = QuadSpec::default();
    let f = TestFunction::unit_indicator();
    let g = TestFunction::bump();
    for a in [0.5, 1.0, 2.5] {
        let alpha = Alpha::new(a)?;
        let h = convolve(&alpha, &f, &g, &spec)?;
        let lhs = haar_integral(&alpha, &h, &spec)?;
        let rhs = haar_integral(&alpha, &f, &spec)? * haar_integral(&alpha, &g, &spec)?;
        println!(
            "alpha={a}: int f*g = {lhs:.12}, int f int g = {rhs:.12}, (f*g)(0.5) = {:.12}",
            h.eval(0.5)?
        );
    }
    Ok(())
}
