//! The product kernel, its normalization and the translate of a function.

use bkh::bessel_kingman::{kernel, translate, TestFunction};
use bkh::quadrature::{integrate_adaptive, QuadSpec};
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    let alpha = Alpha::new(0.75)?;
    let spec = QuadSpec::default();
    let (x, y) = (1.0f64, 2.5f64);

    let mass = integrate_adaptive(
        |z| kernel(&alpha, x, y, z).unwrap() * z.powf(alpha.haar_exponent()),
        (x - y).abs(),
        x + y,
        &spec,
    )?;
    println!("int K(1, 2.5, z) dw(z) = {:.15}", mass.value);

    let f = TestFunction::unit_indicator();
    let moved = translate(&alpha, 1.5, &f, &spec)?;
    for x in [0.25, 0.5, 1.0, 2.0, 2.5] {
        println!("tau_1.5 1_[0,1]({x}) = {:.12}", moved.eval(x)?);
    }
    Ok(())
}
