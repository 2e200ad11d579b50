//! Forward and inverse transforms and the Plancherel identity.

use bkh::bessel_kingman::TestFunction;
use bkh::fourier::{fourier_transform, indicator_hat_closed_form, inverse_transform, plancherel_check};
use bkh::quadrature::QuadSpec;
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    let alpha = Alpha::new(0.5)?;
    let spec = QuadSpec::default();

    let ind = TestFunction::unit_indicator();
    let hat = fourier_transform(&alpha, &ind, &spec)?;
    for l in [0.0, 1.0, 10.0, 100.0] {
        println!(
            "hat 1({l}) = {:+.12e} (closed form {:+.12e})",
            hat.eval(l)?,
            indicator_hat_closed_form(&alpha, l)
        );
    }

    let bump = TestFunction::bump();
    let inv = inverse_transform(&alpha, &fourier_transform(&alpha, &bump, &spec)?, 60.0, &spec)?;
    for x in [0.0, 0.5, 0.9] {
        println!("bump({x}) = {:.10}, inverse = {:.10}", bump.eval(x)?, inv.eval(x)?);
    }

    for f in [&ind, &bump] {
        let (lhs, rhs) = plancherel_check(&alpha, f, 200.0, &spec)?;
        println!("{}: ||f||^2 = {lhs:.10}, dual energy up to 200 = {rhs:.10}", f.label());
    }
    Ok(())
}
