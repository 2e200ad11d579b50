//! Adaptive, endpoint-weighted and oscillatory integration.

use bkh::quadrature::{integrate_adaptive, integrate_endpoint_weighted, integrate_oscillatory, QuadSpec};
use bkh::specfun::bessel_j;

fn main() -> bkh::Result<()> {
    let spec = QuadSpec::default();

    let e = integrate_adaptive(|x| x.sqrt(), 0.0, 1.0, &spec)?;
    println!("int_0^1 sqrt(x) dx = {:.15} (err {:.1e})", e.value, e.err_est);

    let v = integrate_endpoint_weighted(|_| 1.0, -1.0, 1.0, 0.5, &spec)?;
    println!(
        "int (1 - x^2)^(1/2) dx = {v:.15} (pi/2 = {:.15})",
        std::f64::consts::FRAC_PI_2
    );

    // int_0^b J_0(50 x) dx, segmented at the zeros of J_0.
    let lambda = 50.0;
    let v = integrate_oscillatory(|x| bessel_j(0.0, lambda * x).unwrap(), lambda, 0.0, 0.0, 3.0, &spec)?;
    println!("int_0^3 J_0(50x) dx = {v:.15}");
    Ok(())
}
