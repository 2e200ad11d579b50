//! Discrete and continuous amalgam norms, including a divergent one.

use bkh::amalgam::{
    continuous_norm_p_inf, default_y_grid, discrete_norm, discrete_norms, Exponent, ExponentPair, TailPolicy,
};
use bkh::bessel_kingman::TestFunction;
use bkh::fourier::indicator_hat;
use bkh::quadrature::QuadSpec;
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    let alpha = Alpha::new(1.0)?;
    let spec = QuadSpec::default();
    let f = TestFunction::indicator(0.5, 3.0)?;

    for (p, q) in [(1.0, 1.0), (2.0, 1.0), (2.0, f64::INFINITY)] {
        let e = ExponentPair::new(Exponent::new(p)?, Exponent::new(q)?)?;
        let n = discrete_norm(&alpha, &f, e, &TailPolicy::compact(), &spec)?;
        println!("||f||_{e} = {:.12} from blocks {:.6?}", n.value, n.blocks);
    }
    let grid = default_y_grid(&f, 0.25)?;
    println!(
        "continuous (2, inf) norm = {:.12}",
        continuous_norm_p_inf(&alpha, &f, 2.0, &grid, &spec)?
    );

    // The transform of the unit indicator decays like lambda^(-alpha-3/2).
    let hat = indicator_hat(&alpha);
    let qs = [Exponent::new(1.5)?, Exponent::new(2.0)?];
    for (q, n) in qs.iter().zip(discrete_norms(
        &alpha,
        &hat,
        Exponent::Infinite,
        &qs,
        &TailPolicy::default(),
        &spec,
    )?) {
        println!(
            "||hat 1||_(inf,{q}): diverges={} value={:.6} slope={:?}",
            n.diverges, n.value, n.fitted_slope
        );
    }
    Ok(())
}
