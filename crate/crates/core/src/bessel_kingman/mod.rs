//! The Bessel–Kingman hypergroup `(ℝ₊, ⋆_α)`: product kernel, Haar measure
//! `z^(2α+1) dz`, point convolution `ε_x ⋆ ε_y`, translation `τ_y` and the
//! convolution of functions.
//!
//! Kernel integrals are computed in the variable `u = z²`, where
//!
//! ```text
//! ∫ f(z) K_α(x,y,z) z^(2α+1) dz
//!     = C_Γ / (2 (xy)^(2α)) ∫_{d²}^{s²} f(√u) ((u - d²)(s² - u))^(α-1/2) du
//! ```
//!
//! with `d = |x - y|`, `s = x + y`: the weight is exactly a Jacobi weight, so
//! the endpoint behaviour is integrated by Gauss–Jacobi rules.

mod function;

pub use function::{Smoothness, TestFunction};

use crate::amalgam::Exponent;
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, integrate_jacobi, EndpointWeight, QuadSpec};
use crate::specfun::Alpha;

/// The Haar measure `ω_α(dz) = z^(2α+1) dz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarMeasure {
    pub alpha: Alpha,
}

impl HaarMeasure {
    pub fn new(alpha: Alpha) -> Self {
        Self { alpha }
    }

    pub fn density(&self, z: f64) -> f64 {
        z.abs().powf(self.alpha.haar_exponent())
    }

    /// `ω_α([a, b))` for `0 ≤ a ≤ b`.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        haar_mass(&self.alpha, a, b)
    }

    /// `ω_n = ω_α([n - 1, n))`.
    pub fn interval_mass(&self, n: usize) -> f64 {
        haar_interval_mass(&self.alpha, n)
    }
}

/// `ω_α([a, b)) = (b^(2α+2) - a^(2α+2)) / (2α+2)`.
pub fn haar_mass(alpha: &Alpha, a: f64, b: f64) -> f64 {
    let p = 2.0 * alpha.value() + 2.0;
    if !(b > a) {
        return 0.0;
    }
    if a <= 0.0 {
        return b.powf(p) / p;
    }
    // b^p (1 - (a/b)^p) without cancellation for a close to b.
    b.powf(p) * -(p * (a / b).ln()).exp_m1() / p
}

/// `ω_n = ω_α(I_n)` with `I_n = [n - 1, n)`; zero for `n = 0`.
pub fn haar_interval_mass(alpha: &Alpha, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = 2.0 * alpha.value() + 2.0;
    let nf = n as f64;
    nf.powf(p) * -(p * (-1.0 / nf).ln_1p()).exp_m1() / p
}

/// Product kernel
/// `K_α(x,y,z) = C_Γ [(z² - (x-y)²)((x+y)² - z²)]^(α-1/2) / (xyz)^(2α)`
/// for `|x - y| < z < x + y`, zero outside.
pub fn kernel(alpha: &Alpha, x: f64, y: f64, z: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            func: "kernel",
            arg: x,
            expected: "x > 0",
        });
    }
    if !(y > 0.0) {
        return Err(Error::Domain {
            func: "kernel",
            arg: y,
            expected: "y > 0",
        });
    }
    let d = (x - y).abs();
    let s = x + y;
    if !(z > 0.0) || z < d || z > s {
        return Ok(0.0);
    }
    let mu = alpha.mu();
    let scale = alpha.c_gamma() / (x * y * z).powf(2.0 * alpha.value());
    if mu == 0.0 {
        return Ok(scale);
    }
    if z == d || z == s {
        return Ok(0.0);
    }
    let bracket = (z - d) * (z + d) * (s - z) * (s + z);
    Ok(scale * bracket.powf(mu))
}

/// `(ε_x ⋆ ε_y)(f) = ∫ f(z) K_α(x,y,z) z^(2α+1) dz`; `ε_0` is the identity.
pub fn point_convolution(alpha: &Alpha, x: f64, y: f64, f: &TestFunction, spec: &QuadSpec) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "point_convolution",
            arg: x,
            expected: "finite x >= 0",
        });
    }
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            func: "point_convolution",
            arg: y,
            expected: "finite y >= 0",
        });
    }
    if x == 0.0 {
        return f.eval(y);
    }
    if y == 0.0 {
        return f.eval(x);
    }
    let d = (x - y).abs();
    let s = x + y;
    let lo = d.max(f.support_lo());
    let hi = s.min(f.support_hi());
    if !(lo < hi) {
        return Ok(0.0);
    }
    let factor = alpha.c_gamma() / (2.0 * (x * y).powf(2.0 * alpha.value()));
    let breaks: Vec<f64> = f
        .critical_points()
        .into_iter()
        .filter(|&c| c > lo && c < hi)
        .map(|c| c * c)
        .collect();
    let g = |u: f64| f.eval(u.max(0.0).sqrt());
    let inner_spec = spec.with_abs_tol(spec.abs_tol / factor);
    let est = integrate_jacobi(
        &g,
        d * d,
        s * s,
        EndpointWeight::symmetric(alpha.mu()),
        (lo * lo, hi * hi),
        &breaks,
        &inner_spec,
    )
    .map_err(|e| e.in_integral(format!("point convolution (x={x}, y={y})")))?;
    Ok(factor * est.value)
}

/// `τ_y f : x ↦ (ε_x ⋆ ε_y)(f)`.
pub fn translate(alpha: &Alpha, y: f64, f: &TestFunction, spec: &QuadSpec) -> Result<TestFunction> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            func: "translate",
            arg: y,
            expected: "finite y >= 0",
        });
    }
    if y == 0.0 {
        return Ok(f.clone());
    }
    if f.is_zero() {
        return Ok(TestFunction::zero());
    }
    let lo = (f.support_lo() - y).max(y - f.support_hi()).max(0.0);
    let hi = f.support_hi() + y;
    let mut breaks = Vec::new();
    for c in f.critical_points() {
        breaks.extend([c + y, (c - y).abs()]);
    }
    let (alpha, f2, spec) = (*alpha, f.clone(), *spec);
    let smoothness = match f.smoothness() {
        Smoothness::Oscillatory => Smoothness::Oscillatory,
        _ => Smoothness::Smooth,
    };
    TestFunction::new(
        format!("tau_{y}({})", f.label()),
        (lo, hi),
        breaks,
        smoothness,
        move |x| point_convolution(&alpha, x, y, &f2, &spec),
    )
}

/// `(f ⋆ g)(x) = ∫ f(y) τ_x g(y) dω_α(y)`, evaluated lazily and memoized.
/// Each evaluation is a nested quadrature.
pub fn convolve(alpha: &Alpha, f: &TestFunction, g: &TestFunction, spec: &QuadSpec) -> Result<TestFunction> {
    if !f.has_compact_support() || !g.has_compact_support() {
        return Err(Error::InvalidArgument(format!(
            "convolution needs compactly supported factors ({}, {})",
            f.label(),
            g.label()
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(TestFunction::zero());
    }
    let lo = (f.support_lo() - g.support_hi())
        .max(g.support_lo() - f.support_hi())
        .max(0.0);
    let hi = f.support_hi() + g.support_hi();
    let mut breaks = Vec::new();
    for a in f.critical_points() {
        for b in g.critical_points() {
            breaks.extend([a + b, (a - b).abs()]);
        }
    }
    let (alpha, f2, g2, spec) = (*alpha, f.clone(), g.clone(), *spec);
    let label = format!("({})*({})", f.label(), g.label());
    let result = TestFunction::new(label, (lo, hi), breaks, Smoothness::Smooth, move |x| {
        convolution_at(&alpha, &f2, &g2, x, &spec)
    })?;
    Ok(result.memoized())
}

fn convolution_at(alpha: &Alpha, f: &TestFunction, g: &TestFunction, x: f64, spec: &QuadSpec) -> Result<f64> {
    if x == 0.0 {
        // τ_0 g = g.
        return lp_inner(alpha, f, g, spec);
    }
    let lo = f.support_lo().max(g.support_lo() - x).max(x - g.support_hi()).max(0.0);
    let hi = f.support_hi().min(g.support_hi() + x);
    if !(lo < hi) {
        return Ok(0.0);
    }
    let mut breaks = f.critical_points();
    breaks.push(x);
    for c in g.critical_points() {
        breaks.extend([x + c, (x - c).abs()]);
    }
    let inner_spec = spec.tightened(10.0);
    let p = alpha.haar_exponent();
    let integrand = |y: f64| -> Result<f64> {
        let fy = f.eval(y)?;
        if fy == 0.0 {
            return Ok(0.0);
        }
        Ok(fy * point_convolution(alpha, y, x, g, &inner_spec)? * y.powf(p))
    };
    adaptive(&integrand, lo, hi, &breaks, spec)
        .map(|e| e.value)
        .map_err(|e| e.in_integral(format!("convolution at x={x}")))
}

// ∫ f g dω_α.
fn lp_inner(alpha: &Alpha, f: &TestFunction, g: &TestFunction, spec: &QuadSpec) -> Result<f64> {
    let lo = f.support_lo().max(g.support_lo());
    let hi = f.support_hi().min(g.support_hi());
    if !(lo < hi) {
        return Ok(0.0);
    }
    let mut breaks = f.critical_points();
    breaks.extend(g.critical_points());
    let p = alpha.haar_exponent();
    adaptive(&|y| Ok(f.eval(y)? * g.eval(y)? * y.powf(p)), lo, hi, &breaks, spec).map(|e| e.value)
}

/// `∫ f dω_α` over the support of `f`.
pub fn haar_integral(alpha: &Alpha, f: &TestFunction, spec: &QuadSpec) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    if !f.has_compact_support() {
        return Err(Error::InvalidArgument(format!(
            "{}: integral needs compact support",
            f.label()
        )));
    }
    let p = alpha.haar_exponent();
    adaptive(
        &|y| Ok(f.eval(y)? * y.powf(p)),
        f.support_lo(),
        f.support_hi(),
        f.breakpoints(),
        spec,
    )
    .map(|e| e.value)
    .map_err(|e| e.in_integral(format!("Haar integral of {}", f.label())))
}

/// Number of samples for sup norms on a support.
pub const SUP_SAMPLES: usize = 10_000;

/// `(∫ |f|^p dω_α)^(1/p)`; for `p = ∞` the maximum of `|f|` over a
/// 10⁴-point grid of the support plus both one-sided values at breakpoints.
pub fn lp_norm(alpha: &Alpha, f: &TestFunction, p: Exponent, spec: &QuadSpec) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    if !f.has_compact_support() {
        return Err(Error::InvalidArgument(format!(
            "{}: L^p norm needs compact support",
            f.label()
        )));
    }
    let (lo, hi) = (f.support_lo(), f.support_hi());
    match p {
        Exponent::Infinite => {
            let mut m = 0.0_f64;
            for i in 0..=SUP_SAMPLES {
                let x = lo + (hi - lo) * i as f64 / SUP_SAMPLES as f64;
                m = m.max(f.eval(x)?.abs());
            }
            for &c in f.breakpoints() {
                m = m.max(f.eval(c)?.abs());
                let left = c - 1e-9 * c.max(1.0);
                if left >= lo {
                    m = m.max(f.eval(left)?.abs());
                }
            }
            Ok(m)
        }
        Exponent::Finite(p) => {
            let w = alpha.haar_exponent();
            let v = adaptive(
                &|x| Ok(f.eval(x)?.abs().powf(p) * x.powf(w)),
                lo,
                hi,
                f.breakpoints(),
                spec,
            )
            .map_err(|e| e.in_integral(format!("L^{p} norm of {}", f.label())))?;
            Ok(v.value.max(0.0).powf(1.0 / p))
        }
    }
}
