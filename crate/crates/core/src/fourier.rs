//! Fourier transform on the hypergroup,
//! `f̂(λ) = ∫ f(x) j_α(λx) dω_α(x)`, and its inverse
//! `f(x) = c_α ∫ f̂(λ) j_α(λx) λ^(2α+1) dλ` with `c_α = (2^α Γ(α+1))⁻²`.

use std::f64::consts::PI;
use std::ops::Deref;
use std::sync::Arc;

use crate::amalgam::Exponent;
use crate::bessel_kingman::{haar_integral, lp_norm, Smoothness, TestFunction};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, integrate_oscillatory_with, JacobiRule, QuadSpec};
use crate::specfun::{bessel_j_norm, j_unchecked, Alpha, ZeroTable};

/// A function of the dual variable `λ ≥ 0`, typically a transform.
#[derive(Debug, Clone)]
pub struct DualFunction {
    inner: TestFunction,
    decay_exponent_hint: f64,
    source_support_hi: Option<f64>,
}

impl Deref for DualFunction {
    type Target = TestFunction;

    fn deref(&self) -> &TestFunction {
        &self.inner
    }
}

impl DualFunction {
    /// Wraps a function of `λ`; `decay_exponent_hint` is the expected power
    /// `h` in `|g(λ)| ≲ λ^h`.
    pub fn new(inner: TestFunction, decay_exponent_hint: f64) -> Self {
        Self {
            inner,
            decay_exponent_hint,
            source_support_hi: None,
        }
    }

    pub fn decay_exponent_hint(&self) -> f64 {
        self.decay_exponent_hint
    }

    /// Support bound of the function this is the transform of, if known.
    pub fn source_support_hi(&self) -> Option<f64> {
        self.source_support_hi
    }

    pub fn as_test_function(&self) -> &TestFunction {
        &self.inner
    }

    /// `λ ↦ g(λ)²`, the transform of `f ⋆ f` when `g = f̂`.
    pub fn squared(&self) -> DualFunction {
        let g = self.inner.clone();
        let inner = TestFunction::new(
            format!("({})^2", self.inner.label()),
            (0.0, f64::INFINITY),
            vec![],
            Smoothness::Oscillatory,
            move |l| {
                let v = g.eval(l)?;
                Ok(v * v)
            },
        )
        .expect("valid support");
        DualFunction {
            inner,
            decay_exponent_hint: 2.0 * self.decay_exponent_hint,
            source_support_hi: self.source_support_hi.map(|r| 2.0 * r),
        }
    }
}

/// Default decay hint `-(α + 3/2)` for transforms of piecewise smooth
/// functions with jumps.
pub fn default_decay_hint(alpha: &Alpha) -> f64 {
    -(alpha.value() + 1.5)
}

/// `f̂` as a lazily evaluated, memoized [`DualFunction`]. Each evaluation is
/// an oscillatory quadrature segmented at zeros of `J_α`.
pub fn fourier_transform(alpha: &Alpha, f: &TestFunction, spec: &QuadSpec) -> Result<DualFunction> {
    if !f.has_compact_support() {
        return Err(Error::InvalidArgument(format!(
            "{}: Fourier transform needs compact support",
            f.label()
        )));
    }
    let zeros = Arc::new(ZeroTable::new(alpha.value())?);
    let (al, g, sp) = (*alpha, f.clone(), *spec);
    let inner = TestFunction::new(
        format!("hat({})", f.label()),
        (0.0, f64::INFINITY),
        vec![],
        Smoothness::Oscillatory,
        move |lambda| transform_at(&al, &g, lambda, &zeros, &sp),
    )?;
    Ok(DualFunction {
        inner: inner.memoized(),
        decay_exponent_hint: default_decay_hint(alpha),
        source_support_hi: Some(f.support_hi()),
    })
}

fn transform_at(alpha: &Alpha, f: &TestFunction, lambda: f64, zeros: &ZeroTable, spec: &QuadSpec) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    if lambda == 0.0 {
        return haar_integral(alpha, f, spec);
    }
    let (lo, hi) = (f.support_lo(), f.support_hi());
    let w = alpha.haar_exponent();
    let integrand = |x: f64| -> Result<f64> {
        let fx = f.eval(x)?;
        if fx == 0.0 {
            return Ok(0.0);
        }
        Ok(fx * bessel_j_norm(alpha, lambda * x) * x.powf(w))
    };
    let result = if lambda * hi <= 2.0 * PI {
        adaptive(&integrand, lo, hi, f.breakpoints(), spec)
    } else {
        integrate_oscillatory_with(&integrand, lambda, zeros, lo, hi, f.breakpoints(), spec)
    };
    result
        .map(|e| e.value)
        .map_err(|e| e.in_integral(format!("Fourier transform of {} at lambda={lambda}", f.label())))
}

/// `𝟙̂_{I₁}(λ) = Γ(α+1) 2^α λ^(-(α+1)) J_{α+1}(λ)`, by its power series
/// `Σ (-1)^k Γ(α+1) λ^(2k) / (2^(2k+1) k! Γ(α+k+2))` for `λ < 1e-6`.
pub fn indicator_hat_closed_form(alpha: &Alpha, lambda: f64) -> f64 {
    let l = lambda.abs();
    let a = alpha.value();
    if l < 1e-6 {
        // Two terms reach round-off here.
        let first = 1.0 / (2.0 * a + 2.0);
        return first * (1.0 - l * l / (4.0 * (a + 2.0)));
    }
    alpha.bessel_scale() * l.powf(-(a + 1.0)) * j_unchecked(a + 1.0, l)
}

/// The closed form of `𝟙̂_{I₁}` as a [`DualFunction`].
pub fn indicator_hat(alpha: &Alpha) -> DualFunction {
    let al = *alpha;
    let inner = TestFunction::new(
        "hat(indicator[0,1))",
        (0.0, f64::INFINITY),
        vec![],
        Smoothness::Oscillatory,
        move |l| Ok(indicator_hat_closed_form(&al, l)),
    )
    .expect("valid support");
    DualFunction {
        inner,
        decay_exponent_hint: default_decay_hint(alpha),
        source_support_hi: Some(1.0),
    }
}

/// `N_α = max(10, 10(α+1))`, where the asymptotic regime of `𝟙̂_{I₁}` starts.
pub fn asymptotic_start(alpha: &Alpha) -> f64 {
    (10.0 * (alpha.value() + 1.0)).max(10.0)
}

/// Outcome of [`asymptotic_envelope_check`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EnvelopeFit {
    /// `C* = max |𝟙̂(λ)| λ^(α+3/2)` over the sample grid.
    pub fitted_c: f64,
    /// `max (|𝟙̂(λ)| λ^(α+3/2) - 1.05 C*)` over a four times denser grid;
    /// non-positive when the bound holds.
    pub max_violation: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// Fits the constant in `|𝟙̂_{I₁}(λ)| ≤ C λ^(-α-3/2)` on `[λ_min, λ_max]`
/// and verifies `1.05 C*` on a denser grid.
pub fn asymptotic_envelope_check(
    alpha: &Alpha,
    lambda_min: f64,
    lambda_max: f64,
    samples: usize,
) -> Result<EnvelopeFit> {
    let n_alpha = asymptotic_start(alpha);
    if !(lambda_min >= n_alpha) || !(lambda_max > lambda_min) || samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "envelope check needs {n_alpha} <= lambda_min < lambda_max and samples >= 2"
        )));
    }
    let e = alpha.value() + 1.5;
    let scaled = |l: f64| indicator_hat_closed_form(alpha, l).abs() * l.powf(e);
    let grid = |n: usize| (0..n).map(move |i| lambda_min + (lambda_max - lambda_min) * i as f64 / (n - 1) as f64);
    let fitted_c = grid(samples).map(scaled).fold(0.0, f64::max);
    let bound = 1.05 * fitted_c;
    let max_violation = grid(4 * samples - 3)
        .map(|l| scaled(l) - bound)
        .fold(f64::NEG_INFINITY, f64::max);
    if !fitted_c.is_finite() {
        return Err(Error::NonFinite { x: lambda_min });
    }
    Ok(EnvelopeFit {
        fitted_c,
        max_violation,
        lambda_min,
        lambda_max,
    })
}

/// Samples for [`asymptotic_envelope_check`] at spacing 0.1.
pub fn envelope_samples(lambda_min: f64, lambda_max: f64) -> usize {
    ((lambda_max - lambda_min) / 0.1).ceil() as usize + 1
}

const PANEL_NODES: usize = 24;

/// Gauss–Legendre panels on `[0, cut]` resolving oscillations of frequency up
/// to `freq` (about 6 radians per panel).
fn panels(cut: f64, freq: f64) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let width = (6.0 / freq.max(1e-3)).min(0.5);
    let count = (cut / width).ceil().max(1.0) as usize;
    let h = cut / count as f64;
    let rule = JacobiRule::new(PANEL_NODES, 0.0, 0.0)?;
    let mut nodes = Vec::with_capacity(count * PANEL_NODES);
    let mut weights = Vec::with_capacity(count * PANEL_NODES);
    for k in 0..count {
        let a = k as f64 * h;
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push(a + 0.5 * h * (1.0 + t));
            weights.push(0.5 * h * w);
        }
    }
    Ok((nodes, weights, h))
}

/// Truncated inverse transform `x ↦ c_α ∫₀^Λ g(λ) j_α(λx) λ^(2α+1) dλ`,
/// tabulated once on a fixed λ grid.
#[derive(Debug, Clone)]
pub struct InverseTransform {
    alpha: Alpha,
    lambda_cut: f64,
    x_max: f64,
    abs_tol: f64,
    panel_width: f64,
    nodes: Vec<f64>,
    // c_α g(λ_i) λ_i^(2α+1) w_i
    weights: Vec<f64>,
    tail_amplitude: f64,
    decay_hint: f64,
}

/// Default range of `x` resolved by [`inverse_transform`].
pub fn default_inverse_range(g: &DualFunction) -> f64 {
    match g.source_support_hi() {
        Some(r) => 2.0 * r + 2.0,
        None => 10.0,
    }
}

/// Builds the truncated inverse transform of `g`, resolving `x` up to
/// [`default_inverse_range`].
pub fn inverse_transform(
    alpha: &Alpha,
    g: &DualFunction,
    lambda_cut: f64,
    spec: &QuadSpec,
) -> Result<InverseTransform> {
    inverse_transform_on(alpha, g, lambda_cut, default_inverse_range(g), spec)
}

/// [`inverse_transform`] with an explicit largest evaluation point `x_max`.
pub fn inverse_transform_on(
    alpha: &Alpha,
    g: &DualFunction,
    lambda_cut: f64,
    x_max: f64,
    spec: &QuadSpec,
) -> Result<InverseTransform> {
    if !(lambda_cut > 0.0) || !lambda_cut.is_finite() || !(x_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "inverse transform needs lambda_cut > 0 and x_max > 0, got {lambda_cut}, {x_max}"
        )));
    }
    let h = g.decay_exponent_hint();
    if !(h <= -(alpha.value() + 1.5) + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "decay hint {h} is slower than -(alpha + 3/2)"
        )));
    }
    let freq = x_max + g.source_support_hi().unwrap_or(x_max);
    let (nodes, base, panel_width) = panels(lambda_cut, freq)?;
    let w = alpha.haar_exponent();
    let c = alpha.plancherel_c();
    let mut weights = Vec::with_capacity(nodes.len());
    for (l, b) in nodes.iter().zip(&base) {
        weights.push(c * g.eval(*l)? * l.powf(w) * b);
    }
    // Amplitude A in |g(λ)| ≈ A λ^h from the last half of the range.
    let tail_amplitude = nodes
        .iter()
        .filter(|&&l| l >= 0.5 * lambda_cut)
        .map(|&l| Ok(g.eval(l)?.abs() * l.powf(-h)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(InverseTransform {
        alpha: *alpha,
        lambda_cut,
        x_max,
        abs_tol: spec.abs_tol,
        panel_width,
        nodes,
        weights,
        tail_amplitude,
        decay_hint: h,
    })
}

impl InverseTransform {
    pub fn lambda_cut(&self) -> f64 {
        self.lambda_cut
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Value at `x ∈ [0, x_max]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_with_cut(x, self.lambda_cut)
    }

    /// Value with the integral stopped at `cut ≤ lambda_cut` (rounded to the
    /// tabulation panels).
    pub fn eval_with_cut(&self, x: f64, cut: f64) -> Result<f64> {
        if !(x >= 0.0) || x > self.x_max * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "inverse transform resolved on [0, {}], got x = {x}",
                self.x_max
            )));
        }
        let whole = ((cut / self.panel_width) + 1e-9).floor() as usize;
        let mut terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .take(whole * PANEL_NODES)
            .map(|(l, w)| w * bessel_j_norm(&self.alpha, l * x))
            .collect();
        terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        Ok(terms.iter().sum())
    }

    /// Estimated size of the discarded part `∫_Λ^∞` at `x`, from the decay
    /// hint: for `x > 0` one integration by parts against the oscillation of
    /// `j_α(λx)`, for `x = 0` (or if smaller) the absolute bound.
    pub fn tail_estimate(&self, x: f64) -> f64 {
        let a = self.alpha.value();
        let big = self.lambda_cut;
        let amp = self.alpha.plancherel_c() * self.tail_amplitude;
        let p_abs = self.decay_hint + 2.0 * a + 2.0;
        let absolute = if p_abs < 0.0 {
            amp * big.powf(p_abs) / -p_abs
        } else {
            f64::INFINITY
        };
        if x <= 0.0 {
            return absolute;
        }
        let env = self.alpha.bessel_scale() * (2.0 / PI).sqrt() * x.powf(-a - 0.5);
        let parts = amp * env * big.powf(self.decay_hint + a + 0.5) / x;
        parts.min(absolute)
    }

    /// Like [`eval`](Self::eval) but fails when the tail estimate exceeds
    /// ten times the absolute tolerance.
    pub fn eval_checked(&self, x: f64) -> Result<f64> {
        let tail = self.tail_estimate(x);
        let limit = 10.0 * self.abs_tol;
        if !(tail <= limit) {
            return Err(Error::TailDominates { x, tail, limit });
        }
        self.eval(x)
    }
}

/// Plancherel sides for compactly supported `f`:
/// `(∫ |f|² dω_α, c_α ∫₀^Λ |f̂(λ)|² λ^(2α+1) dλ)`.
pub fn plancherel_check(alpha: &Alpha, f: &TestFunction, lambda_cut: f64, spec: &QuadSpec) -> Result<(f64, f64)> {
    if !(lambda_cut > 0.0) || !lambda_cut.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda_cut must be positive and finite, got {lambda_cut}"
        )));
    }
    if f.is_zero() {
        return Ok((0.0, 0.0));
    }
    let lhs = lp_norm(alpha, f, Exponent::Finite(2.0), spec)?.powi(2);
    let hat = fourier_transform(alpha, f, spec)?;
    let rhs = dual_energy(alpha, &hat, lambda_cut)?;
    Ok((lhs, rhs))
}

/// `c_α ∫₀^Λ g(λ)² λ^(2α+1) dλ` on Gauss–Legendre panels.
pub fn dual_energy(alpha: &Alpha, g: &DualFunction, lambda_cut: f64) -> Result<f64> {
    let freq = 2.0 * g.source_support_hi().unwrap_or(10.0);
    let (nodes, weights, _) = panels(lambda_cut, freq)?;
    let w = alpha.haar_exponent();
    let mut terms = Vec::with_capacity(nodes.len());
    for (l, b) in nodes.iter().zip(&weights) {
        let v = g.eval(*l)?;
        terms.push(v * v * l.powf(w) * b);
    }
    terms.sort_by(f64::total_cmp);
    Ok(alpha.plancherel_c() * terms.iter().sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel_kingman::haar_interval_mass;
    use crate::specfun::bessel_j;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    fn half_closed(l: f64) -> f64 {
        (l.sin() - l * l.cos()) / l.powi(3)
    }

    #[test]
    fn transform_examples() {
        let f = TestFunction::unit_indicator();
        let al = a(0.5);
        let hat = fourier_transform(&al, &f, &spec()).unwrap();
        assert!((hat.eval(0.0).unwrap() - haar_interval_mass(&al, 1)).abs() < 1e-14);
        // Oracle: direct quadrature of ∫₀¹ sin(λx)/(λx) x² dx.
        let direct = crate::quadrature::integrate_adaptive(|x| (2.0 * x).sin() / 2.0 * x, 0.0, 1.0, &spec())
            .unwrap()
            .value;
        assert!((direct - half_closed(2.0)).abs() < 1e-14);
        assert!((hat.eval(2.0).unwrap() - half_closed(2.0)).abs() < 1e-12);
        assert!((half_closed(2.0) - 0.217_699).abs() < 1e-6);

        let one = a(1.0);
        let hat = fourier_transform(&one, &f, &spec()).unwrap();
        let want = 2.0 * bessel_j(2.0, 1.0).unwrap();
        assert!((hat.eval(1.0).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        for &v in &[0.5, 0.75, 1.0, 2.5] {
            let al = a(v);
            assert!((indicator_hat_closed_form(&al, 0.0) - 1.0 / (2.0 * v + 2.0)).abs() < 1e-15);
            // Continuity across the series switch.
            let below = indicator_hat_closed_form(&al, 0.999e-6);
            let above = indicator_hat_closed_form(&al, 1.001e-6);
            assert!((below - above).abs() < 1e-12);
        }
        let pi = indicator_hat_closed_form(&a(0.5), PI);
        assert!((pi - 1.0 / (PI * PI)).abs() < 1e-14);
        let q = crate::quadrature::integrate_adaptive(|x| (PI * x).sin() / PI * x, 0.0, 1.0, &spec())
            .unwrap()
            .value;
        assert!((pi - q).abs() < 1e-14);
    }

    #[test]
    fn transform_agrees_with_closed_form() {
        let f = TestFunction::unit_indicator();
        for &v in &[0.5, 1.5] {
            let al = a(v);
            let hat = fourier_transform(&al, &f, &spec()).unwrap();
            for &l in &[0.1, 1.0, 5.0, 20.0, 80.0] {
                let d = (hat.eval(l).unwrap() - indicator_hat_closed_form(&al, l)).abs();
                assert!(d < 1e-10, "alpha={v} lambda={l}: {d}");
            }
        }
    }

    #[test]
    fn linearity_and_continuity_at_zero() {
        let al = a(0.75);
        let f = TestFunction::bump();
        let g = TestFunction::ramp();
        let h = f.scaled(2.0).add(&g.scaled(-0.5));
        let (fh, gh, hh) = (
            fourier_transform(&al, &f, &spec()).unwrap(),
            fourier_transform(&al, &g, &spec()).unwrap(),
            fourier_transform(&al, &h, &spec()).unwrap(),
        );
        for &l in &[0.0, 1e-7, 0.3, 4.0, 17.0, 60.0] {
            let lhs = hh.eval(l).unwrap();
            let rhs = 2.0 * fh.eval(l).unwrap() - 0.5 * gh.eval(l).unwrap();
            assert!((lhs - rhs).abs() < 1e-10, "lambda={l}");
        }
        let at0 = fh.eval(0.0).unwrap();
        assert!((fh.eval(1e-6).unwrap() - at0).abs() < 1e-10);
        assert!((at0 - haar_integral(&al, &f, &spec()).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn envelope_examples() {
        let al = a(0.5);
        let n = asymptotic_start(&al);
        let fit = asymptotic_envelope_check(&al, n, 500.0, envelope_samples(n, 500.0)).unwrap();
        assert!(fit.fitted_c.is_finite() && fit.max_violation <= 0.0);
        let wide = asymptotic_envelope_check(&al, n, 1000.0, envelope_samples(n, 1000.0)).unwrap();
        assert!((wide.fitted_c / fit.fitted_c - 1.0).abs() < 0.05);
        let two = a(2.0);
        let n2 = asymptotic_start(&two);
        let fit = asymptotic_envelope_check(&two, n2, 400.0, envelope_samples(n2, 400.0)).unwrap();
        let at200 = indicator_hat_closed_form(&two, 200.0).abs() * 200f64.powf(3.5);
        assert!(at200 <= 1.05 * fit.fitted_c);
        assert!(asymptotic_envelope_check(&two, 5.0, 400.0, 100).is_err());
    }

    #[test]
    fn plancherel_constant_and_zero() {
        assert!((a(0.5).plancherel_c() - 2.0 / PI).abs() < 1e-14);
        let (l, r) = plancherel_check(&a(1.0), &TestFunction::zero(), 100.0, &spec()).unwrap();
        assert_eq!((l, r), (0.0, 0.0));
    }

    #[test]
    fn bump_round_trip() {
        let al = a(0.5);
        let f = TestFunction::bump();
        let hat = fourier_transform(&al, &f, &spec()).unwrap();
        let inv = inverse_transform(&al, &hat, 200.0, &spec()).unwrap();
        for i in 0..10 {
            let x = 0.05 + 0.09 * i as f64;
            let back = inv.eval(x).unwrap();
            assert!((back - f.eval(x).unwrap()).abs() < 1e-5, "x={x}: {back}");
            if x < 0.3 {
                continue;
            }
            let coarse = inv.eval_with_cut(x, 150.0).unwrap();
            assert!((back - coarse).abs() < 1e-5, "x={x}: {back} vs {coarse}");
        }
    }
}
