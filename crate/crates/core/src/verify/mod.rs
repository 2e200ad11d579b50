//! Numerical checks of the amalgam-space results, one report per check and
//! `α`. Constants that only exist abstractly are measured and tested for
//! finiteness and stability under refinement.

mod config;

pub use config::{OutputFormat, RunConfig, Sizing, DEFAULT_ALPHAS, DEFAULT_SEED};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::amalgam::{
    continuous_norm_p_inf, default_y_grid, discrete_norm, discrete_norms, Exponent, ExponentPair, TailPolicy,
};
use crate::bessel_kingman::{convolve, haar_interval_mass, point_convolution, Smoothness, TestFunction};
use crate::error::{Error, Result};
use crate::finite_hypergroup::FiniteHypergroup;
use crate::fourier::{
    asymptotic_envelope_check, asymptotic_start, dual_energy, envelope_samples, fourier_transform, indicator_hat,
};
use crate::quadrature::QuadSpec;
use crate::report::{ReportBuilder, VerificationReport};
use crate::specfun::Alpha;

/// `(x, y)` points of the kernel normalization grid.
pub const KERNEL_POINTS: [f64; 4] = [0.3, 1.0, 2.5, 7.0];

/// Indicators of `[0,1)`, `[2,3)`, `[0,5)`, the bump and `x·𝟙_[1,2)`.
pub fn norm_catalog() -> Vec<TestFunction> {
    vec![
        TestFunction::unit_indicator(),
        TestFunction::indicator(2.0, 3.0).expect("valid interval"),
        TestFunction::indicator(0.0, 5.0).expect("valid interval"),
        TestFunction::bump(),
        TestFunction::ramp(),
    ]
}

/// Nonnegative factors for the Young check.
pub fn young_catalog() -> Vec<TestFunction> {
    vec![
        TestFunction::unit_indicator(),
        TestFunction::bump(),
        TestFunction::ramp(),
    ]
}

/// Functions whose transforms are examined.
pub fn transform_catalog() -> Vec<TestFunction> {
    vec![TestFunction::unit_indicator(), TestFunction::bump()]
}

fn pair(p: f64, q: f64) -> ExponentPair {
    ExponentPair::new(Exponent::new(p).expect("p >= 1"), Exponent::new(q).expect("q >= 1")).expect("valid pair")
}

fn inf_pair() -> ExponentPair {
    ExponentPair::new(Exponent::Infinite, Exponent::Infinite).expect("valid pair")
}

/// `(1,1)⋆(1,1) → (1,1)`, `(1,1)⋆(∞,∞) → (∞,∞)` and `(1,1)⋆(2,2) → (2,2)`.
pub fn default_young_triples() -> Vec<(ExponentPair, ExponentPair, ExponentPair)> {
    vec![
        (pair(1.0, 1.0), pair(1.0, 1.0), pair(1.0, 1.0)),
        (pair(1.0, 1.0), inf_pair(), inf_pair()),
        (pair(1.0, 1.0), pair(2.0, 2.0), pair(2.0, 2.0)),
    ]
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else if a == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn relative_change(new: f64, old: f64) -> f64 {
    if new == old {
        0.0
    } else {
        (new / old - 1.0).abs()
    }
}

fn is_nonnegative(f: &TestFunction) -> bool {
    if f.is_zero() {
        return true;
    }
    let (lo, hi) = (f.support_lo(), f.support_hi());
    (0..=256).all(|i| {
        let x = lo + (hi - lo) * i as f64 / 256.0;
        f.eval(x).map(|v| v >= 0.0).unwrap_or(false)
    })
}

/// `∫ K_α(x,y,z) dω_α(z) = 1` on the grid `points × points`.
pub fn check_kernel_normalization(alpha: &Alpha, points: &[f64], spec: &QuadSpec) -> VerificationReport {
    const TOL: f64 = 1e-8;
    let mut r = ReportBuilder::new("kernel-normalization", Some(alpha.value()), TOL);
    for &x in points {
        for &y in points {
            let one = TestFunction::constant(1.0, x + y + 1.0).expect("valid constant");
            let input = format!("x={x} y={y}");
            match point_convolution(alpha, x, y, &one, spec) {
                Ok(v) => {
                    r.max_constant("max_abs_error", (v - 1.0).abs());
                    r.close(input, v, 1.0, TOL);
                }
                Err(e) => {
                    r.error(input, &e);
                }
            }
        }
    }
    r.finish()
}

/// Discrete `‖f‖_{p,∞}` against the continuous window norm on grids of
/// step `y_step` and `y_step/2`, plus the lower bound of
/// `τ_{n+½}𝟙_[0,1)(n+1)·n^(2α+1)` for `n ≤ 8`.
pub fn check_norm_equivalence(
    alpha: &Alpha,
    catalog: &[TestFunction],
    p_list: &[f64],
    y_step: f64,
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const STABILITY: f64 = 0.10;
    if catalog.iter().any(|f| !f.has_compact_support()) {
        return Err(Error::InvalidArgument(
            "norm equivalence needs compactly supported functions".into(),
        ));
    }
    let mut r = ReportBuilder::new("norm-equivalence", Some(alpha.value()), STABILITY);
    r.meta("y_step", y_step.to_string());
    // (R_low, R_high) for the coarse and the fine grid.
    let mut bands = [[0.0f64; 2]; 2];
    for f in catalog {
        for &p in p_list {
            let e = ExponentPair::new(Exponent::new(p)?, Exponent::Infinite)?;
            let label = format!("{} p={p}", f.label());
            let outcome = (|| -> Result<(f64, [f64; 2])> {
                let disc = discrete_norm(alpha, f, e, &TailPolicy::compact(), spec)?.value;
                if f.is_zero() {
                    return Ok((0.0, [0.0, 0.0]));
                }
                let mut cont = [0.0; 2];
                for (i, step) in [y_step, y_step / 2.0].into_iter().enumerate() {
                    let grid = default_y_grid(f, step)?;
                    cont[i] = continuous_norm_p_inf(alpha, f, p, &grid, spec)?;
                }
                Ok((disc, cont))
            })();
            match outcome {
                Ok((disc, cont)) => {
                    for i in 0..2 {
                        let low = ratio(disc, cont[i]);
                        let high = ratio(cont[i], disc);
                        bands[i][0] = bands[i][0].max(low);
                        bands[i][1] = bands[i][1].max(high);
                        r.finite(format!("{label} grid={i} discrete/continuous"), low);
                        r.finite(format!("{label} grid={i} continuous/discrete"), high);
                    }
                }
                Err(err) => {
                    r.error(label, &err);
                }
            }
        }
    }
    r.constant("R_low", bands[1][0])
        .constant("R_high", bands[1][1])
        .constant("R_low_coarse", bands[0][0])
        .constant("R_high_coarse", bands[0][1]);
    r.at_most(
        "R_low refinement change",
        relative_change(bands[1][0], bands[0][0]),
        STABILITY,
    );
    r.at_most(
        "R_high refinement change",
        relative_change(bands[1][1], bands[0][1]),
        STABILITY,
    );

    let window = TestFunction::unit_indicator();
    let mut lower = f64::INFINITY;
    for n in 1..=8 {
        let nf = n as f64;
        match point_convolution(alpha, nf + 1.0, nf + 0.5, &window, spec) {
            Ok(v) => lower = lower.min(v * nf.powf(alpha.haar_exponent())),
            Err(e) => {
                r.error(format!("tau_{{n+1/2}} at n={n}"), &e);
            }
        }
    }
    r.constant("tau_lower_bound", lower);
    r.detail(
        "min_n tau_{n+1/2} 1(n+1) n^(2a+1) > 0",
        lower,
        0.0,
        if lower > 0.0 { lower } else { -1.0 },
    );
    Ok(r.finish())
}

/// Indices `k` counted as exceptional for `(n, y)`: `k = 1` and every `k`
/// with some `x ∈ I_k` such that `x + y` or `|x − y|` lies in `I_n`.
pub fn exceptional_indices(n: usize, y: f64) -> Vec<usize> {
    let nf = n as f64;
    let overlaps = |a: f64, b: f64, k: usize| {
        let (lo, hi) = (k as f64 - 1.0, k as f64);
        a.max(lo) < b.min(hi)
    };
    let top = (nf + y).ceil() as usize + 1;
    (1..=top)
        .filter(|&k| {
            k == 1
                || overlaps(nf - 1.0 - y, nf - y, k)
                || overlaps(y - nf, y - nf + 1.0, k)
                || overlaps(y + nf - 1.0, y + nf, k)
        })
        .collect()
}

struct TranslationScan {
    max_ratio: f64,
    argmax: (usize, f64),
    max_exceptional: usize,
}

const TRANSLATION_SAMPLES: usize = 64;

/// `‖τ_y 𝟙_{I_n}‖_{∞,1} / ω_n` from 64 samples per block, and the same sum
/// restricted to generic blocks.
pub fn translation_ratio(alpha: &Alpha, n: usize, y: f64, spec: &QuadSpec) -> Result<(f64, f64)> {
    let f = TestFunction::block_indicator(n)?;
    let nf = n as f64;
    let lo = (nf - 1.0 - y).max(y - nf).max(0.0);
    let hi = nf + y;
    let exceptional = exceptional_indices(n, y);
    let mut total = Vec::new();
    let mut generic = Vec::new();
    for k in (lo.floor() as usize + 1)..=(hi.ceil() as usize) {
        let start = k as f64 - 1.0;
        let mut sup = 0.0f64;
        for i in 0..TRANSLATION_SAMPLES {
            let x = start + i as f64 / TRANSLATION_SAMPLES as f64;
            if x < lo || x > hi {
                continue;
            }
            sup = sup.max(point_convolution(alpha, x, y, &f, spec)?.abs());
        }
        let term = haar_interval_mass(alpha, k) * sup;
        total.push(term);
        if !exceptional.contains(&k) {
            generic.push(term);
        }
    }
    let w = haar_interval_mass(alpha, n);
    total.sort_by(f64::total_cmp);
    generic.sort_by(f64::total_cmp);
    Ok((total.iter().sum::<f64>() / w, generic.iter().sum::<f64>() / w))
}

fn scan_translation(alpha: &Alpha, ns: &[usize], y_max: f64, y_step: f64, spec: &QuadSpec) -> Result<TranslationScan> {
    let steps = (y_max / y_step).round() as usize;
    let mut scan = TranslationScan {
        max_ratio: 0.0,
        argmax: (0, 0.0),
        max_exceptional: 0,
    };
    for &n in ns {
        for i in 0..=steps {
            let y = i as f64 * y_step;
            let (ratio, _) = translation_ratio(alpha, n, y, spec)?;
            if ratio > scan.max_ratio || ratio.is_nan() {
                scan.max_ratio = ratio;
                scan.argmax = (n, y);
            }
            scan.max_exceptional = scan.max_exceptional.max(exceptional_indices(n, y).len());
        }
    }
    Ok(scan)
}

/// Uniform boundedness of `‖τ_y 𝟙_{I_n}‖_{∞,1}/ω_n` over `n ≤ n_max`,
/// `y ∈ [0, 2 n_max]`, with a spot check of larger `n` on `[0, 2 max(spot)]`.
pub fn check_translation_bound(
    alpha: &Alpha,
    n_max: usize,
    y_step: f64,
    spot_n: &[usize],
    spot_y_step: f64,
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const GROWTH: f64 = 0.15;
    if n_max < 4 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 4, got {n_max}")));
    }
    let mut r = ReportBuilder::new("translation", Some(alpha.value()), GROWTH);
    r.meta("y_step", y_step.to_string())
        .meta("spot_n", format!("{spot_n:?}"))
        .meta("spot_y_step", spot_y_step.to_string());
    let ns: Vec<usize> = (1..=n_max).collect();
    let base = match scan_translation(alpha, &ns, 2.0 * n_max as f64, y_step, spec) {
        Ok(s) => s,
        Err(e) => {
            r.error("scan n <= n_max", &e);
            return Ok(r.finish());
        }
    };
    r.constant("C_meas", base.max_ratio)
        .constant("argmax_n", base.argmax.0 as f64)
        .constant("argmax_y", base.argmax.1)
        .constant("max_exceptional_indices", base.max_exceptional as f64);
    r.finite("C_meas", base.max_ratio);
    r.at_most("exceptional indices per (n, y)", base.max_exceptional as f64, 7.0);

    for n in [1, n_max / 2, n_max] {
        match translation_ratio(alpha, n, 0.0, spec) {
            Ok((v, _)) => {
                r.close(format!("n={n} y=0"), v, 1.0, 1e-12);
            }
            Err(e) => {
                r.error(format!("n={n} y=0"), &e);
            }
        }
    }
    if n_max >= 6 {
        // Generic-block partial sum for n = 6, y = 3.5 (reported only).
        if let Ok((_, g)) = translation_ratio(alpha, 6, 3.5, spec) {
            r.constant("generic_sum_n6_y3.5", g);
        }
    }

    if !spot_n.is_empty() {
        let y_top = 2.0 * *spot_n.iter().max().expect("non-empty") as f64;
        match scan_translation(alpha, spot_n, y_top, spot_y_step, spec) {
            Ok(spot) => {
                let grown = base.max_ratio.max(spot.max_ratio);
                let growth = relative_change(grown, base.max_ratio);
                r.constant("C_meas_spot", spot.max_ratio).constant("growth", growth);
                r.at_most("growth of C_meas with larger n", growth, GROWTH);
                r.at_most(
                    "exceptional indices per (n, y), spot check",
                    spot.max_exceptional as f64,
                    7.0,
                );
            }
            Err(e) => {
                r.error("spot check", &e);
            }
        }
    }
    Ok(r.finish())
}

fn exponent_identity_holds(t: &(ExponentPair, ExponentPair, ExponentPair)) -> bool {
    let (a, b, c) = t;
    let ok = |x: f64, y: f64, z: f64| (x + y - 1.0 - z).abs() < 1e-12;
    ok(a.p.reciprocal(), b.p.reciprocal(), c.p.reciprocal()) && ok(a.q.reciprocal(), b.q.reciprocal(), c.q.reciprocal())
}

/// Young's inequality on amalgams over all unordered catalog pairs. The
/// `(1,1)` case must be an equality for nonnegative factors, the
/// `(1,1)⋆(∞,∞)` case must hold with constant 1; other triples report `C`.
pub fn check_young(
    alpha: &Alpha,
    catalog: &[TestFunction],
    triples: &[(ExponentPair, ExponentPair, ExponentPair)],
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const TOL: f64 = 1e-6;
    if let Some(t) = triples.iter().find(|t| !exponent_identity_holds(t)) {
        return Err(Error::InvalidArgument(format!(
            "triple {} * {} -> {} violates 1/p = 1/p1 + 1/p2 - 1",
            t.0, t.1, t.2
        )));
    }
    let l1 = pair(1.0, 1.0);
    let mut r = ReportBuilder::new("young", Some(alpha.value()), TOL);
    let tail = TailPolicy::compact();
    let norm = |f: &TestFunction, e: ExponentPair| discrete_norm(alpha, f, e, &tail, spec).map(|v| v.value);
    for i in 0..catalog.len() {
        for j in i..catalog.len() {
            let (f, g) = (&catalog[i], &catalog[j]);
            let nonneg = is_nonnegative(f) && is_nonnegative(g);
            let conv = match convolve(alpha, f, g, spec) {
                Ok(c) => c,
                Err(e) => {
                    r.error(format!("{} * {}", f.label(), g.label()), &e);
                    continue;
                }
            };
            for t in triples {
                let input = format!("{} * {}: {} {} -> {}", f.label(), g.label(), t.0, t.1, t.2);
                let sides = (|| -> Result<(f64, f64)> {
                    let lhs = norm(&conv, t.2)?;
                    let rhs = norm(f, t.0)? * norm(g, t.1)?;
                    Ok((lhs, rhs))
                })();
                let (lhs, rhs) = match sides {
                    Ok(s) => s,
                    Err(e) => {
                        r.error(input, &e);
                        continue;
                    }
                };
                let c = ratio(lhs, rhs);
                r.max_constant(format!("C{}{}->{}", t.0, t.1, t.2), c);
                let exact = *t == (l1, l1, l1);
                if exact && nonneg {
                    r.close(input, lhs, rhs, TOL * rhs.max(f64::MIN_POSITIVE));
                } else if exact || (t.0 == l1 && t.1 == inf_pair()) {
                    r.at_most(input, lhs, (1.0 + TOL) * rhs);
                } else {
                    r.finite(input, c);
                }
            }
        }
    }
    Ok(r.finish())
}

/// Conjugate pair `(q', p')` of `(p, q)`.
fn dual_pair(e: ExponentPair) -> ExponentPair {
    ExponentPair::new(e.q.conjugate(), e.p.conjugate()).expect("conjugates are valid")
}

/// Hausdorff–Young on amalgams in the extreme cases
/// `(p,q) ∈ {(1,1),(1,2),(2,1),(2,2)}`, Plancherel at `lambda_cut`, the
/// envelope of `𝟙̂_{I₁}`, and the tail diagnostics for `‖𝟙̂_{I₁}‖_{∞,q}`.
pub fn check_hausdorff_young(
    alpha: &Alpha,
    catalog: &[TestFunction],
    tail: &TailPolicy,
    lambda_cut: f64,
    envelope_lambda_max: f64,
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const PLANCHEREL_TOL: f64 = 1e-3;
    if catalog.iter().any(|f| !f.has_compact_support()) {
        return Err(Error::InvalidArgument(
            "Hausdorff-Young needs compactly supported functions".into(),
        ));
    }
    tail.validate()?;
    let mut r = ReportBuilder::new("hausdorff-young", Some(alpha.value()), PLANCHEREL_TOL);
    r.meta("lambda_cut", lambda_cut.to_string())
        .meta("dual_blocks", tail.n_max.to_string());
    let cases = [pair(1.0, 1.0), pair(1.0, 2.0), pair(2.0, 1.0), pair(2.0, 2.0)];
    for f in catalog {
        let outcome = (|| -> Result<()> {
            let hat = fourier_transform(alpha, f, spec)?;
            let mut dual = Vec::new();
            for inner in [Exponent::Infinite, Exponent::Finite(2.0)] {
                let qs = [Exponent::Infinite, Exponent::Finite(2.0)];
                for (q, est) in qs.iter().zip(discrete_norms(alpha, &hat, inner, &qs, tail, spec)?) {
                    dual.push((ExponentPair::new(inner, *q)?, est));
                }
            }
            for e in cases {
                let primal = discrete_norm(alpha, f, e, &TailPolicy::compact(), spec)?.value;
                let d = dual_pair(e);
                let est = &dual.iter().find(|(k, _)| *k == d).expect("all duals computed").1;
                let input = format!("{}: {e} -> hat in {d}", f.label());
                r.constant(format!("{}:{e}", f.label()), primal)
                    .constant(format!("hat {}:{d}", f.label()), est.value);
                if primal.is_finite() {
                    let v = if est.diverges { f64::INFINITY } else { est.value };
                    r.finite(input, v);
                }
            }
            let lhs = crate::bessel_kingman::lp_norm(alpha, f, Exponent::Finite(2.0), spec)?.powi(2);
            let rhs = dual_energy(alpha, &hat, lambda_cut)?;
            r.close(format!("{}: Plancherel", f.label()), lhs, rhs, PLANCHEREL_TOL);
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(f.label(), &e);
        }
    }

    let n_alpha = asymptotic_start(alpha);
    let env = asymptotic_envelope_check(
        alpha,
        n_alpha,
        envelope_lambda_max,
        envelope_samples(n_alpha, envelope_lambda_max),
    )?;
    let wide_max = 2.0 * envelope_lambda_max;
    let wide = asymptotic_envelope_check(alpha, n_alpha, wide_max, envelope_samples(n_alpha, wide_max))?;
    let drift = relative_change(wide.fitted_c, env.fitted_c);
    r.constant("envelope_C", env.fitted_c)
        .constant("envelope_C_doubled", wide.fitted_c);
    r.at_most("envelope bound violation", env.max_violation, 0.0);
    r.at_most("envelope C drift under doubling", drift, 0.05);

    let hat1 = indicator_hat(alpha);
    let q0 = 2.0 * (alpha.value() + 1.0) / (alpha.value() + 1.5);
    r.constant("q0", q0);
    let qs = [Exponent::Finite(2.0), Exponent::Finite(q0 - 0.05)];
    let ests = discrete_norms(alpha, &hat1, Exponent::Infinite, &qs, tail, spec)?;
    let two = &ests[0];
    r.constant("hat_indicator_inf_2", two.value);
    r.detail(
        "hat(indicator) in (inf,2)",
        two.value,
        f64::INFINITY,
        if two.diverges || !two.value.is_finite() {
            -1.0
        } else {
            0.0
        },
    );
    let below = &ests[1];
    r.constant("divergence_flag_below_q0", if below.diverges { 1.0 } else { 0.0 });
    if let Some(s) = below.fitted_slope {
        r.constant("fitted_slope", s);
    }
    Ok(r.finish())
}

/// The three Fournier quantities for `f = g ⋆ g`: `∫₀¹ |f|² dω`,
/// `‖f̂‖_{1,2}` with `f̂ = ĝ²`, and `‖f‖_{2,∞}`; sampled values of the
/// directly computed `f̂` are checked against `ĝ²` and for sign.
pub fn check_fournier(
    alpha: &Alpha,
    g_catalog: &[TestFunction],
    tail: &TailPolicy,
    lambdas: &[f64],
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const TAIL_RATIO: f64 = 1e-4;
    const SIGN_TOL: f64 = 1e-8;
    if g_catalog.iter().any(|g| !g.has_compact_support()) {
        return Err(Error::InvalidArgument(
            "Fournier check needs compactly supported g".into(),
        ));
    }
    tail.validate()?;
    let mut r = ReportBuilder::new("fournier", Some(alpha.value()), TAIL_RATIO);
    r.meta("neighborhood", "[0,1)");
    let near = TestFunction::unit_indicator();
    for g in g_catalog {
        let label = g.label().to_string();
        let outcome = (|| -> Result<()> {
            let f = convolve(alpha, g, g, spec)?;
            let f_near = if f.is_zero() {
                TestFunction::zero()
            } else {
                let (f2, near2) = (f.clone(), near.clone());
                TestFunction::new(
                    format!("{}|[0,1)", f.label()),
                    (0.0, f.support_hi().min(1.0)),
                    f.breakpoints().to_vec(),
                    Smoothness::Smooth,
                    move |x| Ok(f2.eval(x)? * near2.eval(x)?),
                )?
            };
            let local = crate::bessel_kingman::lp_norm(alpha, &f_near, Exponent::Finite(2.0), spec)?.powi(2);
            let hat_g = fourier_transform(alpha, g, spec)?;
            let hat_f = hat_g.squared();
            let dual = discrete_norm(alpha, &hat_f, pair(1.0, 2.0), tail, spec)?;
            let global = discrete_norm(
                alpha,
                &f,
                ExponentPair::new(Exponent::Finite(2.0), Exponent::Infinite)?,
                &TailPolicy::compact(),
                spec,
            )?
            .value;
            r.constant(format!("{label}: (1) local L2"), local)
                .constant(format!("{label}: (2) hat in (1,2)"), dual.value)
                .constant(format!("{label}: (3) f in (2,inf)"), global)
                .constant(format!("{label}: (2)/(1)"), ratio(dual.value, local))
                .constant(format!("{label}: (3)/(1)"), ratio(global, local))
                .constant(format!("{label}: dual tail/head"), ratio(dual.tail_estimate, dual.head));
            r.finite(format!("{label}: (1)"), local);
            r.finite(
                format!("{label}: (2)"),
                if dual.diverges { f64::INFINITY } else { dual.value },
            );
            r.finite(format!("{label}: (3)"), global);
            r.at_most(
                format!("{label}: dual tail estimate vs head"),
                dual.tail_estimate,
                TAIL_RATIO * dual.head,
            );
            let hat_direct = fourier_transform(alpha, &f, spec)?;
            for &l in lambdas {
                let direct = hat_direct.eval(l)?;
                let product = hat_f.eval(l)?;
                r.at_most(format!("{label}: -hat(f)({l}) <= {SIGN_TOL}"), -direct, SIGN_TOL);
                r.max_constant(format!("{label}: max |hat(g*g) - hat(g)^2|"), (direct - product).abs());
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(label, &e);
        }
    }
    Ok(r.finish())
}

/// `g_n = ω₁⁻¹ 𝟙_{I₁} ⋆ 𝟙_{[n−2,n+1)}` (`[0,2)` for `n = 1`) equals 1 on
/// `I_n` and vanishes outside `[n−3, n+2]`.
pub fn check_gn_partition(alpha: &Alpha, n_max: usize, spec: &QuadSpec) -> Result<VerificationReport> {
    const TOL: f64 = 1e-7;
    if n_max < 3 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 3, got {n_max}")));
    }
    let mut r = ReportBuilder::new("gn", Some(alpha.value()), TOL);
    for n in 1..=n_max {
        let outcome = (|| -> Result<()> {
            let g = gn(alpha, n, spec)?;
            let nf = n as f64;
            for i in 0..10 {
                let x = nf - 1.0 + (i as f64 + 0.5) / 10.0;
                let v = g.eval(x)?;
                r.max_constant("max_abs_error", (v - 1.0).abs());
                r.close(format!("n={n} x={x}"), v, 1.0, TOL);
            }
            for x in [nf - 3.5, nf + 2.5] {
                if x >= 0.0 {
                    r.close(format!("n={n} x={x} (outside)"), g.eval(x)?, 0.0, 0.0);
                }
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(format!("n={n}"), &e);
        }
    }
    Ok(r.finish())
}

/// `g_n` as a lazily evaluated function.
pub fn gn(alpha: &Alpha, n: usize, spec: &QuadSpec) -> Result<TestFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("g_n needs n >= 1".into()));
    }
    let nf = n as f64;
    let target = if n == 1 {
        TestFunction::indicator(0.0, 2.0)?
    } else {
        TestFunction::indicator(nf - 2.0, nf + 1.0)?
    };
    let conv = convolve(alpha, &TestFunction::unit_indicator(), &target, spec)?;
    Ok(conv
        .scaled(1.0 / haar_interval_mass(alpha, 1))
        .relabel(format!("g_{n}")))
}

/// Both norm equalities on uniform random vectors in `[−1, 1]` and
/// `p ∈ {1, 2, 3.5}`.
pub fn check_finite_equalities(catalog: &[FiniteHypergroup], trials: usize, seed: u64) -> VerificationReport {
    const TOL: f64 = 1e-12;
    let mut r = ReportBuilder::new("finite", None, TOL);
    r.seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for h in catalog {
        let mut worst = 0.0f64;
        let mut failures = Vec::new();
        for t in 0..trials {
            let f: Vec<f64> = (0..h.size()).map(|_| rng.random_range(-1.0..=1.0)).collect();
            for p in [1.0, 2.0, 3.5] {
                match h.norm_equalities(&f, p) {
                    Ok(eq) => {
                        worst = worst.max(eq.max_gap());
                        if eq.max_gap() > TOL {
                            failures.push((t, p, eq));
                        }
                    }
                    Err(e) => {
                        r.error(format!("{} trial {t} p={p}", h.name()), &e);
                    }
                }
            }
        }
        r.constant(format!("{}: max gap", h.name()), worst);
        r.at_most(format!("{}: max equality gap", h.name()), worst, TOL);
        for (t, p, eq) in failures.into_iter().take(5) {
            r.close(
                format!("{} trial {t} p={p} discrete window", h.name()),
                eq.cont_discrete_window,
                eq.sup_norm,
                TOL,
            );
            r.close(
                format!("{} trial {t} p={p} compact window", h.name()),
                eq.cont_compact_window,
                eq.lp_norm,
                TOL,
            );
        }
    }
    r.finish()
}

/// Selectable groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    NormEquivalence,
    Translation,
    Young,
    HausdorffYoung,
    Fournier,
    Gn,
    Finite,
}

impl Suite {
    const ORDER: [Suite; 7] = [
        Suite::NormEquivalence,
        Suite::Translation,
        Suite::Young,
        Suite::HausdorffYoung,
        Suite::Fournier,
        Suite::Gn,
        Suite::Finite,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::NormEquivalence => "norm-equivalence",
            Suite::Translation => "translation",
            Suite::Young => "young",
            Suite::HausdorffYoung => "hausdorff-young",
            Suite::Fournier => "fournier",
            Suite::Gn => "gn",
            Suite::Finite => "finite",
        }
    }

    pub fn members(&self) -> Vec<Suite> {
        match self {
            Suite::All => Self::ORDER.to_vec(),
            s => vec![*s],
        }
    }
}

/// One `(check, α)` unit of work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub check: Suite,
    pub alpha: Option<f64>,
}

impl Job {
    /// Stem of the report file name.
    pub fn file_stem(&self) -> String {
        match self.alpha {
            Some(a) => format!("{}_alpha{a}", self.check.name()),
            None => self.check.name().to_string(),
        }
    }
}

/// Jobs of a suite in a fixed order.
pub fn jobs(config: &RunConfig, suite: Suite) -> Vec<Job> {
    let mut out = Vec::new();
    for check in suite.members() {
        if check == Suite::Finite {
            out.push(Job { check, alpha: None });
        } else {
            out.extend(config.alpha_list.iter().map(|&a| Job { check, alpha: Some(a) }));
        }
    }
    out
}

/// Runs one job. Numerical failures are recorded in the report; an `Err`
/// means the job could not be set up.
pub fn run_job(job: &Job, config: &RunConfig, hypergroups: &[FiniteHypergroup]) -> Result<VerificationReport> {
    let spec = &config.quad;
    let s = &config.sizing;
    let alpha = job.alpha.map(Alpha::new).transpose()?;
    let a = || alpha.ok_or_else(|| Error::InvalidArgument(format!("{} needs alpha", job.check.name())));
    let mut report = match job.check {
        Suite::All => return Err(Error::InvalidArgument("'all' is not a single job".into())),
        Suite::NormEquivalence => check_norm_equivalence(
            &a()?,
            &config.limit(norm_catalog()),
            &s.norm_p_list,
            s.norm_y_step,
            spec,
        )?,
        Suite::Translation => check_translation_bound(
            &a()?,
            s.translation_n_max,
            s.translation_y_step,
            &s.translation_spot_n,
            s.translation_spot_y_step,
            spec,
        )?,
        Suite::Young => check_young(&a()?, &config.limit(young_catalog()), &default_young_triples(), spec)?,
        Suite::HausdorffYoung => check_hausdorff_young(
            &a()?,
            &config.limit(transform_catalog()),
            &config.tail,
            config.lambda_cut,
            s.envelope_lambda_max,
            spec,
        )?,
        Suite::Fournier => check_fournier(
            &a()?,
            &config.limit(transform_catalog()),
            &config.tail,
            &s.fournier_lambdas,
            spec,
        )?,
        Suite::Gn => check_gn_partition(&a()?, s.gn_n_max, spec)?,
        Suite::Finite => check_finite_equalities(hypergroups, s.finite_trials, config.seed),
    };
    report.seed = config.seed;
    report.config_digest = config.digest();
    Ok(report)
}
