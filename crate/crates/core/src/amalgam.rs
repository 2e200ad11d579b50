//! Wiener amalgam norms on the hypergroup.
//!
//! The discrete norm uses the blocks `I_n = [n - 1, n)` with Haar weights
//! `ω_n`:
//!
//! ```text
//! ‖f‖_{p,q} = ( Σ_n ω_n b_n^q )^(1/q),   b_n = ( ω_n⁻¹ ∫_{I_n} |f|^p dω_α )^(1/p)
//! ```
//!
//! with `b_n = sup_{I_n} |f|` for `p = ∞` and `sup_n b_n` for `q = ∞`. The
//! continuous `(p, ∞)` norm replaces the blocks by the translated windows
//! `τ_y 𝟙_[0,1)`.
//!
//! Functions without compact support are summed up to `n_max` blocks and the
//! remainder is estimated from a power-law fit of the last blocks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bessel_kingman::{haar_interval_mass, point_convolution, TestFunction};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, QuadSpec};
use crate::report::{ReportBuilder, VerificationReport};
use crate::specfun::Alpha;

/// An exponent in `[1, ∞]`, with `∞` kept distinct from floating-point
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(Exponent::Infinite);
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "exponent must lie in [1, inf], got {p}"
            )));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinite => 0.0,
        }
    }

    /// The conjugate exponent `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> Exponent {
        match *self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinite,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// Exponent with reciprocal `r ∈ [0, 1]`.
    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if r.abs() < 1e-12 {
            return Ok(Exponent::Infinite);
        }
        if !(r > 0.0 && r <= 1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "reciprocal exponent must lie in [0, 1], got {r}"
            )));
        }
        Ok(Exponent::Finite((1.0 / r).max(1.0)))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" | "∞" => Ok(Exponent::Infinite),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::Parse(format!("invalid exponent '{t}'")))?;
                if p.is_infinite() {
                    return Err(Error::Parse(format!("invalid exponent '{t}'")));
                }
                Exponent::new(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Exponent::new(p).map_err(serde::de::Error::custom),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A pair `(p, q)` indexing the amalgam space `(L^p, ℓ^q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub p: Exponent,
    pub q: Exponent,
}

impl ExponentPair {
    pub fn new(p: Exponent, q: Exponent) -> Result<Self> {
        for e in [p, q] {
            if let Exponent::Finite(v) = e {
                Exponent::new(v)?;
            }
        }
        Ok(Self { p, q })
    }

    pub fn finite(p: f64, q: f64) -> Result<Self> {
        Self::new(Exponent::new(p)?, Exponent::new(q)?)
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailMode {
    /// Sum exactly up to the end of the support.
    CompactExact,
    /// Sum `n_max` blocks and estimate the rest from a power-law fit.
    PowerLawTail,
}

/// How infinite block sums are truncated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPolicy {
    pub n_max: usize,
    pub fit_window: usize,
    pub mode: TailMode,
}

impl Default for TailPolicy {
    fn default() -> Self {
        Self {
            n_max: 400,
            fit_window: 200,
            mode: TailMode::PowerLawTail,
        }
    }
}

impl TailPolicy {
    pub fn compact() -> Self {
        Self {
            mode: TailMode::CompactExact,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.fit_window < 3 * FIT_CHUNK {
            return Err(Error::InvalidArgument(format!(
                "fit_window must be at least {}, got {}",
                3 * FIT_CHUNK,
                self.fit_window
            )));
        }
        if self.n_max < self.fit_window + 10 {
            return Err(Error::InvalidArgument(format!(
                "n_max ({}) must be at least fit_window + 10 ({})",
                self.n_max,
                self.fit_window + 10
            )));
        }
        Ok(())
    }
}

/// Blocks per chunk in the tail fit; longer than one period `2π` of the
/// oscillating transforms, so every chunk holds a local peak.
pub const FIT_CHUNK: usize = 8;

/// Samples per block for `p = ∞`.
pub const SUP_SAMPLES_PER_BLOCK: usize = 256;

/// Result of [`discrete_norm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// Norm including the tail estimate (partial sum only when diverging).
    pub value: f64,
    /// Estimated contribution of the blocks beyond the last computed one,
    /// to `Σ ω_n b_n^q` (or to the sup for `q = ∞`); `inf` when diverging.
    pub tail_estimate: f64,
    /// `Σ ω_n b_n^q` over the computed blocks (largest `b_n` for `q = ∞`).
    pub head: f64,
    pub blocks: Vec<f64>,
    pub diverges: bool,
    /// Fitted exponent `s` in `b_n ≈ A n^s`.
    pub fitted_slope: Option<f64>,
}

/// `b_n` for the block `I_n`.
pub fn block_value(alpha: &Alpha, f: &TestFunction, n: usize, p: Exponent, spec: &QuadSpec) -> Result<f64> {
    let lo = n as f64 - 1.0;
    let hi = n as f64;
    if f.is_zero() || f.support_hi() <= lo || f.support_lo() >= hi {
        return Ok(0.0);
    }
    match p {
        Exponent::Infinite => {
            let mut m = 0.0_f64;
            for i in 0..SUP_SAMPLES_PER_BLOCK {
                let x = lo + i as f64 / SUP_SAMPLES_PER_BLOCK as f64;
                m = m.max(f.eval(x)?.abs());
            }
            // Left limit at the right end and both sides of interior jumps.
            let eps = 1e-9 * hi.max(1.0);
            m = m.max(f.eval(hi - eps)?.abs());
            for &c in f.breakpoints().iter().filter(|&&c| c > lo && c < hi) {
                m = m.max(f.eval(c)?.abs()).max(f.eval(c - eps)?.abs());
            }
            Ok(m)
        }
        Exponent::Finite(p) => {
            let w = alpha.haar_exponent();
            let a = lo.max(f.support_lo());
            let b = hi.min(f.support_hi());
            let mass = haar_interval_mass(alpha, n);
            let block_spec = spec.with_abs_tol(spec.abs_tol * mass);
            let v = adaptive(
                &|x| Ok(f.eval(x)?.abs().powf(p) * x.powf(w)),
                a,
                b,
                f.breakpoints(),
                &block_spec,
            )
            .map_err(|e| e.in_integral(format!("block {n} of {}", f.label())))?;
            Ok((v.value.max(0.0) / mass).powf(1.0 / p))
        }
    }
}

/// Discrete amalgam norm `‖f‖_{p,q}`.
pub fn discrete_norm(
    alpha: &Alpha,
    f: &TestFunction,
    e: ExponentPair,
    tail: &TailPolicy,
    spec: &QuadSpec,
) -> Result<NormEstimate> {
    Ok(discrete_norms(alpha, f, e.p, &[e.q], tail, spec)?.remove(0))
}

/// `‖f‖_{p,q}` for several `q` from one block sequence.
pub fn discrete_norms(
    alpha: &Alpha,
    f: &TestFunction,
    p: Exponent,
    qs: &[Exponent],
    tail: &TailPolicy,
    spec: &QuadSpec,
) -> Result<Vec<NormEstimate>> {
    let n_blocks = match tail.mode {
        TailMode::CompactExact => {
            if !f.has_compact_support() {
                return Err(Error::InvalidArgument(format!(
                    "{}: compact-exact mode needs compact support",
                    f.label()
                )));
            }
            if f.is_zero() {
                0
            } else {
                f.support_hi().ceil() as usize
            }
        }
        TailMode::PowerLawTail => {
            tail.validate()?;
            tail.n_max
        }
    };
    let mut blocks = Vec::with_capacity(n_blocks);
    for n in 1..=n_blocks {
        blocks.push(block_value(alpha, f, n, p, spec)?);
    }
    let needs_fit =
        tail.mode == TailMode::PowerLawTail && !(f.has_compact_support() && f.support_hi() <= n_blocks as f64);
    let fit = if needs_fit {
        fit_tail(&blocks, tail.fit_window)
    } else {
        None
    };
    Ok(qs.iter().map(|&q| combine(alpha, blocks.clone(), q, fit)).collect())
}

/// Least-squares fit `log b ≈ log A + s log n` on chunk maxima of the last
/// `window` blocks. `None` when fewer than three chunks carry a positive value.
pub fn fit_tail(blocks: &[f64], window: usize) -> Option<(f64, f64)> {
    let n = blocks.len();
    let start = n.saturating_sub(window);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut i = start;
    while i + FIT_CHUNK <= n {
        let (k, m) = (i..i + FIT_CHUNK)
            .map(|k| (k, blocks[k]))
            .fold((i, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
        if m > 0.0 {
            // Block k covers [k, k+1); its centre is the abscissa.
            xs.push((k as f64 + 0.5).ln());
            ys.push(m.ln());
        }
        i += FIT_CHUNK;
    }
    if xs.len() < 3 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let log_a = my - slope * mx;
    Some((log_a, slope))
}

fn combine(alpha: &Alpha, blocks: Vec<f64>, q: Exponent, fit: Option<(f64, f64)>) -> NormEstimate {
    let n_last = blocks.len() as f64;
    match q {
        Exponent::Infinite => {
            let head = blocks.iter().copied().fold(0.0, f64::max);
            let (diverges, tail) = match fit {
                Some((_, s)) if s > 1e-6 => (true, f64::INFINITY),
                Some((log_a, s)) => (false, (log_a + s * n_last.ln()).exp()),
                None => (false, 0.0),
            };
            NormEstimate {
                value: if diverges { head } else { head.max(tail) },
                tail_estimate: tail,
                head,
                blocks,
                diverges,
                fitted_slope: fit.map(|f| f.1),
            }
        }
        Exponent::Finite(q) => {
            let mut terms: Vec<f64> = blocks
                .iter()
                .enumerate()
                .map(|(i, b)| haar_interval_mass(alpha, i + 1) * b.powf(q))
                .collect();
            terms.sort_by(f64::total_cmp);
            let head: f64 = terms.iter().sum();
            let (diverges, tail) = match fit {
                None => (false, 0.0),
                Some((log_a, s)) => {
                    let e = alpha.haar_exponent() + q * s;
                    if e >= -1.0 {
                        (true, f64::INFINITY)
                    } else {
                        let t = (q * log_a + (e + 1.0) * n_last.ln()).exp() / (-e - 1.0);
                        (false, t)
                    }
                }
            };
            let total = if diverges { head } else { head + tail };
            NormEstimate {
                value: total.powf(1.0 / q),
                tail_estimate: tail,
                head,
                blocks,
                diverges,
                fitted_slope: fit.map(|f| f.1),
            }
        }
    }
}

/// `y = 0, step, 2·step, …` up to `support_hi + 1`.
pub fn default_y_grid(f: &TestFunction, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !f.has_compact_support() {
        return Err(Error::InvalidArgument(
            "y grid needs a positive step and a compactly supported function".into(),
        ));
    }
    let top = f.support_hi() + 1.0;
    let n = (top / step).ceil() as usize;
    Ok((0..=n).map(|i| i as f64 * step).collect())
}

/// `(∫ |f|^p τ_y 𝟙_[0,1) dω_α)^(1/p)` for one `y`.
pub fn window_integral(alpha: &Alpha, f: &TestFunction, p: f64, y: f64, spec: &QuadSpec) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "continuous norm needs finite p >= 1, got {p}"
        )));
    }
    let window = TestFunction::unit_indicator();
    let lo = (y - 1.0).max(0.0).max(f.support_lo());
    let hi = (y + 1.0).min(f.support_hi());
    if !(lo < hi) {
        return Ok(0.0);
    }
    let mut breaks = f.critical_points();
    breaks.extend([y + 1.0, (y - 1.0).abs(), 1.0 - y, y]);
    let w = alpha.haar_exponent();
    let inner = spec.tightened(10.0);
    let integrand = |x: f64| -> Result<f64> {
        let fx = f.eval(x)?;
        if fx == 0.0 {
            return Ok(0.0);
        }
        Ok(fx.abs().powf(p) * point_convolution(alpha, x, y, &window, &inner)? * x.powf(w))
    };
    let v =
        adaptive(&integrand, lo, hi, &breaks, spec).map_err(|e| e.in_integral(format!("window integral at y={y}")))?;
    Ok(v.value.max(0.0).powf(1.0 / p))
}

/// Continuous `(p, ∞)` norm: the maximum of [`window_integral`] over
/// `y_grid`.
pub fn continuous_norm_p_inf(alpha: &Alpha, f: &TestFunction, p: f64, y_grid: &[f64], spec: &QuadSpec) -> Result<f64> {
    if y_grid.is_empty() {
        return Err(Error::InvalidArgument("y grid is empty".into()));
    }
    let mut best = 0.0_f64;
    for &y in y_grid {
        if !(y >= 0.0) {
            return Err(Error::InvalidArgument(format!("y grid point {y} is negative")));
        }
        best = best.max(window_integral(alpha, f, p, y, spec)?);
    }
    Ok(best)
}

/// Checks the embeddings `‖f‖_{p₁,q} ≤ ‖f‖_{p₂,q}` (`p₁ ≤ p₂`, asserted with
/// slack 1e-9) and `‖f‖_{p,q₁} ≤ C ‖f‖_{p,q₂}` (`q₁ ≥ q₂`, `C` measured and
/// required finite) on every catalog function.
pub fn embedding_checks(
    alpha: &Alpha,
    catalog: &[TestFunction],
    pairs: &[(ExponentPair, ExponentPair)],
    spec: &QuadSpec,
) -> Result<VerificationReport> {
    const SLACK: f64 = 1e-9;
    let tail = TailPolicy::compact();
    let mut report = ReportBuilder::new("embedding", Some(alpha.value()), SLACK);
    for &(e1, e2) in pairs {
        let same_q = e1.q == e2.q && e1.p.reciprocal() >= e2.p.reciprocal();
        let same_p = e1.p == e2.p && e1.q.reciprocal() <= e2.q.reciprocal();
        if !same_q && !same_p {
            return Err(Error::InvalidArgument(format!(
                "pair {e1} <= {e2} is not an embedding of either form"
            )));
        }
        let key = format!("C{e1}<={e2}");
        for f in catalog {
            let a = discrete_norm(alpha, f, e1, &tail, spec)?.value;
            let b = discrete_norm(alpha, f, e2, &tail, spec)?.value;
            let input = format!("{}: {e1} vs {e2}", f.label());
            if same_q {
                report.at_most(input, a, (1.0 + SLACK) * b + 1e-300);
            } else {
                let ratio = if b > 0.0 {
                    a / b
                } else if a == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                report.max_constant(key.clone(), ratio);
                report.finite(input, ratio);
            }
        }
    }
    Ok(report.finish())
}
