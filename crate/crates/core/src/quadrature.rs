//! Definite integration.
//!
//! * [`integrate_adaptive`]: globally adaptive Gauss–Kronrod (10/21 points).
//! * [`integrate_endpoint_weighted`] and [`integrate_jacobi`]: integrands with
//!   algebraic endpoint behaviour `(u - a)^β (b - u)^α g(u)`, handled with
//!   Gauss–Jacobi rules near the ends.
//! * [`integrate_oscillatory`]: finite oscillatory integrals split at scaled
//!   zeros of a Bessel function.
//!
//! Integrands are fallible (`Fn(f64) -> Result<f64>`) so that nested
//! quadratures can propagate their own failures; [`integrate_adaptive`],
//! [`integrate_endpoint_weighted`] and [`integrate_oscillatory`] accept plain
//! closures.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::rc::Rc;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::{gamma, ZeroTable};

/// Tolerances and work limit for one integral.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 4096,
        }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 1e-15) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "abs_tol must be finite and at least 1e-15, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol >= 1e-15) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be finite and at least 1e-15, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 || self.max_subdivisions > 1_000_000 {
            return Err(Error::InvalidArgument(format!(
                "max_subdivisions must be in 1..=1000000, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }

    /// Same limits with both tolerances divided by `factor` (floored at 1e-15).
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: (self.abs_tol / factor).max(1e-15),
            rel_tol: (self.rel_tol / factor).max(1e-15),
            max_subdivisions: self.max_subdivisions,
        }
    }

    /// Same relative tolerance and limit with a different absolute tolerance.
    pub fn with_abs_tol(&self, abs_tol: f64) -> Self {
        Self {
            abs_tol: abs_tol.max(1e-15),
            ..*self
        }
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
}

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// weights belong to the odd-indexed abscissae.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

fn checked(f: &dyn Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

// One 21-point Kronrod panel. The returned error is |K21 - G10|, floored at
// the round-off level of the panel.
fn gk21(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<Segment> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = checked(f, centre)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut resabs = kronrod.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = checked(f, centre - dx)?;
        let f2 = checked(f, centre + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half)
        .abs()
        .max(50.0 * f64::EPSILON * resabs * half.abs());
    Ok(Segment { a, b, value, err })
}

fn roundoff_limited(seg: &Segment) -> bool {
    let scale = seg.a.abs().max(seg.b.abs()).max(f64::MIN_POSITIVE);
    seg.b - seg.a <= 64.0 * f64::EPSILON * scale
}

/// Adaptive Gauss–Kronrod integration of a plain closure over `[a, b]`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    adaptive(&|x| Ok(f(x)), a, b, &[], spec)
}

/// Adaptive integration of a fallible integrand, with the interval split at
/// `breaks` (points outside `(a, b)` are ignored).
pub fn adaptive(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, breaks: &[f64], spec: &QuadSpec) -> Result<Estimate> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            err_est: 0.0,
        });
    }
    let points = partition(a, b, breaks);

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Segment> = Vec::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let seg = gk21(f, w[0], w[1])?;
        total += seg.value;
        total_err += seg.err;
        heap.push(seg);
    }
    let mut subdivisions = heap.len();
    while total_err > spec.tolerance(total) {
        let Some(worst) = heap.pop() else { break };
        if roundoff_limited(&worst) || worst.err <= 0.0 {
            done.push(worst);
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            heap.push(worst);
            return Err(Error::NonConvergence {
                integral: "adaptive".into(),
                a,
                b,
                value: total,
                err_est: total_err,
                tolerance: spec.tolerance(total),
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        // Running sums drift; re-add from scratch now and then.
        if subdivisions % 64 == 0 {
            total = heap.iter().chain(done.iter()).map(|s| s.value).sum::<f64>() + left.value + right.value;
            total_err = heap.iter().chain(done.iter()).map(|s| s.err).sum::<f64>() + left.err + right.err;
        }
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
    done.extend(heap);
    done.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = done.iter().map(|s| s.value).sum();
    let err_est = done.iter().map(|s| s.err).sum();
    Ok(Estimate { value, err_est })
}

fn partition(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut points = Vec::with_capacity(breaks.len() + 2);
    points.push(a);
    points.extend(breaks.iter().copied().filter(|&c| c > a && c < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|x, y| {
        let scale = x.abs().max(y.abs()).max(1.0);
        (*x - *y).abs() <= 4.0 * f64::EPSILON * scale
    });
    if points.len() == 1 {
        points.push(b);
    }
    *points.last_mut().unwrap() = b;
    points[0] = a;
    points
}

/// Gauss–Jacobi rule on `[-1, 1]` for the weight `(1 - t)^right (1 + t)^left`.
#[derive(Debug, Clone)]
pub struct JacobiRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiRule {
    /// Golub–Welsch construction with `n` nodes; exponents must exceed -1.
    pub fn new(n: usize, right: f64, left: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Gauss-Jacobi rule needs n >= 1".into()));
        }
        if !(right > -1.0) || !(left > -1.0) {
            return Err(Error::InvalidArgument(format!(
                "Gauss-Jacobi exponents must exceed -1, got ({right}, {left})"
            )));
        }
        let (ra, lb) = (right, left);
        let s = ra + lb;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            m[(k, k)] = if k == 0 {
                (lb - ra) / (s + 2.0)
            } else {
                (lb * lb - ra * ra) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
            };
            if k + 1 < n {
                let j = (k + 1) as f64;
                let beta = if k == 0 {
                    4.0 * (1.0 + ra) * (1.0 + lb) / ((2.0 + s).powi(2) * (3.0 + s))
                } else {
                    let d = 2.0 * j + s;
                    4.0 * j * (j + ra) * (j + lb) * (j + s) / (d * d * (d + 1.0) * (d - 1.0))
                };
                let off = beta.sqrt();
                m[(k, k + 1)] = off;
                m[(k + 1, k)] = off;
            }
        }
        let mu0 = 2f64.powf(s + 1.0) * gamma(ra + 1.0)? * gamma(lb + 1.0)? / gamma(s + 2.0)?;
        let eig = SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// `∫_lo^hi g(u) (hi - u)^right (u - lo)^left du` for the exponents the
    /// rule was built with.
    fn apply(&self, g: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64, exponent_sum: f64) -> Result<f64> {
        let half = 0.5 * (hi - lo);
        let mut sum = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            let u = lo + half * (1.0 + t);
            sum += w * checked(g, u)?;
        }
        Ok(half.powf(exponent_sum + 1.0) * sum)
    }
}

thread_local! {
    static RULES: RefCell<HashMap<(u64, u64, usize), Rc<JacobiRule>>> = RefCell::new(HashMap::new());
}

fn cached_rule(n: usize, right: f64, left: f64) -> Result<Rc<JacobiRule>> {
    let key = (right.to_bits(), left.to_bits(), n);
    if let Some(rule) = RULES.with(|r| r.borrow().get(&key).cloned()) {
        return Ok(rule);
    }
    let rule = Rc::new(JacobiRule::new(n, right, left)?);
    RULES.with(|r| r.borrow_mut().insert(key, rule.clone()));
    Ok(rule)
}

const JACOBI_SIZES: [usize; 6] = [8, 16, 32, 64, 128, 256];

/// `∫_lo^hi g(u) (hi - u)^right (u - lo)^left du` with Gauss–Jacobi rules of
/// increasing size until two successive sizes agree.
pub fn gauss_jacobi_escalating(
    g: &dyn Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    right: f64,
    left: f64,
    spec: &QuadSpec,
) -> Result<Estimate> {
    if lo == hi {
        return Ok(Estimate {
            value: 0.0,
            err_est: 0.0,
        });
    }
    let mut previous: Option<f64> = None;
    let mut last_diff = f64::INFINITY;
    let mut current = 0.0;
    for &n in &JACOBI_SIZES {
        let rule = cached_rule(n, right, left)?;
        current = rule.apply(g, lo, hi, right + left)?;
        if let Some(p) = previous {
            last_diff = (current - p).abs();
            if last_diff <= spec.tolerance(current) {
                return Ok(Estimate {
                    value: current,
                    err_est: last_diff,
                });
            }
        }
        previous = Some(current);
    }
    Err(Error::NonConvergence {
        integral: "gauss-jacobi".into(),
        a: lo,
        b: hi,
        value: current,
        err_est: last_diff,
        tolerance: spec.tolerance(current),
    })
}

/// Endpoint exponents of an algebraically weighted integrand
/// `(u - a)^left (b - u)^right g(u)` on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointWeight {
    pub left: f64,
    pub right: f64,
}

impl EndpointWeight {
    pub fn symmetric(mu: f64) -> Self {
        Self { left: mu, right: mu }
    }
}

/// `∫ g(u) (u - a)^left (b - u)^right du` over `[a, b] ∩ [wlo, whi]`.
///
/// `g` must be smooth between consecutive `breaks`. The pieces touching `a`
/// or `b` use Gauss–Jacobi rules carrying that endpoint's exponent, the rest
/// use [`adaptive`] on the full integrand.
#[allow(clippy::too_many_arguments)]
pub fn integrate_jacobi(
    g: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    weight: EndpointWeight,
    window: (f64, f64),
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Estimate> {
    if !(a <= b) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if !(weight.left >= 0.0 && weight.right >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "endpoint exponents must be non-negative, got ({}, {})",
            weight.left, weight.right
        )));
    }
    let lo = a.max(window.0);
    let hi = b.min(window.1);
    if !(lo < hi) {
        return Ok(Estimate {
            value: 0.0,
            err_est: 0.0,
        });
    }
    let full = |u: f64| -> Result<f64> {
        let mut w = 1.0;
        if weight.left != 0.0 {
            w *= (u - a).max(0.0).powf(weight.left);
        }
        if weight.right != 0.0 {
            w *= (b - u).max(0.0).powf(weight.right);
        }
        if w == 0.0 {
            return Ok(0.0);
        }
        Ok(g(u)? * w)
    };
    if weight.left == 0.0 && weight.right == 0.0 {
        return adaptive(&full, lo, hi, breaks, spec);
    }

    let points = partition(lo, hi, breaks);
    let span = hi - lo;
    let left_jacobi = weight.left > 0.0 && lo == a;
    let right_jacobi = weight.right > 0.0 && hi == b;
    let left_end = if left_jacobi {
        points[1].min(lo + 0.25 * span)
    } else {
        lo
    };
    let right_start = if right_jacobi {
        points[points.len() - 2].max(hi - 0.25 * span).max(left_end)
    } else {
        hi
    };
    let pieces = 1 + usize::from(left_jacobi) + usize::from(right_jacobi);
    let piece_spec = spec.with_abs_tol(spec.abs_tol / pieces as f64);

    let mut value = 0.0;
    let mut err = 0.0;
    if left_jacobi {
        let smooth = |u: f64| -> Result<f64> {
            let r = if weight.right != 0.0 {
                (b - u).max(0.0).powf(weight.right)
            } else {
                1.0
            };
            if r == 0.0 {
                return Ok(0.0);
            }
            Ok(g(u)? * r)
        };
        let e = gauss_jacobi_escalating(&smooth, lo, left_end, 0.0, weight.left, &piece_spec)?;
        value += e.value;
        err += e.err_est;
    }
    if left_end < right_start {
        let e = adaptive(&full, left_end, right_start, breaks, &piece_spec)?;
        value += e.value;
        err += e.err_est;
    }
    if right_jacobi {
        let smooth = |u: f64| -> Result<f64> {
            let l = if weight.left != 0.0 {
                (u - a).max(0.0).powf(weight.left)
            } else {
                1.0
            };
            if l == 0.0 {
                return Ok(0.0);
            }
            Ok(g(u)? * l)
        };
        let e = gauss_jacobi_escalating(&smooth, right_start, hi, weight.right, 0.0, &piece_spec)?;
        value += e.value;
        err += e.err_est;
    }
    Ok(Estimate { value, err_est: err })
}

/// `∫_a^b g(z) ((z - a)(b - z))^μ dz` for smooth `g`.
pub fn integrate_endpoint_weighted<F>(g: F, a: f64, b: f64, mu: f64, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(mu >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "endpoint exponent must be >= 0, got {mu}"
        )));
    }
    if mu == 0.0 {
        return integrate_adaptive(g, a, b, spec).map(|e| e.value);
    }
    integrate_jacobi(&|z| Ok(g(z)), a, b, EndpointWeight::symmetric(mu), (a, b), &[], spec).map(|e| e.value)
}

/// `∫_a^b f(x) dx` for an integrand oscillating like `J_ν(λx)`: the interval
/// is cut at `z_k/λ` for the zeros `z_k` of `J_ν` and at `breaks`, each
/// segment is integrated adaptively and the segment values are added in
/// ascending order of magnitude.
pub fn integrate_oscillatory_with(
    f: &dyn Fn(f64) -> Result<f64>,
    lambda: f64,
    zeros: &ZeroTable,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Estimate> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "oscillation frequency must be positive, got {lambda}"
        )));
    }
    if !(a >= 0.0) || !b.is_finite() || a > b {
        return Err(Error::InvalidArgument(format!(
            "oscillatory integral needs 0 <= a <= b < inf, got [{a}, {b}]"
        )));
    }
    let mut cuts: Vec<f64> = zeros
        .zeros_below(b * lambda)
        .into_iter()
        .map(|z| z / lambda)
        .filter(|&x| x > a)
        .collect();
    cuts.extend_from_slice(breaks);
    let points = partition(a, b, &cuts);
    let nseg = points.len() - 1;
    let seg_spec = spec.with_abs_tol(spec.abs_tol / nseg as f64);
    let mut parts = Vec::with_capacity(nseg);
    let mut err = 0.0;
    for w in points.windows(2) {
        let e = adaptive(f, w[0], w[1], &[], &seg_spec)?;
        parts.push(e.value);
        err += e.err_est;
    }
    parts.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    Ok(Estimate {
        value: parts.iter().sum(),
        err_est: err,
    })
}

/// [`integrate_oscillatory_with`] for a plain closure, building the zero
/// table on the fly.
pub fn integrate_oscillatory<F>(f: F, lambda: f64, nu: f64, a: f64, b: f64, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let table = ZeroTable::new(nu)?;
    integrate_oscillatory_with(&|x| Ok(f(x)), lambda, &table, a, b, &[], spec).map(|e| e.value)
}
