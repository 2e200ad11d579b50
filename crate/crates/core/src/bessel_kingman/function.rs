use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

type EvalFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// Regularity of a [`TestFunction`], used to pick quadrature strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothness {
    PiecewiseConstant,
    Smooth,
    Oscillatory,
}

/// A real function on `[0, ∞)` with known support `[support_lo, support_hi]`
/// and a list of points where it may jump or kink.
///
/// Cloning is cheap; the evaluator is shared.
#[derive(Clone)]
pub struct TestFunction {
    eval: Arc<EvalFn>,
    support_lo: f64,
    support_hi: f64,
    breakpoints: Arc<[f64]>,
    label: Arc<str>,
    smoothness: Smoothness,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("support", &(self.support_lo, self.support_hi))
            .field("breakpoints", &self.breakpoints)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

impl TestFunction {
    /// General constructor. `support_hi` may be `f64::INFINITY`; breakpoints
    /// outside the support are dropped.
    pub fn new(
        label: impl Into<String>,
        support: (f64, f64),
        breakpoints: Vec<f64>,
        smoothness: Smoothness,
        eval: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        let (lo, hi) = support;
        if !(lo >= 0.0) || !lo.is_finite() || !(hi >= lo) {
            return Err(Error::InvalidArgument(format!(
                "support must satisfy 0 <= lo <= hi, got [{lo}, {hi}]"
            )));
        }
        let mut breaks: Vec<f64> = breakpoints
            .into_iter()
            .filter(|c| c.is_finite() && *c >= lo && *c <= hi)
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        Ok(Self {
            eval: Arc::new(eval),
            support_lo: lo,
            support_hi: hi,
            breakpoints: breaks.into(),
            label: Arc::from(label.into()),
            smoothness,
        })
    }

    /// Wraps a plain closure with finite support `[0, support_hi]`.
    pub fn from_fn(
        label: impl Into<String>,
        support_hi: f64,
        breakpoints: Vec<f64>,
        smoothness: Smoothness,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(label, (0.0, support_hi), breakpoints, smoothness, move |x| Ok(f(x)))
    }

    /// `𝟙_[lo, hi)`; negative `lo` is clipped to 0.
    pub fn indicator(lo: f64, hi: f64) -> Result<Self> {
        let lo = lo.max(0.0);
        if !(hi > lo) || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "indicator needs a finite interval with hi > max(lo, 0), got [{lo}, {hi})"
            )));
        }
        Self::new(
            format!("indicator[{lo},{hi})"),
            (lo, hi),
            vec![lo, hi],
            Smoothness::PiecewiseConstant,
            move |x| Ok(if x >= lo && x < hi { 1.0 } else { 0.0 }),
        )
    }

    /// `𝟙_[0, 1)`.
    pub fn unit_indicator() -> Self {
        Self::indicator(0.0, 1.0).expect("valid interval")
    }

    /// `𝟙_I_n` with `I_n = [n - 1, n)`, `n ≥ 1`.
    pub fn block_indicator(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("block index starts at 1".into()));
        }
        Self::indicator(n as f64 - 1.0, n as f64)
    }

    pub fn zero() -> Self {
        Self::new("zero", (0.0, 0.0), vec![], Smoothness::Smooth, |_| Ok(0.0)).expect("valid support")
    }

    /// `c · 𝟙_[0, support_hi)`.
    pub fn constant(c: f64, support_hi: f64) -> Result<Self> {
        let f = Self::indicator(0.0, support_hi)?;
        Ok(f.scaled(c).relabel(format!("constant({c})[0,{support_hi})")))
    }

    /// `(1 - x²)² 𝟙_[0, 1)`.
    pub fn bump() -> Self {
        Self::from_fn("bump", 1.0, vec![], Smoothness::Smooth, |x| {
            if x < 1.0 {
                let t = 1.0 - x * x;
                t * t
            } else {
                0.0
            }
        })
        .expect("valid support")
    }

    /// `x 𝟙_[1, 2)`.
    pub fn ramp() -> Self {
        Self::new("ramp", (1.0, 2.0), vec![1.0, 2.0], Smoothness::PiecewiseConstant, |x| {
            Ok(if (1.0..2.0).contains(&x) { x } else { 0.0 })
        })
        .expect("valid support")
    }

    /// Evaluates at `x ≥ 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain {
                func: "TestFunction::eval",
                arg: x,
                expected: "x >= 0",
            });
        }
        if x < self.support_lo || x > self.support_hi {
            return Ok(0.0);
        }
        (self.eval)(x)
    }

    pub fn support_lo(&self) -> f64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> f64 {
        self.support_hi
    }

    pub fn has_compact_support(&self) -> bool {
        self.support_hi.is_finite()
    }

    /// True for the identically zero function (empty support).
    pub fn is_zero(&self) -> bool {
        self.support_hi <= self.support_lo
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Breakpoints together with the finite support ends.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut pts = vec![self.support_lo];
        pts.extend_from_slice(&self.breakpoints);
        if self.support_hi.is_finite() {
            pts.push(self.support_hi);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = Arc::from(label.into());
        self
    }

    /// `x ↦ c · f(x)`.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |x| Ok(c * inner(x)?)),
            label: Arc::from(format!("{}*({})", c, self.label)),
            ..self.clone()
        }
    }

    /// `x ↦ f(x) + g(x)`.
    pub fn add(&self, other: &TestFunction) -> Self {
        let (f, g) = (self.clone(), other.clone());
        let lo = if self.is_zero() {
            other.support_lo
        } else if other.is_zero() {
            self.support_lo
        } else {
            self.support_lo.min(other.support_lo)
        };
        let hi = self.support_hi.max(other.support_hi);
        let mut breaks = self.critical_points();
        breaks.extend(other.critical_points());
        let smoothness = if self.smoothness == other.smoothness {
            self.smoothness
        } else {
            Smoothness::Smooth
        };
        Self::new(
            format!("({})+({})", self.label, other.label),
            (lo, hi.max(lo)),
            breaks,
            smoothness,
            move |x| Ok(f.eval(x)? + g.eval(x)?),
        )
        .expect("union of valid supports")
    }

    /// Caches evaluations keyed by `x` rounded to 1e-12. Safe to share
    /// across threads.
    pub fn memoized(&self) -> Self {
        const CAPACITY: usize = 1 << 16;
        let inner = self.eval.clone();
        let cache: Mutex<HashMap<i64, f64>> = Mutex::new(HashMap::new());
        Self {
            eval: Arc::new(move |x| {
                let key = (x * 1e12).round() as i64;
                if let Some(v) = cache.lock().expect("cache lock").get(&key) {
                    return Ok(*v);
                }
                let v = inner(x)?;
                let mut c = cache.lock().expect("cache lock");
                if c.len() >= CAPACITY {
                    c.clear();
                }
                c.insert(key, v);
                Ok(v)
            }),
            ..self.clone()
        }
    }

    /// Spot-checks the declared support: `samples` random points beyond
    /// `support_hi` (and below `support_lo`) must evaluate to zero and
    /// evaluation inside must be finite.
    pub fn check_support(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hi = self.support_hi;
        for _ in 0..samples {
            if hi.is_finite() {
                let x = hi + rng.random::<f64>() * 10.0 * hi.max(1.0) + f64::EPSILON * hi.max(1.0);
                let v = (self.eval)(x)?;
                if v != 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "{}: value {v} at x = {x} beyond declared support {hi}",
                        self.label
                    )));
                }
            }
            if self.support_lo > 0.0 {
                let x = rng.random::<f64>() * self.support_lo * (1.0 - 1e-12);
                let v = (self.eval)(x)?;
                if v != 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "{}: value {v} at x = {x} below declared support {}",
                        self.label, self.support_lo
                    )));
                }
            }
            let top = if hi.is_finite() { hi } else { self.support_lo + 100.0 };
            let x = self.support_lo + rng.random::<f64>() * (top - self.support_lo);
            let v = (self.eval)(x)?;
            if !v.is_finite() {
                return Err(Error::NonFinite { x });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicators_are_half_open() {
        let f = TestFunction::indicator(1.0, 2.0).unwrap();
        assert_eq!(f.eval(1.0).unwrap(), 1.0);
        assert_eq!(f.eval(1.999).unwrap(), 1.0);
        assert_eq!(f.eval(2.0).unwrap(), 0.0);
        assert_eq!(f.eval(0.5).unwrap(), 0.0);
        assert_eq!(f.breakpoints(), &[1.0, 2.0]);
        assert!(TestFunction::indicator(2.0, 1.0).is_err());
        assert_eq!(TestFunction::indicator(-1.0, 2.0).unwrap().support_lo(), 0.0);
        assert!(f.eval(-0.1).is_err());
    }

    #[test]
    fn catalog_supports_hold() {
        for f in [
            TestFunction::unit_indicator(),
            TestFunction::bump(),
            TestFunction::ramp(),
            TestFunction::zero(),
            TestFunction::constant(2.5, 3.0).unwrap(),
            TestFunction::block_indicator(4).unwrap(),
        ] {
            f.check_support(100, 7).unwrap();
        }
        let liar = TestFunction::from_fn("liar", 1.0, vec![], Smoothness::Smooth, |_| 1.0).unwrap();
        assert!(liar.check_support(10, 1).is_err());
    }

    #[test]
    fn arithmetic_and_memo() {
        let f = TestFunction::bump();
        let g = TestFunction::ramp();
        let h = f.scaled(2.0).add(&g);
        for &x in &[0.0, 0.3, 0.99, 1.0, 1.5, 2.0, 2.5] {
            let want = 2.0 * f.eval(x).unwrap() + g.eval(x).unwrap();
            assert_eq!(h.eval(x).unwrap(), want);
        }
        assert_eq!(h.support_hi(), 2.0);
        let m = h.memoized();
        for &x in &[0.3, 0.3, 1.5, 1.5] {
            assert_eq!(m.eval(x).unwrap(), h.eval(x).unwrap());
        }
        assert!(TestFunction::zero().is_zero());
        assert_eq!(TestFunction::zero().add(&g).support_lo(), 1.0);
    }
}
