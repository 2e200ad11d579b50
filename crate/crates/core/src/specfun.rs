//! Special functions: the Gamma function, Bessel functions of the first kind
//! `J_ν`, their positive zeros, and the normalized Bessel function `j_α`
//! whose dilations `x ↦ j_α(λx)` are the characters of the hypergroup.
//!
//! Everything here is a pure function of its arguments. The only shared state
//! is [`ZeroTable`], an explicitly constructed, lock-protected cache of zeros.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::RwLock;

use crate::error::{Error, Result};

/// Largest argument accepted by [`gamma`].
pub const GAMMA_MAX_ARG: f64 = 170.0;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `j_α` is summed from its power series for `|x|` up to this value and
/// obtained from `J_α` beyond it.
pub const NORM_SERIES_LIMIT: f64 = 5.0;

// J_ν: power series below this argument.
const J_SERIES_LIMIT: f64 = 5.0;
// J_ν: Hankel's asymptotic expansion is attempted above this argument.
const J_ASYMPTOTIC_MIN: f64 = 25.0;

/// Gamma function for `0 < x ≤ 170`.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            func: "gamma",
            arg: x,
            expected: "x > 0",
        });
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow { func: "gamma", arg: x });
    }
    if x.fract() == 0.0 {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    if x < 2.0 {
        return Ok(lanczos(x));
    }
    // Lanczos on [1, 2) and an upward product; exp/pow of large arguments
    // would cost ~1e-13 relative near the top of the range.
    let base = 1.0 + x.fract();
    let mut acc = lanczos(base);
    let mut t = base;
    while t < x - 0.5 {
        acc *= t;
        t += 1.0;
    }
    Ok(acc)
}

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

// Γ(x) for x ≥ 0.5.
fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    // t^(z+1/2) is split in two factors so that it does not overflow near x = 170.
    let half_power = t.powf((z + 0.5) / 2.0);
    SQRT_2PI * half_power * (half_power * (-t).exp()) * series
}

/// Validated hypergroup parameter `α ≥ 1/2` together with the constants that
/// depend only on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha {
    value: f64,
    c_gamma: f64,
    plancherel_c: f64,
    bessel_scale: f64,
}

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.5) || !value.is_finite() {
            return Err(Error::Domain {
                func: "Alpha::new",
                arg: value,
                expected: "alpha >= 0.5",
            });
        }
        let g1 = gamma(value + 1.0)?;
        let c_gamma = g1 / (gamma(0.5)? * gamma(value + 0.5)? * 2f64.powf(2.0 * value - 1.0));
        let bessel_scale = 2f64.powf(value) * g1;
        let plancherel_c = 1.0 / (bessel_scale * bessel_scale);
        if !(c_gamma.is_finite() && plancherel_c > 0.0 && plancherel_c.is_finite()) {
            return Err(Error::Overflow {
                func: "Alpha::new",
                arg: value,
            });
        }
        Ok(Self {
            value,
            c_gamma,
            plancherel_c,
            bessel_scale,
        })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Kernel constant `C_Γ = Γ(α+1) / (Γ(1/2) Γ(α+1/2) 2^(2α-1))`.
    #[inline]
    pub fn c_gamma(&self) -> f64 {
        self.c_gamma
    }

    /// Inverse-transform constant `c_α = (2^α Γ(α+1))^(-2)`.
    #[inline]
    pub fn plancherel_c(&self) -> f64 {
        self.plancherel_c
    }

    /// `2^α Γ(α+1)`, the factor in `j_α(x) = 2^α Γ(α+1) x^(-α) J_α(x)`.
    #[inline]
    pub fn bessel_scale(&self) -> f64 {
        self.bessel_scale
    }

    /// Endpoint exponent `α - 1/2` of the kernel.
    #[inline]
    pub fn mu(&self) -> f64 {
        self.value - 0.5
    }

    /// Exponent `2α + 1` of the Haar density.
    #[inline]
    pub fn haar_exponent(&self) -> f64 {
        2.0 * self.value + 1.0
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Normalized Bessel function
/// `j_α(x) = Σ_k (-1)^k Γ(α+1) x^(2k) / (2^(2k) k! Γ(α+k+1))`.
///
/// Even in `x`, with `j_α(0) = 1`.
pub fn bessel_j_norm(alpha: &Alpha, x: f64) -> f64 {
    let ax = x.abs();
    if ax <= NORM_SERIES_LIMIT {
        return norm_series(alpha.value, ax * ax);
    }
    alpha.bessel_scale * ax.powf(-alpha.value) * j_unchecked(alpha.value, ax)
}

fn norm_series(a: f64, x2: f64) -> f64 {
    let q = -0.25 * x2;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (a + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() || term == 0.0 {
            return sum;
        }
    }
}

/// Bessel function of the first kind `J_ν(x)` for real order `ν ≥ 0` and
/// `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain {
            func: "bessel_j",
            arg: nu,
            expected: "order nu >= 0",
        });
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "bessel_j",
            arg: x,
            expected: "finite x >= 0",
        });
    }
    Ok(j_unchecked(nu, x))
}

pub(crate) fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= J_SERIES_LIMIT && nu + 1.0 <= GAMMA_MAX_ARG {
        return j_series(nu, x);
    }
    if x >= J_ASYMPTOTIC_MIN {
        if let Some(v) = j_hankel(nu, x) {
            return v;
        }
    }
    j_miller(nu, x)
}

fn j_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let prefactor = half.powf(nu) / gamma(nu + 1.0).expect("order checked by caller");
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() || term == 0.0 {
            return prefactor * sum;
        }
    }
}

// Hankel's expansion J_ν(x) = sqrt(2/(πx)) (P cos ω - Q sin ω). Returns None
// when the terms stop decreasing before reaching round-off.
fn j_hankel(nu: f64, x: f64) -> Option<f64> {
    let mu4 = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut converged = false;
    for k in 1..=80u32 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu4 - odd * odd) / (k as f64 * 8.0 * x);
        if next == 0.0 {
            converged = true;
            break;
        }
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let omega = x - (0.5 * nu * PI + FRAC_PI_4);
    Some((2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin()))
}

// Miller's backward recurrence on orders μ + m, normalized with Neumann's
// series (x/2)^μ = Σ_k (μ + 2k) Γ(μ + k) / k! · J_{μ+2k}(x).
fn j_miller(nu: f64, x: f64) -> f64 {
    let n = nu.floor() as usize;
    let mu = nu - n as f64;
    let big = nu.max(x);
    let start = ((big + (160.0 * big).sqrt()).ceil() as usize + 10).max(n + 2);

    let pairs = start / 2 + 1;
    let mut coef = Vec::with_capacity(pairs);
    let gamma_mu1 = gamma(mu + 1.0).expect("mu + 1 lies in [1, 2)");
    coef.push(gamma_mu1);
    let mut g = gamma_mu1; // Γ(μ + k) / k! at k = 1
    for k in 1..pairs {
        let kf = k as f64;
        coef.push((mu + 2.0 * kf) * g);
        g *= (mu + kf) / (kf + 1.0);
    }

    let mut j_next = 0.0;
    let mut j_cur = 1e-300_f64.max(f64::MIN_POSITIVE * 1e10);
    let mut sum = 0.0;
    let mut result = 0.0;
    let mut m = start;
    loop {
        if m == n {
            result = j_cur;
        }
        if m.is_multiple_of(2) {
            sum += coef[m / 2] * j_cur;
        }
        if m == 0 {
            break;
        }
        let j_prev = 2.0 * (mu + m as f64) / x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            sum *= 1e-250;
            result *= 1e-250;
        }
        m -= 1;
    }
    result * (0.5 * x).powf(mu) / sum
}

/// The first `count` positive zeros of `J_ν`, in ascending order.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "bessel_j_zeros: count must be at least 1".into(),
        ));
    }
    bessel_j(nu, 1.0)?;
    let mut zeros = Vec::with_capacity(count);
    let mut last = None;
    for _ in 0..count {
        let z = next_zero(nu, last);
        zeros.push(z);
        last = Some(z);
    }
    Ok(zeros)
}

// Consecutive positive zeros of J_ν (ν ≥ 0) are more than 3 apart and the
// first exceeds ν, so scanning with a step of 1/4 never skips a sign change.
fn next_zero(nu: f64, after: Option<f64>) -> f64 {
    const STEP: f64 = 0.25;
    let mut lo = match after {
        Some(z) => z + 2.0,
        None => nu.max(1e-3),
    };
    let mut f_lo = j_unchecked(nu, lo);
    loop {
        let hi = lo + STEP;
        let f_hi = j_unchecked(nu, hi);
        if f_hi == 0.0 {
            return hi;
        }
        if f_lo.signum() != f_hi.signum() {
            return bisect_root(|t| j_unchecked(nu, t), lo, hi, f_lo);
        }
        lo = hi;
        f_lo = f_hi;
    }
}

fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

/// Lazily extended table of the positive zeros of `J_ν`, shared by repeated
/// oscillatory integrals with the same order.
#[derive(Debug)]
pub struct ZeroTable {
    nu: f64,
    zeros: RwLock<Vec<f64>>,
}

impl ZeroTable {
    pub fn new(nu: f64) -> Result<Self> {
        bessel_j(nu, 1.0)?;
        Ok(Self {
            nu,
            zeros: RwLock::new(Vec::new()),
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// All zeros strictly below `x`.
    pub fn zeros_below(&self, x: f64) -> Vec<f64> {
        {
            let zeros = self.zeros.read().expect("zero table lock poisoned");
            if zeros.last().is_some_and(|&z| z >= x) {
                let end = zeros.partition_point(|&z| z < x);
                return zeros[..end].to_vec();
            }
        }
        let mut zeros = self.zeros.write().expect("zero table lock poisoned");
        while zeros.last().is_none_or(|&z| z < x) {
            let z = next_zero(self.nu, zeros.last().copied());
            zeros.push(z);
        }
        let end = zeros.partition_point(|&z| z < x);
        zeros[..end].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Independent oracle: direct summation of the defining series with
    // factorials and Gamma values recomputed for every term.
    fn naive_norm_series(a: f64, x: f64) -> f64 {
        let g = statrs::function::gamma::gamma(a + 1.0);
        (0..60)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * g * x.powi(2 * k)
                    / (4f64.powi(k)
                        * statrs::function::factorial::factorial(k as u64)
                        * statrs::function::gamma::gamma(a + kf + 1.0))
            })
            .sum()
    }

    fn naive_j_series(nu: f64, x: f64) -> f64 {
        (0..60)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * (0.5 * x).powf(2.0 * kf + nu)
                    / (statrs::function::factorial::factorial(k as u64) * statrs::function::gamma::gamma(nu + kf + 1.0))
            })
            .sum()
    }

    #[test]
    fn gamma_anchors() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert_relative_eq!(gamma(0.5).unwrap(), 1.772_453_850_905_516, max_relative = 1e-15);
    }

    #[test]
    fn gamma_matches_high_precision_values() {
        // 40-digit reference values.
        let cases = [
            (0.013, 76.358_567_751_324_648_962),
            (0.37, 2.403_550_020_078_653_278_3),
            (1.5, 0.886_226_925_452_758_013_65),
            (2.5, 1.329_340_388_179_137_020_5),
            (9.75, 207_358.599_890_248_676_46),
            (33.3, 7.487_577_596_522_632_327_4e35),
            (77.7, 3.938_919_638_429_316_487e112),
            (101.25, 2.955_837_447_543_366_894_9e158),
            (169.5, 3.281_470_451_067_846_378e303),
        ];
        for (x, want) in cases {
            assert_relative_eq!(gamma(x).unwrap(), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn gamma_matches_independent_implementation() {
        let mut x = 0.013;
        while x < 170.0 {
            let ours = gamma(x).unwrap();
            let theirs = statrs::function::gamma::gamma(x);
            assert_relative_eq!(ours, theirs, max_relative = 5e-13);
            x *= 1.07;
        }
    }

    #[test]
    fn gamma_recurrence() {
        for &x in &[0.1, 0.7, 1.3, 2.5, 7.25, 33.3, 120.9] {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn gamma_domain_and_overflow() {
        assert!(matches!(gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(gamma(-1.5), Err(Error::Domain { .. })));
        assert!(matches!(gamma(f64::NAN), Err(Error::Domain { .. })));
        assert!(matches!(gamma(170.5), Err(Error::Overflow { .. })));
        assert!(gamma(170.0).unwrap().is_finite());
    }

    #[test]
    fn alpha_constants() {
        assert!(Alpha::new(0.49).is_err());
        let a = Alpha::new(0.5).unwrap();
        assert_relative_eq!(a.c_gamma(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(a.plancherel_c(), 2.0 / PI, max_relative = 1e-14);
        for &v in &[0.5, 0.75, 1.0, 1.5, 2.5, 7.3] {
            let a = Alpha::new(v).unwrap();
            let direct = statrs::function::gamma::gamma(v + 1.0)
                / (PI.sqrt() * statrs::function::gamma::gamma(v + 0.5) * 2f64.powf(2.0 * v - 1.0));
            assert!((a.c_gamma() - direct).abs() < 1e-14);
            assert!(a.plancherel_c() > 0.0);
        }
    }

    #[test]
    fn norm_bessel_examples() {
        let a = Alpha::new(0.7).unwrap();
        assert_eq!(bessel_j_norm(&a, 0.0), 1.0);
        let h = Alpha::new(0.5).unwrap();
        let oracle_pi = naive_norm_series(0.5, PI);
        assert!(oracle_pi.abs() < 1e-12);
        assert!(bessel_j_norm(&h, PI).abs() < 1e-12);
        let oracle_one = naive_norm_series(0.5, 1.0);
        assert_relative_eq!(oracle_one, 1f64.sin(), max_relative = 1e-14);
        assert_relative_eq!(bessel_j_norm(&h, 1.0), 0.841_470_984_807_896_5, max_relative = 1e-14);
    }

    #[test]
    fn norm_bessel_agrees_with_series_oracle() {
        for &v in &[0.5, 0.75, 1.0, 1.5, 2.5, 10.0] {
            let a = Alpha::new(v).unwrap();
            for i in 0..=40 {
                let x = 0.25 * i as f64;
                let want = naive_norm_series(v, x);
                assert!((bessel_j_norm(&a, x) - want).abs() < 1e-11, "alpha={v} x={x}");
            }
        }
    }

    #[test]
    fn norm_bessel_is_even() {
        let a = Alpha::new(1.25).unwrap();
        for &x in &[0.3, 4.9, 5.1, 17.0, 240.0] {
            assert_eq!(bessel_j_norm(&a, x), bessel_j_norm(&a, -x));
        }
    }

    #[test]
    fn bessel_j_examples() {
        assert_eq!(bessel_j(1.5, 0.0).unwrap(), 0.0);
        assert!(bessel_j(1.5, 1e-9).unwrap().abs() < 1e-13);
        let x = PI / 2.0;
        let oracle = naive_j_series(0.5, x);
        assert_relative_eq!(oracle, 2.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(0.5, x).unwrap(), 2.0 / PI, max_relative = 1e-14);
        // Leading asymptotic term, phase 100 - (ν/2 + 1/4)π = 100 - π; the
        // next term contributes about 4e-4 here.
        let asym = (2.0 / (PI * 100.0)).sqrt() * (100.0 - PI).cos();
        let exact = (2.0 / (PI * 100.0)).sqrt() * (100f64.sin() / 100.0 - 100f64.cos());
        let got = bessel_j(1.5, 100.0).unwrap();
        assert!((got - asym).abs() < 1e-3);
        assert!((got - exact).abs() < 1e-14);
        assert!(bessel_j(-0.5, 1.0).is_err());
        assert!(bessel_j(1.0, -1.0).is_err());
    }

    #[test]
    fn bessel_j_tabulated_values() {
        // Abramowitz & Stegun table 9.1.
        let cases = [
            (0.0, 1.0, 0.765_197_686_557_966_6),
            (1.0, 1.0, 0.440_050_585_744_933_5),
            (2.0, 1.0, 0.114_903_484_931_900_5),
            (0.0, 10.0, -0.245_935_764_451_348_3),
            (1.0, 10.0, 0.043_472_746_168_861_44),
            (2.0, 10.0, 0.254_630_313_685_120_9),
            (0.0, 30.0, -0.086_367_983_581_040_2),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!((got - want).abs() < 1e-13, "J_{nu}({x}) = {got}, want {want}");
        }
    }

    // Closed forms for half-integer orders cover every evaluation branch.
    #[test]
    fn bessel_j_half_integer_closed_forms() {
        for i in 1..4000 {
            let x = 0.25 * i as f64;
            let s = x.sin();
            let c = x.cos();
            let pref = (2.0 / (PI * x)).sqrt();
            let j12 = pref * s;
            let j32 = pref * (s / x - c);
            let j52 = pref * ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x);
            assert!((bessel_j(0.5, x).unwrap() - j12).abs() < 1e-13, "x={x}");
            assert!((bessel_j(1.5, x).unwrap() - j32).abs() < 1e-12, "x={x}");
            if x > 0.5 {
                assert!((bessel_j(2.5, x).unwrap() - j52).abs() < 1e-12, "x={x}");
            }
        }
    }

    #[test]
    fn bessel_j_branches_agree_with_series_oracle() {
        for &nu in &[0.0, 0.3, 1.0, 1.75, 2.5, 3.5, 6.2] {
            for i in 1..=60 {
                let x = 0.5 * i as f64;
                // The oracle's own cancellation error grows quickly past 8.
                if x > 8.0 {
                    continue;
                }
                let want = naive_j_series(nu, x);
                let got = bessel_j(nu, x).unwrap();
                assert!((got - want).abs() < 1e-11, "nu={nu} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn miller_and_hankel_agree_in_overlap() {
        for &nu in &[0.0, 0.75, 1.5, 2.0, 3.5] {
            for i in 0..50 {
                let x = 25.0 + 3.7 * i as f64;
                let a = j_miller(nu, x);
                let b = j_hankel(nu, x).expect("asymptotic series converges");
                assert!((a - b).abs() < 1e-13, "nu={nu} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn zeros_examples() {
        let z = bessel_j_zeros(0.5, 3).unwrap();
        for (k, zk) in z.iter().enumerate() {
            assert!((zk - PI * (k + 1) as f64).abs() < 1e-12);
            assert!(bessel_j(0.5, *zk).unwrap().abs() < 1e-10);
        }
        // tan z = z on (π, 2π) by bisection, independent of any Bessel code.
        let g = |z: f64| z.tan() - z;
        let (mut lo, mut hi) = (PI + 0.1, 1.5 * PI - 1e-9);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let z1 = bessel_j_zeros(1.5, 1).unwrap()[0];
        assert!((z1 - lo).abs() < 1e-12);
        assert!((z1 - 4.493_409_457_909_064).abs() < 1e-12);
        assert!(bessel_j_zeros(1.0, 0).is_err());
    }

    #[test]
    fn known_integer_order_zeros() {
        let z0 = bessel_j_zeros(0.0, 3).unwrap();
        let want = [2.404_825_557_695_773, 5.520_078_110_286_311, 8.653_727_912_911_012];
        for (a, b) in z0.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        let z2 = bessel_j_zeros(2.0, 1).unwrap();
        assert!((z2[0] - 5.135_622_301_840_683).abs() < 1e-12);
    }

    #[test]
    fn zero_table_matches_direct_computation() {
        let table = ZeroTable::new(1.5).unwrap();
        let below = table.zeros_below(50.0);
        let direct = bessel_j_zeros(1.5, below.len() + 1).unwrap();
        assert_eq!(&direct[..below.len()], &below[..]);
        assert!(direct[below.len()] >= 50.0);
        assert_eq!(table.zeros_below(10.0).len(), 2);
    }
}
