//! Finite commutative hypergroups given by structure constants
//! `ε_i ⋆ ε_j = Σ_k c[i][j][k] ε_k`, with index 0 the identity.
//!
//! Files are TOML documents:
//!
//! ```toml
//! name = "Z2"              # optional
//! size = 2
//! involution = [0, 1]
//! tensor = [1.0, 0.0, 0.0, 1.0,  0.0, 1.0, 1.0, 0.0]   # row-major, size³ entries
//! ```

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on row sums when loading a table.
pub const ROW_SUM_TOLERANCE: f64 = 1e-10;
const EXACT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergroupFile {
    #[serde(default)]
    pub name: Option<String>,
    pub size: usize,
    pub involution: Vec<usize>,
    pub tensor: Vec<f64>,
}

/// A validated finite commutative hypergroup.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteHypergroup {
    name: String,
    size: usize,
    involution: Vec<usize>,
    tensor: Vec<f64>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidHypergroup(msg.into())
}

impl FiniteHypergroup {
    /// Validates and row-normalizes a table. Checks run in a fixed order and
    /// the first violation is reported with its indices.
    pub fn new(name: impl Into<String>, size: usize, involution: Vec<usize>, mut tensor: Vec<f64>) -> Result<Self> {
        let n = size;
        if n == 0 {
            return Err(invalid("size must be at least 1"));
        }
        if involution.len() != n {
            return Err(invalid(format!(
                "involution has length {}, expected size {n}",
                involution.len()
            )));
        }
        if tensor.len() != n * n * n {
            return Err(invalid(format!(
                "tensor has length {}, expected size^3 = {}",
                tensor.len(),
                n * n * n
            )));
        }
        for (i, &j) in involution.iter().enumerate() {
            if j >= n {
                return Err(invalid(format!("involution({i}) = {j} is out of range")));
            }
            if involution[j] != i {
                return Err(invalid(format!(
                    "involution is not an involution: involution({i}) = {j} but involution({j}) = {}",
                    involution[j]
                )));
            }
        }
        if involution[0] != 0 {
            return Err(invalid(format!(
                "identity 0 must be self-inverse, involution(0) = {}",
                involution[0]
            )));
        }
        let at = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = tensor[at(i, j, k)];
                    if !(c >= 0.0) || !c.is_finite() {
                        return Err(invalid(format!(
                            "entry c[{i}][{j}][{k}] = {c} is negative or not finite"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let row = &mut tensor[at(i, j, 0)..at(i, j, 0) + n];
                let s: f64 = row.iter().sum();
                if (s - 1.0).abs() > ROW_SUM_TOLERANCE {
                    return Err(invalid(format!("row ({i},{j}) sums to {s}")));
                }
                row.iter_mut().for_each(|c| *c /= s);
            }
        }
        for j in 0..n {
            for k in 0..n {
                let want = if j == k { 1.0 } else { 0.0 };
                let c = tensor[at(0, j, k)];
                if (c - want).abs() > EXACT {
                    return Err(invalid(format!("identity row: c[0][{j}][{k}] = {c}, expected {want}")));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let (a, b) = (tensor[at(i, j, k)], tensor[at(j, i, k)]);
                    if (a - b).abs() > EXACT {
                        return Err(invalid(format!(
                            "not commutative: c[{i}][{j}][{k}] = {a} but c[{j}][{i}][{k}] = {b}"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let c = tensor[at(i, j, 0)];
                if j == involution[i] && !(c > 0.0) {
                    return Err(invalid(format!(
                        "support condition: c[{i}][{j}][0] = 0 although {j} is the inverse of {i}"
                    )));
                }
                if j != involution[i] && c != 0.0 {
                    return Err(invalid(format!(
                        "support condition: c[{i}][{j}][0] = {c} although {j} is not the inverse of {i}"
                    )));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            size,
            involution,
            tensor,
        })
    }

    pub fn from_file_data(data: HypergroupFile) -> Result<Self> {
        let name = data
            .name
            .unwrap_or_else(|| format!("hypergroup of order {}", data.size));
        Self::new(name, data.size, data.involution, data.tensor)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let data: HypergroupFile =
            toml::from_str(text).map_err(|e| invalid(format!("malformed hypergroup file: {e}")))?;
        Self::from_file_data(data)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_file_data(&self) -> HypergroupFile {
        HypergroupFile {
            name: Some(self.name.clone()),
            size: self.size,
            involution: self.involution.clone(),
            tensor: self.tensor.clone(),
        }
    }

    /// The cyclic group `ℤ_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let mut tensor = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                tensor[(i * n + j) * n + (i + j) % n] = 1.0;
            }
        }
        let involution = (0..n).map(|i| (n - i) % n).collect();
        Self::new(format!("Z{n}"), n, involution, tensor)
    }

    /// `{0, 1}` with `ε₁ ⋆ ε₁ = a ε₀ + (1 − a) ε₁`, `0 < a ≤ 1`.
    pub fn two_point(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "two-point parameter must lie in (0, 1], got {a}"
            )));
        }
        let tensor = vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0, a, 1.0 - a];
        Self::new(format!("two-point a={a}"), 2, vec![0, 1], tensor)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn involution(&self, i: usize) -> usize {
        self.involution[i]
    }

    /// `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.size;
        self.tensor[(i * n + j) * n + k]
    }

    /// `ω_k = 1 / c[k⁻][k][0]`.
    pub fn haar_weights(&self) -> Result<Vec<f64>> {
        (0..self.size)
            .map(|k| {
                let inv = self.involution[k];
                let c = self.c(inv, k, 0);
                if c > 0.0 {
                    Ok(1.0 / c)
                } else {
                    Err(Error::DegenerateTable { index: k, inverse: inv })
                }
            })
            .collect()
    }

    fn check_len(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "vector has length {}, hypergroup has order {}",
                f.len(),
                self.size
            )));
        }
        Ok(())
    }

    /// `(τ_y f)(k) = Σ_m c[y][k][m] f(m)`.
    pub fn discrete_translate(&self, y: usize, f: &[f64]) -> Result<Vec<f64>> {
        if y >= self.size {
            return Err(Error::InvalidArgument(format!(
                "index {y} out of range for order {}",
                self.size
            )));
        }
        self.check_len(f)?;
        Ok((0..self.size)
            .map(|k| (0..self.size).map(|m| self.c(y, k, m) * f[m]).sum())
            .collect())
    }

    /// Both window norms of `f` next to the norms they coincide with.
    pub fn norm_equalities(&self, f: &[f64], p: f64) -> Result<NormEqualities> {
        self.check_len(f)?;
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidArgument(format!("p must lie in [1, inf), got {p}")));
        }
        let w = self.haar_weights()?;
        let powers: Vec<f64> = f.iter().zip(&w).map(|(v, wk)| v.abs().powf(p) * wk).collect();
        let n = self.size;
        let mut discrete = 0.0f64;
        let mut compact = 0.0f64;
        for y in 0..n {
            let mut d = 0.0;
            let mut c = 0.0;
            for (k, pk) in powers.iter().enumerate() {
                // τ_y 𝟙_{0}(k) = c[y][k][0]; τ_y 𝟙_K(k) = Σ_m c[y][k][m].
                let ind0 = self.c(y, k, 0);
                let ind_k: f64 = (0..n).map(|m| self.c(y, k, m)).sum();
                d += ind0 * pk;
                c += ind_k * pk;
            }
            discrete = discrete.max(d.powf(1.0 / p));
            compact = compact.max(c.powf(1.0 / p));
        }
        let sup_norm = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let lp_norm = powers.iter().sum::<f64>().powf(1.0 / p);
        Ok(NormEqualities {
            cont_discrete_window: discrete,
            sup_norm,
            cont_compact_window: compact,
            lp_norm,
        })
    }
}

impl fmt::Display for FiniteHypergroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEqualities {
    pub cont_discrete_window: f64,
    pub sup_norm: f64,
    pub cont_compact_window: f64,
    pub lp_norm: f64,
}

impl NormEqualities {
    /// Largest deviation of the two equalities.
    pub fn max_gap(&self) -> f64 {
        (self.cont_discrete_window - self.sup_norm)
            .abs()
            .max((self.cont_compact_window - self.lp_norm).abs())
    }
}

const BUILTIN_FILES: [(&str, &str); 5] = [
    ("z2.hyp", include_str!("../data/hypergroups/z2.hyp")),
    ("z3.hyp", include_str!("../data/hypergroups/z3.hyp")),
    (
        "two_point_a25.hyp",
        include_str!("../data/hypergroups/two_point_a25.hyp"),
    ),
    (
        "two_point_a50.hyp",
        include_str!("../data/hypergroups/two_point_a50.hyp"),
    ),
    (
        "two_point_a75.hyp",
        include_str!("../data/hypergroups/two_point_a75.hyp"),
    ),
];

/// `ℤ₂`, `ℤ₃` and the two-point hypergroups with `a ∈ {¼, ½, ¾}`.
pub fn catalog() -> Vec<FiniteHypergroup> {
    BUILTIN_FILES
        .iter()
        .map(|(file, text)| FiniteHypergroup::parse(text).unwrap_or_else(|e| panic!("built-in {file}: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(
            FiniteHypergroup::cyclic(2).unwrap().haar_weights().unwrap(),
            vec![1.0, 1.0]
        );
        assert_eq!(
            FiniteHypergroup::two_point(0.5).unwrap().haar_weights().unwrap(),
            vec![1.0, 2.0]
        );
        for h in catalog() {
            assert_eq!(h.haar_weights().unwrap()[0], 1.0);
        }
    }

    #[test]
    fn catalog_matches_constructors() {
        let cat = catalog();
        assert_eq!(cat.len(), 5);
        assert_eq!(
            cat[0].to_file_data().tensor,
            FiniteHypergroup::cyclic(2).unwrap().to_file_data().tensor
        );
        assert_eq!(
            cat[1].to_file_data().tensor,
            FiniteHypergroup::cyclic(3).unwrap().to_file_data().tensor
        );
        let w: Vec<f64> = cat[2..].iter().map(|h| h.haar_weights().unwrap()[1]).collect();
        assert_eq!(w, vec![4.0, 2.0, 1.0 / 0.75]);
    }

    #[test]
    fn translate_examples() {
        let h = FiniteHypergroup::two_point(0.25).unwrap();
        assert_eq!(h.discrete_translate(0, &[2.0, -3.0]).unwrap(), vec![2.0, -3.0]);
        let one = h.discrete_translate(1, &[1.0, 1.0]).unwrap();
        assert!(one.iter().all(|v| (v - 1.0).abs() < 1e-15));
        let z3 = FiniteHypergroup::cyclic(3).unwrap();
        for n in 0..3 {
            let t = z3.discrete_translate(n, &[1.0, 0.0, 0.0]).unwrap();
            for (k, v) in t.iter().enumerate() {
                assert_eq!(*v > 0.0, k == z3.involution(n));
                assert_eq!(*v, z3.c(n, k, 0));
            }
        }
        assert!(h.discrete_translate(2, &[1.0, 1.0]).is_err());
        assert!(h.discrete_translate(1, &[1.0]).is_err());
    }

    #[test]
    fn norm_examples() {
        let z2 = FiniteHypergroup::cyclic(2).unwrap();
        let r = z2.norm_equalities(&[3.0, 5.0], 2.0).unwrap();
        assert_eq!(r.cont_discrete_window, 5.0);
        assert_eq!(r.sup_norm, 5.0);
        let h = FiniteHypergroup::two_point(0.5).unwrap();
        for &p in &[1.0, 2.0, 3.5] {
            let r = h.norm_equalities(&[1.0, 1.0], p).unwrap();
            assert!((r.cont_compact_window - 3f64.powf(1.0 / p)).abs() < 1e-14);
            assert!((r.lp_norm - 3f64.powf(1.0 / p)).abs() < 1e-14);
        }
        let r = h.norm_equalities(&[1.0, 0.0], 1.0).unwrap();
        assert_eq!((r.cont_discrete_window, r.sup_norm), (1.0, 1.0));
        assert!(h.norm_equalities(&[1.0, 0.0], 0.5).is_err());
    }

    fn reject(text: &str, needle: &str) {
        match FiniteHypergroup::parse(text) {
            Err(Error::InvalidHypergroup(m)) => assert!(m.contains(needle), "{m}"),
            other => panic!("expected rejection containing {needle:?}, got {other:?}"),
        }
    }

    #[test]
    fn validation_diagnostics() {
        reject(
            "size = 2\ninvolution = [0]\ntensor = [1,0,0,1,0,1,1,0]",
            "involution has length",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0,1]",
            "tensor has length",
        );
        reject("size = 2\ninvolution = [1,0]\ntensor = [1,0,0,1,0,1,1,0]", "identity 0");
        reject(
            "size = 3\ninvolution = [0,2,2]\ntensor = [1,0,0,0,1,0,0,0,1,0,1,0,0,0,1,1,0,0,0,0,1,1,0,0,0,1,0]",
            "not an involution",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0,1,1.5,-0.5]",
            "c[1][1][1]",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0,1,0.4,0.5]",
            "row (1,1) sums to 0.9",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [0.5,0.5,0,1,0,1,1,0]",
            "identity row",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0.5,0.5,1,0]",
            "not commutative",
        );
        reject(
            "size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0,1,0,1]",
            "support condition",
        );
        reject("size = 2\ninvolution = [0,1]\ntensor = \"x\"", "malformed");
        // Within tolerance: renormalized exactly.
        let h = FiniteHypergroup::parse("size = 2\ninvolution = [0,1]\ntensor = [1,0,0,1,0,1,0.50000000000002,0.5]")
            .unwrap();
        assert!((h.c(1, 1, 0) + h.c(1, 1, 1) - 1.0).abs() < 1e-15);
    }
}
