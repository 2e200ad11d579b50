//! Machine-readable outcome of one check.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Version of the JSON layout, bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

/// One compared quantity. `margin >= 0` means the comparison holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub input: String,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub lhs: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub rhs: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub margin: f64,
}

impl Detail {
    pub fn ok(&self) -> bool {
        self.margin >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check_name: String,
    pub alpha: Option<f64>,
    pub passed: bool,
    pub tolerance: f64,
    #[serde(serialize_with = "map_finite_or_null", deserialize_with = "map_null_as_nan")]
    pub measured_constants: BTreeMap<String, f64>,
    pub details: Vec<Detail>,
    pub runtime_seconds: f64,
    pub config_digest: String,
    pub seed: u64,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| !d.ok())
    }

    /// JSON body with the wall-clock field zeroed, for reproducibility
    /// comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.runtime_seconds = 0.0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

/// Incremental construction of a [`VerificationReport`]; `passed` is derived
/// from the details when finishing.
#[derive(Debug)]
pub struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check_name: impl Into<String>, alpha: Option<f64>, tolerance: f64) -> Self {
        Self {
            report: VerificationReport {
                schema_version: SCHEMA_VERSION,
                check_name: check_name.into(),
                alpha,
                passed: false,
                tolerance,
                measured_constants: BTreeMap::new(),
                details: Vec::new(),
                runtime_seconds: 0.0,
                config_digest: String::new(),
                seed: 0,
                metadata: BTreeMap::new(),
            },
            started: Instant::now(),
        }
    }

    pub fn detail(&mut self, input: impl Into<String>, lhs: f64, rhs: f64, margin: f64) -> &mut Self {
        self.report.details.push(Detail {
            input: input.into(),
            lhs,
            rhs,
            margin,
        });
        self
    }

    /// Records `lhs <= rhs`.
    pub fn at_most(&mut self, input: impl Into<String>, lhs: f64, rhs: f64) -> &mut Self {
        self.detail(input, lhs, rhs, rhs - lhs)
    }

    /// Records `|lhs - rhs| <= tol`.
    pub fn close(&mut self, input: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> &mut Self {
        self.detail(input, lhs, rhs, tol - (lhs - rhs).abs())
    }

    /// Records that `value` is finite (margin 0 if so, -1 otherwise).
    pub fn finite(&mut self, input: impl Into<String>, value: f64) -> &mut Self {
        let margin = if value.is_finite() { 0.0 } else { -1.0 };
        self.detail(input, value, f64::INFINITY, margin)
    }

    /// Records a failed computation.
    pub fn error(&mut self, input: impl Into<String>, err: &crate::Error) -> &mut Self {
        let input = format!("{}: error: {err}", input.into());
        self.detail(input, f64::NAN, f64::NAN, -1.0)
    }

    pub fn constant(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.report.measured_constants.insert(name.into(), value);
        self
    }

    /// Keeps the larger of the stored and the new value.
    pub fn max_constant(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        let e = self
            .report
            .measured_constants
            .entry(name.into())
            .or_insert(f64::NEG_INFINITY);
        if value > *e || value.is_nan() {
            *e = value;
        }
        self
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.report.metadata.insert(key.into(), value.into());
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.report.seed = seed;
        self
    }

    pub fn config_digest(&mut self, digest: impl Into<String>) -> &mut Self {
        self.report.config_digest = digest.into();
        self
    }

    pub fn finish(mut self) -> VerificationReport {
        self.report.passed = self.report.details.iter().all(Detail::ok);
        self.report.runtime_seconds = self.started.elapsed().as_secs_f64();
        self.report
    }
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn null_as_nan<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn map_finite_or_null<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    let conv: BTreeMap<&String, Option<f64>> = m.iter().map(|(k, v)| (k, v.is_finite().then_some(*v))).collect();
    conv.serialize(s)
}

fn map_null_as_nan<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
    let m = BTreeMap::<String, Option<f64>>::deserialize(d)?;
    Ok(m.into_iter().map(|(k, v)| (k, v.unwrap_or(f64::NAN))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_follows_details() {
        let mut b = ReportBuilder::new("x", Some(0.5), 1e-8);
        b.close("a", 1.0, 1.0 + 1e-9, 1e-8).at_most("b", 1.0, 2.0);
        let r = b.finish();
        assert!(r.passed);
        let mut b = ReportBuilder::new("x", None, 1e-8);
        b.close("a", 1.0, 1.1, 1e-8);
        assert!(!b.finish().passed);
        let mut b = ReportBuilder::new("x", None, 1e-8);
        b.finite("nan", f64::NAN);
        assert!(!b.finish().passed);
    }

    #[test]
    fn json_round_trip_with_non_finite_values() {
        let mut b = ReportBuilder::new("x", Some(1.0), 1e-3);
        b.finite("inf", f64::INFINITY)
            .constant("c", f64::INFINITY)
            .constant("d", 2.0);
        let r = b.finish();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert!(back.measured_constants["c"].is_nan());
        assert_eq!(back.measured_constants["d"], 2.0);
        assert_eq!(back.details.len(), 1);
        assert_eq!(r.canonical_json(), back.canonical_json());
    }
}
