use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::amalgam::{TailMode, TailPolicy};
use crate::error::{Error, Result};
use crate::quadrature::QuadSpec;

pub const DEFAULT_ALPHAS: [f64; 5] = [0.5, 0.75, 1.0, 1.5, 2.5];
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Problem sizes of the individual checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sizing {
    /// Use only the first `k` functions of each catalog.
    pub catalog_limit: Option<usize>,
    pub norm_p_list: Vec<f64>,
    pub norm_y_step: f64,
    pub translation_n_max: usize,
    pub translation_y_step: f64,
    pub translation_spot_n: Vec<usize>,
    pub translation_spot_y_step: f64,
    pub gn_n_max: usize,
    pub finite_trials: usize,
    pub fournier_lambdas: Vec<f64>,
    pub envelope_lambda_max: f64,
}

impl Default for Sizing {
    fn default() -> Self {
        Self {
            catalog_limit: None,
            norm_p_list: vec![1.0, 2.0],
            norm_y_step: 0.25,
            translation_n_max: 12,
            translation_y_step: 0.5,
            translation_spot_n: vec![13, 18, 24],
            translation_spot_y_step: 1.0,
            gn_n_max: 6,
            finite_trials: 100,
            fournier_lambdas: vec![0.0, 0.5, 2.0, 8.0, 32.0],
            envelope_lambda_max: 1000.0,
        }
    }
}

/// Everything a verification run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub alpha_list: Vec<f64>,
    pub quad: QuadSpec,
    pub tail: TailPolicy,
    pub lambda_cut: f64,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub sizing: Sizing,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha_list: DEFAULT_ALPHAS.to_vec(),
            quad: QuadSpec::default(),
            tail: TailPolicy::default(),
            lambda_cut: 400.0,
            seed: DEFAULT_SEED,
            output_dir: PathBuf::from("bkh-output"),
            format: OutputFormat::Json,
            sizing: Sizing::default(),
        }
    }
}

impl RunConfig {
    /// Reduced sizes for smoke runs: two α values, short catalogs, 60 dual
    /// blocks.
    pub fn quick() -> Self {
        Self {
            alpha_list: vec![0.5, 1.0],
            tail: TailPolicy {
                n_max: 60,
                fit_window: 40,
                mode: TailMode::PowerLawTail,
            },
            sizing: Sizing {
                catalog_limit: Some(1),
                norm_p_list: vec![1.0],
                norm_y_step: 0.5,
                translation_n_max: 4,
                translation_y_step: 1.0,
                translation_spot_n: vec![6, 8],
                translation_spot_y_step: 2.0,
                gn_n_max: 3,
                finite_trials: 20,
                fournier_lambdas: vec![0.0, 2.0, 8.0],
                envelope_lambda_max: 200.0,
            },
            ..Self::default()
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.alpha_list.is_empty() {
            return bad("alpha_list is empty".into());
        }
        if let Some(a) = self.alpha_list.iter().find(|a| !(**a >= 0.5) || !a.is_finite()) {
            return bad(format!("alpha {a} is below 0.5"));
        }
        self.quad.validate()?;
        self.tail.validate()?;
        if !(self.lambda_cut > 0.0) || !self.lambda_cut.is_finite() {
            return bad(format!("lambda_cut must be positive, got {}", self.lambda_cut));
        }
        let s = &self.sizing;
        if s.catalog_limit == Some(0) {
            return bad("catalog_limit must be at least 1".into());
        }
        if s.norm_p_list.is_empty() || s.norm_p_list.iter().any(|p| !(*p >= 1.0) || !p.is_finite()) {
            return bad("norm_p_list needs finite exponents >= 1".into());
        }
        for (name, v) in [
            ("norm_y_step", s.norm_y_step),
            ("translation_y_step", s.translation_y_step),
            ("translation_spot_y_step", s.translation_spot_y_step),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if s.translation_n_max < 4 {
            return bad(format!("translation_n_max must be >= 4, got {}", s.translation_n_max));
        }
        if s.gn_n_max < 3 {
            return bad(format!("gn_n_max must be >= 3, got {}", s.gn_n_max));
        }
        if s.fournier_lambdas.iter().any(|l| !(*l >= 0.0) || !l.is_finite()) {
            return bad("fournier_lambdas must be finite and >= 0".into());
        }
        if !(s.envelope_lambda_max > 40.0) || !s.envelope_lambda_max.is_finite() {
            return bad("envelope_lambda_max must exceed 40".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON of the settings that affect results
    /// (output location and format excluded).
    pub fn digest(&self) -> String {
        let mut value = serde_json::to_value(self).expect("config serializes");
        if let Some(map) = value.as_object_mut() {
            map.remove("output_dir");
            map.remove("format");
        }
        let text = serde_json::to_string(&value).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn limit<T: Clone>(&self, catalog: Vec<T>) -> Vec<T> {
        match self.sizing.catalog_limit {
            Some(k) => catalog.into_iter().take(k).collect(),
            None => catalog,
        }
    }
}
