//! Command-line front end. Exit codes: 0 success, 1 failed check, 2 invalid
//! flags or configuration, 3 numerical non-convergence, 4 declared tail
//! divergence, 5 invalid hypergroup table.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::amalgam::{continuous_norm_p_inf, default_y_grid, discrete_norm, Exponent, ExponentPair, TailPolicy};
use crate::bessel_kingman::{kernel, lp_norm, translate, TestFunction};
use crate::error::{Error, Result};
use crate::finite_hypergroup::{catalog, FiniteHypergroup};
use crate::fourier::{fourier_transform, indicator_hat, DualFunction};
use crate::report::VerificationReport;
use crate::specfun::Alpha;
use crate::verify::{jobs, run_job, OutputFormat, RunConfig, Suite};

pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;
pub const EXIT_INVALID_HYPERGROUP: i32 = 5;

pub const ENV_OUTPUT_DIR: &str = "BKH_OUTPUT_DIR";
pub const ENV_THREADS: &str = "BKH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bkh", version, about = "Numerics for the Bessel-Kingman hypergroup")]
pub struct Cli {
    /// TOML run configuration
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for grids and reports (overrides BKH_OUTPUT_DIR)
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for verification jobs (overrides BKH_THREADS)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a kernel, translate or transform on a grid
    Eval(EvalArgs),
    /// Compute an amalgam or Lebesgue norm
    Norm(NormArgs),
    /// Run verification checks and write one report per check and alpha
    Verify(VerifyArgs),
    /// Validate a hypergroup table and print its Haar weights
    LoadHypergroup { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalSubject {
    Kernel,
    Translate,
    Fourier,
    IndicatorHat,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub subject: EvalSubject,
    #[arg(long)]
    pub alpha: f64,
    /// Points as `start:stop:step` or a comma list
    #[arg(long)]
    pub x: Option<Grid>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long)]
    pub z: Option<Grid>,
    #[arg(long)]
    pub lambda: Option<Grid>,
    /// unit-indicator, bump, ramp, zero, indicator:A:B, block:N, constant:C:HI,
    /// indicator-hat or hat:<id>
    #[arg(long = "f", default_value = "unit-indicator")]
    pub function: FunctionId,
    /// Output file (default: inside the output directory)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Discrete,
    Continuous,
    Lp,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub norm: NormKind,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long = "f", default_value = "unit-indicator")]
    pub function: FunctionId,
    #[arg(long, default_value = "1")]
    pub p: Exponent,
    #[arg(long, default_value = "inf")]
    pub q: Exponent,
    /// Step of the translation grid for the continuous norm
    #[arg(long, default_value_t = 0.25)]
    pub y_step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Replaces the configured alpha list
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Hypergroup files for the finite suite (default: built-in catalog)
    #[arg(long)]
    pub file: Vec<PathBuf>,
    /// Start from the reduced-size profile
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Points `start:stop:step` (inclusive, rounded to whole steps) or `a,b,c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

const MAX_GRID: usize = 10_000_000;

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{t}' in grid '{s}'"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let points = match parts.as_slice() {
            [a, b, step] => {
                let (a, b, step) = (num(a)?, num(b)?, num(step)?);
                if !(step > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
                    return Err(format!("grid '{s}' needs start <= stop and step > 0"));
                }
                let n = ((b - a) / step + 1e-9).floor() as usize + 1;
                if n > MAX_GRID {
                    return Err(format!("grid '{s}' has more than {MAX_GRID} points"));
                }
                (0..n).map(|i| a + i as f64 * step).collect()
            }
            [list] => list.split(',').map(num).collect::<std::result::Result<Vec<_>, _>>()?,
            _ => return Err(format!("grid '{s}' is neither start:stop:step nor a list")),
        };
        if points.iter().any(|v| !v.is_finite()) {
            return Err(format!("grid '{s}' has non-finite points"));
        }
        Ok(Grid(points))
    }
}

/// Function identifiers: `unit-indicator`, `bump`, `ramp`, `zero`,
/// `indicator:a:b`, `block:n`, `constant:c:hi`, `indicator-hat` (closed
/// form) and `hat:<id>` (numerical transform of `<id>`).
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionId {
    UnitIndicator,
    Bump,
    Ramp,
    Zero,
    Indicator(f64, f64),
    Block(usize),
    Constant(f64, f64),
    IndicatorHat,
    Hat(Box<FunctionId>),
}

impl FromStr for FunctionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| format!("bad number '{t}' in function id '{s}'"))
        };
        if let Some(inner) = s.strip_prefix("hat:") {
            let inner: FunctionId = inner.parse()?;
            if inner.is_dual() {
                return Err(format!("'{s}': cannot transform a dual function"));
            }
            return Ok(FunctionId::Hat(Box::new(inner)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        Ok(match parts.as_slice() {
            ["unit-indicator"] => FunctionId::UnitIndicator,
            ["bump"] => FunctionId::Bump,
            ["ramp"] => FunctionId::Ramp,
            ["zero"] => FunctionId::Zero,
            ["indicator-hat"] => FunctionId::IndicatorHat,
            ["indicator", a, b] => FunctionId::Indicator(num(a)?, num(b)?),
            ["block", n] => FunctionId::Block(n.parse().map_err(|_| format!("bad block index in '{s}'"))?),
            ["constant", c, hi] => FunctionId::Constant(num(c)?, num(hi)?),
            _ => return Err(format!("unknown function id '{s}'")),
        })
    }
}

/// A resolved function of `x` or of `λ`.
#[derive(Debug, Clone)]
pub enum Resolved {
    Primal(TestFunction),
    Dual(DualFunction),
}

impl Resolved {
    pub fn function(&self) -> &TestFunction {
        match self {
            Resolved::Primal(f) => f,
            Resolved::Dual(g) => g.as_test_function(),
        }
    }
}

impl FunctionId {
    pub fn is_dual(&self) -> bool {
        matches!(self, FunctionId::IndicatorHat | FunctionId::Hat(_))
    }

    pub fn resolve(&self, alpha: &Alpha, config: &RunConfig) -> Result<Resolved> {
        Ok(match self {
            FunctionId::UnitIndicator => Resolved::Primal(TestFunction::unit_indicator()),
            FunctionId::Bump => Resolved::Primal(TestFunction::bump()),
            FunctionId::Ramp => Resolved::Primal(TestFunction::ramp()),
            FunctionId::Zero => Resolved::Primal(TestFunction::zero()),
            FunctionId::Indicator(a, b) => Resolved::Primal(TestFunction::indicator(*a, *b)?),
            FunctionId::Block(n) => Resolved::Primal(TestFunction::block_indicator(*n)?),
            FunctionId::Constant(c, hi) => Resolved::Primal(TestFunction::constant(*c, *hi)?),
            FunctionId::IndicatorHat => Resolved::Dual(indicator_hat(alpha)),
            FunctionId::Hat(inner) => match inner.resolve(alpha, config)? {
                Resolved::Primal(f) => Resolved::Dual(fourier_transform(alpha, &f, &config.quad)?),
                Resolved::Dual(_) => unreachable!("rejected when parsing"),
            },
        })
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence { .. }
        | Error::NonFinite { .. }
        | Error::TailDominates { .. }
        | Error::Overflow { .. } => EXIT_NON_CONVERGENCE,
        Error::InvalidHypergroup(_) | Error::DegenerateTable { .. } => EXIT_INVALID_HYPERGROUP,
        Error::Domain { .. } | Error::InvalidArgument(_) | Error::Parse(_) | Error::Io(_) => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Configuration after applying file, environment and flags, in that order.
pub fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Ok(dir) = std::env::var(ENV_OUTPUT_DIR) {
        if !dir.is_empty() {
            config.output_dir = PathBuf::from(dir);
        }
    }
    if let Some(dir) = &cli.output_dir {
        config.output_dir = dir.clone();
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    Ok(config)
}

fn thread_count(cli: &Cli) -> Result<usize> {
    let n = match cli.threads {
        Some(n) => n,
        None => match std::env::var(ENV_THREADS) {
            Ok(v) if !v.is_empty() => v
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{ENV_THREADS}='{v}' is not a thread count")))?,
            _ => 0,
        },
    };
    Ok(n)
}

fn execute(cli: &Cli) -> Result<i32> {
    let config = effective_config(cli)?;
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, &config),
        Command::Norm(args) => cmd_norm(args, &config),
        Command::Verify(args) => cmd_verify(args, cli, config),
        Command::LoadHypergroup { path } => cmd_load_hypergroup(path),
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never observe a partial document.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| Error::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

/// A table of points and values.
#[derive(Debug, Clone, Serialize)]
pub struct GridDocument {
    pub subject: String,
    pub alpha: f64,
    pub parameters: std::collections::BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl GridDocument {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("grid serializes") + "\n",
        }
    }
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn require<T: Clone>(v: &Option<T>, flag: &str, subject: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for {subject}")))
}

fn cmd_eval(args: &EvalArgs, config: &RunConfig) -> Result<i32> {
    let alpha = Alpha::new(args.alpha)?;
    let spec = &config.quad;
    let mut params = std::collections::BTreeMap::new();
    let (name, columns, rows) = match args.subject {
        EvalSubject::Kernel => {
            let x = require(&args.x, "x", "kernel")?;
            let y = require(&args.y, "y", "kernel")?;
            let z = require(&args.z, "z", "kernel")?;
            let mut rows = Vec::new();
            for &xv in &x.0 {
                for &zv in &z.0 {
                    rows.push(vec![xv, y, zv, kernel(&alpha, xv, y, zv)?]);
                }
            }
            ("kernel", vec!["x", "y", "z", "value"], rows)
        }
        EvalSubject::Translate => {
            let y = require(&args.y, "y", "translate")?;
            let x = require(&args.x, "x", "translate")?;
            let f = match args.function.resolve(&alpha, config)? {
                Resolved::Primal(f) => f,
                Resolved::Dual(_) => return Err(Error::InvalidArgument("translate needs a function of x".into())),
            };
            params.insert("f".to_string(), f.label().to_string());
            params.insert("y".to_string(), y.to_string());
            let t = translate(&alpha, y, &f, spec)?;
            let rows =
                x.0.iter()
                    .map(|&xv| Ok(vec![xv, t.eval(xv)?]))
                    .collect::<Result<Vec<_>>>()?;
            ("translate", vec!["x", "value"], rows)
        }
        EvalSubject::Fourier => {
            let lambda = require(&args.lambda, "lambda", "fourier")?;
            let hat = match args.function.resolve(&alpha, config)? {
                Resolved::Primal(f) => {
                    params.insert("f".to_string(), f.label().to_string());
                    fourier_transform(&alpha, &f, spec)?
                }
                Resolved::Dual(_) => return Err(Error::InvalidArgument("fourier needs a function of x".into())),
            };
            let rows = lambda
                .0
                .iter()
                .map(|&l| Ok(vec![l, hat.eval(l)?]))
                .collect::<Result<Vec<_>>>()?;
            ("fourier", vec!["lambda", "value"], rows)
        }
        EvalSubject::IndicatorHat => {
            let lambda = require(&args.lambda, "lambda", "indicator-hat")?;
            let hat = indicator_hat(&alpha);
            let rows = lambda
                .0
                .iter()
                .map(|&l| Ok(vec![l, hat.eval(l)?]))
                .collect::<Result<Vec<_>>>()?;
            ("indicator-hat", vec!["lambda", "value"], rows)
        }
    };
    let doc = GridDocument {
        subject: name.to_string(),
        alpha: alpha.value(),
        parameters: params,
        columns: columns.into_iter().map(String::from).collect(),
        rows,
    };
    let path = args.out.clone().unwrap_or_else(|| {
        config.output_dir.join(format!(
            "eval_{name}_alpha{}.{}",
            alpha.value(),
            extension(config.format)
        ))
    });
    write_atomic(&path, doc.render(config.format).as_bytes())?;
    println!("{} rows -> {}", doc.rows.len(), path.display());
    Ok(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormRecord {
    pub norm: String,
    pub alpha: f64,
    pub function: String,
    pub p: Exponent,
    pub q: Option<Exponent>,
    pub value: f64,
    pub tail_estimate: f64,
    pub diverges: bool,
    pub fitted_slope: Option<f64>,
    pub blocks: Vec<f64>,
}

fn cmd_norm(args: &NormArgs, config: &RunConfig) -> Result<i32> {
    let alpha = Alpha::new(args.alpha)?;
    let spec = &config.quad;
    let resolved = args.function.resolve(&alpha, config)?;
    let f = resolved.function();
    let record = match args.norm {
        NormKind::Discrete => {
            let tail = match resolved {
                Resolved::Primal(_) if f.has_compact_support() => TailPolicy::compact(),
                _ => config.tail,
            };
            let est = discrete_norm(&alpha, f, ExponentPair::new(args.p, args.q)?, &tail, spec)?;
            NormRecord {
                norm: "discrete".into(),
                alpha: alpha.value(),
                function: f.label().into(),
                p: args.p,
                q: Some(args.q),
                value: est.value,
                tail_estimate: est.tail_estimate,
                diverges: est.diverges,
                fitted_slope: est.fitted_slope,
                blocks: est.blocks,
            }
        }
        NormKind::Continuous => {
            let p = match args.p {
                Exponent::Finite(p) => p,
                Exponent::Infinite => return Err(Error::InvalidArgument("continuous norm needs finite p".into())),
            };
            let grid = default_y_grid(f, args.y_step)?;
            let value = continuous_norm_p_inf(&alpha, f, p, &grid, spec)?;
            NormRecord {
                norm: "continuous".into(),
                alpha: alpha.value(),
                function: f.label().into(),
                p: args.p,
                q: Some(Exponent::Infinite),
                value,
                tail_estimate: 0.0,
                diverges: false,
                fitted_slope: None,
                blocks: Vec::new(),
            }
        }
        NormKind::Lp => NormRecord {
            norm: "lp".into(),
            alpha: alpha.value(),
            function: f.label().into(),
            p: args.p,
            q: None,
            value: lp_norm(&alpha, f, args.p, spec)?,
            tail_estimate: 0.0,
            diverges: false,
            fitted_slope: None,
            blocks: Vec::new(),
        },
    };
    println!("value = {}", record.value);
    println!("tail_estimate = {}", record.tail_estimate);
    if record.diverges {
        println!("diverges = true (value is the partial sum)");
    }
    let body = match config.format {
        OutputFormat::Json => serde_json::to_string_pretty(&record).expect("record serializes") + "\n",
        OutputFormat::Csv => {
            let mut s = String::from("n,b_n\n");
            for (i, b) in record.blocks.iter().enumerate() {
                let _ = writeln!(s, "{},{:?}", i + 1, b);
            }
            s
        }
    };
    let path = args.out.clone().unwrap_or_else(|| {
        config.output_dir.join(format!(
            "norm_{}_alpha{}.{}",
            record.norm,
            alpha.value(),
            extension(config.format)
        ))
    });
    write_atomic(&path, body.as_bytes())?;
    Ok(if record.diverges { EXIT_DIVERGENCE } else { 0 })
}

/// Writes a report as pretty JSON to `dir/<stem>.json`.
pub fn write_report(dir: &Path, stem: &str, report: &VerificationReport) -> Result<PathBuf> {
    let path = dir.join(format!("{stem}.json"));
    let body = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    write_atomic(&path, body.as_bytes())?;
    Ok(path)
}

fn cmd_verify(args: &VerifyArgs, cli: &Cli, file_config: RunConfig) -> Result<i32> {
    let mut config = if args.quick {
        RunConfig {
            output_dir: file_config.output_dir.clone(),
            format: file_config.format,
            ..RunConfig::quick()
        }
    } else {
        file_config
    };
    if !args.alpha.is_empty() {
        config.alpha_list = args.alpha.clone();
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.validate()?;
    let hypergroups = if args.file.is_empty() {
        catalog()
    } else {
        args.file
            .iter()
            .map(FiniteHypergroup::load)
            .collect::<Result<Vec<_>>>()?
    };
    let work = jobs(&config, args.suite);
    let threads = thread_count(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let outcomes: Vec<(String, Result<VerificationReport>)> = pool.install(|| {
        work.par_iter()
            .map(|job| {
                let stem = job.file_stem();
                let report = run_job(job, &config, &hypergroups).and_then(|r| {
                    write_report(&config.output_dir, &stem, &r)?;
                    Ok(r)
                });
                (stem, report)
            })
            .collect()
    });

    let mut all_passed = true;
    let mut first_error = None;
    println!("{:<34} {:>8} {:>6} {:>10}", "report", "alpha", "passed", "seconds");
    for (stem, outcome) in &outcomes {
        match outcome {
            Ok(r) => {
                all_passed &= r.passed;
                let alpha = r.alpha.map_or_else(|| "-".to_string(), |a| a.to_string());
                println!(
                    "{stem:<34} {alpha:>8} {:>6} {:>10.2}",
                    if r.passed { "yes" } else { "NO" },
                    r.runtime_seconds
                );
                for d in r.failures().take(3) {
                    println!(
                        "    failed: {} (lhs {}, rhs {}, margin {})",
                        d.input, d.lhs, d.rhs, d.margin
                    );
                }
            }
            Err(e) => {
                println!("{stem:<34} {:>8} {:>6} {:>10}", "", "ERROR", "");
                eprintln!("error in {stem}: {e}");
                first_error.get_or_insert(exit_code(e));
            }
        }
    }
    println!("reports in {}", config.output_dir.display());
    if let Some(code) = first_error {
        return Ok(code);
    }
    Ok(if all_passed { 0 } else { EXIT_FAILED_CHECK })
}

fn cmd_load_hypergroup(path: &Path) -> Result<i32> {
    let h = FiniteHypergroup::load(path)?;
    let weights = h.haar_weights()?;
    let text: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    println!("{h}");
    println!("haar weights: {}", text.join(" "));
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("0:50:0.1".parse::<Grid>().unwrap().0.len(), 501);
        assert_eq!("1".parse::<Grid>().unwrap().0, vec![1.0]);
        assert_eq!("1,2.5".parse::<Grid>().unwrap().0, vec![1.0, 2.5]);
        assert!("2:1:0.1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("a".parse::<Grid>().is_err());
    }

    #[test]
    fn function_ids() {
        assert_eq!(
            "indicator:2:3".parse::<FunctionId>().unwrap(),
            FunctionId::Indicator(2.0, 3.0)
        );
        assert_eq!(
            "hat:bump".parse::<FunctionId>().unwrap(),
            FunctionId::Hat(Box::new(FunctionId::Bump))
        );
        assert!("hat:indicator-hat".parse::<FunctionId>().is_err());
        assert!("wave".parse::<FunctionId>().is_err());
    }

    #[test]
    fn csv_layout() {
        let doc = GridDocument {
            subject: "s".into(),
            alpha: 0.5,
            parameters: Default::default(),
            columns: vec!["x".into(), "value".into()],
            rows: vec![vec![0.5, 1.25e-20]],
        };
        assert_eq!(doc.to_csv(), "x,value\n0.5,1.25e-20\n");
    }
}
