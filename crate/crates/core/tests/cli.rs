use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_bkh");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/hypergroups")
        .join(name)
}

fn bkh(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("BKH_OUTPUT_DIR")
        .env_remove("BKH_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn indicator_hat_grid_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = bkh(
        dir.path(),
        &[
            "eval",
            "--subject",
            "indicator-hat",
            "--alpha",
            "0.5",
            "--lambda",
            "0:50:0.1",
            "--format",
            "csv",
            "--out",
            "g.csv",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("g.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,value"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 501);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    for (l, v) in rows {
        let want = if l == 0.0 {
            1.0 / 3.0
        } else {
            (l.sin() - l * l.cos()) / l.powi(3)
        };
        // Cancellation in the closed form itself near 0.
        let tol = if l < 1.0 { 1e-12 } else { 1e-14 };
        assert!((v - want).abs() < tol, "lambda={l}: {v} vs {want}");
    }
}

#[test]
fn kernel_and_translate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = bkh(
        dir.path(),
        &[
            "eval",
            "--subject",
            "kernel",
            "--alpha",
            "0.5",
            "--x",
            "1",
            "--y",
            "1",
            "--z",
            "1",
            "--out",
            "k.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(&dir.path().join("k.json"));
    assert_eq!(doc["columns"], serde_json::json!(["x", "y", "z", "value"]));
    assert!((doc["rows"][0][3].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let out = bkh(
        dir.path(),
        &[
            "eval",
            "--subject",
            "translate",
            "--alpha",
            "0.8",
            "--y",
            "0",
            "--f",
            "unit-indicator",
            "--x",
            "0.5",
            "--out",
            "t.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&dir.path().join("t.json"))["rows"][0][1].as_f64(), Some(1.0));
}

#[test]
fn eval_writes_into_output_dir_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["eval", "--subject", "indicator-hat", "--alpha", "1", "--lambda", "1,2"])
        .current_dir(dir.path())
        .env("BKH_OUTPUT_DIR", "from-env")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.path().join("from-env/eval_indicator-hat_alpha1.json").exists());
    let out = Command::new(BIN)
        .args([
            "eval",
            "--subject",
            "indicator-hat",
            "--alpha",
            "1",
            "--lambda",
            "1",
            "--output-dir",
            "flag",
        ])
        .current_dir(dir.path())
        .env("BKH_OUTPUT_DIR", "from-env")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("flag/eval_indicator-hat_alpha1.json").exists());
}

#[test]
fn norm_examples_and_divergence_exit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bkh(
        d,
        &[
            "norm",
            "--norm",
            "discrete",
            "--alpha",
            "0.5",
            "--f",
            "unit-indicator",
            "--p",
            "1",
            "--q",
            "1",
            "--out",
            "n.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rec = json(&d.join("n.json"));
    assert!((rec["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(rec["blocks"].as_array().unwrap().len(), 1);
    assert!(stdout(&out).contains("tail_estimate"));

    let out = bkh(
        d,
        &[
            "norm",
            "--norm",
            "lp",
            "--alpha",
            "0.5",
            "--f",
            "unit-indicator",
            "--p",
            "2",
            "--out",
            "l.json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!((json(&d.join("l.json"))["value"].as_f64().unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);

    let out = bkh(
        d,
        &[
            "norm",
            "--norm",
            "discrete",
            "--alpha",
            "0.5",
            "--f",
            "indicator-hat",
            "--p",
            "inf",
            "--q",
            "1.45",
            "--out",
            "h.json",
        ],
    );
    assert_eq!(code(&out), 4, "{}", stdout(&out));
    let rec = json(&d.join("h.json"));
    assert_eq!(rec["diverges"], Value::Bool(true));
    assert_eq!(rec["blocks"].as_array().unwrap().len(), 400);
    assert!(rec["value"].as_f64().unwrap().is_finite());

    let out = bkh(
        d,
        &[
            "norm",
            "--norm",
            "discrete",
            "--alpha",
            "0.5",
            "--f",
            "indicator-hat",
            "--p",
            "inf",
            "--q",
            "2",
            "--out",
            "h2.json",
        ],
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["eval", "--subject", "bogus", "--alpha", "1"],
        vec![
            "eval",
            "--subject",
            "kernel",
            "--alpha",
            "0.4",
            "--x",
            "1",
            "--y",
            "1",
            "--z",
            "1",
        ],
        vec!["eval", "--subject", "kernel", "--alpha", "0.5", "--x", "1", "--y", "1"],
        vec![
            "eval",
            "--subject",
            "indicator-hat",
            "--alpha",
            "1",
            "--lambda",
            "5:1:0.1",
        ],
        vec!["norm", "--norm", "lp", "--alpha", "1", "--p", "0.5"],
        vec!["norm", "--norm", "continuous", "--alpha", "1", "--p", "inf"],
        vec!["verify", "--suite", "gn", "--alpha", "0.3"],
        vec!["--config", "missing.toml", "verify", "--suite", "gn"],
        vec!["frobnicate"],
    ] {
        let out = bkh(d, &args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
    let out = Command::new(BIN)
        .args(["verify", "--suite", "finite"])
        .current_dir(d)
        .env("BKH_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn non_convergence_exit_3_names_the_integral() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(
        d.join("tight.toml"),
        "[quad]\nabs_tol = 1e-15\nrel_tol = 1e-15\nmax_subdivisions = 1\n",
    )
    .unwrap();
    let out = bkh(
        d,
        &[
            "--config",
            "tight.toml",
            "eval",
            "--subject",
            "fourier",
            "--alpha",
            "0.75",
            "--f",
            "ramp",
            "--lambda",
            "3",
        ],
    );
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("Fourier transform of ramp"), "{}", stderr(&out));
}

#[test]
fn hypergroup_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bkh(d, &["load-hypergroup", data("z2.hyp").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("haar weights: 1 1"));
    let out = bkh(d, &["load-hypergroup", data("two_point_a50.hyp").to_str().unwrap()]);
    assert!(stdout(&out).contains("haar weights: 1 2"));

    fs::write(
        d.join("bad.hyp"),
        "size = 2\ninvolution = [0, 1]\ntensor = [1, 0, 0, 1, 0, 1, 0.4, 0.5]\n",
    )
    .unwrap();
    let out = bkh(d, &["load-hypergroup", "bad.hyp"]);
    assert_eq!(code(&out), 5);
    assert!(stderr(&out).contains("row (1,1) sums to 0.9"), "{}", stderr(&out));
    let out = bkh(d, &["verify", "--suite", "finite", "--file", "bad.hyp"]);
    assert_eq!(code(&out), 5);

    let out = bkh(
        d,
        &[
            "verify",
            "--suite",
            "finite",
            "--file",
            data("z2.hyp").to_str().unwrap(),
            "--output-dir",
            "r",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report = json(&d.join("r/finite.json"));
    assert_eq!(report["passed"], Value::Bool(true));
    for detail in report["details"].as_array().unwrap() {
        assert!(detail["lhs"].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn failed_check_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // Plancherel truncated at λ = 20 misses about 1/(20π) for the indicator.
    fs::write(
        d.join("cut.toml"),
        "alpha_list = [0.5]\nlambda_cut = 20.0\n[tail]\nn_max = 60\nfit_window = 40\nmode = \"power-law-tail\"\n[sizing]\ncatalog_limit = 1\nenvelope_lambda_max = 200.0\n",
    )
    .unwrap();
    let out = bkh(
        d,
        &[
            "--config",
            "cut.toml",
            "verify",
            "--suite",
            "hausdorff-young",
            "--output-dir",
            "r",
        ],
    );
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("Plancherel"));
    assert_eq!(
        json(&d.join("r/hausdorff-young_alpha0.5.json"))["passed"],
        Value::Bool(false)
    );
}

fn report_bodies(dir: &Path) -> Vec<(String, Value)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let mut v = json(&p);
            v["runtime_seconds"] = Value::from(0.0);
            (p.file_name().unwrap().to_string_lossy().into_owned(), v)
        })
        .collect()
}

#[test]
fn verify_all_is_deterministic_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for run in ["a", "b"] {
        let out = bkh(d, &["verify", "--quick", "--suite", "all", "--output-dir", run]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
    let (a, b) = (report_bodies(&d.join("a")), report_bodies(&d.join("b")));
    assert_eq!(a.len(), 13);
    for ((na, va), (nb, vb)) in a.iter().zip(&b) {
        assert_eq!(na, nb);
        assert_eq!(
            serde_json::to_string(va).unwrap(),
            serde_json::to_string(vb).unwrap(),
            "{na} differs between runs"
        );
    }

    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema = json(&schema_path);
    let validator = jsonschema::validator_for(&schema).unwrap();
    for (name, _) in &a {
        let raw = json(&d.join("a").join(name));
        let errors: Vec<String> = validator.iter_errors(&raw).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
        assert_eq!(raw["seed"], Value::from(0x5EEDu64));
        assert_eq!(raw["config_digest"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn threads_do_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bkh(
        d,
        &[
            "--threads",
            "1",
            "verify",
            "--quick",
            "--suite",
            "gn",
            "--output-dir",
            "one",
        ],
    );
    assert_eq!(code(&out), 0);
    let out = bkh(
        d,
        &[
            "--threads",
            "3",
            "verify",
            "--quick",
            "--suite",
            "gn",
            "--output-dir",
            "three",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(report_bodies(&d.join("one")), report_bodies(&d.join("three")));
}
