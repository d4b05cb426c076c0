use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pseudoherm"))
}

fn run(out: &Path, args: &[&str]) -> Output {
    bin().arg("--out").arg(out).args(args).output().expect("spawn pseudoherm")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        _ => panic!("unhandled schema type {ty}"),
    }
}

/// Checks the subset of JSON Schema the shipped schemas use.
fn validate(schema: &Value, doc: &Value, at: &str) {
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        assert!(type_matches(ty, doc), "{at}: expected {ty}, got {doc}");
    }
    if let Some(choices) = schema.get("enum").and_then(Value::as_array) {
        assert!(choices.contains(doc), "{at}: {doc} not in {choices:?}");
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
        assert!(doc.as_f64().unwrap() >= min, "{at}: below {min}");
    }
    if let Some(max) = schema.get("maximum").and_then(Value::as_f64) {
        assert!(doc.as_f64().unwrap() <= max, "{at}: above {max}");
    }
    if let Some(min) = schema.get("exclusiveMinimum").and_then(Value::as_f64) {
        assert!(doc.as_f64().unwrap() > min, "{at}: not above {min}");
    }
    let props = schema.get("properties").and_then(Value::as_object);
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().unwrap();
            assert!(doc.get(key).is_some(), "{at}: missing {key}");
        }
    }
    if let (Some(props), Some(obj)) = (props, doc.as_object()) {
        for (key, value) in obj {
            match props.get(key) {
                Some(sub) => validate(sub, value, &format!("{at}.{key}")),
                None => assert!(
                    schema.get("additionalProperties") != Some(&Value::Bool(false)),
                    "{at}: unexpected key {key}"
                ),
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), doc.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{at}[{i}]"));
        }
    }
}

fn read_json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    v.sort();
    v
}

fn header(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_owned()
}

fn assert_headers_have_units(dir: &Path) {
    for csv in csv_files(dir) {
        for col in header(&csv).split(',') {
            assert!(col.ends_with(']') && col.contains('['), "{}: column {col} has no unit", csv.display());
        }
    }
}

#[test]
fn spacing2x2_outputs_validate() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["spacing2x2", "--family", "F1", "--count", "4000"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let gof = read_json(dir.path().join("spacing2x2_F1_real_gof.json"));
    validate(&schema("gof_report.schema.json"), &gof, "gof");
    let manifest = read_json(dir.path().join("manifest.json"));
    validate(&schema("run_manifest.schema.json"), &manifest, "manifest");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(
        header(&dir.path().join("spacing2x2_F1_real.csv")),
        "bin_center[S],empirical_density[1/S],analytic_density[1/S]"
    );
    assert_headers_have_units(dir.path());
}

#[test]
fn family_without_law_has_no_analytic_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["spacing2x2", "--family", "F4", "--count", "500"]);
    assert_eq!(code(&o), 0);
    let csv = dir.path().join("spacing2x2_F4_real.csv");
    assert_eq!(header(&csv), "bin_center[S],empirical_density[1/S]");
    let body = fs::read_to_string(&csv).unwrap();
    assert!(body.lines().skip(1).all(|l| l.split(',').count() == 2));
    assert!(!dir.path().join("spacing2x2_F4_real_gof.json").exists());
}

#[test]
fn unknown_family_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["spacing2x2", "--family", "F9"]);
    assert_eq!(code(&o), 2);
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn generic_class_needs_two_conjugate_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["spacing-cyclic", "--n", "3", "--count", "10", "--class", "generic"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no generic pairs at N=3"));
}

#[test]
fn unwritable_out_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, b"x").unwrap();
    let o = run(&file.join("sub"), &["rmt-decay", "--t-max", "5"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn failed_write_leaves_no_partial_files() {
    let dir = tempfile::tempdir().unwrap();
    // A directory squatting on the target name makes the final rename fail.
    fs::create_dir(dir.path().join("walk.csv")).unwrap();
    let o = run(dir.path(), &["walk", "--sites", "5", "--w", "0.5", "--p", "0.5", "--t-max", "3"]);
    assert_eq!(code(&o), 3);
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, vec!["walk.csv".to_owned()]);
}

#[test]
fn assert_mode_turns_failed_fit_into_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["spacing2x2", "--family", "F1", "--count", "200", "--ks-threshold", "0.001"];
    assert_eq!(code(&run(dir.path(), &args)), 0);
    let mut strict = vec!["--assert"];
    strict.extend(args);
    assert_eq!(code(&run(dir.path(), &strict)), 4);
}

#[test]
fn replay_reproduces_csvs() {
    let first = tempfile::tempdir().unwrap();
    let o = run(
        first.path(),
        &["--seed", "11", "spacing-cyclic", "--n", "5", "--count", "300", "--class", "all", "--blocks", "gaussian"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_headers_have_units(first.path());
    for gof in ["cc", "rc", "generic"] {
        let report = read_json(first.path().join(format!("spacing_cyclic_{gof}_gof.json")));
        validate(&schema("gof_report.schema.json"), &report, gof);
    }

    let second = tempfile::tempdir().unwrap();
    let manifest = first.path().join("manifest.json");
    let o = run(second.path(), &["replay", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let a = csv_files(first.path());
    let b = csv_files(second.path());
    assert_eq!(a.len(), 3);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap(), "{}", x.display());
    }
}

#[test]
fn walk_reads_flat_config_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("walk.cfg");
    fs::write(&cfg, "# unbiased ring\nsites = 8\nw = 0.5\np = 0.5\nt_max = 4\n").unwrap();
    let out = dir.path().join("out");
    let o = run(&out, &["walk", "--config", cfg.to_str().unwrap(), "--t-max", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(out.join("walk.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t[steps],entropy[k_B],max_abs_deviation[probability]");
    let rows: Vec<Vec<f64>> =
        lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0][1], 0.0);
    assert!(rows.windows(2).all(|w| w[1][1] >= w[0][1] - 1e-12));
    let manifest = read_json(out.join("manifest.json"));
    validate(&schema("run_manifest.schema.json"), &manifest, "manifest");
    assert_eq!(manifest["params"]["sites"], 8);
}

#[test]
fn walk_rejects_bad_row_and_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["walk", "--row", "0.5,0.6,0.1"]);
    assert_eq!(code(&o), 2);
    assert!(!String::from_utf8_lossy(&o.stderr).trim().is_empty());

    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "sites = 4\nspeed = 3\n").unwrap();
    let o = run(dir.path(), &["walk", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn rmt_decay_is_fast_and_converging() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let o = run(dir.path(), &["rmt-decay", "--t-max", "200"]);
    let elapsed = start.elapsed();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    assert_headers_have_units(dir.path());
    let text = fs::read_to_string(dir.path().join("rmt_decay.csv")).unwrap();
    let pct: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(pct.len(), 201);
    assert!(pct.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn rmt_decay_extra_curves_go_to_separate_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["rmt-decay", "--t-max", "20", "--n", "16", "--realizations", "50", "--sizes", "8,32"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let files = csv_files(dir.path());
    assert_eq!(files.len(), 3);
    for csv in &files {
        let cols = header(csv).split(',').count();
        assert!((2..=5).contains(&cols), "{}: {cols} columns", csv.display());
    }
    assert_headers_have_units(dir.path());
    let sizes = fs::read_to_string(dir.path().join("rmt_decay_sizes.csv")).unwrap();
    assert_eq!(sizes.lines().count(), 1 + 21 * 2);
}
