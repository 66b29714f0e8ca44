use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn m12(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_m12"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("M12_CACHE_DIR", dir),
        None => cmd.env_remove("M12_CACHE_DIR"),
    };
    cmd.output().expect("run m12")
}

fn json_ok(args: &[&str]) -> Value {
    let out = m12(args, None);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn schema_check(report: &Value) {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/field_report.schema.json"
    ))
    .unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(report)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn analyze_c2_report() {
    let r = json_ok(&["analyze", "C2", "125/4"]);
    schema_check(&r);
    assert_eq!(r["disc"]["2"], 12);
    assert_eq!(r["disc"]["3"], 24);
    assert_eq!(r["disc"]["11"], 22);
    assert!((r["rd"].as_f64().unwrap() - 38.2).abs() < 0.1);
}

#[test]
fn analyze_drop_point() {
    let r = json_ok(&["analyze", "B", "-5/2", "--scan", "2000"]);
    schema_check(&r);
    assert_eq!(r["verdicts"]["drop"]["verdict"], "drop_suspected");
    let missing: Vec<&str> = r["verdicts"]["drop"]["missing"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(
        missing.contains(&"8 4") && missing.contains(&"8 2 1^2"),
        "{missing:?}"
    );
}

#[test]
fn cusp_is_an_input_error() {
    let out = m12(&["analyze", "D2", "0/1"], None);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["class"], "input");
}

#[test]
fn unknown_cover_rejected_at_parse() {
    let out = m12(&["verify", "Z"], None);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("unknown cover"));
}

#[test]
fn lift_needs_slow_flag() {
    let out = m12(&["analyze", "D2", "7", "--lift"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_contains_named_points() {
    let out = m12(&["search", "3,2,11", "--S", "2,3,11", "--H", "1e6"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let taus: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert!(taus.contains(&"-11/64"));
    assert!(taus.contains(&"704/729"));
    for line in text.lines().skip(1) {
        let p = m12_core::specsets::SpecPoint::from_line(line).unwrap();
        assert!(
            m12_core::specsets::validate_membership(&p.tau, p.triple, &p.s)
                .unwrap()
                .member
        );
    }
}

#[test]
fn search_cache_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "4,2,10", "--S", "2,3,5", "--H", "1e5"];
    let first = m12(&args, Some(dir.path()));
    let second = m12(&args, Some(dir.path()));
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);

    // a damaged file is rebuilt, with a warning
    let path = files.into_iter().next().unwrap().unwrap().path();
    std::fs::write(
        &path,
        "# m12 search triple=4,2,10 S=2,3,5 H=100000\n1/2 garbage\n",
    )
    .unwrap();
    let third = m12(&args, Some(dir.path()));
    assert!(third.status.success());
    assert_eq!(third.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("corrupt"));
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let a = m12(
        &[
            "--threads",
            "1",
            "search",
            "3,2,12",
            "--S",
            "2,3,11",
            "--H",
            "1e6",
        ],
        None,
    );
    let b = m12(
        &[
            "--threads",
            "3",
            "search",
            "3,2,12",
            "--S",
            "2,3,11",
            "--H",
            "1e6",
        ],
        None,
    );
    assert_eq!(a.stdout, b.stdout);
    let a = m12(
        &["--threads", "1", "stats", "B", "5", "--first", "600"],
        None,
    );
    let b = m12(
        &["--threads", "4", "stats", "B", "5", "--first", "600"],
        None,
    );
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_d() {
    let r = json_ok(&["verify", "D"]);
    assert_eq!(r["order"], "95040");
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn small_commands() {
    assert_eq!(json_ok(&["hilbert", "-1", "-1", "inf"])["symbol"], -1);
    assert_eq!(
        json_ok(&["obstruct", "E"])["rule"],
        "obstructed_at_infinity"
    );
    assert_eq!(
        json_ok(&["obstruct", "B", "--tau", "5"])["local"]["verdict"],
        "liftable"
    );
    let c = json_ok(&["classify", "7", "--p", "7", "--cover", "D"]);
    assert_eq!(c["arm"]["location"], "arm0");
    assert_eq!(c["predicted_disc_valuation"], 8);
    assert_eq!(
        json_ok(&["validate", "7", "--triple", "3,2,11", "--S", "2,3,11"])["member"],
        false
    );
    assert_eq!(json_ok(&["covers"]).as_array().unwrap().len(), 10);
    assert_eq!(
        json_ok(&["specialize", "E", "319/54"])
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn report_csv() {
    let out = m12(&["report", "B", "5", "--csv"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "source,degree,disc,rd\nB(5),12,2^18 3^10 5^14,46.2\n");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = m12(
        &["--out", path.to_str().unwrap(), "hilbert", "2", "3", "3"],
        None,
    );
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["symbol"], -1);
}
