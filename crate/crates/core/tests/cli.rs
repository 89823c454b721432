use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coloring-zeta"))
        .args(args)
        .env_remove("COLORING_ZETA_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn coeffs_at(v: &Value, t: u64) -> Vec<(i64, String)> {
    v["series"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["T"] == t)
        .map(|x| (x["exps"].get(0).and_then(Value::as_i64).unwrap_or(0), x["coeff"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn expand_gl_classes_symbolic() {
    let out = run(&["expand", "--setup", "partition", "--variety", "gm", "--form", "second", "--q", "symbolic", "--tmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(coeffs_at(&v, 3), vec![(1, "-1".to_string()), (3, "1".to_string())]);
}

#[test]
fn expand_plain_output() {
    let out = run(&["expand", "--setup", "standard", "--variety", "point", "--form", "first", "--tmax", "3", "--format", "plain"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "(1) + (1)*T + (1)*T^2 + (1)*T^3 + O(T^4)");
    let out = run(&["expand", "--setup", "commuting", "--variety", "gm", "--form", "third", "--q", "2", "--tmax", "3"]);
    let v = json(&out);
    let got: Vec<String> = (0..=3).map(|t| coeffs_at(&v, t)[0].1.clone()).collect();
    assert_eq!(got, ["1", "2", "6", "14"]);
}

#[test]
fn expand_output_round_trips() {
    let out = run(&["expand", "--setup", "centralizer", "--variety", "ga", "--tmax", "3", "--qwindow", "8"]);
    let v = json(&out);
    let text = serde_json::to_string(&v["series"]).unwrap();
    let s = coloring_zeta::series::TruncatedSeries::from_json_str(&text).unwrap();
    assert_eq!(s.t_cap(), 3);
    assert_eq!(serde_json::to_value(s.to_json()).unwrap(), v["series"]);
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "--identity", "euler", "--tmax", "8", "--qwindow", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "equal");

    let out = run(&["verify", "--identity", "conj-gl", "--q", "2", "--nmax", "3"]);
    let v = json(&out);
    assert_eq!(v["status"], "equal");
    let vals: Vec<&str> = v["checks"][0]["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(vals, ["1", "3", "6"]);

    let out = run(&["verify", "--identity", "feit-fine", "--q", "2", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "equal");
}

#[test]
fn verify_all_keeps_catalog_order() {
    let out = run(&["verify", "--identity", "all", "--q", "2", "--nmax", "2", "--tmax", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["identity"].as_str().unwrap()).collect();
    assert_eq!(names, coloring_zeta::verify::CATALOG);
}

#[test]
fn oracle_examples() {
    for (args, want) in [
        (["--count", "unipotent", "--q", "3", "--n", "3"], "729"),
        (["--count", "gl-classes", "--q", "2", "--n", "3"], "6"),
        (["--count", "commuting", "--q", "2", "--n", "1"], "4"),
    ] {
        let mut a = vec!["oracle"];
        a.extend(args);
        let v = json(&run(&a));
        assert_eq!(v["count"], want);
        assert_eq!(v["kind"], args[1]);
    }
    let v = json(&run(&["oracle", "--count", "centralizer", "--q", "3", "--n", "2", "--matrix", "1,0,0,2"]));
    assert_eq!(v["count"], "4");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--identity", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "--setup", "nope", "--variety", "gm"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--count", "commuting", "--q", "3", "--n", "3", "--budget", "100"]).status.code(), Some(3));
    let out = run(&["verify", "--identity", "conj-mn", "--q", "3", "--nmax", "3", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "budget");
    // burnside needs a field size
    let out = run(&["verify", "--identity", "burnside"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("numeric"));
}

#[test]
fn budget_env_is_a_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_coloring-zeta"))
        .args(["oracle", "--count", "gl-classes", "--q", "2", "--n", "3", "--budget", "100000000"])
        .env("COLORING_ZETA_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn runs_are_byte_identical() {
    let args = ["verify", "--identity", "forms-agree", "--setup", "commuting", "--variety", "ga", "--tmax", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["expand", "--setup", "centralizer", "--variety", "gm", "--q", "5", "--tmax", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("coloring-zeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("job.json");
    std::fs::write(
        &cfg,
        r#"{"command": "expand", "setup": "partition", "variety": "gm", "q": "2", "tmax": 3, "format": "plain"}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&["--config", cfg]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "(1) + (1)*T + (3)*T^2 + (6)*T^3 + O(T^4)");
    let out = run(&["--config", cfg, "--q", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "(1) + (2)*T + (8)*T^2 + (24)*T^3 + O(T^4)");

    let dest = dir.join("out.json");
    let out = run(&["--config", cfg, "--format", "json", "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["setup"], "partition");

    std::fs::write(dir.join("bad.json"), r#"{"bogus": 1}"#).unwrap();
    assert_eq!(run(&["--config", dir.join("bad.json").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
