use std::process::{Command, Output};

fn touchard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_touchard"))
        .args(args)
        .env_remove("TOUCHARD_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bm_emits_exact_rationals() {
    let o = touchard(&["bm", "--max", "6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[1]["numerator"], "5");
    assert_eq!(rows[1]["denominator"], "6");
    assert_eq!(rows[3]["numerator"], "1463");
    assert_eq!(rows[3]["denominator"], "6480");
    let mask: Vec<bool> = rows.iter().map(|r| r["contributes"].as_bool().unwrap()).collect();
    assert_eq!(mask, [true, true, false, true, true, false, true]);
}

#[test]
fn exit_codes() {
    assert_eq!(touchard(&["eval", "--n", "1", "--xi", "1"]).status.code(), Some(2));
    assert_eq!(touchard(&["eval", "--n", "50", "--xi", "-1"]).status.code(), Some(2));
    assert_eq!(touchard(&["bm", "--max", "500"]).status.code(), Some(2));
    assert_eq!(touchard(&["contours", "--xi", "1", "--step", "3"]).status.code(), Some(2));
    assert_eq!(touchard(&["--digits", "4", "bm"]).status.code(), Some(2));
    let o = touchard(&["bm", "--max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_touchard"))
        .args(["table1", "--n", "50", "--m", "0"])
        .env("TOUCHARD_DIGITS", "40")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("50,0,") && row.contains("@40,"), "{row}");
}

#[test]
fn table_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("t{i}.csv"))).collect();
    for p in &paths {
        let o = touchard(&["table2", "--xi", "0.9,1.0,1.2", "--n", "81", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,param,exact,approx,rel_err");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("81,1.0,") && lines[2].ends_with(",5.324e-03"), "{}", lines[2]);
}

#[test]
fn table1_defaults() {
    let o = touchard(&["table1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().any(|l| l.starts_with("121,6,") && l.ends_with("7.616e-06")));
}

#[test]
fn eval_routes_by_regime() {
    let methods = |args: &[&str]| -> Vec<String> {
        let o = touchard(args);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["methods"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["method"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(methods(&["eval", "--n", "100", "--xi", "1"]), ["theorem1", "theorem2"]);
    assert_eq!(methods(&["eval", "--n", "100", "--xi", "1.4"]), ["theorem2", "poincare"]);
    assert_eq!(methods(&["eval", "--n", "50", "--x", "100", "--digits", "40"]), ["theorem2", "poincare"]);
}

#[test]
fn contours_json_and_csv() {
    let o = touchard(&["contours", "--xi", "1", "--step", "0.1", "--digits", "40"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let paths = v.as_array().unwrap();
    assert!(!paths.is_empty());
    for p in paths {
        assert!(p["im_psi_drift"].as_f64().unwrap() < 1e-8);
        assert!(p["points"].as_array().unwrap().len() > 2);
    }
    let o = touchard(&["contours", "--xi", "1.8", "--format", "csv", "--digits", "40"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("path,kind,saddle_re,saddle_im,re,im\n"));
}
