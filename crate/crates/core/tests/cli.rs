use std::path::{Path, PathBuf};

use serde_json::Value;

use frobenius_equidist::cli::run;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn ok(args: &[&str]) -> Value {
    let mut argv = vec!["frobeq"];
    argv.extend_from_slice(args);
    let (code, out, err) = run(argv);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(err.is_empty());
    serde_json::from_str(&out).unwrap()
}

fn fails(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["frobeq"];
    argv.extend_from_slice(args);
    let (code, out, err) = run(argv);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["exit_code"], code);
    (code, v)
}

const F5: &str = r#"{"p": 5, "model": "elliptic", "coeffs": {"a": -1, "b": 0}}"#;

#[test]
fn zeta_of_the_f5_curve() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", F5);
    let v = ok(&["zeta", "--curve", c.to_str().unwrap()]);
    assert_eq!(v["command"], "zeta");
    assert_eq!(v["results"]["numerator"], serde_json::json!([1, -2, 5]));
    assert_eq!(v["results"]["jacobian_orders"][0], 8);
    assert_eq!(v["inputs"]["curve"]["coeffs"]["a"], -1);
}

#[test]
fn toml_spec_gives_the_same_results() {
    let dir = tempfile::tempdir().unwrap();
    let j = write(dir.path(), "c.json", F5);
    let t = write(dir.path(), "c.toml", "p = 5\nmodel = \"elliptic\"\n\n[coeffs]\na = -1\nb = 0\n");
    let a = ok(&["count", "--curve", j.to_str().unwrap(), "--n", "5"]);
    let b = ok(&["count", "--curve", t.to_str().unwrap(), "--n", "5"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["results"]["counts"], serde_json::json!([8, 32, 104, 640, 3208]));
}

#[test]
fn density_example() {
    let v = ok(&["density", "--g", "1", "--beta", "-0.5", "--gamma", "0.5"]);
    assert!((v["results"]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    let v = ok(&["density", "--g", "3", "--beta", "-0.2", "--gamma", "0.3", "--mc", "20000", "--seed", "5"]);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["results"]["monte_carlo"]["method"], "monte-carlo");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let singular = write(dir.path(), "s.json", r#"{"p":5,"model":"elliptic","coeffs":{"a":0,"b":0}}"#);
    let (code, v) = fails(&["count", "--curve", singular.to_str().unwrap(), "--n", "2"]);
    assert_eq!((code, v["error"].as_str().unwrap()), (2, "SingularCurve"));

    let unknown = write(dir.path(), "u.json", r#"{"p":5,"model":"elliptic","coeffs":{"a":1,"b":1},"extra":0}"#);
    assert_eq!(fails(&["zeta", "--curve", unknown.to_str().unwrap()]).0, 1);
    assert_eq!(fails(&["zeta", "--curve", "/nonexistent/curve.json"]).0, 1);
    assert_eq!(fails(&["zeta"]).0, 1);

    let unsupported = write(dir.path(), "m.json", r#"{"p":5,"model":"quartic","coeffs":{"f":[1]}}"#);
    assert_eq!(fails(&["zeta", "--curve", unsupported.to_str().unwrap()]).0, 1);

    let c = write(dir.path(), "c.json", F5);
    // relation tolerance below what 20-digit angles can resolve
    let (code, v) = fails(&["classify", "--curve", c.to_str().unwrap(), "--digits", "20", "--eps", "1e-15"]);
    assert_eq!((code, v["error"].as_str().unwrap()), (3, "ToleranceBelowPrecision"));
    assert_eq!(fails(&["census", "--p", "17", "--genus", "1"]).0, 4);
    assert_eq!(fails(&["alpha", "--curve", c.to_str().unwrap(), "--N", "2000000"]).0, 4);
    assert_eq!(fails(&["kloosterman", "--p", "7", "--a", "0", "--N", "10"]).0, 2);
}

#[test]
fn csv_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", F5);
    let out = dir.path().join("out");
    let o = out.to_str().unwrap();
    let v = ok(&["alpha", "--curve", c.to_str().unwrap(), "--N", "100", "--out", o]);
    assert!(v["results"].get("alpha").is_none());
    let alpha = std::fs::read_to_string(out.join("alpha.csv")).unwrap();
    let lines: Vec<&str> = alpha.lines().collect();
    assert_eq!(lines[0], "n,alpha");
    assert_eq!(lines.len(), 101);
    let a1: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((a1 + 1.0 / 5f64.sqrt()).abs() < 1e-15);

    ok(&["empirical", "--curve", c.to_str().unwrap(), "--N", "1000", "--out", o]);
    let hist = std::fs::read_to_string(out.join("histogram.csv")).unwrap();
    assert_eq!(hist.lines().count(), 65);
    let total: usize = hist.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 1000);

    ok(&["discrepancy", "--curve", c.to_str().unwrap(), "--N", "50", "--out", o]);
    let kr = std::fs::read_to_string(out.join("kronecker.csv")).unwrap();
    assert_eq!(kr.lines().next(), Some("n,x1"));
    assert_eq!(kr.lines().count(), 51);
}

#[test]
fn echoed_inputs_reproduce_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"p":7,"model":"hyperelliptic2","coeffs":{"f":[2,1,0,1,0,1]}}"#);
    let first = ok(&["empirical", "--curve", c.to_str().unwrap(), "--N", "3000", "--grid", "11", "--mode", "angle"]);
    let inp = &first["inputs"];
    let echoed = write(dir.path(), "echo.json", &inp["curve"].to_string());
    let n = inp["N"].to_string();
    let grid = inp["grid"].to_string();
    let again = ok(&[
        "empirical", "--curve", echoed.to_str().unwrap(), "--N", &n, "--grid", &grid,
        "--mode", inp["mode"].as_str().unwrap(),
    ]);
    assert_eq!(first["results"], again["results"]);
}

#[test]
fn small_integers_stay_numeric() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"p":7,"model":"hyperelliptic2","coeffs":{"f":[2,1,0,1,0,1]}}"#);
    let v = ok(&["zeta", "--curve", c.to_str().unwrap()]);
    for o in v["results"]["jacobian_orders"].as_array().unwrap() {
        assert!(o.is_u64(), "small orders stay numeric");
    }
    let v = ok(&["count", "--curve", c.to_str().unwrap(), "--n", "1"]);
    assert!(v["results"]["counts"][0].is_u64());
}

#[test]
fn timing_is_opt_in() {
    let v = ok(&["density", "--g", "1", "--beta", "0", "--gamma", "1"]);
    assert!(v["timing"].is_null());
    let v = ok(&["density", "--g", "1", "--beta", "0", "--gamma", "1", "--timing"]);
    assert!(v["timing"]["elapsed_seconds"].is_number());
}

#[test]
fn kloosterman_report() {
    let v = ok(&["kloosterman", "--p", "11", "--a", "1", "--N", "2000", "--grid", "11"]);
    let r = &v["results"];
    assert!((r["k_f64"].as_f64().unwrap() + 2.357872262870508).abs() < 1e-12);
    assert_eq!(r["relation"]["found"], false);
    assert_eq!(r["empirical"]["rows"].as_array().unwrap().len(), 11);
    assert!(r["phi_over_pi"].as_str().unwrap().starts_with("0.6156766657"));
}

#[test]
fn census_report_shape() {
    let v = ok(&["census", "--p", "5", "--genus", "1"]);
    let r = &v["results"];
    assert_eq!(r["surveyed"], 20);
    assert_eq!(r["curves"].as_array().unwrap().len(), 20);
    assert_eq!(v["seed"], 0);
    let ordinary = r["fractions"]["ordinary"].as_f64().unwrap();
    assert!((ordinary - 0.8).abs() < 1e-12);
}
