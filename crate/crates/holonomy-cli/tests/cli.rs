use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_holonomy"))
}

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn c(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn matrix(v: &Value) -> Vec<Vec<(f64, f64)>> {
    v.as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(c).collect()).collect()
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn identity_dev(m: &[Vec<(f64, f64)>]) -> f64 {
    let mut d = 0.0f64;
    for (i, row) in m.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            d = d.max(dist(z, (if i == j { 1.0 } else { 0.0 }, 0.0)));
        }
    }
    d
}

#[test]
fn kashaev_n2_corner_is_i() {
    let o = run(&["rmat", "--kashaev", "--N", "2"]);
    assert!(o.status.success());
    let v = json(&o);
    let m = matrix(&v["entries"]);
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|r| r.len() == 4));
    assert!(dist(m[0][0], (0.0, 1.0)) < 1e-12);
}

#[test]
fn colored_jones_is_available() {
    let o = run(&["rmat", "--colored-jones", "--N", "3"]);
    assert!(o.status.success());
    assert_eq!(matrix(&json(&o)["entries"]).len(), 9);
}

#[test]
fn order_below_two_is_malformed() {
    let o = run(&["selftest", "--N", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"]["message"].as_str().unwrap().contains("N must be ≥ 2"));
}

#[test]
fn unattainable_tolerance_fails() {
    let o = run(&["selftest", "--N", "2", "--tol-rel", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["passed"], Value::Bool(false));
}

#[test]
fn nonpositive_tolerance_is_malformed() {
    let o = run(&["selftest", "--N", "2", "--tol-rel", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes_and_reports_each_identity() {
    let o = run(&["selftest", "--N", "2,3,5", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let crit = v["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 12);
    for c in crit {
        let checks = c["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        for k in checks {
            assert!(k["max_dev"].as_f64().unwrap() <= k["tol"].as_f64().unwrap());
        }
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--N", "3", "--only", "1,3,6", "--seed", "11"]);
    let b = run(&["selftest", "--N", "3", "--only", "1,3,6", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rmat_determinants_agree() {
    let p = input("crossing.json");
    let o = run(&["rmat", "--N", "3", "-i", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json(&o);
    let (dc, dl) = (c(&v["det_closed"]), c(&v["det_lu"]));
    assert!(dist(dc, dl) <= 1e-8 * dl.0.hypot(dl.1));
    assert_eq!(v["pinched"], Value::Bool(false));
    for r in ["N", "W", "S", "E"] {
        assert!(v["zeta"][r]["zeta0"].is_array());
    }
}

#[test]
fn pinched_crossing_needs_flag() {
    let p = input("kashaev_crossing.json");
    let o = run(&["rmat", "--N", "3", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "pinched");
    assert!(v["error"]["message"].as_str().unwrap().contains("zeta0_"));
    let o = run(&["rmat", "--N", "3", "--pinched", "-i", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["pinched"], Value::Bool(true));
}

#[test]
fn inline_json_and_malformed_input() {
    let o = run(&["color", "--json", "{\"width\": 2, \"word\": [3], \"top_colors\": []}"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["color", "--json", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["rmat", "--N", "2", "--json", "{\"sign\": 2, \"segments\": {}, \"regions\": {\"N\":0,\"W\":0,\"S\":0,\"E\":0}}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identity_braid_gives_identity() {
    let p = input("identity.json");
    let o = run(&["braid", "--N", "3", "-i", p.to_str().unwrap()]);
    assert!(o.status.success());
    let m = matrix(&json(&o)["matrix"]);
    assert_eq!(m.len(), 9);
    assert!(identity_dev(&m) < 1e-14);
}

#[test]
fn r2_braid_gives_identity() {
    let p = input("r2.json");
    let o = run(&["braid", "--N", "3", "-i", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(identity_dev(&matrix(&json(&o)["matrix"])) < 1e-10);
}

#[test]
fn kashaev_colored_r3_sides_agree() {
    let get = |f: &str| {
        let p = input(f);
        let o = run(&["braid", "--N", "3", "-i", p.to_str().unwrap()]);
        assert!(o.status.success());
        let v = json(&o);
        assert_eq!(v["pinched_crossings"].as_array().unwrap().len(), 3);
        matrix(&v["matrix"])
    };
    let (a, b) = (get("kashaev_121.json"), get("kashaev_212.json"));
    let scale = a.iter().flatten().fold(0.0f64, |m, z| m.max(z.0.hypot(z.1)));
    let dev = a.iter().flatten().zip(b.iter().flatten()).fold(0.0f64, |m, (x, y)| m.max(dist(*x, *y)));
    assert!(dev <= 1e-10 * scale);
}

#[test]
fn matrix_free_skips_the_matrix() {
    let p = input("kashaev_121.json");
    let v = json(&run(&["braid", "--N", "5", "--matrix-free", "-i", p.to_str().unwrap()]));
    assert!(v.get("matrix").is_none());
    assert_eq!(v["matrix_free"]["dim"], 125);
}

#[test]
fn inadmissible_coloring_names_the_crossing() {
    let text = r#"{"width": 2, "word": [1], "top_colors": [{"a": -3, "b": 1, "m": 1}, {"a": 2, "b": 2, "m": 1}]}"#;
    let o = run(&["braid", "--N", "2", "--json", text]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "inadmissible");
    assert_eq!(v["error"]["crossing"], 0);
}

#[test]
fn color_reports_bottom_and_permutation() {
    let p = input("kashaev_121.json");
    let v = json(&run(&["color", "-i", p.to_str().unwrap()]));
    assert_eq!(v["bottom_strands"], serde_json::json!([2, 1, 0]));
    assert_eq!(v["segments"].as_array().unwrap().len(), 9);
}

#[test]
fn output_round_trips_byte_identically() {
    let p = input("crossing.json");
    let o = run(&["rmat", "--N", "3", "-i", p.to_str().unwrap()]);
    let text = String::from_utf8(o.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn unsupported_format_is_rejected() {
    let o = run(&["rmat", "--kashaev", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}
