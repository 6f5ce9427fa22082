use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bettilab::algebra::parse_ring_specs;
use serde_json::Value;
use sha2::{Digest, Sha256};

fn bettilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bettilab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = bettilab(&all);
    (serde_json::from_slice(&o.stdout).expect("json report"), o.status.code().unwrap())
}

fn verdicts(report: &Value) -> Vec<(String, String)> {
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["id"].as_str().unwrap().to_string(), r["verdict"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn tate_series_text() {
    let o = bettilab(&["series", "tate", "--dim", "0", "--codim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("series: 1 / (1 - z)^2"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bettilab(&["series", "tate"]).status.code(), Some(2));
    assert_eq!(bettilab(&["--prime", "91", "series", "tate", "--dim", "1", "--codim", "1"]).status.code(), Some(2));
    let bad = dir.path().join("bad.ring");
    fs::write(&bad, "ring R { vars = x, y; ideal = x^2 + y^3; }").unwrap();
    let o = bettilab(&["hilbert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("y^3"));
    fs::write(&bad, "ring R { prime = 91; vars = x; ideal = x^2; }").unwrap();
    assert_eq!(bettilab(&["hilbert", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bettilab(&["construct", "optimal", "--d", "2", "--c", "3", "--q", "0", "--a", "0"]).status.code(), Some(2));
}

fn construct(dir: &Path, d: &str, c: &str, q: &str, a: &str) -> String {
    let out = dir.join(format!("fam{d}{c}{q}{a}"));
    let o = bettilab(&["construct", "optimal", "--d", d, "--c", c, "--q", q, "--a", a, "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["files"], serde_json::json!(["R.ring", "S.ring"]));
    let text = fs::read_to_string(out.join("R.ring")).unwrap() + &fs::read_to_string(out.join("S.ring")).unwrap();
    assert_eq!(parse_ring_specs(&text).unwrap().len(), 2);
    let both = out.join("both.ring");
    fs::write(&both, text).unwrap();
    both.to_str().unwrap().to_string()
}

#[test]
fn construct_then_compare() {
    let dir = tempfile::tempdir().unwrap();
    let file = construct(dir.path(), "2", "2", "1", "1");
    let (rep, code) = json(&["compare", &file, "--ring", "R", "--module", "S", "--imax", "12"]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&rep), [("golod residue".to_string(), "PASS".to_string())]);
    assert_eq!(rep["rows"][0]["detail"]["gn"], 0);
    assert_eq!(rep["results"]["totals"][12], 13);
    let file = construct(dir.path(), "3", "3", "1", "0");
    let manifest = Path::new(&file).with_file_name("manifest.json");
    let manifest: Value = serde_json::from_str(&fs::read_to_string(manifest).unwrap()).unwrap();
    assert_eq!(manifest["predictedGn"], 1);
}

#[test]
fn residue_field_comparisons() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("a.ring");
    fs::write(&f, "ring A { vars = x, y; ideal = x^2, x*y, y^2; }\nring C { vars = x, y, z; ideal = x^2, y^2, z^2; }\n").unwrap();
    let (rep, code) = json(&["compare", f.to_str().unwrap(), "--ring", "A", "--imax", "8"]);
    assert_eq!(code, 0);
    let rows = verdicts(&rep);
    assert!(rows.contains(&("golod".to_string(), "PASS".to_string())), "{rows:?}");
    let totals: Vec<u64> = rep["results"]["totals"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(totals, (0..=8).map(|i| 1u64 << i).collect::<Vec<_>>());
    let (rep, code) = json(&["compare", f.to_str().unwrap(), "--ring", "C", "--imax", "6"]);
    assert_eq!(code, 0);
    let rows = verdicts(&rep);
    assert!(rows.contains(&("complete intersection".to_string(), "PASS".to_string())), "{rows:?}");
    assert!(rows.contains(&("koszul".to_string(), "PASS".to_string())), "{rows:?}");
}

#[test]
fn resolve_prints_a_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.ring");
    fs::write(&f, "ring R { prime = 101; vars = x, y; ideal = x^2, y^2; }").unwrap();
    let o = bettilab(&["resolve", f.to_str().unwrap(), "--module", "k", "--imax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 1 2 3 4 5"), "{}", stdout(&o));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let args = ["--seed", "3", "verify", "minmult", "--emax", "2", "--trials", "2", "--imax", "4", "--json", "-o"];
        let mut all = args.to_vec();
        all.push(out.to_str().unwrap());
        assert_eq!(bettilab(&all).status.code(), Some(0));
        assert!(dir.path().join(format!("{name}.timings.json")).exists());
        Sha256::digest(fs::read(out).unwrap())
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn gring_grid_passes() {
    let (rep, code) = json(&["verify", "gring", "--cmax", "5", "--dmax", "5", "--emax", "5", "--amax", "6"]);
    assert_eq!(code, 0);
    assert_eq!(rep["summary"]["pass"], 2205);
    assert_eq!(rep["summary"]["fail"], 0);
}

#[test]
fn optimal_grid_point() {
    let (rep, code) = json(&["verify", "optimal", "--d", "3", "--c", "3", "--q", "1", "--a", "0", "--imax", "8"]);
    assert_eq!(code, 0);
    let row = &rep["rows"][0];
    assert_eq!(row["verdict"], "PASS");
    assert_eq!(row["detail"]["gn"], 1);
    assert_eq!(row["detail"]["predictedGn"], 1);
}

#[test]
fn loewy_and_family() {
    let (rep, code) = json(&["verify", "loewy", "--dmax", "2"]);
    assert_eq!(code, 0);
    assert!(rep["summary"]["pass"].as_u64().unwrap() > 0);
    let (rep, code) = json(&["--seed", "1", "--trials", "50", "verify", "family"]);
    assert_eq!(code, 0);
    assert!(rep["rows"][0]["detail"]["passRatio"].as_f64().unwrap() > 0.5);
}

#[test]
fn minmult_includes_the_cube() {
    let (rep, code) = json(&["--seed", "7", "--trials", "1", "--imax", "5", "verify", "minmult", "--emax", "2"]);
    assert_eq!(code, 0);
    let cube = rep["rows"].as_array().unwrap().iter().find(|r| r["id"] == "fixture x^3").unwrap();
    assert_eq!(cube["verdict"], "PASS");
    assert_eq!(cube["detail"]["firstNonlinear"], serde_json::json!({ "i": 2, "j": 3 }));
}

#[test]
fn csv_has_one_line_per_row() {
    let o = bettilab(&["verify", "gring", "--cmax", "1", "--dmax", "1", "--emax", "1", "--amax", "1", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "id,verdict,exact,case,formula,gn,repro");
    assert_eq!(lines.count(), 6);
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bettilab"))
        .env("BETTILAB_THREADS", "2")
        .args(["verify", "loewy", "--dmax", "1"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
