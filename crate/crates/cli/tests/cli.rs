use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use adc_core::io::parse_adc;
use adc_core::orientals::oriental;
use serde_json::Value;

fn adc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adc"))
        .args(args)
        .current_dir(dir)
        .env_remove("ADC_COEFF_CAP")
        .env_remove("ADC_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write_oriental(dir: &Path, n: usize, name: &str) {
    let out = adc(&["oriental", &n.to_string(), "-o", name], dir);
    assert!(out.status.success());
}

#[test]
fn oriental_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 2, "o2.json");
    let text = fs::read_to_string(dir.path().join("o2.json")).unwrap();
    let parsed = parse_adc::<i64>(&text).unwrap();
    assert_eq!(parsed, *oriental::<i64>(2).unwrap().complex);
    let again = adc(&["oriental", "2"], dir.path());
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn validate_passes_on_an_oriental() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 2, "o2.json");
    let out = adc(&["validate", "o2.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn broken_differential_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 2, "o2.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("o2.json")).unwrap()).unwrap();
    v["d"]["0.1.2"] = serde_json::json!([[1, "0.1"], [1, "0.2"], [1, "1.2"]]);
    fs::write(dir.path().join("bad.json"), v.to_string()).unwrap();
    let out = adc(&["validate", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["report"]["violations"][0]["check"], "d∘d=0");
}

#[test]
fn dangling_reference_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 1, "o1.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("o1.json")).unwrap()).unwrap();
    v["d"]["0.1"] = serde_json::json!([[-1, "0"], [1, "7"]]);
    fs::write(dir.path().join("bad.json"), v.to_string()).unwrap();
    let out = adc(&["validate", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("d.0.1[1][1]"), "{err}");
}

#[test]
fn unknown_command_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(adc(&["frobnicate"], dir.path()).status.code(), Some(2));
}

#[test]
fn retraction_writes_its_maps() {
    let dir = tempfile::tempdir().unwrap();
    let out = adc(&["retraction", "3", "-o", "r3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    for f in ["inclusion", "retraction", "homotopy", "verdict"] {
        assert!(dir.path().join("r3").join(format!("{f}.json")).exists(), "{f}");
    }
    let h: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r3/homotopy.json")).unwrap()).unwrap();
    assert_eq!(h["shift"], 1);
    assert_eq!(h["action"]["0.1"], serde_json::json!([[1, "0.1.3"]]));
}

#[test]
fn aw_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = adc(&["aw", "4", "--check"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["checks"]["coassociative"], true);
    assert_eq!(v["result"]["checks"]["counital"], true);
}

#[test]
fn gphi_matches_its_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = adc(&["gphi", "2", "011"], dir.path());
    assert!(out.status.success());
    assert_eq!(
        json(&out)["action"]["0.1"],
        serde_json::json!([[1, "0⊗0.1"], [1, "0.1⊗1"]])
    );
    assert_eq!(adc(&["gphi", "2", "0111"], dir.path()).status.code(), Some(2));
}

#[test]
fn hom_and_cells_on_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 1, "o1.json");
    write_oriental(dir.path(), 2, "o2.json");
    let hom = json(&adc(&["hom", "o1.json", "o2.json"], dir.path()));
    assert_eq!(hom["count"], 7);
    assert_eq!(hom["budget"]["complete"], true);
    let cells = json(&adc(&["cells", "o2.json", "1"], dir.path()));
    assert_eq!(cells["count"], 7);
}

#[test]
fn coeff_cap_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 1, "o1.json");
    let out = Command::new(env!("CARGO_BIN_EXE_adc"))
        .args(["cells", "o1.json", "1"])
        .current_dir(dir.path())
        .env("ADC_COEFF_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(json(&out)["budget"]["coeff_cap"], 5);
}

#[test]
fn jobs_do_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 2, "o2.json");
    let one = adc(&["nerve", "o2.json", "--trunc", "3", "--no-timing"], dir.path());
    let four = adc(
        &["nerve", "o2.json", "--trunc", "3", "--no-timing", "--jobs", "4"],
        dir.path(),
    );
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = adc(
        &["acceptance", "--only", "7", "--only", "10", "--no-timing"],
        dir.path(),
    );
    let b = adc(
        &["acceptance", "--only", "7", "--only", "10", "--no-timing"],
        dir.path(),
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stderr).unwrap().contains("[PASS]"));
}

#[test]
fn sdr_demo_on_a_face() {
    let dir = tempfile::tempdir().unwrap();
    write_oriental(dir.path(), 3, "l.json");
    let c = adc(&["simplex-map", "3", "012", "-o", "c.json"], dir.path());
    assert!(c.status.success());
    let out = adc(
        &["sdr-demo", "2", "2", "--target", "l.json", "--anchor", "c.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out)["result"].clone();
    for k in ["r_section", "homotopy", "strong", "over_base"] {
        assert_eq!(v[k], true, "{k}");
    }
    assert_eq!(v["counts"]["slice"], serde_json::json!([5, 15, 35]));
    let wrong = adc(
        &["sdr-demo", "1", "2", "--target", "l.json", "--anchor", "c.json"],
        dir.path(),
    );
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn simplicial_commands_chain_together() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(adc(&["simplex", "2", "--trunc", "4", "-o", "d2.json"], p)
        .status
        .success());
    let d2: Value = serde_json::from_str(&fs::read_to_string(p.join("d2.json")).unwrap()).unwrap();
    let counts: Vec<usize> = d2["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_array().unwrap().len())
        .collect();
    let id = serde_json::json!({"levels": counts.iter().map(|&c| (0..c).collect::<Vec<_>>()).collect::<Vec<_>>()});
    fs::write(p.join("id.json"), id.to_string()).unwrap();
    let slice = adc(&["slice", "d2.json", "d2.json", "id.json", "0", "0", "-o", "s.json"], p);
    assert_eq!(slice.status.code(), Some(0));
    let s: Value = serde_json::from_str(&fs::read_to_string(p.join("s.json")).unwrap()).unwrap();
    assert_eq!(s["result"]["counts"][0], 3);
    fs::write(p.join("slice_set.json"), s["result"]["set"].to_string()).unwrap();
    let h = json(&adc(&["homology", "slice_set.json", "--reduced"], p));
    assert!(h["groups"]
        .as_array()
        .unwrap()
        .iter()
        .all(|g| g.as_str().unwrap().ends_with("= 0")));
    let comma = adc(
        &[
            "comma", "d2.json", "d2.json", "d2.json", "id.json", "id.json", "--caps", "1", "1",
        ],
        p,
    );
    assert_eq!(comma.status.code(), Some(0));
}
