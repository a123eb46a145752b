use std::process::{Command, Output};

use krall::constructors::{construct_basic, FamilyJson};
use krall::exact::rat;
use krall::measures::NuParams;

fn krall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krall")).args(args).output().expect("binary runs")
}

#[test]
fn generate_small_family() {
    let out = krall(&["generate", "--a", "1", "--b", "1", "--N", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    assert_eq!(v["measure"]["atoms"].as_array().unwrap().len(), 4);
}

#[test]
fn json_round_trips_to_the_library_family() {
    let out = krall(&["generate", "--a", "2", "--b", "1", "--N", "3", "--M", "1/2", "--U", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let back: FamilyJson = serde_json::from_slice(&out.stdout).unwrap();
    let p = NuParams::new(2, 1, 3, vec![rat(1) / rat(2)]).unwrap();
    let fam = construct_basic(&p, &[rat(1)], None).unwrap();
    assert_eq!(back, FamilyJson::from(&fam));
}

#[test]
fn output_is_deterministic() {
    let args = ["generate", "--a", "3", "--b", "2", "--N", "4", "--M", "2,-3", "--format", "csv"];
    assert_eq!(krall(&args).stdout, krall(&args).stdout);
}

#[test]
fn csv_values_are_exact_rationals() {
    let out = krall(&["generate", "--a", "2", "--b", "2", "--N", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["n", "field", "k", "value"]);
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        assert!(rec[3].contains('/'), "{:?}", rec);
        krall::exact::parse_rat(&rec[3]).unwrap();
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn m_equal_one_is_a_config_error() {
    let out = krall(&["generate", "--M", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("\"error\"") && err.contains("M_i != 0, 1"), "{err}");
}

#[test]
fn forbidden_u_pair_is_named() {
    // 1 + (-5) = -a-b-1 for a=2, b=1
    let out = krall(&["generate", "--a", "2", "--b", "1", "--N", "3", "--U", "1,-5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(1/1, -5/1)"), "{err}");
}

#[test]
fn verify_orthogonality_on_defaults() {
    let out = krall(&["verify", "--suite", "orthogonality"]);
    assert_eq!(out.status.code(), Some(0));
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn verify_sizes() {
    let out = krall(&["verify", "--a", "5", "--b", "2", "--N", "6", "--U=-2,0,1,5,6", "--suite", "sizes"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = &v["detail"];
    assert_eq!((d["basic"].as_i64(), d["alt6_structural"].as_i64(), d["sec7"].as_i64()), (Some(11), Some(9), Some(8)));
}

#[test]
fn verify_operator_small() {
    let out = krall(&["verify", "--a", "1", "--b", "1", "--N", "3", "--suite", "operator"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn flip_needs_a_below_b() {
    let out = krall(&["verify", "--a", "2", "--b", "1", "--N", "3", "--suite", "flip"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("krall-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fam.json");
    let out = krall(&["generate", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["representation"], "basic");
    std::fs::remove_dir_all(dir).unwrap();
}
