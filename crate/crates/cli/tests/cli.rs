use std::process::{Command, Output};

use chirality_core::catalog::{self, index_at_most_four};
use serde_json::Value;

fn chirality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chirality")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn info_haagerup() {
    let o = chirality(&["info", catalog::HAAGERUP.plus, catalog::HAAGERUP.minus]);
    assert!(o.status.success());
    let v = json(&o);
    let expected = (5.0 + 13f64.sqrt()) / 2.0;
    assert!((num(&v["profile"]["index"]) - expected).abs() < 1e-12);
    assert_eq!(v["profile"]["annular_compressed"], "*10");
}

#[test]
fn info_index_six_base() {
    let n = catalog::INDEX_SIX_BASE;
    let v = json(&chirality(&["info", &format!("{} {}", n.plus, n.minus)]));
    assert!((num(&v["profile"]["index"]) - 6.0).abs() < 1e-12);
    let b = &v["branch"];
    let traces: Vec<f64> = ["tr_P", "tr_Q", "tr_R"].iter().map(|k| num(&b[k])).collect();
    let checks: Vec<f64> = ["tr_P_check", "tr_Q_check", "tr_R_check"].iter().map(|k| num(&b[k])).collect();
    assert_eq!(traces, [1.0, 2.0, 2.0]);
    assert_eq!(checks, [3.0, 1.0, 1.0]);
}

#[test]
fn info_two_d_two_dual() {
    let n = catalog::TWO_D_TWO_DUAL;
    let v = json(&chirality(&["info", n.plus, n.minus]));
    assert_eq!(v["profile"]["annular_compressed"], "*12");
}

#[test]
fn obstruct_index_at_most_four_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ade.txt");
    let mut text = String::from("# Dynkin diagrams of index at most 4\n\n");
    let mut names = Vec::new();
    for g in index_at_most_four() {
        let (p, m) = g.pair.strings();
        text.push_str(&format!("{p} {m}  # {}\n", g.name));
        names.push(g.name);
    }
    std::fs::write(&path, text).unwrap();
    let o = chirality(&["obstruct", "--catalog", path.to_str().unwrap(), "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let verdicts: Vec<&str> = out.lines().map(|l| l.split('\t').nth(2).unwrap()).collect();
    assert_eq!(verdicts.len(), names.len());
    let eliminated: Vec<&str> = names.iter().zip(&verdicts).filter(|(_, v)| **v == "eliminated").map(|(n, _)| n.as_str()).collect();
    assert_eq!(eliminated, ["D5", "D7", "D9", "D11", "E7"]);
}

#[test]
fn obstruct_q3_and_haagerup() {
    let q3 = format!("{} {}", catalog::WEED_Q3.plus, catalog::WEED_Q3.minus);
    let h = format!("{} {}", catalog::HAAGERUP.plus, catalog::HAAGERUP.minus);
    let o = chirality(&["obstruct", &q3, &h]);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["overall"], "eliminated");
    assert_eq!(lines[1]["overall"], "survives");
}

#[test]
fn batch_matches_single_and_is_deterministic() {
    let pairs: Vec<String> = catalog::all_named().iter().map(|n| format!("{} {}", n.plus, n.minus)).collect();
    let mut args = vec!["obstruct"];
    args.extend(pairs.iter().map(String::as_str));
    let batch = stdout(&chirality(&args));
    assert_eq!(batch, stdout(&chirality(&args)));
    for (line, pair) in batch.lines().zip(&pairs).step_by(5) {
        let single = stdout(&chirality(&["obstruct", pair]));
        assert_eq!(single.trim_end(), line);
    }
}

#[test]
fn bad_lines_are_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.txt");
    std::fs::write(&path, format!("bwd1v1x2 nonsense\n{} {}\n", catalog::Z4.plus, catalog::Z4.minus)).unwrap();
    let o = chirality(&["obstruct", "--catalog", path.to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["line"], 1);
    assert!(lines[0]["error"].is_string());
    assert_eq!(lines[1]["overall"], "survives");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(chirality(&["info", "xyz"]).status.code(), Some(2));
    assert_eq!(chirality(&["obstruct", "--catalog", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(chirality(&["--tol", "abc", "info", "gbg1v1"]).status.code(), Some(2));
    assert_eq!(chirality(&["weed", "--builtin", "nope"]).status.code(), Some(2));
}

#[test]
fn weed_certificates_round_trip_and_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("w.json");
    let o = chirality(&["weed", "--builtin", "w", "-o", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["verdict"], "eliminated");
    let ok = chirality(&["weed", "--check", cert.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    // flip the sign of one numerator coefficient
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let c = &mut v["f"]["num"][0][2];
    let flipped = format!("-{}", c.as_str().unwrap());
    *c = Value::String(flipped);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = chirality(&["weed", "--check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], false);
}

#[test]
fn quadruple_weed_reports_the_z4_boundary() {
    let o = chirality(&["weed", "--builtin", "q2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["verdict"], "eliminated");
    assert!(v["certificate"]["boundaryNote"].as_str().unwrap().contains("Z/4"));
}

#[test]
fn inconclusive_weeds_have_their_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("su3.json");
    let n = catalog::SU3_Q1;
    let text = format!(r#"{{"name":"su3","plus":"{}","minus":"{}","equation":"odd_star11","q0":"1","n0":3}}"#, n.plus, n.minus);
    std::fs::write(&spec, text).unwrap();
    let o = chirality(&["weed", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["verdict"], "inconclusive");
}
