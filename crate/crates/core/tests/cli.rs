mod common;

use std::process::{Command, Output};

use common::model_path;
use jetgeom::model::ModelSpec;
use jetgeom::report::GeometryReport;
use jetgeom::symkernel::parse_expression;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetgeom")).args(args).output().unwrap()
}

fn model(name: &str) -> String {
    model_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_flat_has_zero_sections() {
    let o = run(&["analyze", &model("flat")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = GeometryReport::from_json(&stdout(&o)).unwrap();
    for group in ["connection", "torsion", "curvature", "ricci"] {
        for (name, t) in &r.families[group] {
            assert!(t.components.values().all(|e| e == "0"), "{name}");
        }
    }
    assert!(r.verification.passed);
}

#[test]
fn analyze_sphere_reports_curvature() {
    let o = run(&["analyze", &model("sphere")]);
    assert_eq!(o.status.code(), Some(0));
    let r = GeometryReport::from_json(&stdout(&o)).unwrap();
    let riemann = &r.families["curvature"]["R^l_ijk"];
    assert_eq!(riemann.slots, "^s_s_s_s");
    assert_eq!(riemann.components["1,2,1,2"], "-sin(x1)^2");
    assert_eq!(riemann.components["2,1,2,1"], "-1");
    assert_eq!(r.scalars["R"], "2");
    assert_eq!(r.index_order["R^l_ijk"], "l,i,j,k");
}

#[test]
fn analyze_missing_model_exits_one() {
    let o = run(&["analyze", "does/not/exist.toml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read"), "{}", stderr(&o));
}

#[test]
fn analyze_corrupted_fixture_exits_two() {
    let o = run(&["analyze", &model("corrupted_sphere")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("metrical.g_ij|k"));
}

#[test]
fn report_round_trips_byte_identically_and_reparses() {
    let o = run(&["analyze", &model("mixed")]);
    let text = stdout(&o);
    let r = GeometryReport::from_json(&text).unwrap();
    assert_eq!(r.to_json(), text);
    let spec = ModelSpec::load(model_path("mixed")).unwrap();
    for section in r.families.values() {
        for t in section.values() {
            for e in t.components.values() {
                let back = parse_expression(e, &spec.coords).unwrap().normalize().unwrap();
                assert_eq!(back.to_string(&spec.coords), *e);
            }
        }
    }
}

#[test]
fn analyze_writes_files_and_latex() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let tex = dir.path().join("r.tex");
    let o = run(&["analyze", &model("sphere"), "--out", json.to_str().unwrap(), "--latex", tex.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let tex = std::fs::read_to_string(tex).unwrap();
    assert!(tex.starts_with("\\documentclass"));
    assert!(tex.trim_end().ends_with("\\end{document}"));
    assert!(tex.contains("\\sin"));
    GeometryReport::from_json(&std::fs::read_to_string(json).unwrap()).unwrap();
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", &model("sphere")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", &model("corrupted_sphere")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("cartan.L_equals_Gamma") && l.contains("FAILED")));
    assert!(out.contains("witness"));
    let o = run(&["verify", "does/not/exist.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_echoes_probe_settings() {
    let o = run(&["verify", &model("flat"), "--probes", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let head = stdout(&o).lines().next().unwrap().to_string();
    assert!(head.contains("probes=3") && head.contains("seed=7"), "{head}");
}

#[test]
fn eval_prints_twelve_digits() {
    let o = run(&["eval", &model("sphere"), "--at", "x1=1.5707963268,x2=0,t1=0,v1_1=0,v2_1=0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("g_ij[2,2] = ")).unwrap();
    let v = line.split(" = ").nth(1).unwrap();
    assert_eq!(v.chars().filter(char::is_ascii_digit).count(), 12, "{v}");
    assert!((v.parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn eval_flat_connection_is_zero() {
    let o = run(&["eval", &model("flat"), "--at", "t1=0.3,x1=0.4,x2=0.9,v1_1=1.5,v2_1=-2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for prefix in ["Gamma^i_jk[", "M^(i)_(alpha)beta[", "N^(i)_(alpha)j[", "L^i_jk[", "C^i(gamma)_j(k)[", "G^k_jgamma["] {
        let lines: Vec<_> = out.lines().filter(|l| l.starts_with(prefix)).collect();
        assert!(!lines.is_empty());
        assert!(lines.iter().all(|l| l.ends_with("= 0.00000000000")), "{prefix}");
    }
}

#[test]
fn eval_incomplete_point_exits_one() {
    let o = run(&["eval", &model("sphere"), "--at", "x1=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not assigned"));
}

#[test]
fn eval_domain_error_exits_one() {
    // cot(x1) in Gamma is undefined at x1 = 0
    let o = run(&["eval", &model("sphere"), "--at", "x1=0,x2=0,t1=0,v1_1=0,v2_1=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [vec!["analyze", "MODEL"], vec!["verify", "MODEL", "--seed", "3"]] {
        let a: Vec<String> = args.iter().map(|s| s.replace("MODEL", &model("polar"))).collect();
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let first = run(&a);
        let second = run(&a);
        let mut seq = a.clone();
        seq.extend(["--execution", "seq"]);
        let third = run(&seq);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.stdout, third.stdout);
    }
}
