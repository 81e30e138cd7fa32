use std::io::Write;
use std::process::{Command, Output, Stdio};

use bier_core::bier::{bier, check_sphere};
use bier_core::fixtures;
use bier_core::io::parse_complex;
use bier_core::iso::are_isomorphic;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bier"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn gamma6_builds_hexagon() {
    let k = ok(&["fixtures", "--name", "gamma6", "--m", "3"], "");
    let built = ok(&["build"], &k);
    let v = json(&built);
    assert_eq!(v["m"], 6);
    assert_eq!(v["base_m"], 3);
    let loaded = parse_complex(&built).unwrap().complex;
    assert!(are_isomorphic(&loaded, &fixtures::cycle(6).unwrap()).is_some());
}

#[test]
fn build_matches_library_and_is_a_sphere() {
    let out = ok(&["build", r#"{"m":4,"facets":[[1,2,3]]}"#], "");
    let c = parse_complex(&out).unwrap().complex;
    assert_eq!(c.facets().len(), 8);
    assert!(c.facets().iter().all(|f| f.len() == 3));
    let k = fixtures::simplex_face(4, 3).unwrap();
    let b = bier(&k).unwrap();
    assert_eq!(c.facets(), b.complex().facets());
    assert!(check_sphere(&b).passed());
}

#[test]
fn dual_twice_is_identity() {
    let k = r#"{"m":5,"facets":[[1,2],[2,3,4],[5]]}"#;
    let once = ok(&["dual", k], "");
    let twice = ok(&["dual"], &once);
    let direct = ok(&["dual", "-"], k);
    assert_eq!(once, direct);
    assert_eq!(json(&twice), json(&ok(&["dual"], &ok(&["dual"], &twice))));
    let orig = parse_complex(k).unwrap().complex;
    assert_eq!(parse_complex(&twice).unwrap().complex, orig);
}

#[test]
fn classify_km() {
    let k = ok(&["fixtures", "--name", "km", "--m", "5"], "");
    let v = json(&ok(&["classify"], &k));
    assert_eq!(v["m"], 5);
    assert_eq!(v["chi_bier"], 5);
    assert_eq!(v["min_colorable"], "NotMinColorable");
    assert!(v["chordal"].get("NotChordal").is_some());
    assert_eq!(v["f_vector"], json("[1,10,35,50,25]"));
}

#[test]
fn chi_and_fvector() {
    let g4 = ok(&["fixtures", "--name", "g4", "--m", "3"], "");
    let v = json(&ok(&["chi"], &g4));
    assert_eq!(v["chi"], 2);
    let v = json(&ok(&["fvector", "--of", "bier"], &g4));
    assert_eq!(v["f_vector"], json("[1,4,4]"));
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn buchstaber_with_oracle() {
    let v = json(&ok(
        &[
            "buchstaber",
            "--oracle",
            "--p",
            "2",
            r#"{"m":4,"facets":[[1,2]]}"#,
        ],
        "",
    ));
    assert_eq!(v["value"], 3);
    assert_eq!(v["certificate_valid"], true);
    assert_eq!(v["oracle"]["Exact"]["value"], 3);
    let capped = run(
        &[
            "buchstaber",
            "--oracle",
            "--budget",
            "1",
            r#"{"m":4,"facets":[[1,2]]}"#,
        ],
        "",
    );
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn chordal_realization_off() {
    let off = ok(
        &[
            "chordal",
            "--realize",
            "-",
            r#"{"m":4,"facets":[[1],[2],[3]]}"#,
        ],
        "",
    );
    let mut lines = off.lines();
    assert_eq!(lines.next(), Some("7 10"));
    assert_eq!(off.lines().count(), 1 + 7 + 10);
    let same = ok(&["realize", r#"{"m":4,"facets":[[1],[2],[3]]}"#], "");
    assert_eq!(same, off);
    let refused = run(&["realize", r#"{"m":4,"facets":[[1,2],[3,4]]}"#], "");
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let out = run(
        &[
            "verify",
            "--m",
            "3",
            "--theorem",
            "chromatic",
            "--jobs",
            "2",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["status"], "pass");
    assert_eq!(v["checked"], 18);

    let skipped = run(
        &[
            "verify",
            "--m",
            "3",
            "--theorem",
            "buchstaber",
            "--oracle",
            "--budget",
            "1",
        ],
        "",
    );
    assert_eq!(skipped.status.code(), Some(3));

    let refused = run(&["verify", "--m", "7", "--theorem", "sphere"], "");
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    for (args, stdin) in [
        (vec!["dual"], r#"{"m":3,"facets":[[4]]}"#),
        (vec!["dual"], "not json"),
        (vec!["build"], r#"{"m":3,"facets":[[1,2,3]]}"#),
        (vec!["frobnicate"], ""),
        (vec!["verify", "--m", "3", "--theorem", "nope"], ""),
    ] {
        let out = run(&args, stdin);
        assert_eq!(out.status.code(), Some(1), "{args:?} {stdin}");
        assert!(!out.stderr.is_empty());
    }
}
