use std::process::{Command, Output};

fn spinal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn gamma_dot_matches_golden() {
    let out = spinal(&["gamma", "--preset", "grigorchuk", "--level", "3", "--format", "dot"]);
    assert!(out.status.success());
    let expected = include_str!("data/gamma3_grigorchuk.dot");
    assert_eq!(stdout(&out), expected);
}

#[test]
fn gamma_both_reports_equality() {
    let out = spinal(&["gamma", "--preset", "grigorchuk", "--level", "4", "--both"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "equal\n");
}

#[test]
fn gamma_rejects_level_zero() {
    let out = spinal(&["gamma", "--preset", "grigorchuk", "--level", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ends_prints_count() {
    let out = spinal(&["ends", "--preset", "fabrykowski-gupta", "--xi", "(0)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    let out = spinal(&["ends", "--preset", "fabrykowski-gupta", "--xi", "(2)"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn compat_prints_verdict() {
    let out = spinal(&["compat", "--d", "3", "--xi", "1(0)", "--eta", "2(0)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "incompatible k=0\n");
    let out = spinal(&["compat", "--d", "5", "--xi", "1(0)", "--eta", "3(0)"]);
    assert_eq!(stdout(&out), "compatible\n");
}

#[test]
fn validate_prints_verdict() {
    let out = spinal(&["validate", "--group-spec", "d=2;m=2;pre=[];per=[(0,1),(1,0),(1,1)]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "valid\n");
    let out = spinal(&["validate", "--group-spec", "d=2;m=2;pre=[];per=[(0,1)]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "invalid i=0\n");
}

#[test]
fn selfsim_prints_matrix_or_none() {
    let out = spinal(&["selfsim", "--preset", "fabrykowski-gupta"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[(1)]\n");
    let out = spinal(&[
        "selfsim",
        "--group-spec",
        "d=2;m=2;pre=[];per=[(0,1),(0,1),(1,0),(1,1)]",
    ]);
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn phi_transports_points() {
    let out = spinal(&["phi", "--d", "5", "--xi", "1(0)", "--eta", "3(0)", "--point", "4(0)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4(0)\n");
    let out = spinal(&["phi", "--d", "5", "--xi", "1(0)", "--eta", "3(0)", "--point", "1(0)"]);
    assert_eq!(stdout(&out), "3(0)\n");
}

#[test]
fn iso_decides_balls() {
    let out = spinal(&[
        "iso",
        "--preset",
        "fabrykowski-gupta",
        "--xi",
        "1(0)",
        "--eta",
        "2(0)",
        "--radius",
        "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "noniso\n");
    let out = spinal(&[
        "iso", "--preset", "sunic", "--p", "5", "--m", "1", "--xi", "1(0)", "--eta", "3(0)",
        "--radius", "7",
    ]);
    assert_eq!(stdout(&out), "iso\n");
}

#[test]
fn iso_unrooted_finds_witness() {
    let out = spinal(&[
        "iso",
        "--preset",
        "fabrykowski-gupta",
        "--xi",
        "(10)",
        "--eta",
        "(20)",
        "--unrooted",
        "--kmax",
        "5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "none-certified\n");
}

#[test]
fn ball_json_has_expected_vertices() {
    let out = spinal(&[
        "ball",
        "--preset",
        "fabrykowski-gupta",
        "--xi",
        "(0)",
        "--radius",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["d"], 3);
    assert_eq!(value["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(value["root"], 0);
    let expected = include_str!("data/ball1_fg.json");
    assert_eq!(stdout(&out).trim(), expected.trim());
}

#[test]
fn annulus_prints_component_count() {
    let out = spinal(&[
        "annulus",
        "--preset",
        "fabrykowski-gupta",
        "--xi",
        "(0)",
        "--r",
        "3",
        "--R",
        "12",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn limit_rejects_dihedral() {
    let out = spinal(&["limit", "--preset", "dihedral", "--pi", "0", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = spinal(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = spinal(&["gamma", "--preset", "grigorchuk"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_recursion_suite_passes() {
    let out = spinal(&["verify", "--suite", "recursion", "--seed", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.ends_with("PASS")).count() >= 4);
    assert!(!text.contains("FAIL"));
}
