use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skolemkit")).args(args).env_remove("SKOLEMKIT_SEED").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn parse_shows_de_bruijn_indices() {
    let out = run(&["--format", "json", "parse", "forall x. exists y. R(x,y)", "--relations", "R/2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["formula"], "forall x0. exists x1. R(x0, x1)");
    assert_eq!(v["tree"], serde_json::json!({"All": {"Ex": {"Atom": [0, [{"Var": 1}, {"Var": 0}]]}}}));
    let out = run(&["parse", "P(x)", "--relations", "P/1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unbound variable"));
}

#[test]
fn eval_reads_models() {
    let out = run(&["--format", "json", "eval", "--model", &data("model2.json"), "--formula", "exists x. P(x)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["holds"], true);
    let out = run(&["eval", "--model", &data("model2.json"), "--formula", "P(v0)", "--env", "1"]);
    assert_eq!(stdout(&out).trim(), "P(v0): false");
}

#[test]
fn model_errors_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(data("model2.json")).unwrap();
    let bad_cell = dir.path().join("cell.json");
    std::fs::write(&bad_cell, good.replace(r#""c": [0]"#, r#""c": [2]"#)).unwrap();
    let out = run(&["dls", "--model", bad_cell.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("functions.c[0]: value 2 is outside the domain of size 2"), "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, good.replace(r#", "R": [false, true, true, false]"#, "")).unwrap();
    let out = run(&["--format", "json", "dls", "--model", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err: serde_json::Value = serde_json::from_str(&stderr(&out)).unwrap();
    assert_eq!(err["error"]["code"], "model");
    assert!(err["error"]["message"].as_str().unwrap().contains('R'));

    let out = run(&["dls", "--model", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn proofs_are_checked() {
    let out = run(&["check", "--context", &data("context.json"), "--proof", &data("proof.json"), "--soundness", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("proves: exists x0. R(x0, c())"));
    let peirce = ["check", "--context", &data("empty_context.json"), "--proof", &data("peirce.json")];
    let out = run(&peirce);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("classical rule disabled"));
    let out = run(&[&peirce[..], &["--classical"]].concat());
    assert_eq!(code(&out), 0);
    // the proof names assumption 1, which the empty context lacks
    let out = run(&["check", "--context", &data("empty_context.json"), "--proof", &data("proof.json")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn dls_passes_and_matches_golden() {
    let out = run(&["dls", "--model", &data("model2.json"), "--budget", "6", "--depth", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("overall: pass"));
    let out = run(&["--format", "json", "dls", "--model", &data("model2.json"), "--budget", "4", "--depth", "1"]);
    assert_eq!(stdout(&out), golden("dls_model2_k4_d1.json"));
    let out = run(&["dls", "--model", &data("model2.json"), "--budget", "4", "--oracle", "saturate"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("env (saturate)"));
    assert_eq!(code(&run(&["dls", "--model", &data("model2.json"), "--budget", "0"])), 2);
}

#[test]
fn principles() {
    let out = run(&["--format", "json", "principle", "dc", "--relation", &data("succ3.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["path"]["cycle"], serde_json::json!([0, 1, 2]));
    let out = run(&["principle", "dc", "--relation", &data("stuck.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not total"));
    for args in [
        vec!["blur", "--predicate", &data("predicate.json")],
        vec!["blur", "--predicate", &data("predicate.json"), "--kind", "ep"],
        vec!["bcc", "--instance", &data("window.json")],
        vec!["bcc", "--instance", &data("window.json"), "--via-bdc"],
        vec!["ddc", "--relation", &data("directed.json")],
        vec!["obdc", "--relation", &data("max3.json")],
        vec!["obdc", "--relation", &data("max3.json"), "--mode", "saturate"],
    ] {
        let out = run(&[&["--format", "json", "principle"][..], &args].concat());
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        assert_eq!(json(&out)["verified"], true);
    }
    // a predicate file is the wrong shape for a path
    assert_eq!(code(&run(&["principle", "dc", "--relation", &data("predicate.json")])), 2);
    assert_eq!(code(&run(&["principle", "ddc", "--relation", &data("succ3.json")])), 2);
    let out = run(&["--format", "json", "principle", "bdc2", "--relation", &data("max3.json")]);
    assert_eq!(stdout(&out), golden("bdc2_max3.json"));
}

#[test]
fn heyting_reports() {
    let out = run(&["heyting", "--algebra", "diamond", "--dp"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("d = true: b") && text.contains("d = false: a"), "{text}");
    let out = run(&["--format", "json", "heyting", "--algebra", "diamond", "--dp"]);
    assert_eq!(stdout(&out), golden("heyting_diamond_dp.json"));
    let from_file = run(&["--format", "json", "heyting", "--algebra", &data("diamond.json"), "--dp"]);
    assert_eq!(stdout(&from_file), stdout(&out));
    assert_eq!(code(&run(&["heyting", "--algebra", "bool2"])), 0);
    assert_eq!(code(&run(&["heyting", "--algebra", "bool2", "--dp"])), 2);
    assert_eq!(code(&run(&["heyting", "--algebra", "no-such-algebra"])), 2);
}

#[test]
fn fleet_is_deterministic() {
    let a = run(&["--format", "json", "fleet", "--seed", "11"]);
    let b = Command::new(env!("CARGO_BIN_EXE_skolemkit"))
        .args(["--format", "json", "fleet"])
        .env("SKOLEMKIT_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
}
