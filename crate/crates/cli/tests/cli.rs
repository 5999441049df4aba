use std::process::{Command, Output};

fn quivhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivhopf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dimensions() {
    let o = quivhopf(&["dim", "--oracle"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("dim uqC = 125"), "{s}");
    assert!(s.contains("oracle dim uqC = 125"), "{s}");
    let o = quivhopf(&["dim", "--n", "6", "--algebra", "uq"]);
    assert!(stdout(&o).contains("dim uq = 54"));
}

#[test]
fn basis_dump_lists_every_word() {
    let o = quivhopf(&["basis", "--dump"]);
    assert!(o.status.success());
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 125);
    assert_eq!(lines[0], "e(0)");
}

#[test]
fn normal_forms_and_hopf_maps() {
    let o = quivhopf(&["nf", "a(2;1) a*(2;1)"]);
    assert_eq!(stdout(&o).trim(), "(q + q^4)*e(2) + a*(4;1) a(4;1)");
    let o = quivhopf(&["antipode", "a(2;1)"]);
    assert_eq!(stdout(&o).trim(), "-a(0;1)");
    let o = quivhopf(&["coproduct", "E_1", "--algebra", "uq"]);
    assert_eq!(stdout(&o).trim(), "K_1 ⊗ E_1 + E_1 ⊗ 1");
    let o = quivhopf(&["coproduct", "a(1;1)"]);
    assert_eq!(stdout(&o).matches('⊗').count(), 10);
}

#[test]
fn tau_and_sigma() {
    let o = quivhopf(&["sigma", "E_1"]);
    assert_eq!(stdout(&o).trim(), "a(0;1) + a(1;1) + a(2;1) + a(3;1) + a(4;1)");
    let o = quivhopf(&["tau", "e(0)"]);
    let s = stdout(&o);
    assert!(s.starts_with("1/5 + 1/5*"), "{s}");
}

#[test]
fn verify_passes_and_small_n_is_refused() {
    let o = quivhopf(&["verify", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed, 0 errors"));

    let o = quivhopf(&["verify", "scalars", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n ≥ 5"), "{}", stderr(&o));
    let o = quivhopf(&["verify", "scalars", "--n", "4", "--allow-small-n"]);
    assert!(o.status.success());
}

#[test]
fn corrupted_relation_fails() {
    let o = quivhopf(&["verify", "ideals", "--corrupt-relation", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("FAIL") && l.contains("corrupted")), "{s}");
}

#[test]
fn reports_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = quivhopf(&["verify", "lemmas", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));

    let text = dir.path().join("report.txt");
    quivhopf(&["verify", "scalars", "--out", text.to_str().unwrap()]);
    assert!(std::fs::read_to_string(&text).unwrap().contains("PASS"));

    let o = quivhopf(&["verify", "scalars", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["n"], 5);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"cartan": "A1", "n": 6, "suite": "scalars", "seed": 3}"#).unwrap();
    let o = quivhopf(&["--config", path.to_str().unwrap(), "dim"]);
    assert!(stdout(&o).contains("dim uqC = 54"), "{}", stdout(&o));
    let o = quivhopf(&["--config", path.to_str().unwrap(), "--n", "5", "dim"]);
    assert!(stdout(&o).contains("dim uqC = 125"));

    std::fs::write(&path, r#"{"cartan": "A1", "n": 5, "bogus": 1}"#).unwrap();
    let o = quivhopf(&["--config", path.to_str().unwrap(), "dim"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_is_an_error() {
    let o = quivhopf(&["nf", "a(9;1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}
