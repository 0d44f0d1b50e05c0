use std::path::PathBuf;
use std::process::{Command, Output};

fn fhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhopf")).args(args).output().expect("binary runs")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("fhopf-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn shift_scenario_kv() {
    let o = fhopf(&["--format", "kv", "run", &scenario("shift-c3.toml")]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("invariants.generators = u, v^3\n"), "{out}");
    assert!(out.contains("invariants.presentation = pass\n"));
    assert!(out.ends_with("result = pass\n"));
}

#[test]
fn sweedler_check() {
    let o = fhopf(&["--format", "kv", "check", &scenario("sweedler-quantum-weyl.toml")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verify.comodule_algebra = pass\n"));
    assert!(out.contains("verify.inner_faithful = true\n"));
    assert!(out.contains("verify.proper = false\n"));
}

#[test]
fn every_bundled_scenario_passes() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios"].iter().collect();
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let o = fhopf(&["run", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}: {}", p.display(), stdout(&o));
        n += 1;
    }
    assert!(n >= 5);
}

#[test]
fn empty_scenario_exits_zero() {
    let o = fhopf(&["--format", "kv", "run", &scenario("empty.toml")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "scenario = nothing-requested\nresult = pass\n");
}

#[test]
fn failed_expectation_is_nonzero() {
    let body = std::fs::read_to_string(scenario("shift-c3.toml"))
        .unwrap()
        .replace("\"hdet.trivial\" = \"false\"", "\"hdet.trivial\" = \"true\"");
    let p = temp_file("wrong.toml", &body);
    let o = fhopf(&["run", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL hdet.trivial"));
    // the subcommand keeps only its own expectations
    assert!(fhopf(&["invariants", &p]).status.success());
}

#[test]
fn parse_error_has_position() {
    let body = std::fs::read_to_string(scenario("jordan-c2.toml")).unwrap().replace("v = \"-v\"", "v = \"-v +\"");
    let p = temp_file("bad.toml", &body);
    let o = fhopf(&["check", &p]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":21:"), "{err}");
}

#[test]
fn degree_flag_overrides() {
    let o = fhopf(&["--format", "kv", "--degree", "3", "invariants", &scenario("sweedler-line.toml")]);
    assert!(stdout(&o).contains("invariants.degree = 3\n"));
}

#[test]
fn deterministic_output() {
    let a = fhopf(&["--format", "kv", "run", &scenario("jordan-c2.toml")]);
    let b = fhopf(&["--format", "kv", "run", &scenario("jordan-c2.toml")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn replay_cases() {
    let o = fhopf(&["--format", "kv", "replay", "--case", "lemma-4.1d-n1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("lemma-4.1d-n1.t'^3 = -v'*u'*t'\n"));
    let o = fhopf(&["replay", "--case", "prop-6.5-a"]);
    assert!(o.status.success());
    assert_eq!(fhopf(&["replay", "--case", "lemma-9.9"]).status.code(), Some(2));
    let list = stdout(&fhopf(&["replay", "--list"]));
    assert_eq!(list.lines().count(), 20);
}

#[test]
fn replay_all_passes() {
    let o = fhopf(&["--format", "kv", "replay"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(!out.contains("= fail"));
}
