use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdpinv")).args(args).env_remove("CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_small_types() {
    let o = run(&["invariants", "--type", "D4"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split(" = ").next().unwrap().to_string()).collect();
    assert_eq!(names, ["gamma4", "delta2", "delta4", "delta6"]);
    assert_eq!(stdout(&run(&["invariants", "--type", "A1"])).trim(), "alpha2 = s2");
    let o = run(&["invariants", "--type", "E6"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn congruence_rows_and_exit_codes() {
    let o = run(&["congruence", "--case", "E7:v2"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.contains("expected -12 computed -12") && line.trim_end().ends_with("PASS"), "{line}");
    assert!(stdout(&run(&["congruence", "--case", "E8:v6"])).contains("computed 1 "));
    assert_eq!(run(&["congruence", "--case", "E9:v1"]).status.code(), Some(2));
    assert_eq!(run(&["congruence"]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let a = run(&["--jobs", "1", "--format", "json", "congruence", "--all"]);
    let b = run(&["--jobs", "6", "--format", "json", "congruence", "--all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_targets() {
    let o = run(&["verify", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("identities: PASS"));
    assert_eq!(run(&["verify", "nothing"]).status.code(), Some(2));
}

#[test]
fn classify_files() {
    let dir = std::env::temp_dir().join(format!("rdpinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let germ = dir.join("germ.txt");
    std::fs::write(&germ, "x^2 + y^3 + y*z^3 + x*y*z\n").unwrap();
    let o = run(&["classify", germ.to_str().unwrap(), "--jet-order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("E7"), "{}", stdout(&o));

    let profile = dir.join("profile.json");
    std::fs::write(&profile, r#"{"type":"E8","valuations":{"eps8":1}}"#).unwrap();
    let o = run(&["--format", "json", "classify", profile.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["column"], "E7");
    assert_eq!(v["bound"]["AtWorst"]["monomial"], "T*Y*Z^2");

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "x^2 + ").unwrap();
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["classify", dir.join("missing").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
