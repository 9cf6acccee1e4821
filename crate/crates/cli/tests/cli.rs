use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manypoints")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("manypoints-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_worked_example() {
    let o = run(&["construct", "--q", "3", "--f", "2*(x^3+2*x+2)", "--f", "x^3+2*x+1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("genus 4\n") && s.contains("N 12\n"), "{s}");
    assert!(s.contains("subfield genera [1, 1, 2]"));
}

#[test]
fn construct_json_is_stable_and_has_provenance() {
    let args = ["construct", "--q", "2", "--f", "1/x", "--f", "1/(x+1)", "--format", "json"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["genus"], 1);
    assert_eq!(v["N"], 4);
    assert_eq!(v["modulus"], serde_json::json!([1, 1]));
    assert_eq!(v["w"], serde_json::json!([1]));
    assert!(v["equation"].as_str().unwrap().starts_with("Y^4 + Y^3 + "));
}

#[test]
fn construct_exit_codes() {
    assert_eq!(run(&["construct", "--q", "2", "--f", "x", "--f", "x"]).status.code(), Some(3));
    assert_eq!(run(&["construct", "--q", "3", "--f", "x^2"]).status.code(), Some(4));
    assert_eq!(run(&["construct", "--q", "3", "--f", "x+("]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--q", "5", "--f", "x"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--q", "3", "--f", "x", "--mode", "artin-schreier"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--q", "3", "--f", "x", "--mode", "kummer"]).status.code(), Some(0));
}

#[test]
fn construct_with_explicit_field_data() {
    // F_9 with modulus x^2 + 1, whose root is not primitive, and w = 1 + t.
    let o = run(&["construct", "--q", "9", "--modulus", "1,0,1", "--w", "1,1", "--f", "x^3 - w*x", "-v"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("modulus=[1,0,1]; w=[1,1]"), "{s}");
    assert!(s.contains("places:"));
    assert_eq!(run(&["construct", "--q", "9", "--w", "1,0", "--f", "x"]).status.code(), Some(2));
}

#[test]
fn verify_tables_subsets() {
    let o = run(&["verify-tables", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("clean failures: none"));
    let o = run(&["verify-tables", "--row", "q=3,g=4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match g=4 N=12"));
    let o = run(&["verify-tables", "--include-suspect", "--q", "128"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[transcription-suspect]: MISMATCH") && s.contains("reconstruction: match"), "{s}");
}

#[test]
fn verify_tables_reports_mismatch() {
    let path = scratch("wrong.txt");
    std::fs::write(&path, "q=2 g=1 N=5 flags=clean f=1/x;1/(x+1)\n").unwrap();
    let o = run(&["verify-tables", "--dataset", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let s = stdout(&o);
    assert!(s.contains("MISMATCH: computed (1,4)") && s.contains("inf: "), "{s}");
}

#[test]
fn search_then_verify_export() {
    let path = scratch("records.txt");
    let o = run(&[
        "search", "--q", "2", "--n", "2", "--even-poles", "rational", "--max-order", "1", "--genus-cap", "2",
        "--export", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g=1 N=4 f="));
    let o = run(&["verify-tables", "--dataset", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("1 rows: 1 matched"));
}

#[test]
fn search_rejects_bad_space() {
    assert_eq!(run(&["search", "--q", "2", "--genus-cap", "2", "--max-order", "2"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--q", "2", "--genus-cap", "2", "--even-poles", "many"]).status.code(), Some(2));
}

#[test]
fn bounds_examples() {
    assert_eq!(stdout(&run(&["bounds", "--q", "2", "--g", "1"])), "q=2 g=1: Serre 5, Hasse-Weil 5\n");
    assert!(stdout(&run(&["bounds", "--q", "3", "--g", "4"])).contains("Serre 16"));
}
