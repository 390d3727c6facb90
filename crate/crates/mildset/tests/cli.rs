use std::process::{Command, Output};

fn mildset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mildset")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

#[test]
fn eval_prints_canonical_forms() {
    let cases = [
        ("compose(double, succ)", "pap{p=1, pieces=[(0, 2/1, 2)]}"),
        ("support(selfm{double})", "up{mod 2 in [0]}"),
        ("box? [inj{A=[1],table={1:1}}; inj{A=[1],table={1:1}}]", "NotInBox(disjointness, k=0)"),
    ];
    for (expr, want) in cases {
        let o = mildset(&["eval", expr]);
        assert!(o.status.success(), "{expr}");
        assert_eq!(stdout(&o), want, "{expr}");
    }
}

#[test]
fn box_membership_reports_supports() {
    let o = mildset(&["eval", "box? [inj{A=[1],table={1:1}}; inj{A=[1],table={1:2}}]"]);
    assert_eq!(stdout(&o), "InBox(k=0: up{finite=[1]}, up{finite=[2]})");
}

#[test]
fn parse_errors_carry_a_column() {
    let o = mildset(&["eval", "compose(double"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 15"));
}

#[test]
fn unknown_check_exits_with_usage_status() {
    let o = mildset(&["check", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check 'nope'"));
}

#[test]
fn check_json_is_a_versioned_report() {
    let o = mildset(&["check", "boxUnit", "--trials", "30", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "mildset.report/1");
    assert_eq!(v["id"], "boxUnit");
    assert_eq!(v["trials"], 30);
    assert_eq!(v["passed"], true);
    assert!(v["elapsed_ms"].is_null());
    assert_eq!(stdout(&o), stdout(&mildset(&["check", "boxUnit", "--trials", "30", "--json"])));
}

#[test]
fn star_module_check_fails_on_bare_selfm() {
    let o = mildset(&["star-module-check", "ESelfM{D=1}"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("is not a *-module"));
    assert!(out.contains("unhit: [selfm{pap{p=1, pieces=[(0, 1/1, 0)]}}] at level 0 with support up{mod 1 in [0]}"));
}

#[test]
fn star_module_check_passes_on_mild_part() {
    let o = mildset(&["star-module-check", "ESelfM{D=1}^mu"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
