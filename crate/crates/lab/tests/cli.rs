use std::process::Command;

fn lab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_etale-lab")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("etale-lab-{}-{name}", std::process::id()))
}

#[test]
fn resultant_of_linears() {
    let (code, out, _) = lab(&["resultant", "x + 1", "x + 2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1");
    let (_, out, _) = lab(&["resultant", "x^2 + 1", "x - 1"]);
    assert_eq!(out.trim(), "2");
}

#[test]
fn unknown_suite_exits_2() {
    let (code, _, err) = lab(&["verify", "bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(lab(&["resultant", "x^-1", "x"]).0, 2);
    assert_eq!(lab(&["--field", "Fp(4)", "resultant", "x", "x"]).0, 2);
    assert_eq!(lab(&["no-such-command"]).0, 2);
}

#[test]
fn budget_exceeded_exits_2() {
    let (code, _, err) = lab(&["verify", "splitdet", "--budget", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));
}

#[test]
fn stable_reports_are_byte_identical() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for path in [&a, &b] {
        let (code, _, _) = lab(&["verify", "padics", "--seed", "7", "--stable", "--json", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["suite"], "padics");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["assertions"][0]["status"], "pass");
    assert_eq!(v["assertions"][0]["millis"], 0);
    let _ = (std::fs::remove_file(a), std::fs::remove_file(b));
}

#[test]
fn chart_and_complement_partition_f5() {
    let (code, out, _) = lab(&["--field", "Fp(5)", "--vars", "x,y", "complement", "x^2 - y", "2*x"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("E-image: (1) (4)"));
    assert!(out.contains("partition: true"));
}

#[test]
fn qp_power_and_member() {
    assert_eq!(lab(&["qp-power", "17", "2", "2"]).1.trim(), "true");
    assert_eq!(lab(&["qp-power", "2", "2", "2"]).1.trim(), "false");
    let (_, out, _) = lab(&["member", "--context", "RCF", "[x inP(2)]", "3"]);
    assert!(out.contains("true"));
    let (_, out, _) = lab(&["member", "--context", "RCF", "[x inP(2)]", "-3"]);
    assert!(out.lines().nth(1).unwrap().contains("false"));
}

#[test]
fn zero_fiber_is_empty() {
    let (code, out, _) = lab(&["--field", "Fp(7)", "fiber", "--alpha", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 points"));
}

#[test]
fn quintic_check_passes() {
    let (code, out, _) = lab(&["quintic-check"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 7);
}

#[test]
fn sturm_window() {
    let (code, out, _) = lab(&["sturm", "x^2 - 2", "--lo", "0", "--hi", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 real roots"));
    assert!(out.contains("1 in (0, 2)"));
}
