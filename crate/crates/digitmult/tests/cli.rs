use std::process::{Command, Output};

fn digitmult(args: &[&str]) -> Output {
    // long witnesses land in the working directory
    let dir = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_digitmult"))
        .args(args)
        .current_dir(dir.path())
        .env_remove("DIGITMULT_MAX_VERTICES")
        .env_remove("DIGITMULT_MAX_DEPTH")
        .env_remove("DIGITMULT_TIMEOUT_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn golden_ratio_minimal_multiple() {
    let o = digitmult(&["multiple", "x^2-x-1", "--minimal"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "verdict"), Some("exists"));
    assert_eq!(field(&s, "degree"), Some("2"));
    assert_eq!(field(&s, "witness"), Some("+--"));
}

#[test]
fn no_newman_multiple_exits_one() {
    let o = digitmult(&["multiple", "x-2", "--digits", "newman"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert_eq!(field(&s, "verdict"), Some("none"));
    assert_eq!(field(&s, "certificate_replay"), Some("ok"));
}

#[test]
fn unimodular_roots_exit_two() {
    let o = digitmult(&["multiple", "x^4+x^3-x^2+x+1", "--digits", "newman"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "reason"), Some("excluded_roots_nontermination"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(digitmult(&["bogus"]).status.code(), Some(64));
    assert_eq!(digitmult(&["multiple", "x^2+"]).status.code(), Some(64));
    assert_eq!(digitmult(&["multiple", "x^2-x-1", "--digits", "custom=a"]).status.code(), Some(64));
    assert_eq!(digitmult(&["--help"]).status.code(), Some(0));
}

#[test]
fn deg2_examples() {
    let s = stdout(&digitmult(&["deg2", "x^3+x+1"]));
    assert_eq!(field(&s, "deg2"), Some("7"));
    assert_eq!(field(&s, "minimal_littlewood_degree"), Some("6"));
    // X^4+X+1 is primitive mod 2: order 15
    assert_eq!(field(&stdout(&digitmult(&["deg2", "x^4+x+1"])), "deg2"), Some("15"));
    // (X+1)^2 mod 2: s = 2
    assert_eq!(field(&stdout(&digitmult(&["deg2", "x^2+1"])), "deg2"), Some("4"));
}

#[test]
fn classify_reports_salem_type() {
    let s = stdout(&digitmult(&["classify", "x^6+x^5-x^4-x^3-x^2+x+1"]));
    assert_eq!(field(&s, "cyclotomic_factors"), Some("none"));
    assert_eq!(field(&s, "salem"), Some("negative_salem"));
    let s = stdout(&digitmult(&["classify", "x^3+x^2+x+1"]));
    assert_eq!(field(&s, "kind"), Some("cyclotomic_product"));
}

#[test]
fn verify_exit_codes() {
    let ok = digitmult(&["verify", "x^2-x-1", "+--"]);
    assert_eq!((ok.status.code(), stdout(&ok).trim()), (Some(0), "valid"));
    let bad = digitmult(&["verify", "x^2-x-1", "+++"]);
    assert_eq!((bad.status.code(), stdout(&bad).trim()), (Some(1), "invalid"));
}

#[test]
fn witness_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let o = digitmult(&["multiple", "x^3-x-1", "--witness-out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let at = format!("@{}", path.display());
    assert_eq!(digitmult(&["verify", "x^3-x-1", &at]).status.code(), Some(0));
}

#[test]
fn roots_csv() {
    let s = stdout(&digitmult(&["roots", "x^2-x-1"]));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("re,im,radius,mult,circle_status"));
    let statuses: Vec<&str> = lines.map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(statuses, ["inside", "outside"]);
}

#[test]
fn reports_are_reproducible() {
    for args in [
        &["multiple", "x^15+x^10+x^8+1", "--minimal"][..],
        &["count-minimal", "x^3-x-1"],
        &["multiple", "x^5+x^4+1", "--digits", "newman", "--minimal"],
    ] {
        let a = digitmult(args);
        let b = digitmult(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
    let t = digitmult(&["--timings", "deg2", "x^3+x+1"]);
    assert_eq!(t.stdout, digitmult(&["deg2", "x^3+x+1"]).stdout);
    assert!(String::from_utf8_lossy(&t.stderr).contains("elapsed_ms"));
}
