use std::fs;

use ftnorm_cli::output::{IntegralOutput, NormOutput};
use ftnorm_cli::run;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ftnorm").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

struct Files {
    _dir: tempfile::TempDir,
    scalar: String,
    mixed: String,
    descriptor: String,
    continuous: String,
}

fn files() -> Files {
    let dir = tempfile::tempdir().unwrap();
    let put = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    };
    Files {
        scalar: put("s.json", r#"{"kind":"state_space","A":[[0.5]],"B":[[1]],"C":[[1]],"D":[[0]]}"#),
        mixed: put("m.json", r#"{"kind":"state_space","A":[[0.5,0],[0,2]],"B":[[1],[1]],"C":[[1,1]],"D":[[0.5]]}"#),
        descriptor: put("d.json", r#"{"kind":"descriptor","A":[[0.2,1],[0,0.3]],"E":[[1,0],[0,0]]}"#),
        continuous: put("c.json", r#"{"kind":"descriptor","time_domain":"continuous","A":[[-1]]}"#),
        _dir: dir,
    }
}

#[test]
fn json_round_trip_is_bit_exact() {
    let f = files();
    let (code, out, _) = cli(&["norm", "--system", &f.mixed, "--band", "-0.3", "1.2", "--output", "json"]);
    assert_eq!(code, 0);
    let parsed: NormOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.method, "general");
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out);

    let (code, out, _) = cli(&["integral", "--system", &f.descriptor, "--band", "-2", "2.5", "--output", "json"]);
    assert_eq!(code, 0);
    let parsed: IntegralOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out);
}

#[test]
fn degrees_match_radians() {
    let f = files();
    let (_, rad, _) = cli(&["norm", "--system", &f.scalar, "--band", "-1.5707963267948966", "0.7853981633974483"]);
    let (_, deg, _) = cli(&["norm", "--system", &f.scalar, "--band", "-90", "45", "--degrees"]);
    let value = |s: &str| s.lines().next().unwrap().to_owned();
    assert_eq!(value(&rad), value(&deg));
}

#[test]
fn feedthrough_and_oracle_check() {
    let f = files();
    let (code, _, err) = cli(&["norm", "--system", &f.mixed, "--band", "-3", "3", "--check-oracle", "1e-8"]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = cli(&["integral", "--system", &f.descriptor, "--band", "-3.14159", "1", "--check-oracle", "1e-8"]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = cli(&["integral", "--system", &f.continuous, "--band", "-1", "1", "--check-oracle", "1e-8"]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = cli(&["norm", "--system", &f.mixed, "--band", "-3", "3", "--check-oracle", "1e-300"]);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("oracle"));
}

#[test]
fn decimation_reports_multirate_error() {
    let f = files();
    let (code, out, _) = cli(&["norm", "--system", &f.scalar, "--decimation", "1", "--output", "json"]);
    assert_eq!(code, 0);
    let parsed: NormOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.value, 0.0);
    let (code, _, _) = cli(&["norm", "--system", &f.scalar, "--decimation", "3", "--check-oracle", "1e-9"]);
    assert_eq!(code, 0);
    let (code, _, _) = cli(&["norm", "--system", &f.mixed, "--decimation", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = cli(&["norm", "--system", &f.scalar, "--decimation", "0"]);
    assert_eq!(code, 3);
}

#[test]
fn info_reports_infinite_eigenvalues() {
    let f = files();
    let (code, out, _) = cli(&["info", "--system", &f.descriptor]);
    assert_eq!(code, 0);
    assert!(out.contains("infinite_eigenvalues: 1"), "{out}");
    let (code, out, _) = cli(&["info", "--system", &f.continuous, "--band", "-1", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("arc_clearance: 1"), "{out}");
}

#[test]
fn forced_stable_method_on_unstable_system() {
    let f = files();
    let (code, _, err) = cli(&["norm", "--system", &f.mixed, "--band", "0", "1", "--method", "stable"]);
    assert_eq!(code, 2);
    assert!(err.contains("Schur"), "{err}");
}

#[test]
fn usage_errors() {
    let f = files();
    assert_eq!(cli(&[]).0, 3);
    assert_eq!(cli(&["norm"]).0, 3);
    assert_eq!(cli(&["norm", "--system", &f.scalar, "--band", "1"]).0, 3);
    assert_eq!(cli(&["norm", "--system", &f.scalar, "--band", "-4", "1"]).0, 3);
    assert_eq!(cli(&["norm", "--system", &f.continuous]).0, 3);
    assert_eq!(cli(&["integral", "--system", &f.descriptor]).0, 3);
    assert_eq!(cli(&["integral", "--system", &f.continuous, "--band", "0", "1", "--degrees"]).0, 3);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("norm"));
}
