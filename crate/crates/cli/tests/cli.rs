use std::fs;
use std::path::Path;

use slocc_cli::{main_with, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn slocc(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(std::iter::once("slocc").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn capacity_reports_every_split() {
    let r = slocc(&["capacity", "--dims", "2,2,2,4"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        r.out,
        "# columns: l,sigma_count,capacity\nl,sigma_count,capacity\n1,4,32\n2,3,64\n3,3,16\n# optimal_l=2\n"
    );
    let j = slocc(&["capacity", "--dims", "2,2,2,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j.out).unwrap();
    assert_eq!(v["optimal_l"], 2);
    assert_eq!(v["splits"][1]["capacity"], "64");
}

#[test]
fn table_exit_code_tracks_mismatches() {
    let r = slocc(&["table1"]);
    assert_eq!(r.code, EXIT_VERIFY_FAILED);
    assert!(r.err.contains("21/24 rows reproduce"), "{}", r.err);
    assert_eq!(r.out.lines().filter(|l| l.ends_with("\"") && l.contains(",false,")).count(), 3);
    let fixed = slocc(&["table1", "--corrected", "--format", "json"]);
    assert_eq!(fixed.code, EXIT_OK, "{}", fixed.err);
    assert_eq!(fixed.out.lines().count(), 24);
    assert!(fixed.out.lines().all(|l| l.contains("\"matches\":true")));
}

#[test]
fn verify_theorem1_on_fixed_dims() {
    let r = slocc(&["verify", "theorem1", "--dims", "2,2,2,4", "--trials", "200", "--seed", "7"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.err.starts_with("200/200 pass, 0 fail"), "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert!(lines[0].starts_with("# columns: seed,dims"));
    assert_eq!(lines.len(), 201);
    let first: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(first["seed"], 7);
    assert_eq!(first["dims"], serde_json::json!([2, 2, 2, 4]));
    assert_eq!(first["result"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "theorem1", "--trials", "3"][..],
        &["verify", "monotone", "--seed", "1"],
        &["capacity", "--dims", "2,2,2,4", "--bogus"],
        &["capacity", "--dims", "2,x"],
        &["capacity", "--dims", "2"],
        &["frobnicate"],
        &["scan", "--levels", "3", "--n", "11"],
        &["verify", "theorem1", "--seed", "1", "--trials", "0"],
    ] {
        let r = slocc(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
    }
    let help = slocc(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("capacity"));
}

#[test]
fn state_file_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(
        dir.path(),
        "dup.json",
        "{\n\"dims\": [2, 2],\n\"amplitudes\": [\n{\"index\": [0, 1], \"re\": \"1\", \"im\": \"0\"},\n{\"index\": [0, 1], \"re\": \"1\", \"im\": \"0\"}\n]}\n",
    );
    let r = slocc(&["signature", "--state", &dup]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("line 5") && r.err.contains("duplicate index [0, 1]"), "{}", r.err);

    let r = slocc(&["signature", "--state", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("missing.json"), "{}", r.err);
}

#[test]
fn generated_states_classify_into_families() {
    let dir = tempfile::tempdir().unwrap();
    let gen = |name: &str, args: &[&str]| {
        let r = slocc(args);
        assert_eq!(r.code, EXIT_OK, "{}", r.err);
        write(dir.path(), name, &r.out)
    };
    let ghz = gen("ghz.json", &["gen", "ghz", "--n", "4", "--d", "2"]);
    let w = gen("w.json", &["gen", "w", "--n", "4"]);
    let d = gen("dicke.json", &["gen", "dicke3", "--n", "4", "--l1", "1", "--l2", "1"]);

    let r = slocc(&["classify", &ghz, &w, "--l", "2"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.lines().nth(2).unwrap(), "ghz,2,\"I;(1,3);(1,4)\",2;2;2,\"F{2,2,2}@{I,(1,3),(1,4)}\"");
    assert_eq!(r.out.lines().nth(3).unwrap(), "w,2,\"I;(1,3);(1,4)\",2;2;2,\"F{2,2,2}@{I,(1,3),(1,4)}\"");
    assert!(r.err.contains("2 states, 1 families"));

    let mixed = slocc(&["classify", &ghz, &d]);
    assert_eq!(mixed.code, EXIT_USAGE);

    let sig = slocc(&["signature", "--state", &d, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&sig.out).unwrap();
    assert_eq!(v["dims"], serde_json::json!([3, 3, 3, 3]));
    assert_eq!(v["l"], 2);
}

#[test]
fn matrix_and_rank_commands() {
    let dir = tempfile::tempdir().unwrap();
    let ghz = write(dir.path(), "g.json", &slocc(&["gen", "ghz", "--n", "3", "--d", "2"]).out);
    let m = slocc(&["matrix", "--state", &ghz, "--l", "1", "--sigma", "(1,2)"]);
    assert_eq!(m.code, EXIT_OK, "{}", m.err);
    assert!(m.out.starts_with("# rows=2 cols=4 split=1 sigma=(1,2)\n"));
    assert_eq!(m.out.lines().count(), 3);

    let exact = slocc(&["rank", "--state", &ghz, "--l", "2"]);
    assert_eq!(exact.out.lines().nth(2).unwrap(), "2,I,4,2,exact,2");
    let numeric = slocc(&["rank", "--state", &ghz, "--method", "numeric", "--safety-factor", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&numeric.out).unwrap();
    assert_eq!((v["rank"].as_u64(), v["method"].as_str()), (Some(2), Some("numeric")));
    let bad = slocc(&["rank", "--state", &ghz, "--method", "numeric", "--safety-factor", "-1"]);
    assert_eq!(bad.code, EXIT_USAGE);
    let bad_sigma = slocc(&["matrix", "--state", &ghz, "--l", "1", "--sigma", "(2,3)"]);
    assert_eq!(bad_sigma.code, EXIT_USAGE);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let r = slocc(&["scan", "--levels", "3", "--n", "4", "--output", &path.to_string_lossy()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.is_empty());
    let body = fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("# dicke scan levels=3 n=4 l=2 sigma_set={I,(1,3),(1,4)}\n# columns: l0,l1,l2,variance,"));
    // l1 + l2 <= 3: ten tuples
    assert_eq!(body.lines().count(), 3 + 10);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["verify", "monotone", "--seed", "99", "--trials", "30"];
    let a = slocc(&args);
    let b = slocc(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.err);
    assert_eq!(a.out, b.out);
    assert_eq!(a.err, b.err);
}
