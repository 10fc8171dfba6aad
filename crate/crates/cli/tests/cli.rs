use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qdvol::cache::{CacheFile, FILE_NAME};
use qdvol::format::{parse_pi_scalar, parse_rational};

fn qdvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdvol")).env_remove("QDVOL_CACHE_DIR").args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = qdvol(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn with_cache(dir: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--cache-dir", dir.to_str().unwrap(), "--stats"];
    full.extend_from_slice(args);
    qdvol(&full)
}

fn computed(out: &Output) -> usize {
    String::from_utf8_lossy(&out.stderr)
        .lines()
        .find_map(|l| l.strip_prefix("qdvol: tables computed: "))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["volume", "--genus", "1", "--poles", "2"]), "1/3 * pi^4\n");
    assert_eq!(stdout(&["fcoeff", "--genus", "2", "--npoints", "1", "--indices", "4"]), "1/9216\n");
    assert_eq!(
        stdout(&["table", "--genus", "2", "--poles-from", "0", "--poles-to", "1"]),
        "0\t1/15 * pi^6\n1\t29/840 * pi^8\n"
    );
    assert_eq!(
        stdout(&["table", "--genus", "1", "--poles-from", "2", "--poles-to", "3", "--quantity", "lplus"]),
        "2\t2/3\n3\t6/11\n"
    );
    assert_eq!(stdout(&["constants", "--genus", "1", "--poles", "2"]), "carea\t7/3 * pi^-2\nlplus\t2/3\n");
}

#[test]
fn errors_are_one_line_with_nonzero_status() {
    for (args, needle) in [
        (&["volume", "--genus", "1", "--poles", "1"][..], "empty stratum"),
        (&["table", "--genus", "2", "--poles-from", "3", "--poles-to", "1"][..], "empty range"),
        (&["table", "--genus", "1", "--poles-from", "0", "--poles-to", "1"][..], "no volume"),
        (&["fcoeff", "--genus", "0", "--npoints", "2"][..], "unstable"),
        (&["poly", "--genus", "0"][..], "genus >= 1"),
    ] {
        let out = qdvol(args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(needle), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn partial_range_flags_invalid_rows() {
    let csv = stdout(&["table", "--genus", "1", "--poles-from", "1", "--poles-to", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "quantity,genus,poles,num,den,pi_power,status");
    assert!(lines[1].contains("skipped: empty stratum"));
    assert_eq!(lines[2], "volume,1,2,1,3,4,ok");
}

#[test]
fn json_rows_follow_schema() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["volume", "--genus", "2", "--poles", "1", "--format", "json"])).unwrap();
    assert_eq!(v["quantity"], "volume");
    assert_eq!(v["genus"], 2);
    assert_eq!(v["poles"], 1);
    assert_eq!(v["coefficient"]["num"], "29");
    assert_eq!(v["coefficient"]["den"], "840");
    assert_eq!(v["pi_power"], 8);
}

#[test]
fn plain_and_json_outputs_agree_after_reparsing() {
    for q in ["volume", "carea", "lplus"] {
        let base = ["table", "--genus", "1", "--poles-from", "2", "--poles-to", "6", "--quantity", q];
        let plain = stdout(&base);
        let mut json_args = base.to_vec();
        json_args.extend(["--format", "json"]);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&json_args)).unwrap();
        for (line, row) in plain.lines().zip(&rows) {
            let text = line.split_once('\t').unwrap().1;
            let c = parse_rational(&format!("{}/{}", row["coefficient"]["num"].as_str().unwrap(), row["coefficient"]["den"].as_str().unwrap())).unwrap();
            if q == "lplus" {
                assert_eq!(parse_rational(text).unwrap(), c);
            } else {
                let v = parse_pi_scalar(text).unwrap();
                assert_eq!(*v.coefficient(), c);
                assert_eq!(v.pi_power(), row["pi_power"].as_i64().unwrap());
            }
        }
    }
}

#[test]
fn outputs_do_not_depend_on_workers_or_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for format in ["plain", "json", "csv"] {
        for args in [
            &["table", "--genus", "2", "--poles-from", "0", "--poles-to", "4", "--quantity", "carea"][..],
            &["poly", "--genus", "2"][..],
            &["fcoeff", "--genus", "1", "--npoints", "4", "--indices", "2,1,0,0"][..],
        ] {
            let mut a = vec!["--format", format];
            a.extend_from_slice(args);
            let reference = stdout(&a);
            let mut w = vec!["--workers", "1"];
            w.extend(&a);
            assert_eq!(stdout(&w), reference);
            let mut c = vec!["--cache-dir", d];
            c.extend(&a);
            assert_eq!(stdout(&c), reference, "cold cache");
            assert_eq!(stdout(&c), reference, "warm cache");
        }
    }
}

#[test]
fn cache_round_trip_skips_recursion() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--genus", "2", "--poles-from", "0", "--poles-to", "3"];
    let cold = with_cache(dir.path(), &args);
    assert!(cold.status.success());
    assert!(computed(&cold) > 0);
    let file: CacheFile = serde_json::from_str(&fs::read_to_string(dir.path().join(FILE_NAME)).unwrap()).unwrap();
    assert_eq!(file.schema_version, 1);
    assert_eq!((file.curve.a.as_str(), file.curve.b), ("-1", 2));
    let warm = with_cache(dir.path(), &args);
    assert_eq!(computed(&warm), 0);
    assert_eq!(warm.stdout, cold.stdout);
}

#[test]
fn env_var_selects_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qdvol"))
        .env("QDVOL_CACHE_DIR", dir.path())
        .args(["volume", "--genus", "1", "--poles", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join(FILE_NAME).exists());
}

fn seed(dir: &Path) -> String {
    let out = with_cache(dir, &["volume", "--genus", "1", "--poles", "4"]);
    assert!(out.status.success());
    fs::read_to_string(dir.join(FILE_NAME)).unwrap()
}

#[test]
fn foreign_curve_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let text = seed(dir.path());
    // Same entries under another curve header: they must not be merged.
    let mut file: CacheFile = serde_json::from_str(&text).unwrap();
    file.curve.b = 3;
    for e in &mut file.entries {
        e.num = "12345".into();
    }
    fs::write(dir.path().join(FILE_NAME), serde_json::to_string(&file).unwrap()).unwrap();
    let out = with_cache(dir.path(), &["volume", "--genus", "1", "--poles", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: cache ignored"));
    assert!(computed(&out) > 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&["volume", "--genus", "1", "--poles", "4"]));
}

#[test]
fn tampered_cache_is_rejected_whole() {
    let dir = tempfile::tempdir().unwrap();
    let text = seed(dir.path());
    let mut file: CacheFile = serde_json::from_str(&text).unwrap();
    let last = file.entries.len() - 1;
    file.entries[0].num = "999".into();
    file.entries[last].den = "0".into();
    fs::write(dir.path().join(FILE_NAME), serde_json::to_string(&file).unwrap()).unwrap();
    let out = with_cache(dir.path(), &["volume", "--genus", "1", "--poles", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: cache rejected"));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&["volume", "--genus", "1", "--poles", "4"]));

    fs::write(dir.path().join(FILE_NAME), "{\"schema_version\": 1, \"curve\": ").unwrap();
    let out = with_cache(dir.path(), &["volume", "--genus", "1", "--poles", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: cache rejected"));
}

#[test]
fn newer_schema_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let text = seed(dir.path());
    let mut file: CacheFile = serde_json::from_str(&text).unwrap();
    file.schema_version = 2;
    fs::write(dir.path().join(FILE_NAME), serde_json::to_string(&file).unwrap()).unwrap();
    let out = with_cache(dir.path(), &["volume", "--genus", "1", "--poles", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema version 2"));
}

#[test]
fn selftest_quick_passes() {
    let out = qdvol(&["selftest", "--level", "quick"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 9);
    assert!(text.contains("0 failed unexpectedly"));
}
