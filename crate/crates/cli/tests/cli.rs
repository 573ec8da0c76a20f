use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use zeckgen_cli::config::SystemConfig;

const FIXTURES: [&str; 15] = [
    "fib",
    "k-bounded",
    "neg33",
    "c8-2-3",
    "blocks7",
    "factorial",
    "L23",
    "L11-3-collision",
    "harmonic-real",
    "omega-L11",
    "blocks-sevenths",
    "padic41-golden",
    "padic5-counterexample",
    "j-plus-N",
    "seven-N",
];

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.toml"))
}

fn zeckgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeckgen")).args(args).output().expect("binary runs")
}

fn with_fixture(name: &str, args: &[&str]) -> Output {
    let path = fixture(name);
    let mut full = vec!["--config", path.to_str().unwrap()];
    full.extend_from_slice(args);
    zeckgen(&full)
}

/// Data lines: everything that is not a `#` comment.
fn data(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn fixtures_round_trip() {
    for name in FIXTURES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let cfg = SystemConfig::from_toml(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(cfg.name, name);
        let again = SystemConfig::from_toml(&cfg.render().unwrap()).unwrap();
        assert_eq!(again, cfg, "{name}");
    }
}

#[test]
fn encode_hundred() {
    let out = zeckgen(&["encode", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(data(&out), ["10,5,3"]);
    let out = with_fixture("fib", &["encode"]);
    assert_eq!(data(&out), ["10,5,3"]);
}

#[test]
fn decode_forms() {
    assert_eq!(data(&zeckgen(&["decode", "0"])), ["0"]);
    assert_eq!(data(&zeckgen(&["decode", "3:1,5:1,10:1", "10,5,3"])), ["100", "100"]);
}

#[test]
fn header_names_fixture() {
    let out = with_fixture("seven-N", &["subset"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "# fixture: seven-N"));
    assert!(text.lines().any(|l| l == "# verb: subset"));
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zeckgen"))
        .args(["encode", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"100\n165 4\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(data(&out), ["10,5,3", "11,7", "3,1"]);
}

#[test]
fn output_is_deterministic() {
    for (name, verb) in [("L11-3-collision", "verify-unique"), ("harmonic-real", "real-expand"), ("j-plus-N", "subset")]
    {
        let a = with_fixture(name, &[verb]);
        let b = with_fixture(name, &[verb]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn uniqueness_verdicts() {
    let out = with_fixture("L23", &["verify-unique"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(data(&out), ["PASS count=6560"]);

    let out = with_fixture("L11-3-collision", &["verify-unique"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(data(&out), ["COLLISION\tvalue=114\t1:6\t2:8,3:1"]);
}

#[test]
fn recurrences_hold() {
    for name in ["fib", "k-bounded", "neg33", "c8-2-3", "blocks7", "factorial"] {
        let out = with_fixture(name, &["verify-recurrence"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(data(&out)[0].starts_with("HOLDS\t"), "{name}");
    }
}

#[test]
fn failing_recurrence_exits_one() {
    let path = write_temp(
        "bad-recurrence.toml",
        "name = \"bad\"\n[family]\nkind = \"l-list\"\ne = [\"1\", \"1\"]\n[recurrence]\ncoeffs = [\"1\", \"2\"]\nfrom = \"3\"\nto = \"10\"\n",
    );
    let out = zeckgen(&["--config", path.to_str().unwrap(), "verify-recurrence"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(data(&out), ["FAILS\tn=3\tterm=3\tcombination=4"]);
}

#[test]
fn enumerate_k_bounded() {
    let out = with_fixture("k-bounded", &["enumerate", "8"]);
    let members: Vec<String> = data(&out).iter().map(|l| l.split('\t').nth(2).unwrap().to_string()).collect();
    assert_eq!(members, ["1:1", "2:1", "1:1,2:1", "2:2", "3:1", "1:1,3:1", "2:1,3:1", "1:1,2:1,3:1"]);
}

#[test]
fn harmonic_pi_over_eight() {
    let out = with_fixture("harmonic-real", &["real-expand"]);
    assert_eq!(out.status.code(), Some(0));
    let starts: Vec<String> = data(&out)
        .iter()
        .filter(|l| l.starts_with("block\t"))
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(starts, ["2", "16", "1844", "4683104"]);
    let out = with_fixture("harmonic-real", &["verify-maximal", "3"]);
    assert!(data(&out)[0].starts_with("3\tHOLDS\t"));
}

#[test]
fn sevenths_identities_and_expansions() {
    let out = with_fixture("blocks-sevenths", &["verify-maximal"]);
    let lines = data(&out);
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|l| l.contains("\tHOLDS\t")));
    let out = with_fixture("blocks-sevenths", &["real-expand", "100/343"]);
    assert_eq!(data(&out), ["block\t2\t4\t2:1", "block\t8\t10\t8:1", "residual\t0", "stop\texact-zero"]);
}

#[test]
fn golden_ratio_on_the_interval() {
    let out = with_fixture("omega-L11", &["dominant-check"]);
    let lines = data(&out);
    assert!(lines[0].starts_with("root\t0.6180339887498948482045868343656381177203"));
    assert_eq!(lines[1], "INCONCLUSIVE");
    let out = with_fixture("omega-L11", &["verify-maximal", "1", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(data(&out).iter().all(|l| l.contains("\tHOLDS\t")));
    let out = zeckgen(&["dominant-check", "1,1,1,3"]);
    assert_eq!(data(&out), ["DOMINANT\tm=1\tl=2"]);
}

#[test]
fn precision_from_environment() {
    let path = write_temp(
        "omega-env.toml",
        "name = \"omega-env\"\n[family]\nkind = \"l-list\"\ne = [\"1\", \"1\"]\n[mode]\nkind = \"decimal\"\n",
    );
    let out = Command::new(env!("CARGO_BIN_EXE_zeckgen"))
        .args(["--config", path.to_str().unwrap(), "dominant-check"])
        .env("ZECKGEN_PRECISION", "12")
        .output()
        .unwrap();
    assert_eq!(data(&out)[0], "root\t0.618033988750");
    let out = Command::new(env!("CARGO_BIN_EXE_zeckgen"))
        .args(["--config", path.to_str().unwrap(), "--precision", "5", "dominant-check"])
        .env("ZECKGEN_PRECISION", "12")
        .output()
        .unwrap();
    assert_eq!(data(&out)[0], "root\t0.61803");
}

#[test]
fn padic_fixtures() {
    let out = with_fixture("padic41-golden", &["verify-unique"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(data(&out)[0].starts_with("PASS "));
    let out = with_fixture("padic41-golden", &["padic-expand"]);
    assert_eq!(data(&out), ["digits\t1:1,3:1,6:1"]);

    let out = with_fixture("padic5-counterexample", &["verify-unique"]);
    assert_eq!(data(&out), ["PASS members=625 residues=625", "PROBE\tfirst-difference=2", "VALUATIONS\tagree"]);
}

#[test]
fn padic_outside_the_collection() {
    let out = with_fixture("padic41-golden", &["padic-expand", "123456789"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(data(&out)[0].starts_with("NOT-IN-COLLECTION\t"));
}

#[test]
fn seven_multiples() {
    let out = with_fixture("seven-N", &["subset", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = data(&out);
    assert_eq!(lines[0], "count\t14");
    assert_eq!(lines[1], "collision\tnone");
    let values: Vec<u64> = lines[2..].iter().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values, (1..=14).map(|k| 7 * k).collect::<Vec<_>>());
}

#[test]
fn j_plus_reports_its_collision() {
    let out = with_fixture("j-plus-N", &["subset", "30"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = data(&out);
    assert_eq!(lines[1], "COLLISION\tvalue=6\t3:1\t5:1");
    assert!(lines.contains(&"value\t3".to_string()));
}

#[test]
fn fixed_blocks_cover_an_interval() {
    let out = with_fixture("blocks7", &["subset", "2000"]);
    let lines = data(&out);
    assert_eq!(lines[0], "count\t2000");
    assert_eq!(lines[1], "collision\tnone");
}

#[test]
fn shift_of_hundred() {
    assert_eq!(data(&zeckgen(&["shift", "100"])), ["162"]);
}

#[test]
fn config_errors_exit_two() {
    let out = with_fixture("harmonic-real", &["encode", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = write_temp("bad.toml", "name = \"bad\"\n[family]\nkind = \"no-such-kind\"\n");
    let out = zeckgen(&["--config", bad.to_str().unwrap(), "encode", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = zeckgen(&["--config", "/nonexistent/config.toml", "encode", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = zeckgen(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(2));
}
