//! Golden-file tests for the `kdescent` binary. Set `KDESCENT_BLESS=1` to
//! rewrite the expected outputs.

use koszul_descent::format::{load, save};
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn kdescent(dir: &Path, args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_kdescent")).args(args).current_dir(dir).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap_or(-1))
}

fn cases() -> Vec<(String, Vec<String>)> {
    std::fs::read_to_string(golden().join("cases.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').unwrap();
            (name.trim().to_string(), args.split_whitespace().map(str::to_string).collect())
        })
        .collect()
}

fn transcript(args: &[String], stdout: &str, stderr: &str, code: i32) -> String {
    format!("$ kdescent {}\n--- stdout\n{stdout}--- stderr\n{stderr}--- exit {code}\n", args.join(" "))
}

#[test]
fn commands_match_golden_transcripts() {
    let dir = golden();
    let bless = std::env::var_os("KDESCENT_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (stdout, stderr, code) = kdescent(&dir, &refs);
        let got = transcript(&args, &stdout, &stderr, code);
        let path = dir.join("expected").join(format!("{name}.out"));
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            failures.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn planted_mutation_is_located() {
    let (stdout, _, code) = kdescent(&golden(), &["system", "verify", "S.sys", "mutated.asg"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "S4 FAIL n=1 row=2 col=1\n");
    let (stdout, _, code) = kdescent(&golden(), &["system", "verify", "S.sys", "canonical.asg"]);
    assert_eq!((stdout.as_str(), code), ("S1 ok S2 ok S3 ok S4 ok\n", 0));
}

/// Commands that produced the bundled files, rerun into a scratch directory.
const GENERATED: &[(&str, &[&str])] = &[
    ("K4_on_2.cx", &["complex", "new", "--ring", "Z/4", "--ranks", "1,1", "--diff", "[2]", "-o"]),
    ("K4_on_2.json", &["complex", "new", "--ring", "Z/4", "--ranks", "1,1", "--diff", "[2]", "-o"]),
    ("P.cx", &["complex", "new", "--ring", "Z/4", "--ranks", "1,1", "--diff", "[2]", "-o"]),
    ("A.cx", &["complex", "new", "--ring", "Z/4", "--ranks", "1,1,1,1", "--diff", "[2]", "--diff", "[2]", "--diff", "[2]", "-o"]),
    ("K.kz", &["koszul", "build", "--ring", "Z/4", "--seq", "2", "-o"]),
    ("Kxy.kz", &["koszul", "build", "--ring", "GF(2)[x,y]/(x^2, x*y, y^2)", "--seq", "x, y", "-o"]),
    ("F.dg", &["dg", "extend", "--koszul", "K.kz", "--complex", "P.cx", "-o"]),
    ("F.json", &["dg", "extend", "--koszul", "K.kz", "--complex", "P.cx", "-o"]),
    ("S.sys", &["system", "gen", "--koszul", "K.kz", "--complex", "P.cx", "-o"]),
];

#[test]
fn bundled_files_regenerate_byte_identically() {
    let scratch = tempfile::tempdir().unwrap();
    for (file, args) in GENERATED {
        let target = scratch.path().join(file);
        let mut args: Vec<&str> = args.to_vec();
        args.push(target.to_str().unwrap());
        let (_, stderr, code) = kdescent(&golden(), &args);
        assert_eq!(code, 0, "{file}: {stderr}");
        let want = std::fs::read(golden().join(file)).unwrap();
        assert_eq!(std::fs::read(&target).unwrap(), want, "{file}");
    }
    let asg = scratch.path().join("canonical.asg");
    let sys = scratch.path().join("S.sys");
    let args = ["system", "gen", "--koszul", "K.kz", "--complex", "P.cx", "-o", sys.to_str().unwrap(), "--solution", asg.to_str().unwrap()];
    assert_eq!(kdescent(&golden(), &args).2, 0);
    assert_eq!(std::fs::read(asg).unwrap(), std::fs::read(golden().join("canonical.asg")).unwrap());
}

#[test]
fn bundled_files_round_trip() {
    let scratch = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(golden()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if path.is_dir() || name == "cases.txt" {
            continue;
        }
        let obj = load(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        for copy in [scratch.path().join(format!("{name}.txt")), scratch.path().join(format!("{name}.json"))] {
            save(&copy, &obj).unwrap();
            assert_eq!(load(&copy).unwrap(), obj, "{name}");
        }
    }
}
