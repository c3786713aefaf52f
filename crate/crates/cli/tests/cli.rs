use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const F1: &str = "ssg 4 5\na 1 2\na 2 5\na 3 4\na 4 7\na 5 3\n";
const F3: &str = "ssg 2 2\na 1 2\na 2 1\n";

fn skewcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcycle"))
        .args(args)
        .output()
        .expect("run skewcycle")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn f1_is_weakly_acyclic() {
    let dir = TempDir::new().unwrap();
    let f1 = file(&dir, "F1.ssg", F1);
    let out = skewcycle(&["check", s(&f1)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "weak-decomposition");
}

#[test]
fn f3_circuit_is_written_and_verified() {
    let dir = TempDir::new().unwrap();
    let f3 = file(&dir, "F3.ssg", F3);
    let c = dir.path().join("c.json");
    let out = skewcycle(&["check", s(&f3), "--certificate", s(&c)]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(v["type"], "regular-circuit");
    assert_eq!(v["nodes"], serde_json::json!([1, 2, 1]));
    assert_eq!(code(&skewcycle(&["verify", s(&c), s(&f3)])), 0);
    // The same circuit is not a circuit of F1.
    let f1 = file(&dir, "F1.ssg", F1);
    assert_eq!(code(&skewcycle(&["verify", s(&c), s(&f1)])), 1);
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f1 = file(&dir, "F1.ssg", F1);
    let out = skewcycle(&["separator", s(&f1)]);
    assert_eq!(code(&out), 0);
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "weak-separator");
    v["crossing_pair"] = serde_json::json!([1, -1]);
    let c = file(&dir, "bad.json", &v.to_string());
    let out = skewcycle(&["verify", s(&c), s(&f1)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rejected"));
}

#[test]
fn input_errors_exit_2_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.ssg", "ssg 2 1\n# comment\na 1 x\n");
    let out = skewcycle(&["check", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("line 3"),
        "{out:?}"
    );
    assert_eq!(code(&skewcycle(&["check", "/nonexistent.ssg"])), 2);
    assert_eq!(code(&skewcycle(&["bogus"])), 2);
    assert_eq!(
        code(&skewcycle(&[
            "gen", "--kind", "nope", "--pairs", "3", "--arcs", "3"
        ])),
        2
    );
    let mug = file(&dir, "x.mug", "mug 3 2\ne 1 2\ne 2 3\nm 1 2\n");
    let out = skewcycle(&["matching-unique", s(&mug)]);
    assert_eq!(code(&out), 2);
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("node 1 covered"),
        "{out:?}"
    );
    let f1 = file(&dir, "F1.ssg", F1);
    let junk = file(&dir, "junk.json", "{\"type\": \"nope\"}");
    assert_eq!(code(&skewcycle(&["verify", s(&junk), s(&f1)])), 2);
}

#[test]
fn matching_verdicts() {
    let dir = TempDir::new().unwrap();
    let square = file(
        &dir,
        "sq.mug",
        "mug 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\nm 1 3\n",
    );
    let out = skewcycle(&["matching-unique", s(&square)]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "alternating-circuit");
    let c = file(&dir, "a.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(code(&skewcycle(&["verify", s(&c), s(&square)])), 0);

    let path = file(&dir, "p.mug", "mug 2 1\ne 1 2\nm 1\n");
    let out = skewcycle(&["matching-unique", s(&path)]);
    assert_eq!(code(&out), 0);
    let c = file(&dir, "u.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(code(&skewcycle(&["verify", s(&c), s(&path)])), 0);
}

/// Every certificate any command emits passes `verify` on the same input.
#[test]
fn producers_and_verify_agree() {
    let dir = TempDir::new().unwrap();
    let kinds = [
        ("random-bidirected", 7, 10),
        ("strongly-acyclic", 12, 20),
        ("weakly-acyclic-composed", 30, 60),
        ("strongly-connected-weakly-acyclic", 12, 24),
        ("weakly-acyclic-pruned", 15, 40),
    ];
    let mut seen_negative = 0;
    for (kind, pairs, arcs) in kinds {
        for seed in 0..6 {
            for fmt in ["ssg", "bdg"] {
                let out = skewcycle(&[
                    "gen",
                    "--kind",
                    kind,
                    "--pairs",
                    &pairs.to_string(),
                    "--arcs",
                    &arcs.to_string(),
                    "--seed",
                    &seed.to_string(),
                    "--format",
                    fmt,
                ]);
                assert_eq!(code(&out), 0, "{kind} {out:?}");
                let input = file(
                    &dir,
                    &format!("g.{fmt}"),
                    &String::from_utf8(out.stdout).unwrap(),
                );
                for cmd in [
                    vec!["check"],
                    vec!["decompose"],
                    vec!["decompose-strong"],
                    vec!["separator"],
                    vec!["separator", "--kind", "barrier"],
                ] {
                    let mut args = cmd.clone();
                    args.push(s(&input));
                    let out = skewcycle(&args);
                    let c = code(&out);
                    assert!(c == 0 || c == 1, "{kind} {seed} {cmd:?} {out:?}");
                    seen_negative += (c == 1) as usize;
                    let cert = file(&dir, "c.json", &String::from_utf8(out.stdout).unwrap());
                    let v = skewcycle(&["verify", s(&cert), s(&input)]);
                    assert_eq!(code(&v), 0, "{kind} {seed} {fmt} {cmd:?} {v:?}");
                }
            }
        }
    }
    assert!(seen_negative > 0);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let gen = || {
        skewcycle(&[
            "gen",
            "--kind",
            "weakly-acyclic-composed",
            "--pairs",
            "40",
            "--arcs",
            "100",
            "--seed",
            "9",
        ])
        .stdout
    };
    let text = gen();
    assert_eq!(text, gen());
    let g = file(&dir, "g.ssg", &String::from_utf8(text).unwrap());
    let a = skewcycle(&["decompose", s(&g)]);
    let b = skewcycle(&["decompose", s(&g)]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn convert_round_trip() {
    let dir = TempDir::new().unwrap();
    let f1 = file(&dir, "F1.ssg", F1);
    let bdg = dir.path().join("F1.bdg");
    assert_eq!(
        code(&skewcycle(&[
            "convert",
            s(&f1),
            "--to",
            "bdg",
            "-o",
            s(&bdg)
        ])),
        0
    );
    let back = skewcycle(&["convert", s(&bdg), "--to", "ssg"]);
    assert_eq!(String::from_utf8(back.stdout).unwrap(), F1);
    assert_eq!(code(&skewcycle(&["check", s(&bdg)])), 0);
}

#[test]
fn strong_separator_of_f1() {
    let dir = TempDir::new().unwrap();
    let f1 = file(&dir, "F1.ssg", F1);
    let out = skewcycle(&["separator", "--kind", "strong", s(&f1)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["A"], serde_json::json!([1, 2, 5, 6]));
    assert_eq!(v["B"], serde_json::json!([3, 4, 7, 8]));
    assert_eq!(v["entries"], serde_json::json!([1, 3]));
    // A strongly acyclic graph has no strong separator.
    let f2 = file(&dir, "F2.ssg", "ssg 2 2\na 1 2\na 2 3\n");
    assert_eq!(
        code(&skewcycle(&["separator", "--kind", "strong", s(&f2)])),
        2
    );
}
