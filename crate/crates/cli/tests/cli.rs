use std::path::PathBuf;
use std::process::Command;

use dichotomous::format::{parse_profile, write_profile};
use dichotomous::generate::{generate, GenSpec, Structure};
use serde_json::{json, Value};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn dichot(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dichotomous_cli::run(
        std::iter::once("dichot").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("dichot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const CI: &str =
    "# singletons and the full vote\ncandidates: a, b, c\nvote: a,b,c\nvote: a\nvote: b\nvote: c\n";
const TRIANGLE: &str = "candidates: a,b,c\nvote: a,b\nvote: a,c\nvote: b,c\n";

#[test]
fn detect_prints_candidate_witness() {
    let f = scratch("ci.txt", CI);
    let r = dichot(&["detect", &f, "--property", "ci"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("witness: a,b,c"), "{}", r.out);
    assert_eq!(dichot(&["detect", &f, "--property", "VI"]).code, 1);
    assert_eq!(dichot(&["detect", &f, "--property", "psp"]).code, 0);
}

#[test]
fn detect_voter_witness_is_one_based() {
    let f = scratch(
        "vi.txt",
        "candidates: a,b,c,d\nvote: a,b\nvote: a,c\nvote: a,d\n",
    );
    let r = dichot(&["detect", &f, "--property", "vi", "--json"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let mut order: Vec<u64> = v["witness"]["voter_order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    order.sort();
    assert_eq!(order, vec![1, 2, 3]);
}

#[test]
fn detect_exit_codes() {
    let tri = scratch("tri-detect.txt", TRIANGLE);
    assert_eq!(dichot(&["detect", &tri, "--property", "ssc"]).code, 0);
    assert_eq!(dichot(&["detect", &tri, "--property", "ci"]).code, 1);
    let due = dichot(&["detect", &tri, "--property", "due"]);
    assert_eq!(due.code, 2);
    assert!(due.err.contains("unsupported"));
    assert_eq!(dichot(&["detect", &tri, "--property", "nonsense"]).code, 64);
    assert_eq!(dichot(&["detect", &tri, "--property", "all"]).code, 0);
    assert_eq!(
        dichot(&["detect", "/nonexistent/profile.txt", "--property", "ci"]).code,
        66
    );
}

#[test]
fn unknown_ssc_is_exit_two() {
    // Nineteen distinct votes, neither VI nor CI: past the search limit.
    let labels: Vec<String> = (0..10).map(|i| format!("c{i}")).collect();
    let mut text = format!("candidates: {}\n", labels.join(","));
    for l in &labels {
        text += &format!("vote: {l}\nvote: {l},c0\n");
    }
    let f = scratch("big-ssc.txt", &text);
    let r = dichot(&["detect", &f, "--property", "ssc", "--json"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert!(v["holds"].is_null());
    assert_eq!(r.code, 2);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = scratch("bad.txt", "candidates: a,b\nvote: a\nvote: a,z\n");
    let r = dichot(&["detect", &f, "--property", "ci"]);
    assert_eq!(r.code, 65);
    assert!(r.err.contains('3'), "{}", r.err);
    let f = scratch("bad-label.txt", "candidates: a,b-c\nvote: a\n");
    assert_eq!(dichot(&["detect", &f, "--property", "ci"]).code, 65);
    let f = scratch("no-votes.txt", "candidates: a\n");
    assert_eq!(dichot(&["detect", &f, "--property", "ci"]).code, 65);
}

#[test]
fn solve_oracle_triangle() {
    let f = scratch("tri-solve.txt", TRIANGLE);
    let r = dichot(&["solve", &f, "--rule", "pav", "-k", "2", "--algo", "oracle"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("score: 7/2"), "{}", r.out);
    assert!(r.out.contains("algorithm: brute_force"));
}

#[test]
fn solve_json_schema() {
    let f = scratch("tri-json.txt", TRIANGLE);
    let r = dichot(&["solve", &f, "--rule", "mav", "-k", "1", "--json"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["algorithm", "committee", "score"]);
    assert_eq!(v["score"], json!({ "num": "3", "den": "1" }));
    assert_eq!(v["committee"].as_array().unwrap().len(), 1);
}

#[test]
fn solve_errors() {
    let f = scratch("tri-err.txt", TRIANGLE);
    assert_eq!(dichot(&["solve", &f, "--rule", "pav", "-k", "4"]).code, 65);
    assert_eq!(
        dichot(&["solve", &f, "--rule", "pav", "-k", "1", "--algo", "vei"]).code,
        2
    );
    assert_eq!(
        dichot(&[
            "solve",
            &f,
            "--rule",
            "mav",
            "-k",
            "1",
            "--algo",
            "pav_vi_bounded_s"
        ])
        .code,
        2
    );
    assert_eq!(
        dichot(&["solve", &f, "--rule", "pav", "-k", "1", "--algo", "magic"]).code,
        64
    );
    assert_eq!(
        dichot(&["solve", &f, "--rule", "wpav", "--weights", "1,2", "-k", "1"]).code,
        64
    );
    assert_eq!(
        dichot(&["solve", &f, "--rule", "borda", "-k", "1"]).code,
        64
    );
}

#[test]
fn solve_weight_lists() {
    let f = scratch("tri-w.txt", TRIANGLE);
    let cc = dichot(&["solve", &f, "--rule", "wpav", "--weights", "cc", "-k", "2"]);
    let list = dichot(&["solve", &f, "--rule", "wpav", "--weights", "1", "-k", "2"]);
    assert_eq!(cc.code, 0);
    let score = |s: &str| {
        s.lines()
            .find(|l| l.starts_with("score"))
            .unwrap()
            .to_string()
    };
    assert_eq!(score(&cc.out), "score: 3");
    assert_eq!(score(&cc.out), score(&list.out));
    let half = dichot(&[
        "solve",
        &f,
        "--rule",
        "wpav",
        "--weights",
        "1,1/2",
        "-k",
        "2",
    ]);
    assert_eq!(score(&half.out), "score: 7/2");
}

#[test]
fn score_subcommand() {
    let f = scratch("tri-score.txt", TRIANGLE);
    let r = dichot(&["score", &f, "--rule", "pav", "--committee", "a,b"]);
    assert_eq!((r.code, r.out.trim()), (0, "7/2"));
    let r = dichot(&["score", &f, "--rule", "mav", "--committee", "c"]);
    assert_eq!((r.code, r.out.trim()), (0, "3"));
    let r = dichot(&["score", &f, "--rule", "pav", "--committee", ""]);
    assert_eq!((r.code, r.out.trim()), (0, "0"));
    assert_eq!(
        dichot(&["score", &f, "--rule", "pav", "--committee", "a,q"]).code,
        65
    );
    assert_eq!(
        dichot(&["score", &f, "--rule", "pav", "--committee", "a,a"]).code,
        65
    );
}

#[test]
fn generate_round_trips() {
    for structure in [
        "2part",
        "part",
        "vei",
        "vi",
        "cei",
        "ci",
        "wsc",
        "due",
        "unrestricted",
    ] {
        for seed in 0..20u64 {
            let r = dichot(&[
                "generate",
                "--structure",
                structure,
                "-n",
                "7",
                "-m",
                "6",
                "--seed",
                &seed.to_string(),
            ]);
            assert_eq!(r.code, 0, "{structure}: {}", r.err);
            let p = parse_profile(&r.out).unwrap();
            assert_eq!(write_profile(&p), r.out);
            let direct = generate(&GenSpec::new(
                structure.parse::<Structure>().unwrap(),
                7,
                6,
                seed,
            ))
            .unwrap();
            assert_eq!(p, direct);
        }
    }
}

#[test]
fn generate_to_file_and_errors() {
    let path = scratch("gen-out.txt", "");
    let r = dichot(&[
        "generate",
        "--structure",
        "cei",
        "-n",
        "5",
        "-m",
        "4",
        "--seed",
        "9",
        "--out",
        &path,
    ]);
    assert_eq!((r.code, r.out.as_str()), (0, ""));
    let p = parse_profile(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((p.n(), p.m()), (5, 4));
    assert_eq!(
        dichot(&["generate", "--structure", "ssc", "-n", "3", "-m", "3"]).code,
        2
    );
    assert_eq!(
        dichot(&["generate", "--structure", "2part", "-n", "1", "-m", "3"]).code,
        2
    );
    assert_eq!(
        dichot(&["generate", "--structure", "blob", "-n", "3", "-m", "3"]).code,
        64
    );
    assert_eq!(
        dichot(&["generate", "--structure", "vi", "-m", "3"]).code,
        64
    );
}

#[test]
fn crosscheck_passes() {
    let r = dichot(&[
        "crosscheck",
        "--structure",
        "vi",
        "--trials",
        "100",
        "--seed",
        "1",
    ]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains("0 mismatches"));
    let r = dichot(&[
        "crosscheck",
        "--structure",
        "wsc",
        "--trials",
        "20",
        "--seed",
        "2",
        "--max-n",
        "5",
        "--max-m",
        "5",
        "--max-k",
        "2",
    ]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(
        dichot(&["crosscheck", "--structure", "ssc", "--trials", "1"]).code,
        2
    );
}

#[test]
fn embed_subcommand() {
    let f = scratch("cei.txt", "candidates: a,b,c\nvote: a,b\nvote: c\n");
    let r = dichot(&["embed", &f, "--from", "cei"]);
    assert_eq!(r.code, 0);
    assert!(
        r.out
            .contains("candidate a: 1\ncandidate b: 2\ncandidate c: 3\n"),
        "{}",
        r.out
    );
    assert!(r.out.contains("radius 3"));
    let r = dichot(&["embed", &f, "--from", "ci", "--json"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["radii"]["per_voter"].as_array().unwrap().len(), 2);
    let tri = scratch("tri-embed.txt", TRIANGLE);
    assert_eq!(dichot(&["embed", &tri, "--from", "ci"]).code, 1);
    assert_eq!(dichot(&["embed", &tri, "--from", "due"]).code, 64);
}

#[test]
fn refine_subcommand() {
    let f = scratch("refine.txt", "candidates: a,b,c\nvote: b\n");
    let r = dichot(&["refine", &f, "--target", "psp"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("axis: a,b,c"));
    assert!(r.out.contains("voter 1: b > c > a"), "{}", r.out);
    let r = dichot(&["refine", &f, "--target", "pe"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("voter 1: b >"));
    let tri = scratch("tri-refine.txt", TRIANGLE);
    assert_eq!(dichot(&["refine", &tri, "--target", "pe"]).code, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(dichot(&[]).code, 64);
    assert_eq!(dichot(&["frobnicate"]).code, 64);
    assert_eq!(dichot(&["solve", "x.txt", "--rule", "pav"]).code, 64);
    let help = dichot(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("crosscheck"));
}

#[test]
fn binary_exit_codes() {
    let f = scratch("bin.txt", CI);
    let bin = env!("CARGO_BIN_EXE_dichot");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["detect", &f, "--property", "ci"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("a,b,c"));
    assert_eq!(
        status(&["detect", &f, "--property", "vi"]).status.code(),
        Some(1)
    );
    assert_eq!(
        status(&["detect", &f, "--property", "due"]).status.code(),
        Some(2)
    );
    assert_eq!(status(&["bogus"]).status.code(), Some(64));
}
