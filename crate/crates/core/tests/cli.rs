//! End-to-end tests of the `dsq` binary.

use std::path::Path;
use std::process::{Command, Output};

use dsq::format::parse_dsq;

fn dsq(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsq"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

const P3: &str = "p dsq 3 2 1\ne 1 2\ne 2 3\nq 1 1 1\nq 2 1 1\nq 3 1 1\n";
const P3_INFEASIBLE: &str = "p dsq 3 2 3\ne 1 2\ne 2 3\nq 1 2 2\nq 2 2 2\nq 3 2 2\n";
const EDGE: &str = "p tw 2 1\n1 2\n";

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p3.dsq"), P3).unwrap();
    std::fs::write(dir.path().join("infeasible.dsq"), P3_INFEASIBLE).unwrap();
    std::fs::write(dir.path().join("edge.gr"), EDGE).unwrap();
    dir
}

#[test]
fn solve_path_of_three() {
    let dir = workspace();
    for extra in [
        &[][..],
        &["--join", "fast"],
        &["--reduce"],
        &["--algo", "brute"],
        &["--apex"],
    ] {
        let mut args = vec!["solve-dsq", "p3.dsq"];
        args.extend_from_slice(extra);
        let o = dsq(&args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{extra:?}");
        let out = stdout(&o);
        assert_eq!(field(&out, "answer"), Some("yes"));
        assert_eq!(field(&out, "optimum"), Some("1"));
        assert_eq!(field(&out, "witness"), Some("2"));
    }
}

#[test]
fn json_report() {
    let dir = workspace();
    let o = dsq(&["solve-dsq", "p3.dsq", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["witness"], "2");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn infeasible_and_missing() {
    let dir = workspace();
    let o = dsq(&["solve-dsq", "infeasible.dsq"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "answer"), Some("no"));
    assert!(field(&stdout(&o), "witness").is_none());
    assert_eq!(
        dsq(&["solve-dsq", "missing.dsq"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn parse_errors_exit_two() {
    let dir = workspace();
    std::fs::write(dir.path().join("bad.dsq"), "p dsq 2 1 1\ne 1 3\n").unwrap();
    let o = dsq(&["solve-dsq", "bad.dsq"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        dsq(&["solve-dsq", "p3.dsq", "--join", "nope"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn generators_match_construction_sizes() {
    let dir = workspace();
    let is = dsq(&["gen", "is", "--graph", "edge.gr", "--r", "1"], dir.path());
    assert_eq!(is.status.code(), Some(0));
    let inst = parse_dsq(&stdout(&is)).unwrap();
    assert_eq!((inst.n(), inst.k()), (5, 1));

    let ec = dsq(&["gen", "ec", "--graph", "edge.gr", "--r", "2"], dir.path());
    let inst = parse_dsq(&stdout(&ec)).unwrap();
    assert_eq!(inst.k(), 7);
}

#[test]
fn generators_are_byte_identical() {
    let dir = workspace();
    for kind in ["ec", "is"] {
        for prefix in ["a", "b"] {
            let o = dsq(
                &[
                    "gen",
                    kind,
                    "--graph",
                    "edge.gr",
                    "--r",
                    "2",
                    "--out",
                    prefix,
                    "--emit-dot",
                ],
                dir.path(),
            );
            assert_eq!(o.status.code(), Some(0));
        }
        for ext in ["dsq", "roles", "dot"] {
            let a = std::fs::read(dir.path().join(format!("a.{ext}"))).unwrap();
            let b = std::fs::read(dir.path().join(format!("b.{ext}"))).unwrap();
            assert_eq!(a, b, "{kind} {ext}");
        }
    }
}

#[test]
fn solve_then_extract() {
    let dir = workspace();
    std::fs::write(dir.path().join("c4.gr"), "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
    dsq(
        &["gen", "ec", "--graph", "c4.gr", "--r", "2", "--out", "c4"],
        dir.path(),
    );
    let rep = dsq(&["solve-dsq", "c4.dsq"], dir.path());
    assert_eq!(rep.status.code(), Some(0));
    std::fs::write(dir.path().join("c4.rep"), &rep.stdout).unwrap();
    let o = dsq(
        &[
            "extract",
            "ec",
            "--instance",
            "c4.dsq",
            "--roles",
            "c4.roles",
            "--witness",
            "c4.rep",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let colors: Vec<usize> = field(&stdout(&o), "coloring")
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(colors.len(), 4);
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
        assert_ne!(colors[u], colors[v]);
    }

    // An invalid witness is rejected before extraction.
    std::fs::write(dir.path().join("bad.w"), "1\n").unwrap();
    let o = dsq(
        &[
            "extract",
            "ec",
            "--instance",
            "c4.dsq",
            "--roles",
            "c4.roles",
            "--witness",
            "bad.w",
        ],
        dir.path(),
    );
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn decompositions_round_trip() {
    let dir = workspace();
    let td = dsq(&["td", "build", "p3.dsq"], dir.path());
    assert_eq!(td.status.code(), Some(0));
    std::fs::write(dir.path().join("p3.td"), &td.stdout).unwrap();
    let check = dsq(&["td", "check", "p3.dsq", "p3.td"], dir.path());
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(field(&stdout(&check), "width"), Some("1"));
    let o = dsq(
        &["solve-dsq", "p3.dsq", "--td", "p3.td", "--reduce"],
        dir.path(),
    );
    assert_eq!(field(&stdout(&o), "witness"), Some("2"));

    std::fs::write(dir.path().join("bad.td"), "s td 2 2 3\nb 1 1 2\nb 2 3\n").unwrap();
    let check = dsq(&["td", "check", "p3.dsq", "bad.td"], dir.path());
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(field(&stdout(&check), "valid"), Some("no"));
}

#[test]
fn verify_witnesses() {
    let dir = workspace();
    std::fs::write(dir.path().join("good.w"), "2\n").unwrap();
    std::fs::write(dir.path().join("bad.w"), "1\n").unwrap();
    assert_eq!(
        dsq(
            &["verify", "p3.dsq", "--witness", "good.w", "--oracle"],
            dir.path()
        )
        .status
        .code(),
        Some(0)
    );
    let o = dsq(&["verify", "p3.dsq", "--witness", "bad.w"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation: 3 is hit 0 times"));
    assert_eq!(
        dsq(&["verify", "p3.dsq"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn set_cover_solvers_agree() {
    let dir = workspace();
    std::fs::write(
        dir.path().join("a.scq"),
        "p scq 4 3 2\ns 1 2\ns 3 4\ns 2 3\n",
    )
    .unwrap();
    for algo in ["colorcoding", "branching", "brute"] {
        let o = dsq(
            &["solve-scq", "a.scq", "--algo", algo, "--seed", "3"],
            dir.path(),
        );
        assert_eq!(o.status.code(), Some(0), "{algo}");
        assert_eq!(field(&stdout(&o), "witness"), Some("1 2"), "{algo}");
    }
    std::fs::write(dir.path().join("b.scq"), "p scq 2 1 1\ns 1\n").unwrap();
    let o = dsq(&["solve-scq", "b.scq"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_over_generated_corpus() {
    let dir = workspace();
    let o = dsq(
        &[
            "gen", "random", "--seed", "12", "--count", "20", "--out", "corpus",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = dsq(&["bench", "corpus"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o).lines().count(), 1 + 60);

    std::fs::create_dir(dir.path().join("empty")).unwrap();
    let o = dsq(&["bench", "empty"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}
