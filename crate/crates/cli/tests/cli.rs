use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED: &str = "# example\n[polynomial]\n2 = compact: 1x2\n1 = compact: 1x4+1x6\n[rhs]\ncompact: 16x2+4x4+18x6+1x12\n";

fn fdds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdds")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn worked_trace_has_five_rows() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "worked.eq", WORKED);
    let o = fdds(&["--mode", "explicit", "--trace", "solve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "4x1+1x3");
    assert_eq!(lines[1], "B_remaining\tY\tC\tP(Y+C)\tP(Y)\tdelta");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[2], "16x2+4x4+18x6+1x12\t0\t1x1\t1x2+1x4+1x6\t0\t1x2+1x4+1x6");
    assert_eq!(lines[6], "14x6+1x12\t4x1\t1x3\t16x2+4x4+18x6+1x12\t16x2+4x4+4x6\t14x6+1x12");
    for mode in ["auto", "compact", "general"] {
        let o = fdds(&["--mode", mode, "solve", s(&f)]);
        assert_eq!(stdout(&o), "4x1+1x3\n", "mode {mode}");
    }
}

#[test]
fn identity_equation_echoes_the_right_hand_side() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "id.eq", "[polynomial]\n1 = 0\n[rhs]\n1 2 0 0 3 3\n");
    let o = fdds(&["solve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let y = write(&dir, "y", &stdout(&o));
    let b = write(&dir, "b", "1 2 0 0 3 3");
    assert_eq!(stdout(&fdds(&["iso", s(&y), s(&b)])), "isomorphic\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let unsolvable = write(&dir, "u.eq", "[polynomial]\n1 = 1x2\n[rhs]\n1x4\n");
    let o = fdds(&["solve", s(&unsolvable)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "no solution\n"));

    let not_injective = write(&dir, "n.eq", "[polynomial]\n1 = 1x2+1x3\n[rhs]\n1x6\n");
    assert_eq!(fdds(&["solve", s(&not_injective)]).status.code(), Some(2));

    let garbled = write(&dir, "g.eq", "[polynomial]\n1 = 1x2\n[rhs]\n1y4\n");
    assert_eq!(fdds(&["solve", s(&garbled)]).status.code(), Some(3));
    assert_eq!(fdds(&["solve", s(&dir.path().join("missing"))]).status.code(), Some(3));
    assert_eq!(fdds(&["--mode", "bogus", "solve", s(&garbled)]).status.code(), Some(3));

    let huge = write(&dir, "h.eq", "[polynomial]\n1 = 1x1\n[rhs]\n10^9x1\n");
    assert_eq!(fdds(&["--mode", "explicit", "solve", s(&huge)]).status.code(), Some(4));
    assert_eq!(fdds(&["--mode", "compact", "solve", s(&huge)]).status.code(), Some(0));
}

#[test]
fn batch_keeps_input_order() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.eq", WORKED);
    let b = write(&dir, "b.eq", "[polynomial]\n1 = 1x2\n[rhs]\n1x4\n");
    let c = write(&dir, "c.eq", "[polynomial]\n1 = 1x2\n[rhs]\n2x2\n");
    let o = fdds(&["solve", s(&a), s(&b), s(&c)]);
    assert_eq!(o.status.code(), Some(1));
    let want = format!("== {}\n4x1+1x3\n== {}\nno solution\n== {}\n2x1\n", s(&a), s(&b), s(&c));
    assert_eq!(stdout(&o), want);
}

#[test]
fn algebra_commands() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (write(&dir, "a", "1x2"), write(&dir, "b", "1x3"));
    assert_eq!(stdout(&fdds(&["mul", s(&a), s(&b)])), "1x6\n");
    assert_eq!(stdout(&fdds(&["add", s(&a), s(&b)])), "1x2+1x3\n");
    let prod = write(&dir, "p", &stdout(&fdds(&["--mode", "explicit", "mul", s(&a), s(&b)])));
    let c6 = write(&dir, "c6", "1 2 3 4 5 0\n");
    assert_eq!(stdout(&fdds(&["iso", s(&c6), s(&prod)])), "isomorphic\n");
    assert_eq!(stdout(&fdds(&["iso", s(&c6), s(&a)])), "not-isomorphic\n");
    let tail = write(&dir, "t", "0 0 1");
    assert_eq!(stdout(&fdds(&["--depth", "3", "unroll", s(&tail)])), "tree 0\tperiod 1\t1 2 3 3\n");
    let empty = write(&dir, "e", "compact: 0");
    assert_eq!(stdout(&fdds(&["mul", s(&a), s(&empty)])), "compact: 0\n");
}

#[test]
fn canon_is_idempotent_and_label_free() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let g = fdds(&["--seed", &seed.to_string(), "--max-states", "9", "gen", "--kind", "fdds"]);
        let f = write(&dir, "f", &stdout(&g));
        let once = stdout(&fdds(&["canon", s(&f)]));
        let c = write(&dir, "c", &once);
        assert_eq!(stdout(&fdds(&["canon", s(&c)])), once);
        assert_eq!(stdout(&fdds(&["iso", s(&f), s(&c)])), "isomorphic\n");
    }
}

#[test]
fn generation_is_deterministic_and_solvable() {
    let dir = TempDir::new().unwrap();
    for kind in ["fdds", "cycles", "pseudo-cancelable", "linear", "poly", "general"] {
        let args = ["--seed", "7", "gen", "--kind", kind];
        let (x, y) = (fdds(&args), fdds(&args));
        assert_eq!(x.stdout, y.stdout, "{kind}");
        assert_eq!(x.status.code(), Some(0));
    }
    for seed in 0..8 {
        for kind in ["linear", "poly", "general"] {
            let g = fdds(&["--seed", &seed.to_string(), "gen", "--kind", kind]);
            let f = write(&dir, "eq", &stdout(&g));
            let first = fdds(&["solve", s(&f)]);
            assert_eq!(first.status.code(), Some(0), "{kind} seed {seed}: {}", stdout(&g));
            assert_eq!(fdds(&["solve", s(&f)]).stdout, first.stdout);
        }
    }
}

#[test]
fn convert_round_trips() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x", "1 0 2 4 5 3");
    let c = fdds(&["convert", s(&x), "--to", "compact"]);
    assert_eq!(stdout(&c), "compact: 1x1+1x2+1x3\n");
    let cf = write(&dir, "c", &stdout(&c));
    let back = write(&dir, "b", &stdout(&fdds(&["convert", s(&cf), "--to", "explicit"])));
    assert_eq!(stdout(&fdds(&["iso", s(&x), s(&back)])), "isomorphic\n");
    let tail = write(&dir, "t", "0 0");
    assert_eq!(fdds(&["convert", s(&tail), "--to", "compact"]).status.code(), Some(2));
}

#[test]
fn oracle_and_out_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "worked.eq", WORKED);
    let out = dir.path().join("sols.txt");
    let o = fdds(&["--max-states", "7", "--out", s(&out), "oracle", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let sols = std::fs::read_to_string(&out).unwrap();
    let mut lines: Vec<&str> = sols.lines().collect();
    lines.sort();
    assert_eq!(lines, vec!["2x1+1x2+1x3", "2x2+1x3", "4x1+1x3"]);
}

#[test]
fn bench_report_format() {
    let o = fdds(&["bench", "--kind", "compact", "--sizes", "5,10,20", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "size\tseconds");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("5\t"));
    assert!(lines[4].starts_with("exponent\t"));
}
