use std::path::Path;
use std::process::{Command, Output};

use interlace_core::MultiPoly;
use tempfile::TempDir;

fn itp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itp"))
        .args(args)
        .output()
        .expect("itp runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute(input: &str, kind: &str, method: &str, extra: &[&str]) -> Output {
    let mut args = vec!["compute", "--input", input, "--kind", kind, "--method", method];
    args.extend_from_slice(extra);
    itp(&args)
}

#[test]
fn k2_q_in_every_method() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "vertices: v w\nedges: v-w\n");
    for method in ["subset", "recursive", "section"] {
        let out = compute(&k2, "q", method, &[]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), "x^2 - 2*x + 2*y\n");
        let meta = String::from_utf8(out.stderr).unwrap();
        assert!(meta.contains("vertices: 2") && meta.contains(method), "{meta}");
    }
}

#[test]
fn single_looped_vertex_and_empty_graph() {
    let dir = TempDir::new().unwrap();
    let looped = write(&dir, "l.txt", "vertices: a\nloops: a\n");
    let empty = write(&dir, "e.txt", "vertices:\n");
    for method in ["subset", "recursive", "section"] {
        assert_eq!(stdout(&compute(&looped, "q", method, &[])), "x\n");
        assert_eq!(stdout(&compute(&empty, "q", method, &[])), "1\n");
    }
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "vertices: a b c\nloops: a\nedges: a-b b-c\n");
    for kind in ["q", "tutte_ia", "section_ias"] {
        let method = if kind == "tutte_ia" { "subset" } else { "section" };
        let out = stdout(&compute(&g, kind, method, &["--format", "json"]));
        let parsed = MultiPoly::from_json(out.trim_end()).unwrap();
        assert_eq!(parsed.to_json(), out.trim_end());
    }
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.txt",
        "vertices: a b c d e f g h\nloops: a d g\nedges: a-b b-c c-d d-e e-f f-g g-h h-a a-e\n",
    );
    let base = compute(&g, "q", "subset", &[]).stdout;
    for threads in ["1", "2", "4"] {
        let out = itp(&["--threads", threads, "compute", "--input", &g, "--kind", "q", "--method", "subset"]);
        assert_eq!(out.stdout, base);
    }
    for method in ["recursive", "section"] {
        assert_eq!(compute(&g, "q", method, &[]).stdout, base);
    }
}

#[test]
fn section_kinds_agree_across_methods() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "vertices: a b\nloops: b\nedges: a-b\n");
    for kind in ["section_ia", "section_ias"] {
        let want = stdout(&compute(&g, kind, "section", &[]));
        assert!(want.contains('u'));
        for method in ["subset", "recursive"] {
            assert_eq!(stdout(&compute(&g, kind, method, &[])), want, "{kind} {method}");
        }
    }
    for kind in ["tutte_ia", "tutte_ias"] {
        assert_eq!(
            stdout(&compute(&g, kind, "subset", &[])),
            stdout(&compute(&g, kind, "recursive", &[]))
        );
    }
}

#[test]
fn evaluation_points() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "vertices: v w\nedges: v-w\n");
    assert_eq!(stdout(&compute(&k2, "q", "subset", &["--eval", "x=2,y=2"])), "4\n");
    assert_eq!(stdout(&compute(&k2, "q", "subset", &["--eval", "x=1/2,y=3"])), "21/4\n");
    assert_eq!(stdout(&compute(&k2, "q", "subset", &["--eval", "x=2"])), "2*y\n");
    assert_eq!(
        stdout(&compute(&k2, "q", "subset", &["--eval", "x=2,y=2", "--format", "json"])),
        "{\"value\":\"4\"}\n"
    );
    assert_eq!(compute(&k2, "q", "subset", &["--eval", "x=1/2"]).status.code(), Some(2));
    assert_eq!(compute(&k2, "q", "subset", &["--eval", "x=1/0,y=1"]).status.code(), Some(2));
}

#[test]
fn param_rank_with_a_parameter_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "vertices: v\n");
    let params = write(&dir, "p.txt", "# q weights\nv phi a=1 b=1\nv chi a=x - 1 b=1\n");
    let sub = stdout(&compute(&g, "param_rank", "subset", &["--params", &params]));
    let rec = stdout(&compute(&g, "param_rank", "recursive", &["--params", &params]));
    assert_eq!(sub, rec);
    let want: MultiPoly = "s + 1 + (x - 1)*s*z + (x - 1)*z".parse().unwrap();
    assert_eq!(sub.trim_end().parse::<MultiPoly>().unwrap(), want);

    let with_psi = write(
        &dir,
        "q.txt",
        "v phi a=1 b=1\nv chi a=1 b=1\nv psi a=0 b=1\n",
    );
    let ias = stdout(&compute(&g, "param_rank", "subset", &["--params", &with_psi]));
    assert_eq!(ias, stdout(&compute(&g, "tutte_ia", "subset", &[])));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "vertices: v w\nedges: v-w\n");
    let bad = write(&dir, "bad.txt", "vertices: v\nedges: v-x\n");
    let params = write(&dir, "p.txt", "v phi a=1 b=1\n");
    let many = write(
        &dir,
        "many.txt",
        &format!("vertices: {}\n", (0..31).map(|i| format!("v{i}")).collect::<Vec<_>>().join(" ")),
    );
    let eight = write(
        &dir,
        "eight.txt",
        &format!("vertices: {}\n", (0..8).map(|i| format!("v{i}")).collect::<Vec<_>>().join(" ")),
    );

    let code = |o: Output| o.status.code();
    assert_eq!(code(compute(&bad, "q", "subset", &[])), Some(2));
    assert_eq!(code(compute("/nonexistent/graph", "q", "subset", &[])), Some(2));
    assert_eq!(code(compute(&many, "q", "subset", &[])), Some(3));
    assert_eq!(code(compute(&k2, "tutte_ia", "section", &[])), Some(4));
    assert_eq!(code(compute(&k2, "param_rank", "subset", &[])), Some(4));
    assert_eq!(code(compute(&k2, "q", "subset", &["--params", &params])), Some(4));
    assert_eq!(code(compute(&k2, "tutte_ia", "subset", &["--eval", "x=1,y=1"])), Some(4));
    assert_eq!(code(compute(&k2, "param_rank", "subset", &["--params", &params])), Some(2));
    assert_eq!(code(itp(&["check", "--input", &eight, "--suite", "methods"])), Some(3));
    assert_eq!(code(itp(&["selfcheck", "--max-vertices", "6"])), Some(3));

    let out = compute(&k2, "tutte_ia", "section", &[]);
    let diag = String::from_utf8(out.stderr).unwrap();
    assert_eq!(diag.lines().count(), 1, "{diag}");
}

#[test]
fn check_suites() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "vertices: v w\nedges: v-w\n");
    let out = itp(&["check", "--input", &k2, "--suite", "methods"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));

    let g = write(&dir, "g.txt", "vertices: a b c d e\nloops: c\nedges: a-b b-c c-d d-e e-a a-c\n");
    let out = itp(&["check", "--input", &g, "--suite", "all"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn selfcheck_counts() {
    for (n, want) in [(1, "2"), (2, "8"), (3, "64")] {
        let out = itp(&["selfcheck", "--max-vertices", &n.to_string(), "--seed", "3"]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(text.contains(&format!("graphs checked: {want}\n")), "{text}");
        assert!(text.contains("failures: 0"));
    }
    let a = itp(&["selfcheck", "--max-vertices", "2", "--seed", "9", "--random-extra", "5"]);
    let b = itp(&["selfcheck", "--max-vertices", "2", "--seed", "9", "--random-extra", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("random graphs checked: 5"));
}

#[test]
fn missing_input_file_is_reported() {
    let out = compute(Path::new("/no/such/file").to_str().unwrap(), "q", "subset", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("itp: cannot read"));
}
