use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buneman"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sigma8() -> String {
    data("sigma8.splits").to_string_lossy().into_owned()
}

#[test]
fn graph_sizes() {
    let o = run(&["graph", &sigma8()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("vertices: 16") && out.contains("edges: 22"),
        "{out}"
    );
}

#[test]
fn cuts_show_the_marked_vertex() {
    let o = run(&["cuts", &sigma8()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("cut vertices: 4 of 16"), "{out}");
    assert!(out.contains("Σ^(φ) = {S1235,S45,S1234,S67,S78}"), "{out}");
    assert!(
        out.contains("Γ_φ(Σ^(φ)): {S1235,S45,S1234} | {S67,S78}"),
        "{out}"
    );
}

#[test]
fn blocks_and_trees() {
    let out = stdout(&run(&["blocks", &sigma8()]));
    assert!(out.starts_with("blocks: 5"), "{out}");
    let out = stdout(&run(&["tree", &sigma8()]));
    assert_eq!(out.matches(" -- ").count(), 20);
    let out = stdout(&run(&["xtree", &sigma8()]));
    assert_eq!(out.trim(), "(1,(2,3,(4,5,(6,7,8))));");
}

#[test]
fn single_split_newick() {
    let out = stdout(&run(&["xtree", &data("single.splits").to_string_lossy()]));
    assert_eq!(out.trim(), "(a,b+c);");
}

#[test]
fn exports_are_byte_identical() {
    for flag in ["--dot", "--json"] {
        let a = run(&["graph", flag, &sigma8()]);
        let b = run(&["graph", flag, &sigma8(), "--sequential"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{flag}");
    }
}

#[test]
fn strategies_agree() {
    let a = stdout(&run(&["graph", "--json", &sigma8(), "--strategy", "brute"]));
    let b = stdout(&run(&[
        "graph",
        "--json",
        &sigma8(),
        "--strategy",
        "incremental",
    ]));
    assert_eq!(a, b);
}

#[test]
fn check_file_and_random() {
    let o = run(&["check", &sigma8(), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["check", "--random", "25", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checked 25 random systems (seed 5): 0 failed"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.splits");
    std::fs::write(&bad, "elements: 1 2 3\n\nS: \n").unwrap();
    let o = run(&["graph", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");

    let unknown = dir.path().join("unknown.splits");
    std::fs::write(&unknown, "elements: 1 2 3\n1 9\n").unwrap();
    assert_eq!(
        run(&["graph", unknown.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["graph", "/nonexistent/file"]).status.code(), Some(2));

    assert_eq!(
        run(&["--max-splits", "4", "graph", &sigma8()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["graph"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn bench_runs() {
    let o = run(&["bench", "--repeat", "1", "--m", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("brute") && out.contains("incremental"),
        "{out}"
    );
}
