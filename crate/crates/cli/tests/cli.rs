use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn turan(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .env("TURAN_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn search_butterfly_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["search", "--n", "3", "--forbid", "@butterfly", "--q", "@chain(2)"];
    let cold = turan(&args, &cache);
    assert_eq!(cold.status.code(), Some(0));
    let report = json(&cold);
    assert_eq!(report["optimum"], 7);
    assert_eq!(report["complete"], true);
    assert!(cache.exists());

    let warm = turan(&args, &cache);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(stdout(&warm), stdout(&cold));
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
}

#[test]
fn no_cache_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = turan(
        &["search", "--n", "3", "--forbid", "a<b; c<b; c<d", "--q", "@chain(2)", "--no-cache"],
        &cache,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["optimum"], 3);
    assert!(!cache.exists());
}

#[test]
fn level_search() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(
        &["search", "--n", "6", "--forbid", "@chain(3)", "--q", "@chain(2)", "--levels"],
        &dir.path().join("c"),
    );
    let r = json(&o);
    assert_eq!(r["optimum"], 90);
    assert_eq!(r["witness_levels"], serde_json::json!([[2, 4]]));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c");
    for args in [
        &["search", "--n", "4", "--forbid", "@N", "--q", "@chain(2)", "--no-cache"][..],
        &["verify", "--lemma", "nfree-components", "--seed", "3"][..],
        &["construct", "p5", "--n", "6", "--format", "json"][..],
    ] {
        assert_eq!(stdout(&turan(args, &cache)), stdout(&turan(args, &cache)));
    }
}

#[test]
fn formula_sweep_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = turan(&["formula", "butterfly_p2", "--sweep", "2..10"], &c);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id\tn\tvalue");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"butterfly_p2\t5\t30"));

    let o = turan(&["formula", "katona_nagy", "--n", "5", "--param", "3"], &c);
    assert_eq!(stdout(&o).trim(), "108/5");
    let o = turan(&["formula", "sublattice", "--n", "4", "--param", "1", "--param", "3"], &c);
    assert_eq!(stdout(&o).trim(), "12");

    assert_eq!(turan(&["formula", "butterfly_p2"], &c).status.code(), Some(2));
    assert_eq!(turan(&["formula", "nope", "--n", "3"], &c).status.code(), Some(2));
    assert_eq!(turan(&["formula", "p5", "--sweep", "9..3"], &c).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["verify", "--lemma", "zigzag", "--seed", "7"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["lemma"], "zigzag");
    assert_eq!(r["failures"], 0);
    assert_eq!(r["seed"], 7);
    assert!(r["instances_checked"].as_u64().unwrap() > 10_000);

    let o = turan(&["verify", "--lemma", "nonsense"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_free_count_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let fam = dir.path().join("p6.txt");
    let o = turan(&["construct", "p6", "--n", "5"], &c);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&fam, &o.stdout).unwrap();
    let f = fam.to_str().unwrap();

    let free = json(&turan(&["free", "--family", f, "--forbid", "@W; @M"], &c));
    assert_eq!(free["free"], true);
    assert!(free["witness"].is_null());

    let hit = json(&turan(&["free", "--family", f, "--forbid", "@chain(3)"], &c));
    assert_eq!(hit["free"], false);
    assert_eq!(hit["witness"]["assignment"].as_array().unwrap().len(), 3);

    let count = json(&turan(&["count", "--family", f, "--q", "@chain(2)"], &c));
    assert_eq!(count["copies"], 21);

    // Same family through JSON on stdin.
    let js = turan(&["construct", "p6", "--n", "5", "--format", "json"], &c);
    let mut child = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(["count", "--family", "-", "--q", "x<y"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&js.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(json(&o)["copies"], 21);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    for args in [
        &["search", "--n", "3", "--forbid", "a<b; b<a", "--q", "@chain(2)"][..],
        &["search", "--n", "3", "--forbid", "@frob", "--q", "@chain(2)"][..],
        &["search", "--n", "3", "--forbid", "@N", "--q", "@pathfamily(4)"][..],
        &["count", "--family", "/nonexistent/family", "--q", "@chain(2)"][..],
        &["construct", "nothing", "--n", "4"][..],
        &["construct", "middle", "--n", "4", "--variant", "sideways"][..],
        &["bogus"][..],
    ] {
        let o = turan(args, &c);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn pretty_output_is_tabular() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["--pretty", "verify", "--lemma", "sublattice"], &dir.path().join("c"));
    let text = stdout(&o);
    assert!(text.starts_with("lemma"));
    assert!(text.contains("sublattice"));
}
