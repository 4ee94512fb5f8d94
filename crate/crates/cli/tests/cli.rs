use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn reconf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reconf")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const C4: &str = "graph undirected\n4 4\n0 1\n1 2\n2 3\n3 0\n";
const P4: &str = "graph undirected\n4 3\n0 1\n1 2\n2 3\n";

#[test]
fn exp_level_one_has_distance_eleven() {
    let d = tempfile::tempdir().unwrap();
    let g = reconf(d.path(), &["gen", "exp", "--k", "1", "--out", "e", "--witness"]);
    assert_eq!(g.status.code(), Some(0), "{}", stderr(&g));
    for ext in ["graph", "paths", "json", "seq"] {
        assert!(d.path().join(format!("e.{ext}")).exists(), "missing e.{ext}");
    }
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("e.json")).unwrap()).unwrap();
    assert_eq!(meta["witness_length"], 11);

    let s = reconf(d.path(), &["solve", "sp", "--instance", "e", "--out", "found.seq"]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    assert!(stderr(&s).contains("distance 11"), "{}", stderr(&s));
    assert!(fs::read_to_string(d.path().join("found.seq")).unwrap().starts_with("sp-sequence 11\n"));

    for seq in ["found.seq", "e.seq"] {
        let v = reconf(d.path(), &["validate", "sp", "--graph", "e.graph", "--seq", seq]);
        assert_eq!(v.status.code(), Some(0), "{seq}: {}", stderr(&v));
    }
}

#[test]
fn budget_outcomes_map_to_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("unsat.cnf"), "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    fs::write(d.path().join("sat.cnf"), "p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();
    assert_eq!(reconf(d.path(), &["gen", "sat", "--cnf", "unsat.cnf", "--out", "u"]).status.code(), Some(0));
    assert_eq!(reconf(d.path(), &["gen", "sat", "--cnf", "sat.cnf", "--out", "s"]).status.code(), Some(0));

    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("u.json")).unwrap()).unwrap();
    assert_eq!(meta["budget"], 2 * 2 * (1 + 2));

    // The unsatisfiable instance has no sequence at any length.
    let no = reconf(d.path(), &["solve", "sp", "--instance", "u"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "not-reconfigurable\n");
    let still_no = reconf(d.path(), &["solve", "sp", "--instance", "u", "--strict-budget"]);
    assert_eq!(still_no.status.code(), Some(1));

    assert_eq!(reconf(d.path(), &["gen", "exp", "--k", "1", "--out", "e"]).status.code(), Some(0));
    let short = ["solve", "sp", "--instance", "e", "--max-len", "5"];
    let cut = reconf(d.path(), &short);
    assert_eq!(cut.status.code(), Some(1));
    assert_eq!(stdout(&cut), "budget-exceeded 5\n");
    let strict = reconf(d.path(), &[&short[..], &["--strict-budget"]].concat());
    assert_eq!(strict.status.code(), Some(3));
    let capped = reconf(d.path(), &["solve", "sp", "--instance", "e", "--max-states", "3"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(stdout(&capped).starts_with("undetermined"));

    let yes = reconf(d.path(), &["solve", "sp", "--instance", "s", "--out", "w.seq"]);
    assert_eq!(yes.status.code(), Some(0), "{}", stderr(&yes));
    let v = reconf(d.path(), &["validate", "sp", "--graph", "s.graph", "--seq", "w.seq"]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
}

#[test]
fn auto_dispatch_agrees_with_bfs() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("c4.graph"), C4).unwrap();
    fs::write(d.path().join("p4.graph"), P4).unwrap();
    let cases: [(&str, &str, &str, &str); 3] =
        [("c4.graph", "0,2", "1,3", "ts"), ("p4.graph", "0,2", "1,3", "tj"), ("p4.graph", "0,3", "0,2", "ts")];
    for (graph, from, to, model) in cases {
        let base = ["solve", "is", "--graph", graph, "--from", from, "--to", to, "--model", model];
        let auto = reconf(d.path(), &[&base[..], &["--algo", "auto"]].concat());
        let bfs = reconf(d.path(), &[&base[..], &["--algo", "bfs"]].concat());
        assert_eq!(auto.status.code(), bfs.status.code(), "{graph} {model}");
        let body = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(body(&auto), body(&bfs), "{graph} {model}");
    }
    // C4 is a cograph with no slide out of {0, 2}.
    let c4 = reconf(d.path(), &["solve", "is", "--graph", "c4.graph", "--from", "0,2", "--to", "1,3", "--model", "ts"]);
    assert_eq!(c4.status.code(), Some(1));
    assert_eq!(stdout(&c4), "not-reconfigurable\n");
}

#[test]
fn emitted_is_sequences_revalidate() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("p4.graph"), P4).unwrap();
    let tj = reconf(d.path(), &["solve", "is", "--graph", "p4.graph", "--from", "0,2", "--to", "1,3", "--model", "tj", "--out", "tj.seq"]);
    assert_eq!(tj.status.code(), Some(0), "{}", stderr(&tj));
    let tar = reconf(d.path(), &["convert", "tj-to-tar", "--graph", "p4.graph", "--seq", "tj.seq", "--out", "tar.seq"]);
    assert_eq!(tar.status.code(), Some(0), "{}", stderr(&tar));
    let back = reconf(d.path(), &["convert", "tar-to-tj", "--graph", "p4.graph", "--seq", "tar.seq", "--out", "back.seq"]);
    assert_eq!(back.status.code(), Some(0), "{}", stderr(&back));
    for seq in ["tj.seq", "tar.seq", "back.seq"] {
        let v = reconf(d.path(), &["validate", "is", "--graph", "p4.graph", "--seq", seq]);
        assert_eq!(v.status.code(), Some(0), "{seq}: {}", stderr(&v));
    }
    let body = |name: &str| {
        let text = fs::read_to_string(d.path().join(name)).unwrap();
        text.lines().filter(|l| !l.starts_with('#')).map(str::to_owned).collect::<Vec<_>>()
    };
    assert_eq!(body("tj.seq"), body("back.seq"));
}

#[test]
fn reduce_and_map_back() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("c4.graph"), C4).unwrap();
    fs::write(d.path().join("c4sp.seq"), "sp-sequence 1\n0 1 2\n0 3 2\n").unwrap();
    let r = reconf(d.path(), &["reduce", "sp-to-is", "--graph", "c4.graph", "--s", "0", "--t", "2", "--out", "red"]);
    assert_eq!(r.status.code(), Some(0), "{}", stderr(&r));
    let ts = reconf(d.path(), &["map-seq", "--graph", "c4.graph", "--s", "0", "--t", "2", "--seq", "c4sp.seq", "--to", "ts", "--out", "ts.seq"]);
    assert_eq!(ts.status.code(), Some(0), "{}", stderr(&ts));
    let v = reconf(d.path(), &["validate", "is", "--graph", "red.graph", "--seq", "ts.seq"]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    let sp = reconf(d.path(), &["map-seq", "--graph", "c4.graph", "--s", "0", "--t", "2", "--seq", "ts.seq", "--to", "sp"]);
    assert_eq!(sp.status.code(), Some(0), "{}", stderr(&sp));
    assert_eq!(stdout(&sp), "sp-sequence 1\n0 1 2\n0 3 2\n");
}

#[test]
fn usage_and_format_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("c4.graph"), C4).unwrap();
    fs::write(d.path().join("bad.graph"), "graph undirected\n3 1\n0 7\n").unwrap();
    fs::write(d.path().join("bad.seq"), "sp-sequence 1\n0 1 2\n0 2\n").unwrap();
    let cases: [&[&str]; 5] = [
        &["solve"],
        &["solve", "is", "--graph", "c4.graph", "--from", "0,2", "--to", "1,3", "--model", "sideways"],
        &["solve", "is", "--graph", "bad.graph", "--from", "0", "--to", "1", "--model", "tj"],
        &["solve", "is", "--graph", "c4.graph", "--from", "0,1", "--to", "1,3", "--model", "tj"],
        &["validate", "sp", "--graph", "c4.graph", "--seq", "bad.seq"],
    ];
    for args in cases {
        let o = reconf(d.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let missing = reconf(d.path(), &["export", "dot", "--graph", "nope.graph"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("nope.graph"));
}

#[test]
fn dot_export_highlights_paths() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(reconf(d.path(), &["gen", "exp", "--k", "1", "--out", "e"]).status.code(), Some(0));
    let o = reconf(d.path(), &["export", "dot", "--graph", "e.graph", "--paths", "e.paths"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("digraph") || text.starts_with("graph"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn oracle_dump_is_consistent() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("c4.graph"), C4).unwrap();
    let o = reconf(d.path(), &["oracle", "--space", "tj", "--graph", "c4.graph", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let header = text.lines().find(|l| l.starts_with("oracle")).unwrap();
    let nums: Vec<usize> = header.split_whitespace().filter_map(|w| w.parse().ok()).collect();
    // C4 has two independent pairs and every jump between them lands next to the kept token.
    assert_eq!(nums[nums.len() - 2..], [2, 0]);
    assert_eq!(text.lines().filter(|l| l.starts_with("state ")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), 0);

    let tar = reconf(d.path(), &["oracle", "--space", "tar", "--graph", "c4.graph", "--k", "1"]);
    let text = stdout(&tar);
    // Sets of size at most two: the empty set, four singletons, two pairs.
    assert_eq!(text.lines().filter(|l| l.starts_with("state ")).count(), 7);
}
