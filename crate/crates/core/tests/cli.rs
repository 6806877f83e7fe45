use std::path::Path;
use std::process::{Command, Output};

use fuzztree::io::{curve_points, parse_ft, Interpolation, ResultFile};

const AND_OR3: &str = "toplevel \"top\";\n\"top\" and \"u\" \"g\";\n\"g\" or \"v\" \"w\";\n\"u\" prob=0.8;\n\"v\" prob=0.1;\n\"w\" prob=0.4;\n";
const DAG: &str = "toplevel top;\ntop or g1 g2;\ng1 and a b;\ng2 and b c;\na prob=0.5 tri=0.4,0.5,0.6;\nb prob=0.5 tri=0.4,0.5,0.6;\nc prob=0.5 tri=0.4,0.5,0.6;\n";

fn fuzztree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzztree")).args(args).env_remove("FUZZTREE_JOBS").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_crisp_and_or_with_every_engine() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "and_or.ft", AND_OR3);
    for engine in ["bottomup", "bdd", "bruteforce", "auto"] {
        let out = dir.path().join(format!("{engine}.json"));
        let o = fuzztree(&["analyze", &ft, "--engine", engine, "--cuts", "10", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let r = ResultFile::read(&out).unwrap();
        assert_eq!(r.n_cuts, 10);
        assert!(r.lower.iter().chain(&r.upper).all(|&x| (x - 0.368).abs() < 1e-12));
        assert!((r.crisp_value.unwrap() - 0.368).abs() < 1e-12);
    }
}

#[test]
fn analyze_writes_to_stdout_and_honours_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "dag.ft", DAG);
    let a = fuzztree(&["analyze", &ft, "--jobs", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_fuzztree")).args(["analyze", &ft]).env("FUZZTREE_JOBS", "3").output().unwrap();
    assert!(a.status.success() && b.status.success());
    let ra = ResultFile::from_json(&String::from_utf8(a.stdout).unwrap()).unwrap();
    let rb = ResultFile::from_json(&String::from_utf8(b.stdout).unwrap()).unwrap();
    assert_eq!((ra.lower.clone(), ra.upper.clone()), (rb.lower, rb.upper));
    assert_eq!(ra.engine, "bdd");
    assert!((ra.lower[9] - 0.375).abs() < 1e-12 && (ra.upper[9] - 0.375).abs() < 1e-12);
    assert!(!fuzztree(&["analyze", &ft, "--jobs", "0"]).status.success());
}

#[test]
fn bottom_up_on_dag_fails() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "dag.ft", DAG);
    let o = fuzztree(&["analyze", &ft, "--engine", "bottomup"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("tree-structured"));
}

#[test]
fn semantic_errors_name_the_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "bad.ft", "toplevel \"Missing\";\n\"a\" prob=0.5;\n");
    let o = fuzztree(&["analyze", &ft]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Missing"));
    assert!(!fuzztree(&["analyze", "/nonexistent/file.ft"]).status.success());
}

#[test]
fn oracle_reports_brute_force_and_discrete_values() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "and_or.ft", AND_OR3);
    let o = fuzztree(&["oracle", &ft]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["unreliability"].as_f64().unwrap() - 0.368).abs() < 1e-12);
    assert_eq!(v["cut_sets"], 3);
    assert!(v.get("discrete").is_none());

    let ft = write(dir.path(), "dag.ft", DAG);
    let o = fuzztree(&["oracle", &ft, "--cuts", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let discrete = v["discrete"].as_array().unwrap();
    let apex = discrete.iter().find(|e| e["degree"] == 1.0).unwrap();
    assert!((apex["value"].as_f64().unwrap() - 0.375).abs() < 1e-12);
}

#[test]
fn gen_is_reproducible_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ft");
    let b = dir.path().join("b.ft");
    for out in [&a, &b] {
        assert!(fuzztree(&["gen", "--seed", "7", "--size", "1000", "--out", out.to_str().unwrap()]).status.success());
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let m = parse_ft(std::str::from_utf8(&text).unwrap()).unwrap();
    assert!(m.tree.node_count() >= 1000 && m.tree.is_tree_structured());

    let o = fuzztree(&["gen", "--seed", "3", "--size", "200", "--dag", "--sharing", "0.3", "--fuzz", "mixed"]);
    assert!(o.status.success());
    let m = parse_ft(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(!m.tree.is_tree_structured());
    assert!(m.shapes.iter().all(Option::is_some));
    assert!(!fuzztree(&["gen", "--seed", "1", "--size", "10", "--spread", "2"]).status.success());
}

#[test]
fn curve_step_values_are_memberships() {
    let dir = tempfile::tempdir().unwrap();
    let ft = write(dir.path(), "dag.ft", DAG);
    let res = dir.path().join("r.json");
    assert!(fuzztree(&["analyze", &ft, "--cuts", "5", "--out", res.to_str().unwrap()]).status.success());
    let file = ResultFile::read(&res).unwrap();
    let f = file.to_fuzzy().unwrap();
    for (mode, name) in [(Interpolation::Step, "step"), (Interpolation::Linear, "linear")] {
        let o = fuzztree(&["curve", res.to_str().unwrap(), "--interpolate", name]);
        assert!(o.status.success());
        let text = String::from_utf8(o.stdout).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,membership"));
        let pts: Vec<(f64, f64)> = lines
            .map(|l| {
                let (x, m) = l.split_once(',').unwrap();
                (x.parse().unwrap(), m.parse().unwrap())
            })
            .collect();
        assert_eq!(pts, curve_points(&f, mode));
        if mode == Interpolation::Step {
            assert!(pts.iter().all(|&(x, m)| m == f.membership_at(x)));
        }
    }
}

#[test]
fn curve_rejects_broken_results() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"engine":"bdd","n_cuts":2,"alpha":[0.5,1.0],"lower":[0.3,0.2],"upper":[0.4,0.35],"wall_time_ms":1.0}"#,
    );
    assert!(!fuzztree(&["curve", &bad]).status.success());
}

#[test]
fn bench_emits_grouped_csv() {
    let o = fuzztree(&["bench", "--mode", "tree", "--sizes", "200,400", "--reps", "2", "--group-width", "100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,nodes_mean,time_mean_s,time_std_s"));
    assert!(lines.count() >= 2);
    let o = fuzztree(&["bench", "--mode", "dag", "--instances", "4"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("group,nodes_mean,time_mean_s,time_std_s\n"));
}
