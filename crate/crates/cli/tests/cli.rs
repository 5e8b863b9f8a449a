use std::io::Write;
use std::process::{Command, Output, Stdio};

use equimatch::families::enumerate_all;
use equimatch::graph::io::{parse_graph6, to_graph6};
use equimatch::graph::is_isomorphic_small;
use equimatch::matching::Oracle;
use equimatch::Graph;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equimatch"));
    cmd.args(args)
        .env_remove("EQUIMATCH_ORACLE_CEILING")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

#[test]
fn recognize_c5() {
    let out = run(&["recognize"], &to_graph6(&Graph::cycle(5)));
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(keys(v), ["verdict", "branch", "family", "reject_reason", "n", "m"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["family"]["id"], "c5");
    assert_eq!(v["reject_reason"], Value::Null);
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(5), Some(5)));
}

#[test]
fn recognize_k4_edge_list() {
    let out = run(&["--format", "edgelist", "recognize"], "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(code(&out), 1);
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"], false);
    assert_eq!(v["reject_reason"], "has_triangle");
}

#[test]
fn recognize_petersen_agrees_with_oracle() {
    let p = Graph::petersen();
    assert!(!Oracle::default().is_equimatchable(&p).unwrap());
    let out = run(&["recognize"], &to_graph6(&p));
    assert_eq!(code(&out), 1);
    assert_eq!(json_lines(&out)[0]["verdict"], false);
}

#[test]
fn recognize_reads_files_and_text_mode() {
    let dir = std::env::temp_dir().join(format!("equimatch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c7.g6");
    std::fs::write(&path, to_graph6(&Graph::cycle(7)) + "\n").unwrap();
    let out = run(&["--output", "text", "recognize", path.to_str().unwrap()], "");
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "true nonbipartite_family c7 order=7 size=7");
}

#[test]
fn bulk_stream_carries_indices() {
    let input = format!("{}\nnot graph6 at all\n{}\n", to_graph6(&Graph::cycle(5)), to_graph6(&Graph::cycle(9)));
    let out = run(&["recognize"], &input);
    assert_eq!(code(&out), 2);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!((recs[0]["index"].as_u64(), recs[0]["verdict"].as_bool()), (Some(0), Some(true)));
    assert_eq!((recs[1]["index"].as_u64(), recs[1]["verdict"].as_bool()), (Some(2), Some(false)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graph 1"));
}

#[test]
fn bad_input_exits_2() {
    let out = run(&["recognize"], "");
    assert_eq!(code(&out), 2);
    let out = run(&["--format", "edgelist", "recognize"], "3 1\n0 7\n");
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    let out = run(&["recognize", "/nonexistent/graph.g6"], "");
    assert_eq!(code(&out), 2);
}

#[test]
fn generate_c7() {
    let out = run(&["generate", "c7"], "");
    assert_eq!(code(&out), 0);
    let g = parse_graph6(stdout(&out).trim()).unwrap();
    assert!(is_isomorphic_small(&g, &Graph::cycle(7)).unwrap().is_some());
}

#[test]
fn generate_f11_is_equimatchable() {
    let out = run(&["generate", "f11", "n=1"], "");
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    let g = parse_graph6(line.trim()).unwrap();
    assert_eq!(g.order(), 7);
    let v = run(&["verify"], &line);
    assert_eq!(code(&v), 0);
    assert_eq!(json_lines(&v)[0]["equimatchable"], true);
}

#[test]
fn generate_rejects_constraint_violation() {
    let out = run(&["generate", "f21", "n=1", "r=1", "s=1"], "");
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n>=2"));
    assert_eq!(code(&run(&["generate", "f11"], "")), 2);
    assert_eq!(code(&run(&["generate", "f11", "n=1", "q=2"], "")), 2);
    assert_eq!(code(&run(&["generate", "nope"], "")), 2);
}

#[test]
fn generate_then_recognize_round_trips() {
    let mut lines = String::new();
    let members = enumerate_all(12).unwrap();
    for (p, _) in &members {
        let mut args = vec!["generate".to_string(), p.family().token().to_string()];
        args.extend(p.assignment().iter().map(|(k, v)| format!("{}={v}", k.name())));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args, "");
        assert_eq!(code(&out), 0, "{p}");
        lines.push_str(&stdout(&out));
    }
    let out = run(&["recognize"], &lines);
    assert_eq!(code(&out), 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), members.len());
    assert!(recs.iter().all(|r| r["verdict"] == true));
}

#[test]
fn enumerate_small_bounds() {
    let out = run(&["enumerate", "5"], "");
    assert_eq!(code(&out), 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(keys(&recs[0]), ["family", "params", "graph6"]);
    assert_eq!(recs[0]["family"], "c5");

    let recs = json_lines(&run(&["enumerate", "7"], ""));
    let fams: Vec<&str> = recs.iter().map(|r| r["family"].as_str().unwrap()).collect();
    assert!(fams.contains(&"c5") && fams.contains(&"c7"));
    assert!(recs.iter().any(|r| r["family"] == "f11" && r["params"]["n"] == 1));
    assert!(!fams.contains(&"f4"));
}

#[test]
fn enumerate_cross_check() {
    let out = run(&["enumerate", "9", "--cross-check"], "");
    assert_eq!(code(&out), 0);
    for r in json_lines(&out) {
        assert_eq!(
            keys(&r),
            ["family", "params", "graph6", "oracle_equimatchable", "factor_critical", "triangle_free"]
        );
        assert_eq!(r["oracle_equimatchable"], true);
        assert_eq!(r["factor_critical"], true);
        assert_eq!(r["triangle_free"], true);
    }
    // The 11-vertex g21 members are not equimatchable.
    let out = run(&["enumerate", "11", "--cross-check"], "");
    assert_eq!(code(&out), 3);
    assert!(json_lines(&out)
        .iter()
        .any(|r| r["family"] == "g21" && r["oracle_equimatchable"] == false));
}

#[test]
fn enumerate_ceilings() {
    assert_eq!(code(&run(&["enumerate", "65"], "")), 2);
    assert_eq!(code(&run(&["enumerate", "25", "--cross-check"], "")), 2);
    let out = run_env(&["enumerate", "9", "--cross-check"], "", &[("EQUIMATCH_ORACLE_CEILING", "8")]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&run(&["--oracle-ceiling", "0", "enumerate", "5"], "")), 2);
}

#[test]
fn verify_examples() {
    let out = run(&["verify"], "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(code(&out), 1);
    let v = &json_lines(&out)[0];
    assert_eq!(
        keys(v),
        [
            "equimatchable",
            "max_matching",
            "min_maximal_matching",
            "factor_critical",
            "triangle_free",
            "bipartite",
            "witness"
        ]
    );
    assert_eq!(v["equimatchable"], false);
    assert_eq!(v["witness"], serde_json::json!([[1, 2]]));

    let v = &json_lines(&run(&["verify"], &to_graph6(&Graph::cycle(7))))[0];
    assert_eq!((v["equimatchable"].as_bool(), v["factor_critical"].as_bool()), (Some(true), Some(true)));
    assert_eq!(v["witness"], Value::Null);

    let v = &json_lines(&run(&["verify"], &to_graph6(&Graph::complete_bipartite(3, 3))))[0];
    assert_eq!(v["equimatchable"], true);
    assert_eq!(v["bipartite"], true);
    assert_eq!(v["factor_critical"], false);
}

#[test]
fn verify_respects_ceiling() {
    let c7 = to_graph6(&Graph::cycle(7));
    let out = run_env(&["verify"], &c7, &[("EQUIMATCH_ORACLE_CEILING", "6")]);
    assert_eq!(code(&out), 2);
    let out = run_env(&["--oracle-ceiling", "7", "verify"], &c7, &[("EQUIMATCH_ORACLE_CEILING", "6")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn export_dot() {
    let out = run(&["export-dot"], "2 1\n0 1\n");
    assert_eq!(stdout(&out), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
    let out = run(&["export-dot"], &to_graph6(&Graph::empty(1)));
    assert_eq!(stdout(&out), "graph G {\n  0;\n}\n");
    let out = stdout(&run(&["export-dot"], &to_graph6(&Graph::cycle(5))));
    assert_eq!(out.lines().filter(|l| l.ends_with(';') && !l.contains("--")).count(), 5);
    assert_eq!(out.matches("--").count(), 5);
}
