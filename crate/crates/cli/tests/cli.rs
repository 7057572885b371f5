use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn turex(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_turex"));
    cmd.args(args)
        .env_remove("TURAN_CACHE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = turex(args, None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    json_of(&out)
}

#[test]
fn params_example() {
    assert_eq!(
        ok(&["params", "8", "21", "--json"]),
        json!({"s":2,"t":7,"sprime":0,"rho":"21/8","cond1":true,"cond2":true})
    );
    let out = turex(&["params", "7", "11"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["cond1"], json!(false));
    let csv = turex(&["params", "8", "21", "--csv"], None);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "a,b,s,t,sprime,rho,cond1,cond2\n8,21,2,7,0,21/8,true,true\n"
    );
}

#[test]
fn density_of_tree_json_from_stdin() {
    let tree = ok(&["make-tree", "--t", "3,4,2"]);
    let out = turex(&["density", "-"], Some(&tree.to_string()));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["density"], json!("18/5"));
    let bal = ok(&["balanced", "--t", "1,1,0"]);
    assert_eq!(bal["balanced"], json!(false));
}

#[test]
fn turan_example_and_cap() {
    let v = ok(&["turan", "4", "--h", "c4"]);
    assert_eq!(v["ex"], json!(4));
    assert_eq!(v["witness_edges"].as_array().unwrap().len(), 4);
    let out = turex(&["turan", "12", "--h", "k3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let series = turex(&["turan-series", "4", "6", "--h", "c4", "--csv"], None);
    assert_eq!(
        String::from_utf8(series.stdout).unwrap(),
        "n,ex\n4,4\n5,6\n6,7\n"
    );
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex.jsonl");
    let p = path.to_str().unwrap();
    let first = ok(&["turan", "6", "--h", "k3", "--cache", p]);
    let line_count = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(line_count, 1);
    let second = ok(&["turan", "6", "--h", "k3", "--cache", p]);
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);

    let mut f = std::fs::OpenOptions::new()
        .append(true)
        .open(&path)
        .unwrap();
    writeln!(f, "{{not json").unwrap();
    let compact = ok(&["cache-compact", "--cache", p]);
    assert_eq!(compact, json!({"records": 1, "dropped_lines": 1}));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
}

#[test]
fn threads_do_not_change_answers() {
    let one = ok(&["turan", "7", "--h", "c4"]);
    let four = ok(&["turan", "7", "--h", "c4", "--threads", "4"]);
    assert_eq!(one, four);
}

#[test]
fn obstruction_commands() {
    let fam = ok(&["obstructions", "3", "4", "2"]);
    assert_eq!(fam["members"].as_array().unwrap().len(), 2);
    let v = ok(&["verify-obstructions", "--t", "3,4,2"]);
    assert_eq!(v["status"], json!("ok"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    let mut dup = fam.clone();
    let star = dup["members"][0].clone();
    dup["members"].as_array_mut().unwrap().push(star);
    std::fs::write(&path, dup.to_string()).unwrap();
    let out = turex(
        &[
            "verify-obstructions",
            "--t",
            "3,4,2",
            "--family",
            path.to_str().unwrap(),
            "--minimality",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["status"], json!("redundant_member"));
    assert_eq!(v["redundant"], json!([0, 2]));
}

#[test]
fn constants_and_coverage() {
    let c = ok(&["constants", "2", "3", "1", "-p", "2"]);
    assert_eq!(c["alpha"], json!("3/5"));
    assert_eq!(c["C_i"], json!(["22"]));
    let out = turex(&["coverage", "8", "--csv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("a,s,status,minimal_m,b,s_param,t_param,sprime_param\n"));
    assert!(text.contains("\n8,5,new,2,21,2,7,0\n"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn embedding_counts() {
    let dir = tempfile::tempdir().unwrap();
    let edge = dir.path().join("edge.json");
    std::fs::write(&edge, r#"{"n":2,"edges":[[0,1]],"roots":[0]}"#).unwrap();
    let e = edge.to_str().unwrap();
    assert_eq!(ok(&["inj", "--f", e, "--g", "k13"])["inj"], json!(6));
    assert_eq!(
        ok(&["amp", "--f", e, "--g", "k13", "-c", "3"])["amp"],
        json!(3)
    );
    let packing = ok(&["amp", "--f", e, "--g", "k13", "-c", "3", "--sigma", "0:0"]);
    assert_eq!(packing, json!({"packing": 3, "ample": true}));
    let ext = ok(&["ext", "--f1", e, "--f2", e, "--g", "k13", "-c", "4"]);
    assert_eq!(ext["ext"], json!(0));
}

#[test]
fn toolkit_commands() {
    let w = r#"{"k":2,"sequences":[[1,2],[1,3],[4,5]]}"#;
    let out = turex(&["sunflower", "-c", "2"], Some(w));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["found"], json!(true));
    assert_eq!(v["valid"], json!(true));

    let c6 = r#"{"left":3,"right":3,"edges":[[0,0],[0,1],[1,1],[1,2],[2,2],[2,0]]}"#;
    let out = turex(&["kst", "-"], Some(c6));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["kst_found"], json!(false));

    assert_eq!(
        ok(&["sandwich", "c5", "--c", "0.5", "--alpha", "1/2"])["sandwiched"],
        json!(true)
    );
    let out = turex(&["sandwich", "c5", "--c", "2", "--alpha", "1"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fit_from_stdin() {
    let out = turex(&["fit"], Some("n,ex\n2,4\n3,9\n4,16\n5,25\n"));
    assert_eq!(out.status.code(), Some(0));
    let slope = json_of(&out)["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 1e-9);
    let out = turex(&["fit"], Some("[[2,4]]"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_sweeps_reproduce() {
    let a = turex(
        &[
            "sweep", "amp", "--seed", "11", "--pairs", "10", "--max", "6",
        ],
        None,
    );
    let b = turex(
        &[
            "sweep", "amp", "--seed", "11", "--pairs", "10", "--max", "6",
        ],
        None,
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        ok(&["sweep", "kst", "--max", "3"])["counterexamples"],
        json!([])
    );
}

#[test]
fn input_errors_exit_2() {
    for (args, stdin) in [
        (vec!["density", "-"], Some("{\"n\":2,\"edges\":[[0,0]]}")),
        (vec!["density", "-"], Some("not json")),
        (vec!["turan", "4", "--h", "nonsense"], None),
        (vec!["params", "0", "3"], None),
        (vec!["make-tree", "--catalog", "z:1"], None),
        (vec!["power", "--t", "1,1,1", "-p", "0"], None),
        (vec!["balanced", "--t", "1,1"], None),
        (vec!["coverage", "8", "--bogus-flag"], None),
        (vec!["obstructions", "2", "3", "1", "--csv"], None),
    ] {
        let out = turex(&args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty() || args.contains(&"--csv"));
    }
}
