use std::process::{Command, Output};

use serde_json::Value;

fn graphop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphop")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = graphop(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (doc, out.status.code().unwrap())
}

fn terms(doc: &Value) -> Vec<(String, String)> {
    doc["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["coefficient"].as_str().unwrap().to_string(), t["graph"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn compose_multigraphs() {
    let (doc, code) = structured(&["compose", "mg", "vertices=a,*; edges=a-*,a-*,*-*", "vertices=b,c; edges=b-c,c-c"]);
    assert_eq!(code, 0);
    let ts = terms(&doc);
    assert_eq!(ts.len(), 9);
    let mass: i64 = ts.iter().map(|(c, _)| c.parse::<i64>().unwrap()).sum();
    assert_eq!(mass, 16);
}

#[test]
fn compose_rooted_and_plie() {
    let (doc, code) = structured(&[
        "compose",
        "rooted",
        "vertices=*,a,b; edges=a.>*,*.>b; root=a",
        "vertices=c,d; edges=c.>d; root=c",
    ]);
    assert_eq!(code, 0);
    assert_eq!(terms(&doc).len(), 2);
    let (doc, _) = structured(&["compose", "plie", "vertices=*,b; edges=*-b; root=*", "vertices=a; edges=; root=a"]);
    assert_eq!(terms(&doc), vec![("1".to_string(), "vertices=a,b; edges=a-b; root=a".to_string())]);
}

#[test]
fn emitted_graphs_reparse() {
    let (doc, _) = structured(&["compose", "mg", "vertices=a,*; edges=a-*,*-*", "vertices=b,c; edges=b-c"]);
    for (_, g) in terms(&doc) {
        // the unit composed with g re-parses g and prints it back
        let (back, code) = structured(&["compose", "mg", "vertices=*; edges=", &g]);
        assert_eq!(code, 0);
        assert_eq!(terms(&back), vec![("1".to_string(), g)]);
    }
}

#[test]
fn named_hole() {
    let (doc, code) = structured(&["compose", "g", "vertices=a,h; edges=a-h", "vertices=b; edges=", "--hole", "h"]);
    assert_eq!(code, 0);
    assert_eq!(terms(&doc), vec![("1".to_string(), "vertices=a,b; edges=a-b".to_string())]);
}

#[test]
fn generators_and_hilbert() {
    let (doc, code) = structured(&["generators", "T", "--max-arity", "4"]);
    assert_eq!(code, 0);
    let counts: Vec<(u64, usize)> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["arity"].as_u64().unwrap(), a["generators"].as_array().unwrap().len()))
        .collect();
    assert_eq!(counts, vec![(2, 1), (3, 0), (4, 1)]);
    let (doc, _) = structured(&["hilbert", "G:vertices=a,b; edges=", "--max-arity", "5"]);
    let dims: Vec<u64> = doc["dimensions"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1; 5]);
}

#[test]
fn exit_codes() {
    assert_eq!(graphop(&["verify", "nf"]).status.code(), Some(0));
    // the edge-bound lemma fails at four vertices
    assert_eq!(graphop(&["verify", "lemma"]).status.code(), Some(1));
    assert_eq!(graphop(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(graphop(&["generators", "G", "--max-arity", "5"]).status.code(), Some(2));
    assert_eq!(graphop(&["hilbert", "sp-dual", "--order", "10"]).status.code(), Some(2));
    let out = graphop(&["compose", "g", "vertices=a,*; edges=a-*", "vertices=a; edges="]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("share vertices"));
    let out = graphop(&["compose", "g", "vertices=a,*; edges=a-*,a-*", "vertices=b; edges="]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("graphop-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = graphop(&["hilbert", "sp-dual", "--order", "3", "--format", "structured", "--output", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["command"], "hilbert sp-dual --max-arity 3");
}

#[test]
fn structured_output_is_reproducible() {
    let args = ["verify", "axioms", "--seed", "11", "--format", "structured"];
    assert_eq!(graphop(&args).stdout, graphop(&args).stdout);
}
