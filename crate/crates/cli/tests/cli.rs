use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn edge_file(edges: &[(u64, u64)]) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "# test graph").unwrap();
    for (u, v) in edges {
        writeln!(f, "{u} {v}").unwrap();
    }
    f
}

fn complete(labels: &[u64]) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    for (i, &u) in labels.iter().enumerate() {
        for &v in &labels[i + 1..] {
            edges.push((u, v));
        }
    }
    edges
}

fn two_k4() -> Vec<(u64, u64)> {
    let mut edges = complete(&[10, 11, 12, 13]);
    edges.extend(complete(&[14, 15, 16, 17]));
    edges.push((13, 14));
    edges
}

fn lhcds(args: &[&str], input: &NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhcds"))
        .arg("--input")
        .arg(input.path())
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Vec<Value> {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice::<Value>(&out.stdout)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

#[test]
fn k5_four_cliques() {
    let input = edge_file(&complete(&[1, 2, 3, 4, 5]));
    let records = json(&lhcds(&["--h", "4", "--k", "1"], &input));
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r["rank"], 1);
    assert_eq!(r["vertices"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(r["count"], 5);
    assert_eq!(r["density"], "5/5");
    assert_eq!(r["density_decimal"], 1.0);
}

#[test]
fn path_has_no_triangles() {
    let input = edge_file(&[(0, 1), (1, 2), (2, 3), (3, 4)]);
    let out = lhcds(&["--h", "3", "--k", "3"], &input);
    assert!(json(&out).is_empty());
}

#[test]
fn two_k4_bridge_is_one_subgraph() {
    let input = edge_file(&two_k4());
    for verify in ["basic", "fast"] {
        let records = json(&lhcds(
            &["--h", "3", "--k", "2", "--verify", verify],
            &input,
        ));
        let oracle = json(&lhcds(&["--h", "3", "--k", "2", "--oracle"], &input));
        assert_eq!(records, oracle);
        assert_eq!(records.len(), 1);
        assert_eq!(records[0]["density"], "8/8");
        assert_eq!(
            records[0]["vertices"],
            serde_json::json!([10, 11, 12, 13, 14, 15, 16, 17])
        );
    }
}

#[test]
fn pattern_matches_oracle() {
    let input = edge_file(&two_k4());
    for pattern in [
        "3star",
        "4path",
        "tailed-triangle",
        "4loop",
        "diamond",
        "4clique",
    ] {
        let run = json(&lhcds(&["--pattern", pattern, "--all"], &input));
        let oracle = json(&lhcds(&["--pattern", pattern, "--all", "--oracle"], &input));
        assert_eq!(run, oracle, "{pattern}");
    }
}

#[test]
fn tsv_matches_json() {
    let mut edges = two_k4();
    edges.extend(complete(&[20, 21, 22, 23, 24]));
    let input = edge_file(&edges);
    let records = json(&lhcds(&["--all"], &input));
    let out = lhcds(&["--all", "--output", "tsv"], &input);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("rank\tvertices\tcount\tdensity\tdensity_decimal")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), records.len());
    for (row, r) in rows.iter().zip(&records) {
        let fields: Vec<&str> = row.split('\t').collect();
        let vertices: Vec<String> = r["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(fields[0], r["rank"].to_string());
        assert_eq!(fields[1], vertices.join(","));
        assert_eq!(fields[2], r["count"].to_string());
        assert_eq!(fields[3], r["density"].as_str().unwrap());
        assert_eq!(
            fields[4].parse::<f64>().unwrap(),
            r["density_decimal"].as_f64().unwrap()
        );
    }
    assert_eq!(records[0]["density"], "10/5");
}

#[test]
fn repeated_runs_are_identical() {
    let mut edges = two_k4();
    edges.extend(complete(&[20, 21, 22, 23, 24]));
    edges.extend([(24, 30), (30, 31), (31, 24), (31, 10)]);
    let input = edge_file(&edges);
    for args in [
        &["--all"][..],
        &["--k", "2", "--output", "tsv"],
        &["--pattern", "diamond"],
    ] {
        let first = lhcds(args, &input);
        let second = lhcds(args, &input);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn stats_go_to_stderr() {
    let input = edge_file(&complete(&[1, 2, 3, 4]));
    let out = lhcds(&["--stats"], &input);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    for key in ["instances\t4", "rounds\t", "flow_calls\t", "wall_seconds\t"] {
        assert!(err.contains(key), "missing {key} in {err}");
    }
    assert_eq!(json(&out).len(), 1);
}

#[test]
fn errors_exit_nonzero() {
    let input = edge_file(&complete(&[1, 2, 3]));
    let missing = Command::new(env!("CARGO_BIN_EXE_lhcds"))
        .args(["--input", "/definitely/not/here.txt"])
        .output()
        .unwrap();
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot open"));

    for args in [
        &["--h", "1"][..],
        &["--k", "0"],
        &["--verify", "slow"],
        &["--pattern", "5clique"],
        &["--output", "xml"],
    ] {
        assert!(!lhcds(args, &input).status.success(), "{args:?}");
    }

    let mut bad = NamedTempFile::new().unwrap();
    writeln!(bad, "1 2\n2 x").unwrap();
    let out = lhcds(&[], &bad);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let big: Vec<(u64, u64)> = (0..20).map(|i| (i, i + 1)).collect();
    let out = lhcds(&["--oracle", "--h", "2"], &edge_file(&big));
    assert!(!out.status.success());
}
