//! End-to-end runs of the `wb` binary.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::{json, Value};
use witt_burnside::Poly;

fn wb_in(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wb"));
    cmd.args(args).env_remove("WB_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("WB_CACHE_DIR", dir);
    }
    cmd.output().expect("wb runs")
}

fn wb(args: &[&str]) -> Output {
    wb_in(args, None)
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wb-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_vector(dir: &Path, name: &str, group: &str, flavor: &str, ring: &str, labels: &[&str], comps: &[&str]) -> String {
    let doc = json!({
        "schema_version": 1,
        "group": group,
        "flavor": flavor,
        "ring": ring,
        "components": comps,
        "labels": labels,
    });
    let path = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ints(v: &Value) -> Vec<Vec<i64>> {
    v.as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect()
}

type Perm = [u8; 3];

fn compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

/// `φ_U(G/V)` for subgroups of S3 given as element lists, by counting fixed cosets.
fn s3_mark(u: &[Perm], v: &[Perm]) -> i64 {
    let all: Vec<Perm> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let cosets: BTreeSet<BTreeSet<Perm>> = all.iter().map(|g| v.iter().map(|h| compose(g, h)).collect()).collect();
    cosets
        .iter()
        .filter(|c| {
            let g = c.iter().next().unwrap();
            u.iter().all(|x| c.contains(&compose(x, g)))
        })
        .count() as i64
}

#[test]
fn group_info_marks() {
    let c2 = stdout_json(&wb(&["group", "info", "--group", "C2"]));
    assert_eq!(ints(&c2["marks"]), vec![vec![1, 1], vec![0, 2]]);
    assert_eq!(c2["mobius"], json!([["1", "-1/2"], ["0", "1/2"]]));

    let s3 = golden("group_info_s3.json");
    let labels: Vec<&str> = s3["classes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["S3", "C3", "C2", "E"]);
    let subgroups: [&[Perm]; 4] = [
        &[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]],
        &[[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        &[[0, 1, 2], [1, 0, 2]],
        &[[0, 1, 2]],
    ];
    let marks = ints(&s3["marks"]);
    for v in 0..4 {
        for u in 0..4 {
            assert_eq!(marks[v][u], s3_mark(subgroups[u], subgroups[v]), "V={v} U={u}");
        }
        assert_eq!(s3["classes"][v]["normalizer_index"].as_i64().unwrap(), marks[v][v]);
    }
    // The Möbius matrix inverts the marks.
    let mobius: Vec<Vec<BigRational>> = s3["mobius"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect())
        .collect();
    for i in 0..4 {
        for j in 0..4 {
            let s: BigRational = (0..4).map(|k| BigRational::from_integer(marks[i][k].into()) * &mobius[k][j]).sum();
            assert_eq!(s, BigRational::from_integer(i64::from(i == j).into()));
        }
    }
}

#[test]
fn invalid_group_is_a_usage_error() {
    let out = wb(&["group", "info", "--group", "X9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidGroup"));
}

#[test]
fn arithmetic_verbs() {
    let dir = scratch("arith");
    let x = write_vector(&dir, "x.json", "C2", "Necklace", "Z", &["C2", "E"], &["0", "1"]);
    let out = stdout_json(&wb(&["necklace", "mul", "--group", "C2", "--ring", "Z", "--lhs", &x, "--rhs", &x]));
    assert_eq!(out["components"], json!(["0", "2"]));

    let w = write_vector(&dir, "w.json", "C2", "Witt", "Z/4", &["C2", "E"], &["1", "1"]);
    let out = stdout_json(&wb(&["witt", "mul", "--group", "C2", "--ring", "Z/4", "--lhs", &w, "--rhs", &w]));
    assert_eq!(out["components"], json!(["1", "0"]));

    let one = write_vector(&dir, "one.json", "S3", "Witt", "Z", &["S3", "C3", "C2", "E"], &["1", "0", "0", "0"]);
    let out = stdout_json(&wb(&["ghost", "--group", "S3", "--ring", "Z", "--flavor", "W", "--input", &one]));
    assert_eq!(out["components"], json!(["1", "1", "1", "1"]));
    assert_eq!(out["flavor"], "Ghost");
}

#[test]
fn error_exit_codes() {
    let dir = scratch("errors");
    let x = write_vector(&dir, "x.json", "C2", "Necklace", "Z", &["C2", "E"], &["0", "1"]);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, std::fs::read_to_string(&x).unwrap().replace("\"schema_version\":1", "\"schema_version\":2")).unwrap();
    let out = wb(&["necklace", "mul", "--group", "C2", "--ring", "Z", "--lhs", bad.to_str().unwrap(), "--rhs", &x]);
    assert_eq!(out.status.code(), Some(2));

    let g = write_vector(&dir, "g.json", "C2", "Ghost", "Z", &["C2", "E"], &["0", "1"]);
    let out = wb(&["ghost", "--group", "C2", "--ring", "Z", "--flavor", "Nr", "--inverse", "--input", &g]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotInImage"));

    assert_eq!(wb(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn universal_golden_is_multiplicative_on_ghosts() {
    let doc = golden("universal_c2_prod.json");
    let vars: Vec<String> = doc["variables"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let polys: Vec<Poly> =
        doc["polynomials"].as_array().unwrap().iter().map(|p| Poly::parse(p["text"].as_str().unwrap(), &vars).unwrap()).collect();
    let ghost = |g: i64, e: i64| (g, g * g + 2 * e);
    let r = |n: i64| BigRational::from_integer(n.into());
    for (ag, ae, bg, be) in [(1, 2, 3, 4), (-2, 5, 0, -1), (7, -3, -4, 2)] {
        let vals = [r(ag), r(ae), r(bg), r(be)];
        let p: Vec<i64> = polys.iter().map(|p| p.eval_rational(&vals).to_integer().try_into().unwrap()).collect();
        let (ga, gb, gp) = (ghost(ag, ae), ghost(bg, be), ghost(p[0], p[1]));
        assert_eq!(gp, (ga.0 * gb.0, ga.1 * gb.1));
    }
}

#[test]
fn qpoly_golden_specialises_to_delta() {
    let doc = golden("qpoly_p_6.json");
    let q = vec!["q".to_string()];
    for (key, text) in doc.as_object().unwrap() {
        let nij: Vec<u64> = key.trim_matches(|c| c == '(' || c == ')').split(',').map(|s| s.parse().unwrap()).collect();
        let (n, i, j) = (nij[0], nij[1], nij[2]);
        let p = Poly::parse(text.as_str().unwrap(), &q).unwrap();
        let at_one = p.eval_rational(&[BigRational::from_integer(1.into())]);
        let l = witt_burnside::lcm(i, j);
        assert_eq!(at_one, BigRational::from_integer(i64::from(l == n).into()), "{key}");
        for k in -3..=3 {
            assert!(p.eval_rational(&[BigRational::from_integer(k.into())]).is_integer(), "{key} at {k}");
        }
    }
}

#[test]
fn artin_hasse_verb() {
    let out = stdout_json(&wb(&["artinhasse", "--q", "q", "--deg", "4"]));
    assert_eq!(out["coefficients"][2], "-q*x1*x2+x3");
    assert_eq!(out["coefficients"][3], "-q*x1*x3+x4");
}

#[test]
fn cache_round_trip() {
    let dir = scratch("cache");
    let args = ["universal", "--group", "D4", "--op", "prod"];
    let fresh = wb(&args);
    let first = wb_in(&args, Some(&dir));
    let files: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].file_name().unwrap().to_str().unwrap().ends_with("-prod.json"));
    let second = wb_in(&args, Some(&dir));
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    // A corrupted entry is ignored, not trusted.
    let text = std::fs::read_to_string(&files[0]).unwrap().replacen("+2*", "+3*", 1);
    std::fs::write(&files[0], text).unwrap();
    assert_eq!(wb_in(&args, Some(&dir)).stdout, fresh.stdout);
}

#[test]
fn verify_reports_are_deterministic() {
    let strip = |out: &Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let args = ["verify", "--suite", "qpolys", "--seed", "7", "--size", "3"];
    let (a, b) = (wb(&args), wb(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
    let report = strip(&a);
    assert_eq!(report["failures"], json!([]));
    assert_eq!(report["suite"], "qpolys");
    assert!(report["cases_run"].as_u64().unwrap() > 0);
}
