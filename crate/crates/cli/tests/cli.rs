use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ncmatch::io::{format_edges, format_points, format_rational_points, parse_rational_points, read_edges, read_points};
use serde_json::Value;
use tempfile::TempDir;

fn ncmatch(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncmatch")).current_dir(dir).args(args).output().expect("spawn ncmatch")
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn g2_then_hmin_reports_five() {
    let dir = TempDir::new().unwrap();
    let o = ncmatch(dir.path(), &["gen", "g2", "--n", "3", "--points", "g2.txt", "--out", "gen.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = ncmatch(dir.path(), &["hmin", "--points", "g2.txt", "--out", "hmin.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rep = json_file(&dir.path().join("hmin.json"));
    assert_eq!(rep["result"]["min_blocking_size"], 5);
    assert_eq!(rep["config"]["points"], "g2.txt");
}

#[test]
fn oracle_lists_five_matchings_of_a_convex_hexagon() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("hex.txt"), "6\n0 0\n4 0\n6 3\n4 6\n0 6\n-2 3\n").unwrap();
    let o = ncmatch(dir.path(), &["oracle", "--points", "hex.txt", "--out", "o.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rep = json_file(&dir.path().join("o.json"));
    assert_eq!(rep["result"]["count"], 5);
    assert_eq!(rep["result"]["matchings"].as_array().unwrap().len(), 5);
}

#[test]
fn crossing_pairing_fails_verification_with_exit_two() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("hex.txt"), "6\n0 0\n4 0\n6 3\n4 6\n0 6\n-2 3\n").unwrap();
    fs::write(dir.path().join("m.txt"), "0 2\n1 3\n4 5\n").unwrap();
    let o = ncmatch(dir.path(), &["verify", "--points", "hex.txt", "--matching", "m.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0-2 and 1-3"), "{}", stderr(&o));
}

#[test]
fn valid_matching_passes_verification() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("hex.txt"), "6\n0 0\n4 0\n6 3\n4 6\n0 6\n-2 3\n").unwrap();
    fs::write(dir.path().join("m.txt"), "0 1\n2 3\n4 5\n").unwrap();
    let o = ncmatch(dir.path(), &["verify", "--points", "hex.txt", "--matching", "m.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    fs::write(dir.path().join("r.txt"), "2 3\n").unwrap();
    let o = ncmatch(dir.path(), &["verify", "--points", "hex.txt", "--matching", "m.txt", "--removal", "r.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ncmatch(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(ncmatch(dir.path(), &["hmin", "--points", "x.txt", "--bogus"]).status.code(), Some(1));
    assert_eq!(ncmatch(dir.path(), &["hmin", "--points", "missing.txt"]).status.code(), Some(1));
    fs::write(dir.path().join("bad.txt"), "2\n0 0\n").unwrap();
    assert_eq!(ncmatch(dir.path(), &["oracle", "--points", "bad.txt"]).status.code(), Some(1));
}

#[test]
fn written_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = ncmatch(dir.path(), &["gen", "example2", "--n", "5", "--points", "p.txt", "--removal", "r.txt", "--out", "g.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let p_text = fs::read_to_string(dir.path().join("p.txt")).unwrap();
    let r_text = fs::read_to_string(dir.path().join("r.txt")).unwrap();
    let ps = read_points(dir.path().join("p.txt")).unwrap();
    let edges = read_edges(dir.path().join("r.txt")).unwrap();
    assert_eq!(format_points(ps.points()), p_text);
    assert_eq!(format_edges(&edges), r_text);
    let gen = json_file(&dir.path().join("g.json"));
    assert_eq!(gen["config"]["n"], 5);
    assert_eq!(gen["config"]["seed"], 0);
    assert_eq!(gen["result"]["points"].as_array().unwrap().len(), ps.len());

    let o = ncmatch(dir.path(), &["verify", "--points", "p.txt", "--structure", "--removal", "r.txt", "--out", "v.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json_file(&dir.path().join("v.json"))["result"]["blocking"], true);

    fs::write(dir.path().join("body.txt"), "4\n0 0\n1/2 0\n1/2 1/3\n0 1/3\n").unwrap();
    let o = ncmatch(dir.path(), &["lattice", "bound", "--body", "body.txt", "--m", "500", "--triangle", "t.txt", "--out", "l.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t_text = fs::read_to_string(dir.path().join("t.txt")).unwrap();
    assert_eq!(format_rational_points(&parse_rational_points(&t_text).unwrap()), t_text);
    assert_eq!(json_file(&dir.path().join("l.json"))["result"]["contains_body"], true);
}

#[test]
fn solve_writes_a_matching_that_verifies() {
    let dir = TempDir::new().unwrap();
    ncmatch(dir.path(), &["gen", "convex", "--n", "12", "--points", "p.txt", "--out", "g.json"]);
    fs::write(dir.path().join("r.txt"), "0 1\n2 3\n0 23\n").unwrap();
    for extra in [&[][..], &["--resilient"][..]] {
        let mut args = vec!["solve", "--points", "p.txt", "--removal", "r.txt", "--matching", "m.txt", "--out", "s.json"];
        args.extend_from_slice(extra);
        let o = ncmatch(dir.path(), &args);
        assert!(o.status.success(), "{}", stderr(&o));
        let o = ncmatch(dir.path(), &["verify", "--points", "p.txt", "--matching", "m.txt", "--removal", "r.txt"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
}

#[test]
fn lab_reports_echo_seed_and_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |out: &str| {
        let o = ncmatch(
            dir.path(),
            &["lab", "resilience", "--n", "16", "--trials", "6", "--seed", "42", "--model", "star", "--out", out, "--csv", "r.csv"],
        );
        assert!(o.status.success(), "{}", stderr(&o));
        let mut v = json_file(&dir.path().join(out));
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    };
    let a = run("a.json");
    assert_eq!(a["seed"], 42);
    assert_eq!(a, run("b.json"));
    assert!(fs::read_to_string(dir.path().join("r.csv")).unwrap().starts_with("name,"));

    let o = ncmatch(dir.path(), &["lab", "hullcount", "--n", "50", "--trials", "3", "--region", "triangle"]);
    assert_eq!(o.status.code(), Some(1));
    fs::write(dir.path().join("poly.txt"), "3\n0 0\n200000 0\n0 200000\n").unwrap();
    let o = ncmatch(dir.path(), &["lab", "hullcount", "--n", "50", "--trials", "3", "--region", "poly", "poly.txt", "--out", "h.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn render_draws_every_element() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("hex.txt"), "6\n0 0\n4 0\n6 3\n4 6\n0 6\n-2 3\n").unwrap();
    fs::write(dir.path().join("m.txt"), "0 1\n2 3\n4 5\n").unwrap();
    fs::write(dir.path().join("r.txt"), "0 3\n1 4\n").unwrap();
    let o = ncmatch(
        dir.path(),
        &["render", "--points", "hex.txt", "--matching", "m.txt", "--removal", "r.txt", "--subdivision", "--threshold", "4", "--svg", "f.svg"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = fs::read_to_string(dir.path().join("f.svg")).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("<circle").count(), 6);
    let removal = svg.split(r#"<g id="removal""#).nth(1).unwrap().split("</g>").next().unwrap();
    assert!(removal.contains("stroke-dasharray"));
    assert_eq!(removal.matches("<line").count(), 2);
    let matching = svg.split(r#"<g id="matching""#).nth(1).unwrap().split("</g>").next().unwrap();
    assert!(!matching.contains("dasharray"));
    assert_eq!(matching.matches("<line").count(), 3);
    assert!(svg.matches("<polygon").count() >= 2);
}
