use std::fs;

use strong_match::cli::{gen_points, main_with, run_batch, run_points};
use strong_match::geom::{check_general_position, Family, Point, Shape};
use strong_match::io::{parse_matching, parse_points, write_points};
use strong_match::matching::{Disjointness, Engine};
use tempfile::tempdir;

fn run(args: &[&str]) -> i32 {
    let mut v = vec!["strong-match"];
    v.extend_from_slice(args);
    main_with(v)
}

#[test]
fn gen_is_deterministic() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        assert_eq!(run(&["gen", "--n", "5", "--seed", "42", "--shape", "disk", "--out", p.to_str().unwrap()]), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read_to_string(&a).unwrap().lines().count(), 5);
}

#[test]
fn gen_empty_and_general_position() {
    assert!(write_points(&gen_points(0, 9, Family::Disk)).is_empty());
    let pts = gen_points(100, 7, Family::Triangle);
    assert!(check_general_position(&pts, Family::Triangle).ok());
    assert!(pts.iter().all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y)));
    // written files parse back to the same points
    assert_eq!(parse_points(&write_points(&pts)).unwrap(), pts);
}

#[test]
fn collinear_disks_greedy() {
    let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(3.0, 0.0)];
    let o = run_points(&pts, None, Shape::Disk, Engine::Greedy, 0, None, false).unwrap();
    assert_eq!((o.report.size, o.report.bound, o.report.verdict), (1, 1, "pass"));
}

#[test]
fn triangle_greedy_meets_its_bound() {
    let pts = gen_points(18, 1, Family::Triangle);
    let o = run_points(&pts, None, Shape::TriDown, Engine::Greedy, 0, None, false).unwrap();
    assert_eq!(o.report.bound, 2);
    assert!(o.report.size >= 2 && o.report.ok());
}

#[test]
fn square_recursive_six_points() {
    let pts = gen_points(6, 5, Family::Square);
    let o = run_points(&pts, None, Shape::Square, Engine::Recursive, 0, None, false).unwrap();
    assert!(o.report.size >= 2 && o.report.ok());
    assert_eq!(o.matching.mode, Disjointness::Interior);
    assert_eq!(o.report.disjointness, "interior");
}

#[test]
fn run_writes_files_and_verify_accepts_them() {
    let dir = tempdir().unwrap();
    let p = dir.path().join("p.txt");
    let m = dir.path().join("m.txt");
    let s = dir.path().join("m.svg");
    let ps = p.to_str().unwrap();
    assert_eq!(run(&["gen", "--n", "30", "--seed", "3", "--shape", "theta6", "--out", ps]), 0);
    let args = ["run", ps, "--shape", "theta6", "--engine", "recursive", "--out", m.to_str().unwrap(), "--svg", s.to_str().unwrap()];
    assert_eq!(run(&args), 0);
    let matching = parse_matching(&fs::read_to_string(&m).unwrap()).unwrap();
    assert!(matching.len() >= 8);
    assert!(fs::read_to_string(&s).unwrap().contains("<polygon"));
    assert_eq!(run(&["verify", ps, m.to_str().unwrap()]), 0);
    assert_eq!(run(&["verify", ps, m.to_str().unwrap(), "--exact"]), 0);
    assert_eq!(run(&["run", ps, "--shape", "tri-up", "--engine", "greedy", "--exact"]), 0);
    assert_eq!(run(&["stats", ps, "--shape", "square"]), 0);
    assert_eq!(run(&["svg", ps, m.to_str().unwrap(), "--out", s.to_str().unwrap()]), 0);
}

#[test]
fn exit_codes() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 0\n1 oops\n").unwrap();
    assert_eq!(run(&["run", bad.to_str().unwrap()]), 2);
    let good = dir.path().join("good.txt");
    fs::write(&good, "0 0\n1 0.5\n2 0.25\n").unwrap();
    let g = good.to_str().unwrap();
    assert_eq!(run(&["run", g, "--shape", "disk", "--engine", "recursive"]), 2);
    assert_eq!(run(&["run", dir.path().join("missing").to_str().unwrap()]), 2);
    assert_eq!(run(&["run", g, "--shape", "hexagon"]), 2);

    // a matching whose two disks overlap fails verification
    let m = dir.path().join("m.txt");
    fs::write(&m, "0 1 disk 0.5 0.25 0.56\n").unwrap();
    assert_eq!(run(&["verify", g, m.to_str().unwrap()]), 1);
    // pair index past the end of the point file
    fs::write(&m, "0 7 disk 0.5 0.25 0.56\n").unwrap();
    assert_eq!(run(&["svg", g, m.to_str().unwrap()]), 2);
}

#[test]
fn batch_emits_one_record_per_run() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("b.jsonl");
    let args = ["batch", "--count", "12", "--n-max", "40", "--shape", "tri-down", "--out", out.to_str().unwrap()];
    assert_eq!(run(&args), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 12);
    for (k, line) in text.lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["id"], k);
        assert!(v.get("wall_ms").is_none());
    }

    let (runs, summary) = run_batch(0, 2, 10, 0, Shape::Disk, Engine::Greedy, false);
    assert!(runs.is_empty());
    assert_eq!((summary.count, summary.min_size, summary.bound_violations), (0, None, 0));
}
