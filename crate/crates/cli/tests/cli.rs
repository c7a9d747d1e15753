use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linkforge::format::{embedding_to_json, REPORT_FORMAT};
use linkforge::scenarios::{layered, twist_sites};
use linkforge::Embedding;
use linkforge_cli::RunReport;
use tempfile::TempDir;

fn linkforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkforge")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    RunReport::from_json(&String::from_utf8_lossy(&out.stdout)).expect("well-formed report")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, n: usize, seed: u64) -> PathBuf {
    let p = path(dir, &format!("k{n}-{seed}.json"));
    let out = linkforge(&["gen", "--n", &n.to_string(), "--seed", &seed.to_string(), "--out", s(&p)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn write_embedding(dir: &TempDir, name: &str, e: &Embedding) -> PathBuf {
    let p = path(dir, name);
    std::fs::write(&p, embedding_to_json(e)).unwrap();
    p
}

fn without_timing(mut r: RunReport) -> RunReport {
    r.timing.elapsed_ms = 0;
    r
}

#[test]
fn gen_is_deterministic_and_generic() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, 6, 1);
    let b = path(&dir, "again.json");
    let out = linkforge(&["gen", "--n", "6", "--seed", "1", "--out", s(&b)]);
    let r = report(&out);
    assert!(r.passed && r.format == REPORT_FORMAT);
    assert_eq!(r.seeds, vec![1]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let stdout = linkforge(&["gen", "--n", "6", "--seed", "2"]);
    assert_ne!(stdout.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn gen_k42_is_generic() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "k42.json");
    let out = linkforge(&["gen", "--n", "42", "--seed", "1", "--out", s(&p)]);
    let r = report(&out);
    assert!(out.status.success() && r.passed);
    assert!(r.checks[0].detail.starts_with("0 violation"));
}

#[test]
fn split_triangles_have_zero_lk_on_every_axis() {
    let dir = TempDir::new().unwrap();
    let lay = layered(&[3, 3], &[0, 1], 4).unwrap();
    let p = write_embedding(&dir, "split.json", &lay.embedding);
    let out = linkforge(&["invariant", "lk", "0,1,2;3,4,5", "--in", s(&p)]);
    let r = report(&out);
    assert!(out.status.success());
    assert_eq!(r.checks.len(), 3);
    for c in &r.checks {
        assert!(c.pass, "{c:?}");
        assert_eq!(c.value, Some(0));
        assert_eq!(c.recomputed, Some(0));
    }
}

#[test]
fn random_k6_lk_agrees_across_axes() {
    let dir = TempDir::new().unwrap();
    for seed in 1..=5 {
        let p = gen(&dir, 6, seed);
        let out = linkforge(&["invariant", "lk", "0,1,2;3,4,5", "--in", s(&p), "--axis", "x"]);
        let r = report(&out);
        assert!(r.passed, "seed {seed}: {r:?}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("lk along X")));
    }
}

#[test]
fn trefoiled_triangle_has_a2_one() {
    let dir = TempDir::new().unwrap();
    let tri = Embedding::from_int_coords(&[[0, 0, 0], [10, 1, 2], [3, 9, 5]]).unwrap();
    let p = write_embedding(&dir, "tri.json", &tri);
    let t = path(&dir, "tri-trefoil.json");
    let out = linkforge(&["rewrite", "trefoils", "--edge", "0-1", "--count", "1", "--in", s(&p), "--out", s(&t)]);
    assert!(report(&out).passed);
    let out = linkforge(&["invariant", "a2", "0,1,2", "--in", s(&t)]);
    let r = report(&out);
    assert_eq!(r.checks[0].value, Some(1));
    assert_eq!(r.checks[0].recomputed, Some(1));
}

#[test]
fn trefoils_on_every_edge_of_k4() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, 4, 3);
    let spec = ["0,1,2", "0,1,3", "0,2,3", "1,2,3", "0,1,2,3", "0,1,3,2", "0,2,1,3"];
    let before: Vec<i64> = spec
        .iter()
        .map(|c| report(&linkforge(&["invariant", "a2", c, "--in", s(&p)])).checks[0].value.unwrap())
        .collect();
    let t = path(&dir, "k4-trefoils.json");
    let out = linkforge(&["rewrite", "trefoils", "--in", s(&p), "--out", s(&t)]);
    let r = report(&out);
    assert!(r.passed);
    assert_eq!(r.checks[0].value, Some(18));
    for (c, old) in spec.iter().zip(before) {
        let new = report(&linkforge(&["invariant", "a2", c, "--in", s(&t)])).checks[0].value.unwrap();
        assert!(new >= old + 3, "cycle {c}: {old} -> {new}");
    }
}

#[test]
fn twists_link_split_triangles() {
    let dir = TempDir::new().unwrap();
    let lay = layered(&[3, 3], &[0, 1], 9).unwrap();
    let (a, b) = (&lay.cycles[0], &lay.cycles[1]);
    let (e, f) = twist_sites(&lay.diagram, a, b, 1).into_iter().chain(twist_sites(&lay.diagram, a, b, -1)).next().unwrap();
    let p = write_embedding(&dir, "split.json", &lay.embedding);
    let t = path(&dir, "twisted.json");
    let out = linkforge(&[
        "rewrite", "twists", "--e", &e.to_string(), "--f", &f.to_string(), "--count", "4", "--in", s(&p), "--out", s(&t),
    ]);
    let r = report(&out);
    assert!(r.passed, "{r:?}");
    assert_eq!(r.checks[0].value, Some(4));

    let twisted = std::fs::read_to_string(&t).unwrap();
    let again = path(&dir, "twisted-again.json");
    std::fs::write(&again, &twisted).unwrap();
    let out = linkforge(&["invariant", "lk", "0,1,2;3,4,5", "--in", s(&again)]);
    let lk = report(&out).checks[0].value.unwrap();
    assert!(lk.abs() >= 2, "lk {lk}");
}

#[test]
fn verify_suites_pass() {
    for (suite, trials) in [("cg6", "200"), ("eq2", "200"), ("cg7", "50"), ("fnp10", "10")] {
        let out = linkforge(&["verify", suite, "--trials", trials]);
        let r = report(&out);
        assert!(out.status.success() && r.passed, "{suite}: {}", r.to_text());
        let n: usize = trials.parse().unwrap();
        assert_eq!(r.seeds.len(), n);
        assert_eq!(r.checks.last().unwrap().name, format!("{suite} {n}/{n}"));
        let seeds: Vec<u64> = (1..=n as u64).collect();
        assert_eq!(r.seeds, seeds);
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let a = linkforge(&["verify", "cg6", "--trials", "12", "--seed", "7"]);
    let b = linkforge(&["verify", "cg6", "--trials", "12", "--seed", "7"]);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let ra = report(&a);
    assert_eq!(without_timing(ra.clone()), without_timing(report(&b)));
    assert_eq!(ra.to_json(), text);
}

#[test]
fn thread_cap_is_honoured() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_linkforge"))
            .args(["verify", "cg6", "--trials", "8"])
            .env("LINKFORGE_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(without_timing(report(&one)), without_timing(report(&run("3"))));
    let bad = run("0");
    assert_eq!(bad.status.code(), Some(2));
    assert!(report(&bad).error.is_some());
}

#[test]
fn find_links_and_knots() {
    let dir = TempDir::new().unwrap();
    for (n, target, bound) in [(6, "link", "1"), (10, "link", "2"), (7, "knot", "1")] {
        let p = gen(&dir, n, 2);
        let out = linkforge(&["find", target, "--in", s(&p), "--bound", bound]);
        let r = report(&out);
        assert!(out.status.success() && r.passed, "K{n}: {}", r.to_text());
        let w = &r.witnesses[0];
        assert_eq!(w.value, w.recomputed);
        assert!(w.value.abs() >= bound.parse().unwrap());
    }
}

#[test]
fn find_link_in_k42() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, 42, 3);
    let out = linkforge(&["find", "link", "--in", s(&p), "--bound", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.starts_with("PASS"));
}

#[test]
fn errors_still_emit_reports() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, 8, 1);
    let out = linkforge(&["find", "link", "--in", s(&p), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert!(!r.passed && r.error.unwrap().contains("K_8"));

    let out = linkforge(&["invariant", "lk", "0,1,2;2,3,4", "--in", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out).error.is_some());

    let out = linkforge(&["invariant", "lk", "0,1,x", "--in", s(&p)]);
    assert_eq!(out.status.code(), Some(2));

    let missing = path(&dir, "missing.json");
    let out = linkforge(&["invariant", "a2", "0,1,2", "--in", s(&missing)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out).error.is_some());
}
