use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;
use serde_json::Value;

use linkforge::constructions::{
    cg_find_knot, cg_find_link, fnp_find_triple, hamiltonian_a2, theorem1_find, theorem2_find, theorem3_find,
};
use linkforge::cycles::disjoint_cycle_pairs;
use linkforge::diagram::{extract_link, gauss_code, insert_half_twists, insert_trefoil};
use linkforge::format::{self, DIAGRAM_FORMAT, EMBEDDING_FORMAT};
use linkforge::geometry::{complete_graph_edges, project, random_linear_embedding, validate_generic};
use linkforge::invariants::{a2_oracle, cycle_a2, cycles_linking_number, eq2_sides, linking_number};
use linkforge::scenarios::random_d4;
use linkforge::{Axis, Cycle, Diagram, Edge, Embedding, OrientedLink};

use crate::report::{Check, RunReport, WitnessRecord};

pub enum Input {
    Embedding(Embedding),
    Diagram(Diagram),
}

impl Input {
    pub fn load(path: &Path) -> anyhow::Result<Input> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        match v.get("format").and_then(Value::as_str) {
            Some(EMBEDDING_FORMAT) => Ok(Input::Embedding(format::embedding_from_value(&v)?)),
            Some(DIAGRAM_FORMAT) => Ok(Input::Diagram(format::diagram_from_value(&v)?)),
            other => bail!("{}: unsupported format {other:?}", path.display()),
        }
    }

    pub fn diagram(&self, axis: Axis) -> anyhow::Result<Diagram> {
        match self {
            Input::Embedding(e) => Ok(project(e, axis)?),
            Input::Diagram(d) => Ok(d.clone()),
        }
    }
}

/// Parses "0,1,2;3,4,5" into cycles.
pub fn parse_cycles(spec: &str) -> anyhow::Result<Vec<Cycle>> {
    let cycles = spec
        .split(';')
        .map(|part| part.parse::<Cycle>().map_err(|e| anyhow!("cycle {part:?}: {e}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if cycles.is_empty() {
        bail!("empty cycles spec");
    }
    Ok(cycles)
}

pub fn gen(report: &mut RunReport, n: usize, bound: u64, seed: u64, axis: Axis) -> anyhow::Result<String> {
    report.seeds.push(seed);
    let e = random_linear_embedding(n, bound, seed)?;
    let violations = validate_generic(&e, axis);
    report.push(
        Check::new(format!("generic along {}", axis.letter()), violations.is_empty())
            .with_detail(format!("{} violation(s), digest {}", violations.len(), e.digest())),
    );
    Ok(format::embedding_to_json(&e))
}

/// Linking number counted from the crossings where the first component
/// passes over the second.
fn lk_over_only(l: &OrientedLink) -> i64 {
    l.diagram()
        .crossings()
        .filter_map(|c| {
            let (ci, od) = l.owner(c.over.edge)?;
            let (cj, ud) = l.owner(c.under.edge)?;
            (ci == 0 && cj == 1).then(|| c.oriented_sign(od, ud) as i64)
        })
        .sum()
}

fn invariant_on(d: &Diagram, which: &str, cycles: &[Cycle]) -> anyhow::Result<(i64, i64)> {
    match (which, cycles.len()) {
        ("lk", 2) => {
            let l = extract_link(d, cycles)?;
            Ok((linking_number(&l)?.0, lk_over_only(&l)))
        }
        ("a2", 1) => {
            let value = cycle_a2(d, &cycles[0])?;
            let code = gauss_code(&extract_link(d, cycles)?, 0)?;
            Ok((value, a2_oracle(&code)?.0))
        }
        ("lk", k) => bail!("lk needs two cycles, got {k}"),
        ("a2", k) => bail!("a2 needs one cycle, got {k}"),
        _ => bail!("unknown invariant {which:?}"),
    }
}

pub fn invariant(report: &mut RunReport, input: &Input, which: &str, spec: &str, axis: Axis) -> anyhow::Result<()> {
    let cycles = parse_cycles(spec)?;
    let d = input.diagram(axis)?;
    let (value, recomputed) = invariant_on(&d, which, &cycles)?;
    report.push(Check::agree(format!("{which} along {}", axis.letter()), value, recomputed));
    if let Input::Embedding(e) = input {
        for other in Axis::ALL.into_iter().filter(|a| *a != axis) {
            let name = format!("{which} along {} agrees", other.letter());
            match project(e, other) {
                Ok(d) => {
                    let (v, _) = invariant_on(&d, which, &cycles)?;
                    report.push(Check::agree(name, value, v));
                }
                Err(err) => report.push(Check::new(name, true).with_detail(format!("skipped: {err}"))),
            }
        }
    }
    Ok(())
}

/// Verification suites. Each trial draws a fresh random instance from
/// `seed + i`; results are reported in trial order.
pub const SUITES: [&str; 4] = ["cg6", "cg7", "fnp10", "eq2"];

pub fn default_trials(suite: &str) -> usize {
    match suite {
        "cg7" => 50,
        "fnp10" => 25,
        _ => 200,
    }
}

fn suite_trial(suite: &str, seed: u64, bound: u64) -> anyhow::Result<Check> {
    let name = format!("{suite} seed {seed}");
    let diagram = |n| -> anyhow::Result<Diagram> { Ok(project(&random_linear_embedding(n, bound, seed)?, Axis::Z)?) };
    Ok(match suite {
        "cg6" => {
            let d = diagram(6)?;
            let w = cg_find_link(&d)?;
            let mut sum = 0;
            for (a, b) in disjoint_cycle_pairs(6, 3, 3)? {
                sum += cycles_linking_number(&d, &a, &b)?;
            }
            let ok = w.value % 2 != 0 && w.recomputed == w.value && sum % 2 != 0;
            Check { pass: ok, ..Check::agree(name, w.value, w.recomputed) }.with_detail(format!("sum over 10 pairs {sum}"))
        }
        "cg7" => {
            let d = diagram(7)?;
            let all = hamiltonian_a2(&d)?;
            let sum: i64 = all.iter().map(|(_, a)| a).sum();
            let w = cg_find_knot(&d)?;
            let ok = all.len() == 360 && sum % 2 != 0 && w.value % 2 != 0 && w.recomputed == w.value;
            Check { pass: ok, ..Check::agree(name, w.value, w.recomputed) }
                .with_detail(format!("sum over {} cycles {sum}", all.len()))
        }
        "fnp10" => {
            let d = diagram(10)?;
            let t = fnp_find_triple(&d)?;
            let w = theorem1_find(&d)?;
            let ok = t.p1 % 2 != 0 && t.p2 % 2 != 0 && w.value >= 2 && w.recomputed == w.value;
            Check { pass: ok, ..Check::agree(name, w.value, w.recomputed) }
                .with_detail(format!("triple lks {}, {}", t.p1, t.p2))
        }
        "eq2" => {
            let d4 = random_d4(seed, 60)?;
            let (lambda, product) = eq2_sides(&d4)?;
            Check::agree(name, lambda as i64, product as i64).with_detail(format!("{} crossings", d4.crossing_count()))
        }
        other => bail!("unknown suite {other:?}, expected one of {}", SUITES.join("|")),
    })
}

pub fn verify(report: &mut RunReport, suite: &str, trials: usize, seed: u64, bound: u64) -> anyhow::Result<()> {
    if !SUITES.contains(&suite) {
        bail!("unknown suite {suite:?}, expected one of {}", SUITES.join("|"));
    }
    let seeds: Vec<u64> = (0..trials as u64).map(|i| seed + i).collect();
    let checks: Vec<Check> = seeds
        .par_iter()
        .map(|&s| suite_trial(suite, s, bound).unwrap_or_else(|e| Check::new(format!("{suite} seed {s}"), false).with_detail(e.to_string())))
        .collect();
    report.seeds = seeds;
    let passed = checks.iter().filter(|c| c.pass).count();
    for c in checks {
        report.push(c);
    }
    report.push(Check::new(format!("{suite} {passed}/{trials}"), passed == trials));
    Ok(())
}

/// Smallest `p` with `p(15p-9) = n`, if any.
fn block_p(n: usize, factor: usize) -> Option<usize> {
    (1..=n).take_while(|p| factor * p * (15 * p - 9) <= n).find(|p| factor * p * (15 * p - 9) == n)
}

pub fn find(report: &mut RunReport, d: &Diagram, target: &str, bound: u64) -> anyhow::Result<()> {
    if bound == 0 {
        bail!("--bound must be positive");
    }
    let n = d.n();
    let witness = match target {
        "link" if bound == 2 && n == 10 => theorem1_find(d)?,
        "link" => {
            let p = bound as usize;
            if n != p * (15 * p - 9) {
                bail!("a link with lk >= {bound} needs K_{} (or K_10 for bound 2), input is K_{n}", p * (15 * p - 9));
            }
            theorem2_find(d, p)?
        }
        "knot" if bound == 1 && n == 7 => cg_find_knot(d)?,
        "knot" => {
            let p = block_p(n, 2).ok_or_else(|| anyhow!("K_{n} is not of the form K_{{2p(15p-9)}}"))?;
            let out = theorem3_find(d, bound, p)?;
            for l in &out.links {
                report.witnesses.push(l.into());
            }
            report.push(Check::new("lambda", true).with_detail(out.evaluation.lambda.to_string()));
            out.knot
        }
        other => bail!("unknown target {other:?}, expected link|knot"),
    };
    report.push(Check::agree("witness recomputed", witness.value, witness.recomputed));
    let mut reached = Check::new(format!("|value| >= {bound}"), witness.value.unsigned_abs() >= bound);
    reached.value = Some(witness.value);
    report.push(reached);
    report.witnesses.push(WitnessRecord::from(&witness));
    Ok(())
}

pub enum RewriteOp {
    Twists { e: Edge, f: Edge, count: usize },
    Trefoils { edges: Option<Vec<Edge>>, count: usize },
}

pub fn rewrite(report: &mut RunReport, d: &Diagram, op: &RewriteOp) -> anyhow::Result<String> {
    let before = d.crossing_count();
    let (out, expected) = match op {
        RewriteOp::Twists { e, f, count } => (insert_half_twists(d, *e, *f, *count)?, *count),
        RewriteOp::Trefoils { edges, count } => {
            let edges = edges.clone().unwrap_or_else(|| complete_graph_edges(d.n()).collect());
            let mut out = d.clone();
            for e in &edges {
                out = insert_trefoil(&out, *e, *count)?;
            }
            (out, 3 * count * edges.len())
        }
    };
    out.check_invariants()?;
    report.push(Check::agree("crossings added", (out.crossing_count() - before) as i64, expected as i64));
    let text = format::diagram_to_json(&out);
    let back = format::diagram_from_json(&text)?;
    report.push(Check::new("file round trip", back == out));
    Ok(text)
}
