//! Witness searches: odd links in `K_6`, odd knots in `K_7`, the triple
//! link in `K_10`, and the pipelines producing links of linking number at
//! least `p` and knots with large `|a2|`.
//!
//! Searches compute linking numbers from a [`LinkingTable`]; every witness
//! is then recomputed from scratch on a freshly extracted sub-link, and for
//! knots with the Gauss diagram formula instead of descent.

mod ladder;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cycles::{disjoint_cycle_triples, hamiltonian_cycles};
use crate::diagram::{collapse_to_d4, extract_link, gauss_code, Cycle, D4Diagram, Diagram, ConnectorMarks};
use crate::error::{Error, Result};
use crate::invariants::{a2_oracle, cycle_a2, evaluate_d4, linking_number, D4Evaluation, LinkingTable};

pub use self::ladder::{lemma1_join, lemma2_merge, LadderCurve, Lemma1Output, Lemma2Case, Lemma2Output};
use self::ladder::{lemma1_join_with, lemma2_merge_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Link,
    Knot,
}

/// One step of a pipeline together with the invariant value it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub stage: String,
    pub value: i64,
}

impl Step {
    fn new(stage: impl Into<String>, value: i64) -> Self {
        Step { stage: stage.into(), value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremWitness {
    pub kind: WitnessKind,
    pub cycles: Vec<Cycle>,
    pub value: i64,
    pub recomputed: i64,
    pub transcript: Vec<Step>,
}

impl TheoremWitness {
    pub fn link(d: &Diagram, a: &Cycle, b: &Cycle, value: i64, transcript: Vec<Step>) -> Result<Self> {
        let recomputed = linking_number(&extract_link(d, &[a.clone(), b.clone()])?)?.0;
        if recomputed != value {
            return Err(Error::Internal(format!("lk recomputed as {recomputed}, search said {value}")));
        }
        Ok(TheoremWitness { kind: WitnessKind::Link, cycles: vec![a.clone(), b.clone()], value, recomputed, transcript })
    }

    pub fn knot(d: &Diagram, c: &Cycle, value: i64, transcript: Vec<Step>) -> Result<Self> {
        let code = gauss_code(&extract_link(d, std::slice::from_ref(c))?, 0)?;
        let recomputed = a2_oracle(&code)?.0;
        if recomputed != value {
            return Err(Error::Internal(format!("a2 recomputed as {recomputed}, descent said {value}")));
        }
        Ok(TheoremWitness { kind: WitnessKind::Knot, cycles: vec![c.clone()], value, recomputed, transcript })
    }
}

/// A subdivided `K_6`: six branch vertices and, for every pair of branch
/// indices `i < j`, the subdivision vertices met going from `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K6Pattern {
    pub branch: [usize; 6],
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl K6Pattern {
    pub fn plain(vertices: [usize; 6]) -> Self {
        let paths = (0..6).flat_map(|i| (i + 1..6).map(move |j| ((i, j), Vec::new()))).collect();
        K6Pattern { branch: vertices, paths }
    }

    fn path(&self, i: usize, j: usize) -> Vec<usize> {
        if i < j {
            self.paths[&(i, j)].clone()
        } else {
            let mut p = self.paths[&(j, i)].clone();
            p.reverse();
            p
        }
    }

    /// Cycle through branch indices `a, b, c` and the paths between them.
    pub fn triangle(&self, a: usize, b: usize, c: usize) -> Cycle {
        let mut v = Vec::new();
        for (x, y) in [(a, b), (b, c), (c, a)] {
            v.push(self.branch[x]);
            v.extend(self.path(x, y));
        }
        Cycle::new(v).expect("pattern vertices are distinct")
    }

    /// The ten pairs of disjoint triangles, first triangle through branch 0.
    pub fn triangle_pairs(&self) -> Vec<(Cycle, Cycle)> {
        let mut out = Vec::with_capacity(10);
        for a in 1..6 {
            for b in a + 1..6 {
                let rest: Vec<usize> = (1..6).filter(|x| *x != a && *x != b).collect();
                out.push((self.triangle(0, a, b), self.triangle(rest[0], rest[1], rest[2])));
            }
        }
        out
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.branch.to_vec();
        v.extend(self.paths.values().flatten());
        v
    }
}

/// Splits a block of `15p - 9` vertices into a `K_6` pattern whose edges
/// each carry `p - 1` subdivision vertices: the first six vertices are the
/// branch vertices, and the edges in lexicographic order take the rest.
pub fn select_subdivided_k6(block: &[usize], p: usize) -> Result<K6Pattern> {
    if p == 0 || block.len() != 15 * p - 9 {
        return Err(Error::InvalidArgument(format!("block of {} vertices does not fit p = {p}", block.len())));
    }
    let mut pattern = K6Pattern::plain(block[..6].try_into().unwrap());
    for (k, path) in pattern.paths.values_mut().enumerate() {
        *path = block[6 + k * (p - 1)..6 + (k + 1) * (p - 1)].to_vec();
    }
    Ok(pattern)
}

fn oriented_pair(t: &LinkingTable, a: &Cycle, b: &Cycle) -> (Cycle, i64) {
    let lk = t.lk(a, b);
    if lk < 0 {
        (b.reversed(), -lk)
    } else {
        (b.clone(), lk)
    }
}

/// Odd link among the ten triangle pairs of `pattern`. The transcript lists
/// all ten linking numbers.
pub fn cg_find_link_in(d: &Diagram, pattern: &K6Pattern) -> Result<TheoremWitness> {
    cg_find_link_with(&LinkingTable::new(d), d, pattern)
}

fn cg_find_link_with(t: &LinkingTable, d: &Diagram, pattern: &K6Pattern) -> Result<TheoremWitness> {
    let pairs = pattern.triangle_pairs();
    let lks: Vec<i64> = pairs.iter().map(|(a, b)| t.lk(a, b)).collect();
    let transcript: Vec<Step> = lks.iter().enumerate().map(|(i, v)| Step::new(format!("pair {i}"), *v)).collect();
    let k = lks.iter().position(|v| v % 2 != 0).ok_or_else(|| Error::Internal("no odd triangle pair".into()))?;
    let (b, lk) = oriented_pair(t, &pairs[k].0, &pairs[k].1);
    TheoremWitness::link(d, &pairs[k].0, &b, lk, transcript)
}

pub fn cg_find_link(d: &Diagram) -> Result<TheoremWitness> {
    if d.n() != 6 {
        return Err(Error::InvalidArgument(format!("expected K_6, got K_{}", d.n())));
    }
    cg_find_link_in(d, &K6Pattern::plain([0, 1, 2, 3, 4, 5]))
}

/// `a2` of every Hamiltonian cycle, in canonical enumeration order.
pub fn hamiltonian_a2(d: &Diagram) -> Result<Vec<(Cycle, i64)>> {
    let cycles: Vec<Cycle> = hamiltonian_cycles(d.n())?.collect();
    cycles.into_par_iter().map(|c| cycle_a2(d, &c).map(|a| (c, a))).collect()
}

/// First Hamiltonian cycle of `K_7` with odd `a2`.
pub fn cg_find_knot(d: &Diagram) -> Result<TheoremWitness> {
    if d.n() != 7 {
        return Err(Error::InvalidArgument(format!("expected K_7, got K_{}", d.n())));
    }
    for (i, c) in hamiltonian_cycles(7)?.enumerate() {
        let a = cycle_a2(d, &c)?;
        if a % 2 != 0 {
            return TheoremWitness::knot(d, &c, a, vec![Step::new(format!("cycle {i}"), a)]);
        }
    }
    Err(Error::Internal("no Hamiltonian cycle with odd a2".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnpTriple {
    pub l: Cycle,
    pub z: Cycle,
    pub w: Cycle,
    pub p1: i64,
    pub p2: i64,
}

pub const FNP_SHAPES: [[usize; 3]; 2] = [[3, 3, 3], [3, 3, 4]];

/// Three disjoint cycles with `lk(L,Z)` and `lk(L,W)` both odd, oriented so
/// both are positive. Each streamed triple is tried with every component
/// in the role of `L`.
pub fn fnp_find_triple(d: &Diagram) -> Result<FnpTriple> {
    if d.n() != 10 {
        return Err(Error::InvalidArgument(format!("expected K_10, got K_{}", d.n())));
    }
    fnp_find_with(&LinkingTable::new(d), d)
}

fn fnp_find_with(t: &LinkingTable, d: &Diagram) -> Result<FnpTriple> {
    for (a, b, c) in disjoint_cycle_triples(d.n(), &FNP_SHAPES)? {
        for (l, z, w) in [(&a, &b, &c), (&b, &a, &c), (&c, &a, &b)] {
            if t.lk(l, z) % 2 != 0 && t.lk(l, w) % 2 != 0 {
                let (z, p1) = oriented_pair(t, l, z);
                let (w, p2) = oriented_pair(t, l, w);
                return Ok(FnpTriple { l: l.clone(), z, w, p1, p2 });
            }
        }
    }
    Err(Error::Internal("no triple link with odd linking numbers".into()))
}

/// Link in `K_10` with linking number at least 2.
pub fn theorem1_find(d: &Diagram) -> Result<TheoremWitness> {
    if d.n() != 10 {
        return Err(Error::InvalidArgument(format!("expected K_10, got K_{}", d.n())));
    }
    let t = LinkingTable::new(d);
    let f = fnp_find_with(&t, d)?;
    let mut transcript = vec![Step::new("fnp lk(L,Z)", f.p1), Step::new("fnp lk(L,W)", f.p2)];
    if f.p1 >= 2 {
        return TheoremWitness::link(d, &f.l, &f.z, f.p1, transcript);
    }
    if f.p2 >= 2 {
        return TheoremWitness::link(d, &f.l, &f.w, f.p2, transcript);
    }
    let out = lemma1_join_with(&t, d, &f.l, &f.z, &f.w, 3)?;
    transcript.push(Step::new("lemma1 lk(L,J)", out.lk));
    TheoremWitness::link(d, &f.l, &out.j, out.lk, transcript)
}

/// Link with linking number at least `p` in `K_{p(15p-9)}`.
pub fn theorem2_find(d: &Diagram, p: usize) -> Result<TheoremWitness> {
    if p == 0 || d.n() != p * (15 * p - 9) {
        return Err(Error::InvalidArgument(format!("K_{} does not match p = {p}", d.n())));
    }
    let vertices: Vec<usize> = (0..d.n()).collect();
    theorem2_find_with(&LinkingTable::new(d), d, &vertices, p)
}

/// Linking pipeline on the complete subgraph spanned by `vertices`
/// (exactly `p(15p-9)` of them). The transcript records, for every `m`, the
/// linking number of the link `L_m, J_m` under stage `induction m`.
fn theorem2_find_with(t: &LinkingTable, d: &Diagram, vertices: &[usize], p: usize) -> Result<TheoremWitness> {
    let target = p as i64;
    let block = 15 * p - 9;
    let mut transcript = Vec::new();
    let mut links = Vec::with_capacity(p);
    for (i, chunk) in vertices.chunks(block).enumerate() {
        let pattern = select_subdivided_k6(chunk, p)?;
        let pairs = pattern.triangle_pairs();
        let lks: Vec<i64> = pairs.iter().map(|(a, b)| t.lk(a, b)).collect();
        if let Some(k) = lks.iter().position(|v| v.abs() >= target) {
            let (b, lk) = oriented_pair(t, &pairs[k].0, &pairs[k].1);
            transcript.push(Step::new(format!("block {} pair {k}", i + 1), lk));
            return TheoremWitness::link(d, &pairs[k].0, &b, lk, transcript);
        }
        let k = lks.iter().position(|v| v % 2 != 0).ok_or_else(|| Error::Internal("no odd triangle pair".into()))?;
        let (y, lk) = oriented_pair(t, &pairs[k].0, &pairs[k].1);
        transcript.push(Step::new(format!("block {} pair {k}", i + 1), lk));
        links.push((pairs[k].0.clone(), y));
    }
    let q = 3 * p;
    let (mut l, mut j) = links[0].clone();
    transcript.push(Step::new("induction 1", t.lk(&l, &j)));
    for (m, (x, y)) in links.iter().enumerate().skip(1) {
        let merged = lemma2_merge_with(t, d, x, y, &l, &j, q)?;
        transcript.push(Step::new(format!("lemma2 {} lk(L,Z)", merged.case.name()), merged.lk_lz));
        transcript.push(Step::new(format!("lemma2 {} lk(L,W)", merged.case.name()), merged.lk_lw));
        if merged.lk_lz >= target {
            return TheoremWitness::link(d, &merged.l, &merged.z, merged.lk_lz, transcript);
        }
        if merged.lk_lw >= target {
            return TheoremWitness::link(d, &merged.l, &merged.w, merged.lk_lw, transcript);
        }
        let joined = lemma1_join_with(t, d, &merged.l, &merged.z, &merged.w, q)?;
        transcript.push(Step::new(format!("induction {}", m + 1), joined.lk));
        l = merged.l;
        j = joined.j;
        if joined.lk >= target {
            break;
        }
    }
    let lk = t.lk(&l, &j);
    if lk < target {
        return Err(Error::Internal(format!("induction ended with lk {lk} < {p}")));
    }
    TheoremWitness::link(d, &l, &j, lk, transcript)
}

#[derive(Clone, Debug)]
pub struct Theorem3Outcome {
    pub knot: TheoremWitness,
    pub links: [TheoremWitness; 2],
    pub d4: D4Diagram,
    pub evaluation: D4Evaluation,
}

/// Knot with `|a2| >= m` in `K_{2p(15p-9)}`, provided `p^2 >= 16m`.
pub fn theorem3_find(d: &Diagram, m: u64, p: usize) -> Result<Theorem3Outcome> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if ((p * p) as u64) < 16 * m {
        return Err(Error::InvalidArgument(format!("p = {p} is too small for m = {m}: need p^2 >= 16m")));
    }
    let out = theorem3_pipeline(d, p)?;
    if out.knot.value.unsigned_abs() < m {
        return Err(Error::Internal(format!("knot has |a2| = {} < {m}", out.knot.value.abs())));
    }
    Ok(out)
}

/// The knot pipeline without the bound on `p`: a link with linking number
/// at least `p` in each half of the vertices, the connector graph on the two
/// links, and the Hamiltonian cycle of its D4 collapse with largest `|a2|`.
pub fn theorem3_pipeline(d: &Diagram, p: usize) -> Result<Theorem3Outcome> {
    if p == 0 || d.n() != 2 * p * (15 * p - 9) {
        return Err(Error::InvalidArgument(format!("K_{} does not match p = {p}", d.n())));
    }
    let t = LinkingTable::new(d);
    let half = d.n() / 2;
    let first: Vec<usize> = (0..half).collect();
    let second: Vec<usize> = (half..d.n()).collect();
    let w1 = theorem2_find_with(&t, d, &first, p)?;
    let w2 = theorem2_find_with(&t, d, &second, p)?;
    let (x1, y1, x2, y2) = (&w1.cycles[0], &w1.cycles[1], &w2.cycles[0], &w2.cycles[1]);
    let marks = ConnectorMarks::default_for(x1, y1, x2, y2);
    let d4 = collapse_to_d4(d, x1, y1, x2, y2, marks)?;
    let evaluation = evaluate_d4(&d4)?;
    let best = evaluation.max_row();
    let transcript = vec![
        Step::new("lk(X1,Y1)", w1.value),
        Step::new("lk(X2,Y2)", w2.value),
        Step::new("lambda", evaluation.lambda as i64),
        Step::new(format!("row {}", best.label), best.a2),
    ];
    let knot = TheoremWitness::knot(d, &best.cycle, best.a2, transcript)?;
    Ok(Theorem3Outcome { knot, links: [w1, w2], d4, evaluation })
}
