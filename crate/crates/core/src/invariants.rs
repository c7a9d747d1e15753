//! Linking number, the Conway coefficient `a2`, and the D4 quantities.
//!
//! `a2` is computed by crossing-switch descent along the Gauss code: walking
//! from the basepoint, every crossing first met on its under-strand is
//! switched and the linking number of the oriented smoothing there is
//! accumulated through the skein relation `a2(K+) = a2(K-) + lk(L1, L2)`.
//! The resulting descending diagram is unknotted. Switched diagrams are
//! never built; the walk keeps a running sign table instead, so a code with
//! `c` crossings costs `O(c^2)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::diagram::{extract_link, gauss_code, Cycle, D4Diagram, D4Label, Diagram, GaussCode, OrientedLink, Role};
use crate::error::{Error, Result};
use crate::geometry::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkingNumber(pub i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct A2Value(pub i64);

/// Half the signed count of crossings between the two components.
pub fn linking_number(l: &OrientedLink) -> Result<LinkingNumber> {
    if l.components().len() != 2 {
        return Err(Error::ComponentCount { expected: 2, got: l.components().len() });
    }
    let mut twice = 0i64;
    for c in l.diagram().crossings() {
        let (Some((ci, od)), Some((cj, ud))) = (l.owner(c.over.edge), l.owner(c.under.edge)) else {
            continue;
        };
        if ci != cj {
            twice += c.oriented_sign(od, ud) as i64;
        }
    }
    if twice % 2 != 0 {
        return Err(Error::Internal(format!("odd inter-component crossing sum {twice}")));
    }
    Ok(LinkingNumber(twice / 2))
}

/// Linking number of two disjoint cycles of a diagram.
pub fn cycles_linking_number(d: &Diagram, a: &Cycle, b: &Cycle) -> Result<i64> {
    let l = extract_link(d, &[a.clone(), b.clone()])?;
    Ok(linking_number(&l)?.0)
}

/// `a2` of a one-component link by descent.
pub fn a2(k: &OrientedLink) -> Result<A2Value> {
    if k.components().len() != 1 {
        return Err(Error::ComponentCount { expected: 1, got: k.components().len() });
    }
    let code = gauss_code(k, 0)?;
    Ok(A2Value(a2_descent(&code)?))
}

/// `a2` of a cycle of a diagram, by descent.
pub fn cycle_a2(d: &Diagram, c: &Cycle) -> Result<i64> {
    Ok(a2(&extract_link(d, std::slice::from_ref(c))?)?.0)
}

fn visit_positions(code: &GaussCode) -> BTreeMap<usize, (usize, usize)> {
    let mut pos: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (i, ev) in code.events().iter().enumerate() {
        pos.entry(ev.crossing).and_modify(|p| p.1 = i).or_insert((i, usize::MAX));
    }
    pos
}

/// Twice the linking number of the oriented smoothing at `crossing`, given
/// the current sign of every crossing.
fn smoothing_twice_lk(
    code: &GaussCode,
    pos: &BTreeMap<usize, (usize, usize)>,
    signs: &BTreeMap<usize, i32>,
    crossing: usize,
) -> i64 {
    let (p, q) = pos[&crossing];
    let mut twice = 0i64;
    for ev in &code.events()[p + 1..q] {
        let (a, b) = pos[&ev.crossing];
        let inside = |i: usize| p < i && i < q;
        if inside(a) != inside(b) {
            twice += signs[&ev.crossing] as i64;
        }
    }
    twice
}

/// Linking number of the two-component link obtained by smoothing
/// `crossing` of the knot described by `code`.
pub fn smoothing_linking_number(code: &GaussCode, crossing: usize) -> Result<i64> {
    let pos = visit_positions(code);
    if !pos.contains_key(&crossing) {
        return Err(Error::InvalidArgument(format!("crossing {crossing} not in code")));
    }
    let signs: BTreeMap<usize, i32> = code.events().iter().map(|e| (e.crossing, e.sign)).collect();
    let twice = smoothing_twice_lk(code, &pos, &signs, crossing);
    if twice % 2 != 0 {
        return Err(Error::MalformedCode(format!("smoothing at {crossing} has odd crossing sum")));
    }
    Ok(twice / 2)
}

/// `a2` of a knot code by crossing-switch descent.
pub fn a2_descent(code: &GaussCode) -> Result<i64> {
    let pos = visit_positions(code);
    let mut signs: BTreeMap<usize, i32> = code.events().iter().map(|e| (e.crossing, e.sign)).collect();
    let mut total = 0i64;
    for (i, ev) in code.events().iter().enumerate() {
        let x = ev.crossing;
        if pos[&x].0 != i || ev.role != Role::Under {
            continue;
        }
        let twice = smoothing_twice_lk(code, &pos, &signs, x);
        if twice % 2 != 0 {
            return Err(Error::MalformedCode(format!("smoothing at {x} has odd crossing sum")));
        }
        let s = signs.get_mut(&x).unwrap();
        // a2(current) = a2(switched) + sign * lk(smoothing)
        total += *s as i64 * (twice / 2);
        *s = -*s;
    }
    Ok(total)
}

/// Independent Gauss-diagram count of `a2`: the sum of `sign(x) sign(y)`
/// over crossing pairs met, from the basepoint, in the order
/// x under, y over, x over, y under.
pub fn a2_oracle(code: &GaussCode) -> Result<A2Value> {
    let ev = code.events();
    let mut total = 0i64;
    for i in 0..ev.len() {
        if ev[i].role != Role::Under {
            continue;
        }
        let x = ev[i].crossing;
        let Some(k) = (i + 1..ev.len()).find(|&k| ev[k].crossing == x) else {
            continue;
        };
        for j in i + 1..k {
            if ev[j].role != Role::Over {
                continue;
            }
            let y = ev[j].crossing;
            let Some(l) = (k + 1..ev.len()).find(|&l| ev[l].crossing == y) else {
                continue;
            };
            debug_assert_eq!(ev[l].role, Role::Under);
            total += (ev[i].sign * ev[j].sign) as i64;
            let _ = l;
        }
    }
    Ok(A2Value(total))
}

/// Pairwise signed crossing sums between edges of a diagram, for fast
/// linking numbers of many cycle pairs.
#[derive(Clone, Debug, Default)]
pub struct LinkingTable {
    sums: BTreeMap<(Edge, Edge), i64>,
}

impl LinkingTable {
    pub fn new(d: &Diagram) -> Self {
        let mut sums = BTreeMap::new();
        for c in d.crossings() {
            let (a, b) = (c.over.edge, c.under.edge);
            if a == b {
                continue;
            }
            let key = if a < b { (a, b) } else { (b, a) };
            *sums.entry(key).or_insert(0) += c.sign() as i64;
        }
        LinkingTable { sums }
    }

    /// Linking number of disjoint cycles `a` and `b`.
    pub fn lk(&self, a: &Cycle, b: &Cycle) -> i64 {
        let mut twice = 0;
        for (p, q) in a.steps() {
            let e = Edge::new(p, q);
            let de = e.direction(p, q) as i64;
            for (r, s) in b.steps() {
                let f = Edge::new(r, s);
                let key = if e < f { (e, f) } else { (f, e) };
                if let Some(v) = self.sums.get(&key) {
                    twice += v * de * f.direction(r, s) as i64;
                }
            }
        }
        debug_assert!(twice % 2 == 0);
        twice / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D4Row {
    pub label: D4Label,
    pub epsilon: i32,
    pub a2: i64,
    pub cycle: Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D4Evaluation {
    pub rows: Vec<D4Row>,
    pub lambda: u64,
}

impl D4Evaluation {
    /// Row with the largest `|a2|`; ties go to the first label.
    pub fn max_row(&self) -> &D4Row {
        let best = self.rows.iter().map(|r| r.a2.abs()).max().unwrap_or(0);
        self.rows.iter().find(|r| r.a2.abs() == best).unwrap()
    }
}

pub fn evaluate_d4(d4: &D4Diagram) -> Result<D4Evaluation> {
    d4.validate()?;
    let rows = D4Label::all()
        .into_par_iter()
        .map(|label| {
            let cycle = d4.hamiltonian_cycle(label);
            let a2 = cycle_a2(d4.diagram(), &cycle)?;
            Ok(D4Row { label, epsilon: label.epsilon(), a2, cycle })
        })
        .collect::<Result<Vec<_>>>()?;
    let sum: i64 = rows.iter().map(|r| r.epsilon as i64 * r.a2).sum();
    Ok(D4Evaluation { rows, lambda: sum.unsigned_abs() })
}

/// Both sides of `lambda = |lk(E, C) lk(B, D)|`.
pub fn eq2_sides(d4: &D4Diagram) -> Result<(u64, u64)> {
    let lambda = evaluate_d4(d4)?.lambda;
    let d = d4.diagram();
    let ec = cycles_linking_number(d, d4.cycle_e(), d4.cycle_c())?;
    let bd = cycles_linking_number(d, d4.cycle_b(), d4.cycle_d())?;
    Ok((lambda, (ec * bd).unsigned_abs()))
}

pub fn eq2_check(d4: &D4Diagram) -> bool {
    matches!(eq2_sides(d4), Ok((a, b)) if a == b)
}

/// Crossing ids of a code whose first visit is on the under-strand.
pub fn ascending_crossings(code: &GaussCode) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for ev in code.events() {
        if seen.insert(ev.crossing) && ev.role == Role::Under {
            out.insert(ev.crossing);
        }
    }
    out
}
