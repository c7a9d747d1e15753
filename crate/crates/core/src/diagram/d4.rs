//! The pseudo-graph D4 realized inside a diagram of `K_n`.
//!
//! Four disjoint cycles X1, Y1, X2, Y2 joined by the connector edges
//! v1u2, w1v2, z1w2, u1z2. Collapsing the connectors leaves four corners
//!
//! ```text
//!   P = {v1,u2} --X2 (e0,e1)-- Q = {w1,v2}
//!        |                         |
//!   X1 (b0,b1)                Y1 (d0,d1)
//!        |                         |
//!   S = {u1,z2} --Y2 (c0,c1)-- R = {z1,w2}
//! ```
//!
//! so B = X1, C = Y2, D = Y1 and E = X2. The Hamiltonian cycle
//! `b_i c_j d_k e_l` is realized in `K_n` by keeping the connector edges.

use std::collections::BTreeSet;
use std::fmt;

use super::{Cycle, Diagram};
use crate::error::{Error, Result};
use crate::geometry::Edge;

pub const ARC_NAMES: [&str; 8] = ["b0", "b1", "c0", "c1", "d0", "d1", "e0", "e1"];

/// Label `b_i c_j d_k e_l` of a Hamiltonian cycle of D4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct D4Label {
    pub b: u8,
    pub c: u8,
    pub d: u8,
    pub e: u8,
}

impl D4Label {
    /// +1 when `i + j + k + l` is even, -1 when odd.
    pub fn epsilon(&self) -> i32 {
        if (self.b + self.c + self.d + self.e) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 16 labels in lexicographic (b, c, d, e) order.
    pub fn all() -> Vec<D4Label> {
        let mut out = Vec::with_capacity(16);
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    for e in 0..2 {
                        out.push(D4Label { b, c, d, e });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for D4Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}c{}d{}e{}", self.b, self.c, self.d, self.e)
    }
}

/// Marked vertices: u, v on X_i and z, w on Y_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectorMarks {
    pub u1: usize,
    pub v1: usize,
    pub z1: usize,
    pub w1: usize,
    pub u2: usize,
    pub v2: usize,
    pub z2: usize,
    pub w2: usize,
}

impl ConnectorMarks {
    /// First and `len/2`-th vertex of each cycle.
    pub fn default_for(x1: &Cycle, y1: &Cycle, x2: &Cycle, y2: &Cycle) -> Self {
        let pick = |c: &Cycle| (c.vertices()[0], c.vertices()[c.len() / 2]);
        let (u1, v1) = pick(x1);
        let (z1, w1) = pick(y1);
        let (u2, v2) = pick(x2);
        let (z2, w2) = pick(y2);
        ConnectorMarks { u1, v1, z1, w1, u2, v2, z2, w2 }
    }

    /// Connector edges v1u2, w1v2, z1w2, u1z2.
    pub fn connectors(&self) -> [Edge; 4] {
        [
            Edge::new(self.v1, self.u2),
            Edge::new(self.w1, self.v2),
            Edge::new(self.z1, self.w2),
            Edge::new(self.u1, self.z2),
        ]
    }
}

/// One arc of D4 as a vertex path of `K_n`, listed in the direction used
/// when composing Hamiltonian cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub name: &'static str,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct D4Diagram {
    x1: Cycle,
    y1: Cycle,
    x2: Cycle,
    y2: Cycle,
    marks: ConnectorMarks,
    arcs: Vec<Arc>,
    diagram: Diagram,
}

/// The two arcs of `c` between positions `from` and `to`, both running from
/// `c[from]` to `c[to]`: arc 0 forward along `c`, arc 1 backward.
fn split_arcs(c: &Cycle, from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
    let forward = c.path(from, to);
    let mut backward = c.path(to, from);
    backward.reverse();
    (forward, backward)
}

pub fn collapse_to_d4(
    d: &Diagram,
    x1: &Cycle,
    y1: &Cycle,
    x2: &Cycle,
    y2: &Cycle,
    marks: ConnectorMarks,
) -> Result<D4Diagram> {
    let cycles = [x1, y1, x2, y2];
    for (i, a) in cycles.iter().enumerate() {
        if let Some(e) = a.edges().find(|e| !d.has_edge(*e)) {
            return Err(Error::MissingEdge(e));
        }
        for b in &cycles[i + 1..] {
            if let Some(v) = a.vertices().iter().find(|v| b.contains(**v)) {
                return Err(Error::SharedVertex(*v));
            }
        }
    }
    let pos = |c: &Cycle, v: usize, name: &str| {
        c.position(v).ok_or_else(|| Error::InvalidD4(format!("marked vertex {name}={v} is not on its cycle")))
    };
    let m = &marks;
    let (pu1, pv1) = (pos(x1, m.u1, "u1")?, pos(x1, m.v1, "v1")?);
    let (pz1, pw1) = (pos(y1, m.z1, "z1")?, pos(y1, m.w1, "w1")?);
    let (pu2, pv2) = (pos(x2, m.u2, "u2")?, pos(x2, m.v2, "v2")?);
    let (pz2, pw2) = (pos(y2, m.z2, "z2")?, pos(y2, m.w2, "w2")?);
    for (a, b, what) in [(pu1, pv1, "u1,v1"), (pz1, pw1, "z1,w1"), (pu2, pv2, "u2,v2"), (pz2, pw2, "z2,w2")] {
        if a == b {
            return Err(Error::InvalidD4(format!("marked vertices {what} coincide")));
        }
    }
    for e in marks.connectors() {
        if !d.has_edge(e) {
            return Err(Error::MissingEdge(e));
        }
    }

    let (b0, b1) = split_arcs(x1, pu1, pv1);
    let (c0, c1) = split_arcs(y2, pw2, pz2);
    let (d0, d1) = split_arcs(y1, pw1, pz1);
    let (e0, e1) = split_arcs(x2, pu2, pv2);
    let arcs = [b0, b1, c0, c1, d0, d1, e0, e1]
        .into_iter()
        .zip(ARC_NAMES)
        .map(|(path, name)| Arc { name, path })
        .collect();

    let mut edges: BTreeSet<Edge> = cycles.iter().flat_map(|c| c.edges()).collect();
    edges.extend(marks.connectors());
    let d4 = D4Diagram {
        x1: x1.clone(),
        y1: y1.clone(),
        x2: x2.clone(),
        y2: y2.clone(),
        marks,
        arcs,
        diagram: d.restrict(&edges),
    };
    d4.validate()?;
    Ok(d4)
}

impl D4Diagram {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, name: &str) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.name == name)
    }

    pub fn marks(&self) -> &ConnectorMarks {
        &self.marks
    }

    /// Sub-diagram of the connector graph (four cycles plus connectors).
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }

    /// Corner vertices after collapsing: P, Q, R, S as connector endpoint pairs.
    pub fn corners(&self) -> [(usize, usize); 4] {
        let m = &self.marks;
        [(m.v1, m.u2), (m.w1, m.v2), (m.z1, m.w2), (m.u1, m.z2)]
    }

    pub fn cycle_b(&self) -> &Cycle {
        &self.x1
    }

    pub fn cycle_c(&self) -> &Cycle {
        &self.y2
    }

    pub fn cycle_d(&self) -> &Cycle {
        &self.y1
    }

    pub fn cycle_e(&self) -> &Cycle {
        &self.x2
    }

    fn arc_pair(&self, letter: usize) -> (&Arc, &Arc) {
        (&self.arcs[2 * letter], &self.arcs[2 * letter + 1])
    }

    /// The cycle of `K_n` realizing `b_i c_j d_k e_l`:
    /// u2 -e-> v2, w1 -d-> z1, w2 -c-> z2, u1 -b-> v1, joined by connectors.
    pub fn hamiltonian_cycle(&self, label: D4Label) -> Cycle {
        let pick = |letter: usize, i: u8| &self.arcs[2 * letter + i as usize].path;
        let mut v = Vec::new();
        v.extend(pick(3, label.e));
        v.extend(pick(2, label.d));
        v.extend(pick(1, label.c));
        v.extend(pick(0, label.b));
        Cycle::new(v).expect("arcs of disjoint cycles compose to a simple cycle")
    }

    /// Checks the arc structure: each letter's two arcs share exactly their
    /// endpoints, together cover their cycle, and the arcs chain around the
    /// four corners through the connectors.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidD4(m));
        let cycles = [&self.x1, &self.y2, &self.y1, &self.x2];
        for (letter, cycle) in cycles.iter().enumerate() {
            let (a0, a1) = self.arc_pair(letter);
            if a0.path.first() != a1.path.first() || a0.path.last() != a1.path.last() {
                return bad(format!("arcs {} and {} do not share endpoints", a0.name, a1.name));
            }
            let inner0: BTreeSet<_> = a0.path[1..a0.path.len() - 1].iter().collect();
            if a1.path[1..a1.path.len() - 1].iter().any(|v| inner0.contains(v)) {
                return bad(format!("arcs {} and {} overlap", a0.name, a1.name));
            }
            if a0.path.len() + a1.path.len() != cycle.len() + 2 {
                return bad(format!("arcs {} and {} do not cover their cycle", a0.name, a1.name));
            }
            if a0.path.iter().chain(&a1.path).any(|v| !cycle.contains(*v)) {
                return bad(format!("arc {} leaves its cycle", a0.name));
            }
        }
        // Composition order e, d, c, b: each arc's end joins the next arc's start.
        let order = [3usize, 2, 1, 0];
        for w in 0..4 {
            let end = *self.arcs[2 * order[w]].path.last().unwrap();
            let start = self.arcs[2 * order[(w + 1) % 4]].path[0];
            if !self.marks.connectors().contains(&Edge::new(end, start)) {
                return bad(format!("no connector between {end} and {start}"));
            }
        }
        Ok(())
    }
}
