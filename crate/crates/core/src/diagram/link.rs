use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::{Diagram, Role};
use crate::error::{Error, Result};
use crate::geometry::Edge;

/// Oriented simple cycle of `K_n`, oriented by vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs 3+ vertices, got {}", vertices.len())));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidArgument(format!("cycle {vertices:?} repeats a vertex")));
        }
        Ok(Cycle(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn is_disjoint(&self, other: &Cycle) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// Directed edges in traversal order, closing edge last.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.steps().map(|(a, b)| Edge::new(a, b))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    /// Same cycle, opposite orientation, same first vertex.
    pub fn reversed(&self) -> Cycle {
        let mut v = self.0.clone();
        v[1..].reverse();
        Cycle(v)
    }

    /// Same orientation, traversal starting at position `k`.
    pub fn rotated(&self, k: usize) -> Cycle {
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(k % len);
        Cycle(v)
    }

    /// Lowest vertex first, its lower neighbour second.
    pub fn canonical(&self) -> Cycle {
        let pos = self.0.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
        let c = self.rotated(pos);
        if c.0[1] < c.0[c.0.len() - 1] {
            c
        } else {
            c.reversed()
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// +1 if the cycle traverses `edge` in canonical direction, -1 if
    /// against it, `None` if the edge is not on the cycle.
    pub fn direction_of(&self, edge: Edge) -> Option<i32> {
        self.steps().find(|(a, b)| Edge::new(*a, *b) == edge).map(|(a, b)| edge.direction(a, b))
    }

    /// Vertices met walking forward from position `from` to position `to`,
    /// both inclusive.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.0.len();
        let mut out = vec![self.0[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % n;
            out.push(self.0[i]);
        }
        out
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|x| *x == v)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Cycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vs = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad cycle {s:?}")))?;
        Cycle::new(vs)
    }
}

/// Link (or knot, with one component) of pairwise vertex-disjoint cycles
/// together with the sub-diagram of crossings among their edges.
#[derive(Clone, Debug)]
pub struct OrientedLink {
    components: Vec<Cycle>,
    diagram: Diagram,
    owner: BTreeMap<Edge, (usize, i32)>,
}

impl OrientedLink {
    pub fn components(&self) -> &[Cycle] {
        &self.components
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Component index and traversal direction of an edge.
    pub fn owner(&self, edge: Edge) -> Option<(usize, i32)> {
        self.owner.get(&edge).copied()
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }
}

pub fn extract_link(d: &Diagram, comps: &[Cycle]) -> Result<OrientedLink> {
    if comps.is_empty() {
        return Err(Error::ComponentCount { expected: 1, got: 0 });
    }
    let mut used = BTreeSet::new();
    let mut owner = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c.vertices() {
            if v >= d.n() {
                return Err(Error::InvalidArgument(format!("vertex {v} outside K_{}", d.n())));
            }
            if !used.insert(v) {
                return Err(Error::SharedVertex(v));
            }
        }
        for (a, b) in c.steps() {
            let e = Edge::new(a, b);
            owner.insert(e, (i, e.direction(a, b)));
        }
    }
    let edges: BTreeSet<Edge> = owner.keys().copied().collect();
    Ok(OrientedLink { components: comps.to_vec(), diagram: d.restrict(&edges), owner })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussEvent {
    pub crossing: usize,
    pub role: Role,
    pub sign: i32,
}

/// Where a traversal starts: at `vertex`, heading along `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basepoint {
    pub vertex: usize,
    pub edge: Edge,
}

/// Based, signed Gauss code of one knot component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCode {
    basepoint: Option<Basepoint>,
    events: Vec<GaussEvent>,
}

impl GaussCode {
    pub fn new(basepoint: Option<Basepoint>, events: Vec<GaussEvent>) -> Result<Self> {
        let mut seen: BTreeMap<usize, Vec<GaussEvent>> = BTreeMap::new();
        for ev in &events {
            if ev.sign != 1 && ev.sign != -1 {
                return Err(Error::MalformedCode(format!("crossing {} has sign {}", ev.crossing, ev.sign)));
            }
            seen.entry(ev.crossing).or_default().push(*ev);
        }
        for (id, evs) in &seen {
            if evs.len() != 2 {
                return Err(Error::MalformedCode(format!("crossing {id} appears {} time(s)", evs.len())));
            }
            if evs[0].role == evs[1].role {
                return Err(Error::MalformedCode(format!("crossing {id} is not once over and once under")));
            }
            if evs[0].sign != evs[1].sign {
                return Err(Error::MalformedCode(format!("crossing {id} has inconsistent signs")));
            }
        }
        Ok(GaussCode { basepoint, events })
    }

    /// Code from `(crossing, role, sign)` triples, without a basepoint.
    pub fn from_triples(triples: &[(usize, Role, i32)]) -> Result<Self> {
        GaussCode::new(
            None,
            triples.iter().map(|&(crossing, role, sign)| GaussEvent { crossing, role, sign }).collect(),
        )
    }

    pub fn basepoint(&self) -> Option<Basepoint> {
        self.basepoint
    }

    pub fn events(&self) -> &[GaussEvent] {
        &self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.events.len() / 2
    }

    pub fn crossing_ids(&self) -> BTreeSet<usize> {
        self.events.iter().map(|e| e.crossing).collect()
    }

    /// Positions of the two visits of `crossing`.
    pub fn positions(&self, crossing: usize) -> Option<(usize, usize)> {
        let mut it = self.events.iter().enumerate().filter(|(_, e)| e.crossing == crossing).map(|(i, _)| i);
        Some((it.next()?, it.next()?))
    }

    /// Same code read from a different starting event.
    pub fn rotated(&self, k: usize) -> GaussCode {
        let mut events = self.events.clone();
        if !events.is_empty() {
            let len = events.len();
            events.rotate_left(k % len);
        }
        GaussCode { basepoint: None, events }
    }

    /// Code with `crossing` switched: roles exchanged, sign negated.
    pub fn switched(&self, crossing: usize) -> GaussCode {
        let events = self
            .events
            .iter()
            .map(|e| {
                if e.crossing == crossing {
                    GaussEvent { crossing, role: e.role.flip(), sign: -e.sign }
                } else {
                    *e
                }
            })
            .collect();
        GaussCode { basepoint: self.basepoint, events }
    }

    pub fn over_count(&self) -> usize {
        self.events.iter().filter(|e| e.role == Role::Over).count()
    }

    pub fn under_count(&self) -> usize {
        self.events.iter().filter(|e| e.role == Role::Under).count()
    }
}

/// Gauss code of component `comp_index`, read from its first vertex in
/// orientation order. Only self-crossings of the component are recorded.
pub fn gauss_code(l: &OrientedLink, comp_index: usize) -> Result<GaussCode> {
    let comp = l
        .components()
        .get(comp_index)
        .ok_or(Error::ComponentIndex { index: comp_index, len: l.components().len() })?;
    let d = l.diagram();
    let mut events = Vec::new();
    for (a, b) in comp.steps() {
        let edge = Edge::new(a, b);
        let dir = edge.direction(a, b);
        let list = d.events(edge);
        let mut push = |ev: &super::Event| {
            let c = d.crossing(ev.crossing).expect("event of a known crossing");
            let (Some((ci, od)), Some((cj, ud))) = (l.owner(c.over.edge), l.owner(c.under.edge)) else {
                return;
            };
            if ci == comp_index && cj == comp_index {
                events.push(GaussEvent { crossing: c.id, role: ev.role, sign: c.oriented_sign(od, ud) });
            }
        };
        if dir > 0 {
            list.iter().for_each(&mut push);
        } else {
            list.iter().rev().for_each(&mut push);
        }
    }
    let first = comp.vertices()[0];
    let basepoint = Basepoint { vertex: first, edge: Edge::new(first, comp.vertices()[1]) };
    GaussCode::new(Some(basepoint), events)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_validation() {
        assert!(Cycle::new(vec![0, 1]).is_err());
        assert!(Cycle::new(vec![0, 1, 0]).is_err());
        assert!("0,1,x".parse::<Cycle>().is_err());
        let c: Cycle = "3,1,2".parse().unwrap();
        assert_eq!(c.to_string(), "3,1,2");
    }

    #[test]
    fn canonical_form() {
        let c = Cycle::new(vec![3, 5, 1, 4]).unwrap();
        assert_eq!(c.canonical().vertices(), &[1, 4, 3, 5]);
        assert!(c.canonical().is_canonical());
        assert_eq!(c.reversed().canonical(), c.canonical());
        assert_eq!(c.rotated(2).canonical(), c.canonical());
    }

    #[test]
    fn directions_and_paths() {
        let c = Cycle::new(vec![4, 2, 7]).unwrap();
        assert_eq!(c.direction_of(Edge::new(2, 4)), Some(-1));
        assert_eq!(c.direction_of(Edge::new(2, 7)), Some(1));
        assert_eq!(c.direction_of(Edge::new(4, 7)), Some(-1));
        assert_eq!(c.direction_of(Edge::new(1, 7)), None);
        assert_eq!(c.path(1, 0), vec![2, 7, 4]);
        assert_eq!(c.reversed().vertices(), &[4, 7, 2]);
    }

    #[test]
    fn gauss_code_validation() {
        use Role::*;
        assert!(GaussCode::from_triples(&[(1, Over, 1), (1, Under, 1)]).is_ok());
        assert!(GaussCode::from_triples(&[(1, Over, 1), (1, Over, 1)]).is_err());
        assert!(GaussCode::from_triples(&[(1, Over, 1), (1, Under, -1)]).is_err());
        assert!(GaussCode::from_triples(&[(1, Over, 1)]).is_err());
        let g = GaussCode::from_triples(&[(1, Over, 1), (2, Under, -1), (1, Under, 1), (2, Over, -1)]).unwrap();
        let s = g.switched(2);
        assert_eq!(s.events()[1], GaussEvent { crossing: 2, role: Over, sign: 1 });
        assert_eq!(g.positions(2), Some((1, 3)));
        assert_eq!(g.rotated(1).events()[0].crossing, 2);
    }
}
