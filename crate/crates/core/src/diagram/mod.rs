//! Crossing diagrams of spatial complete graphs, sub-links, Gauss codes and
//! the diagram rewrites (half twists, trefoil summands, D4 collapse).

mod d4;
mod link;
mod rewrite;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{Axis, Edge, Rational};

pub use self::d4::{collapse_to_d4, Arc, D4Diagram, D4Label, ConnectorMarks, ARC_NAMES};
pub use self::link::{extract_link, gauss_code, Basepoint, Cycle, GaussCode, GaussEvent, OrientedLink};
pub use self::rewrite::{insert_half_twists, insert_trefoil};

/// Position along an edge polyline: segment index plus the fraction of the
/// way along that segment, both in the edge's canonical direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub segment: u32,
    pub frac: Rational,
}

impl Param {
    pub fn new(segment: u32, frac: Rational) -> Self {
        Param { segment, frac }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub edge: Edge,
    pub param: Param,
}

/// Projected directions of both strands, each taken along its edge's
/// canonical direction. Any positive rescaling describes the same frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub over_dir: [Rational; 2],
    pub under_dir: [Rational; 2],
}

impl Frame {
    pub fn from_ints(over: [i64; 2], under: [i64; 2]) -> Self {
        let r = crate::geometry::int;
        Frame { over_dir: [r(over[0]), r(over[1])], under_dir: [r(under[0]), r(under[1])] }
    }

    /// Frame of a crossing that is positive for canonical orientations.
    pub fn positive() -> Self {
        Frame::from_ints([1, 0], [0, 1])
    }

    pub fn negative() -> Self {
        Frame::from_ints([0, 1], [1, 0])
    }

    pub fn with_sign(sign: i32) -> Self {
        if sign > 0 {
            Frame::positive()
        } else {
            Frame::negative()
        }
    }

    /// Right-hand rule: +1 when the under direction is the over direction
    /// turned counter-clockwise (seen from the viewer).
    pub fn sign(&self) -> i32 {
        let [a0, a1] = &self.over_dir;
        let [b0, b1] = &self.under_dir;
        let c = a0 * b1 - a1 * b0;
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    }

    fn swapped(&self) -> Frame {
        Frame { over_dir: self.under_dir.clone(), under_dir: self.over_dir.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    pub over: Strand,
    pub under: Strand,
    pub frame: Frame,
}

impl Crossing {
    /// Sign with both strands traversed in canonical edge direction.
    pub fn sign(&self) -> i32 {
        self.frame.sign()
    }

    pub fn strand(&self, role: Role) -> &Strand {
        match role {
            Role::Over => &self.over,
            Role::Under => &self.under,
        }
    }

    /// Sign when the over strand is traversed with direction `over_dir` and
    /// the under strand with `under_dir` (each +1 canonical, -1 reversed).
    pub fn oriented_sign(&self, over_dir: i32, under_dir: i32) -> i32 {
        self.sign() * over_dir * under_dir
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub crossing: usize,
    pub role: Role,
    pub param: Param,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Projection { axis: Axis, source: String },
    Synthetic,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Projection { axis, source } => write!(f, "projection {} of {}", axis.letter(), source),
            Provenance::Synthetic => write!(f, "synthetic"),
        }
    }
}

/// Crossing diagram of a spatial `K_n`. Crossing ids are stable under
/// rewrites and sub-diagram extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    crossings: BTreeMap<usize, Crossing>,
    events: BTreeMap<Edge, Vec<Event>>,
    provenance: Provenance,
}

impl Diagram {
    pub fn empty(n: usize, provenance: Provenance) -> Self {
        Diagram { n, crossings: BTreeMap::new(), events: BTreeMap::new(), provenance }
    }

    /// Builds a diagram assigning ids `0..` in order.
    pub fn from_parts(n: usize, provenance: Provenance, parts: Vec<(Strand, Strand, Frame)>) -> Result<Self> {
        let crossings = parts
            .into_iter()
            .enumerate()
            .map(|(id, (over, under, frame))| Crossing { id, over, under, frame })
            .collect();
        Diagram::from_crossings(n, provenance, crossings)
    }

    pub fn from_crossings(n: usize, provenance: Provenance, crossings: Vec<Crossing>) -> Result<Self> {
        let mut d = Diagram::empty(n, provenance);
        for c in crossings {
            for s in [&c.over, &c.under] {
                if s.edge.hi() >= n {
                    return Err(Error::MissingEdge(s.edge));
                }
            }
            if c.sign() == 0 {
                return Err(Error::InvalidArgument(format!("crossing {} has a degenerate frame", c.id)));
            }
            d.events.entry(c.over.edge).or_default().push(Event {
                crossing: c.id,
                role: Role::Over,
                param: c.over.param.clone(),
            });
            d.events.entry(c.under.edge).or_default().push(Event {
                crossing: c.id,
                role: Role::Under,
                param: c.under.param.clone(),
            });
            if d.crossings.insert(c.id, c).is_some() {
                return Err(Error::InvalidArgument("duplicate crossing id".into()));
            }
        }
        for (edge, list) in d.events.iter_mut() {
            list.sort_by(|a, b| a.param.cmp(&b.param));
            if list.windows(2).any(|w| w[0].param == w[1].param) {
                return Err(Error::InvalidArgument(format!("two events coincide on edge {edge}")));
            }
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.values()
    }

    pub fn crossing(&self, id: usize) -> Option<&Crossing> {
        self.crossings.get(&id)
    }

    /// Events along `edge` sorted by parameter.
    pub fn events(&self, edge: Edge) -> &[Event] {
        self.events.get(&edge).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edges_with_events(&self) -> impl Iterator<Item = (Edge, &[Event])> {
        self.events.iter().map(|(e, l)| (*e, l.as_slice()))
    }

    pub fn has_edge(&self, edge: Edge) -> bool {
        edge.hi() < self.n
    }

    pub(crate) fn next_id(&self) -> usize {
        self.crossings.keys().next_back().map_or(0, |k| k + 1)
    }

    pub(crate) fn mark_synthetic(&mut self) {
        self.provenance = Provenance::Synthetic;
    }

    /// Adds a crossing and returns its id.
    pub fn add_crossing(&mut self, over: Strand, under: Strand, frame: Frame) -> Result<usize> {
        let id = self.next_id();
        for s in [&over, &under] {
            if !self.has_edge(s.edge) {
                return Err(Error::MissingEdge(s.edge));
            }
            if self.events(s.edge).iter().any(|e| e.param == s.param) {
                return Err(Error::InvalidArgument(format!("edge {} already has an event there", s.edge)));
            }
        }
        if over.edge == under.edge && over.param == under.param {
            return Err(Error::InvalidArgument("self-crossing needs distinct parameters".into()));
        }
        if frame.sign() == 0 {
            return Err(Error::InvalidArgument("degenerate crossing frame".into()));
        }
        for (role, s) in [(Role::Over, &over), (Role::Under, &under)] {
            let list = self.events.entry(s.edge).or_default();
            let at = list.partition_point(|e| e.param < s.param);
            list.insert(at, Event { crossing: id, role, param: s.param.clone() });
        }
        self.crossings.insert(id, Crossing { id, over, under, frame });
        Ok(id)
    }

    /// Sub-diagram keeping exactly the crossings whose strands both lie on
    /// `edges`.
    pub fn restrict(&self, edges: &BTreeSet<Edge>) -> Diagram {
        let keep: BTreeSet<usize> = self
            .crossings
            .values()
            .filter(|c| edges.contains(&c.over.edge) && edges.contains(&c.under.edge))
            .map(|c| c.id)
            .collect();
        let crossings = keep.iter().map(|id| (*id, self.crossings[id].clone())).collect();
        let events = edges
            .iter()
            .filter_map(|e| {
                let l: Vec<Event> =
                    self.events(*e).iter().filter(|ev| keep.contains(&ev.crossing)).cloned().collect();
                (!l.is_empty()).then_some((*e, l))
            })
            .collect();
        Diagram { n: self.n, crossings, events, provenance: self.provenance.clone() }
    }

    /// Diagram with crossing `id` switched (over and under exchanged).
    pub fn switch_crossing(&self, id: usize) -> Result<Diagram> {
        let c = self.crossings.get(&id).ok_or_else(|| Error::InvalidArgument(format!("no crossing {id}")))?;
        let flipped = Crossing { id, over: c.under.clone(), under: c.over.clone(), frame: c.frame.swapped() };
        let mut d = self.clone();
        for s in [&c.over, &c.under] {
            for ev in d.events.get_mut(&s.edge).unwrap().iter_mut() {
                if ev.crossing == id {
                    ev.role = ev.role.flip();
                }
            }
        }
        d.crossings.insert(id, flipped);
        d.mark_synthetic();
        Ok(d)
    }

    /// Number of crossings between edges `e` and `f` (either on top).
    pub fn crossings_between(&self, e: Edge, f: Edge) -> usize {
        self.crossings
            .values()
            .filter(|c| (c.over.edge == e && c.under.edge == f) || (c.over.edge == f && c.under.edge == e))
            .count()
    }

    /// Checks the structural invariants: each crossing listed exactly once
    /// over and once under at its stored parameters, lists strictly sorted.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Internal(m));
        let mut seen: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut total = 0;
        for (edge, list) in &self.events {
            if list.windows(2).any(|w| w[0].param >= w[1].param) {
                return bad(format!("events on {edge} not strictly sorted"));
            }
            for ev in list {
                total += 1;
                let Some(c) = self.crossings.get(&ev.crossing) else {
                    return bad(format!("event references unknown crossing {}", ev.crossing));
                };
                let s = c.strand(ev.role);
                if s.edge != *edge || s.param != ev.param {
                    return bad(format!("event for crossing {} disagrees with crossing record", c.id));
                }
                let slot = seen.entry(c.id).or_default();
                match ev.role {
                    Role::Over => slot.0 += 1,
                    Role::Under => slot.1 += 1,
                }
            }
        }
        if total != 2 * self.crossings.len() {
            return bad(format!("{total} events for {} crossings", self.crossings.len()));
        }
        if seen.len() != self.crossings.len() || seen.values().any(|&s| s != (1, 1)) {
            return bad("crossing not listed exactly once over and once under".into());
        }
        for c in self.crossings.values() {
            if c.frame.sign() == 0 || (c.over.edge == c.under.edge && c.over.param == c.under.param) {
                return bad(format!("crossing {} is degenerate", c.id));
            }
            if c.over.param.frac.is_negative() {
                return bad(format!("crossing {} has a negative parameter", c.id));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn strand(a: usize, b: usize, num: i64, den: i64) -> Strand {
        Strand { edge: Edge::new(a, b), param: Param::new(0, ratio(num, den)) }
    }

    #[test]
    fn frame_signs() {
        assert_eq!(Frame::positive().sign(), 1);
        assert_eq!(Frame::negative().sign(), -1);
        // over (1,1), under (-1,1): under is over turned +90 degrees.
        assert_eq!(Frame::from_ints([1, 1], [-1, 1]).sign(), 1);
        assert_eq!(Frame::from_ints([1, 1], [1, -1]).sign(), -1);
    }

    #[test]
    fn events_double_count_and_sorting() {
        let mut d = Diagram::empty(4, Provenance::Synthetic);
        d.add_crossing(strand(0, 1, 2, 3), strand(2, 3, 1, 2), Frame::positive()).unwrap();
        d.add_crossing(strand(2, 3, 1, 4), strand(0, 1, 1, 3), Frame::negative()).unwrap();
        d.check_invariants().unwrap();
        let total: usize = d.edges_with_events().map(|(_, l)| l.len()).sum();
        assert_eq!(total, 2 * d.crossing_count());
        let params: Vec<_> = d.events(Edge::new(0, 1)).iter().map(|e| e.param.frac.clone()).collect();
        assert_eq!(params, vec![ratio(1, 3), ratio(2, 3)]);
        assert_eq!(d.crossings_between(Edge::new(0, 1), Edge::new(2, 3)), 2);
    }

    #[test]
    fn duplicate_param_rejected() {
        let mut d = Diagram::empty(4, Provenance::Synthetic);
        d.add_crossing(strand(0, 1, 1, 2), strand(2, 3, 1, 2), Frame::positive()).unwrap();
        assert!(d.add_crossing(strand(0, 1, 1, 2), strand(2, 3, 1, 3), Frame::positive()).is_err());
        assert!(d.add_crossing(strand(0, 9, 1, 2), strand(2, 3, 1, 3), Frame::positive()).is_err());
    }

    #[test]
    fn switching_flips_sign_and_roles() {
        let mut d = Diagram::empty(4, Provenance::Synthetic);
        let id = d.add_crossing(strand(0, 1, 1, 2), strand(2, 3, 1, 2), Frame::positive()).unwrap();
        let s = d.switch_crossing(id).unwrap();
        s.check_invariants().unwrap();
        let c = s.crossing(id).unwrap();
        assert_eq!(c.sign(), -1);
        assert_eq!(c.over.edge, Edge::new(2, 3));
        assert_eq!(s.events(Edge::new(0, 1))[0].role, Role::Under);
    }
}
