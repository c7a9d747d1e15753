//! All-pairs projected segment scan.
//!
//! Coordinates are scaled by the common denominator so every predicate runs
//! on integers; `i128` is used when the magnitudes allow it and `BigInt`
//! otherwise. Only crossing parameters and depths are rational.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Axis, Edge, Embedding, Rational};
use crate::diagram::{Diagram, Frame, Param, Provenance, Strand};

/// Largest scaled coordinate magnitude for which orientation tests fit in `i128`.
const I128_LIMIT: i64 = 1 << 50;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Vertex(usize),
    Bend(Edge, usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "vertex {v}"),
            Node::Bend(e, i) => write!(f, "bend {i} of edge {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two polyline nodes project to the same point.
    CoincidentPoints(Node, Node),
    /// Projected segments overlap along a common line.
    Overlap(Edge, Edge),
    /// Projected segments touch at an endpoint or a node lies on a segment.
    NonTransverse(Edge, Edge),
    /// Segments meet in 3-space.
    Intersecting(Edge, Edge),
    /// Two crossings project to the same point (a triple point or worse).
    CoincidentCrossings((Edge, Edge), (Edge, Edge)),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoincidentPoints(a, b) => write!(f, "{a} and {b} project to one point"),
            Violation::Overlap(a, b) => write!(f, "edges {a} and {b} overlap in projection"),
            Violation::NonTransverse(a, b) => write!(f, "edges {a} and {b} meet non-transversally"),
            Violation::Intersecting(a, b) => write!(f, "edges {a} and {b} intersect in space"),
            Violation::CoincidentCrossings(a, b) => {
                write!(f, "crossings {}x{} and {}x{} coincide", a.0, a.1, b.0, b.1)
            }
        }
    }
}

pub(crate) trait Exact:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Projected segment; points are (u, v, depth).
#[derive(Clone, Debug)]
pub(crate) struct Seg<T> {
    pub edge: Edge,
    pub index: u32,
    pub a: [T; 3],
    pub b: [T; 3],
}

#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub first: (Edge, u32, Rational),
    pub second: (Edge, u32, Rational),
    /// True when the first segment is above the second.
    pub first_over: bool,
    pub point: (Rational, Rational),
    pub first_dir: [BigInt; 2],
    pub second_dir: [BigInt; 2],
}

pub(crate) enum Outcome {
    Clear,
    Cross(RawCrossing),
    Bad(Violation),
}

pub(crate) struct ScanOutput {
    pub violations: Vec<Violation>,
    pub crossings: Vec<RawCrossing>,
}

fn orient<T: Exact>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> T {
    (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone())
        - (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone())
}

fn dot2<T: Exact>(o: &[T; 3], p: &[T; 3], q: &[T; 3]) -> T {
    (p[0].clone() - o[0].clone()) * (q[0].clone() - o[0].clone())
        + (p[1].clone() - o[1].clone()) * (q[1].clone() - o[1].clone())
}

fn sgn<T: Exact>(x: &T) -> i8 {
    let z = T::zero();
    if *x > z {
        1
    } else if *x < z {
        -1
    } else {
        0
    }
}

fn lerp(a: &BigInt, b: &BigInt, t: &Rational) -> Rational {
    Rational::from_integer(a.clone()) + t * Rational::from_integer(b - a)
}

/// Classifies one pair of distinct projected segments.
pub(crate) fn classify<T: Exact>(s: &Seg<T>, r: &Seg<T>) -> Outcome {
    let shared = if s.a == r.a {
        Some((&s.a, &s.b, &r.b))
    } else if s.a == r.b {
        Some((&s.a, &s.b, &r.a))
    } else if s.b == r.a {
        Some((&s.b, &s.a, &r.b))
    } else if s.b == r.b {
        Some((&s.b, &s.a, &r.a))
    } else {
        None
    };
    if let Some((p, q, t)) = shared {
        if q == t || (orient(p, q, t).is_zero() && dot2(p, q, t) > T::zero()) {
            return Outcome::Bad(Violation::Overlap(s.edge, r.edge));
        }
        return Outcome::Clear;
    }

    let o1 = orient(&s.a, &s.b, &r.a);
    let o2 = orient(&s.a, &s.b, &r.b);
    let (g1, g2) = (sgn(&o1), sgn(&o2));
    if g1 == 0 && g2 == 0 {
        let len2 = dot2(&s.a, &s.b, &s.b);
        let ta = dot2(&s.a, &s.b, &r.a);
        let tb = dot2(&s.a, &s.b, &r.b);
        let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        if hi < T::zero() || lo > len2 {
            return Outcome::Clear;
        }
        return Outcome::Bad(Violation::Overlap(s.edge, r.edge));
    }
    if g1 * g2 > 0 {
        return Outcome::Clear;
    }
    let o3 = orient(&r.a, &r.b, &s.a);
    let o4 = orient(&r.a, &r.b, &s.b);
    let (g3, g4) = (sgn(&o3), sgn(&o4));
    if g3 * g4 > 0 {
        return Outcome::Clear;
    }
    if g1 == 0 || g2 == 0 || g3 == 0 || g4 == 0 {
        return Outcome::Bad(Violation::NonTransverse(s.edge, r.edge));
    }

    let (o1, o2, o3, o4) = (o1.to_big(), o2.to_big(), o3.to_big(), o4.to_big());
    let t = Rational::new(o3.clone(), &o3 - &o4);
    let u = Rational::new(o1.clone(), &o1 - &o2);
    let big = |p: &[T; 3]| [p[0].to_big(), p[1].to_big(), p[2].to_big()];
    let (sa, sb, ra, rb) = (big(&s.a), big(&s.b), big(&r.a), big(&r.b));
    let ws = lerp(&sa[2], &sb[2], &t);
    let wr = lerp(&ra[2], &rb[2], &u);
    if ws == wr {
        return Outcome::Bad(Violation::Intersecting(s.edge, r.edge));
    }
    let point = (lerp(&sa[0], &sb[0], &t), lerp(&sa[1], &sb[1], &t));
    Outcome::Cross(RawCrossing {
        first: (s.edge, s.index, t),
        second: (r.edge, r.index, u),
        first_over: ws > wr,
        point,
        first_dir: [&sb[0] - &sa[0], &sb[1] - &sa[1]],
        second_dir: [&rb[0] - &ra[0], &rb[1] - &ra[1]],
    })
}

/// Scaled integer nodes and segments of an embedding for one axis.
struct Scaled {
    nodes: Vec<(Node, [BigInt; 3])>,
    segs: Vec<Seg<BigInt>>,
}

fn scaled(e: &Embedding, axis: Axis) -> Scaled {
    let l = e.common_denominator();
    let frame = axis.frame();
    let to_int = |p: &super::Point3| -> [BigInt; 3] {
        let c = |i: usize| (p.coord(frame[i]) * Rational::from_integer(l.clone())).to_integer();
        [c(0), c(1), c(2)]
    };
    let mut nodes: Vec<(Node, [BigInt; 3])> =
        e.coords().iter().enumerate().map(|(i, p)| (Node::Vertex(i), to_int(p))).collect();
    for (edge, bends) in e.bends() {
        for (i, p) in bends.iter().enumerate() {
            nodes.push((Node::Bend(*edge, i), to_int(p)));
        }
    }
    let mut segs = Vec::new();
    for edge in e.edges() {
        let pts: Vec<[BigInt; 3]> = e.polyline(edge).into_iter().map(to_int).collect();
        for (i, w) in pts.windows(2).enumerate() {
            segs.push(Seg { edge, index: i as u32, a: w[0].clone(), b: w[1].clone() });
        }
    }
    Scaled { nodes, segs }
}

fn fits_i128(s: &Scaled) -> bool {
    s.nodes.iter().all(|(_, p)| p.iter().all(|c| c.abs() <= BigInt::from(I128_LIMIT)))
}

fn narrow(s: &Seg<BigInt>) -> Seg<i128> {
    let n = |p: &[BigInt; 3]| [p[0].to_i128().unwrap(), p[1].to_i128().unwrap(), p[2].to_i128().unwrap()];
    Seg { edge: s.edge, index: s.index, a: n(&s.a), b: n(&s.b) }
}

fn pair_scan<T: Exact>(segs: &[Seg<T>]) -> Vec<Outcome> {
    (0..segs.len())
        .into_par_iter()
        .map(|i| {
            let s = &segs[i];
            segs[i + 1..]
                .iter()
                .map(|r| classify(s, r))
                .filter(|o| !matches!(o, Outcome::Clear))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub(crate) fn scan(e: &Embedding, axis: Axis) -> ScanOutput {
    let sc = scaled(e, axis);
    let mut violations = Vec::new();

    let mut by_point: BTreeMap<(&BigInt, &BigInt), &Node> = BTreeMap::new();
    for (node, p) in &sc.nodes {
        if let Some(prev) = by_point.insert((&p[0], &p[1]), node) {
            violations.push(Violation::CoincidentPoints(prev.clone(), node.clone()));
        }
    }

    let outcomes = if fits_i128(&sc) {
        let segs: Vec<Seg<i128>> = sc.segs.iter().map(narrow).collect();
        pair_scan(&segs)
    } else {
        pair_scan(&sc.segs)
    };

    let mut crossings = Vec::new();
    let mut seen: BTreeMap<(Rational, Rational), (Edge, Edge)> = BTreeMap::new();
    for o in outcomes {
        match o {
            Outcome::Bad(v) => violations.push(v),
            Outcome::Cross(c) => {
                let pair = (c.first.0, c.second.0);
                if let Some(prev) = seen.insert(c.point.clone(), pair) {
                    violations.push(Violation::CoincidentCrossings(prev, pair));
                }
                crossings.push(c);
            }
            Outcome::Clear => {}
        }
    }
    ScanOutput { violations, crossings }
}

fn rat(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

pub(crate) fn build_diagram(e: &Embedding, axis: Axis, crossings: Vec<RawCrossing>) -> Diagram {
    let provenance = Provenance::Projection { axis, source: e.digest() };
    let parts = crossings
        .into_iter()
        .map(|c| {
            let first = Strand { edge: c.first.0, param: Param::new(c.first.1, c.first.2) };
            let second = Strand { edge: c.second.0, param: Param::new(c.second.1, c.second.2) };
            let fd = [rat(&c.first_dir[0]), rat(&c.first_dir[1])];
            let sd = [rat(&c.second_dir[0]), rat(&c.second_dir[1])];
            if c.first_over {
                (first, second, Frame { over_dir: fd, under_dir: sd })
            } else {
                (second, first, Frame { over_dir: sd, under_dir: fd })
            }
        })
        .collect();
    Diagram::from_parts(e.n(), provenance, parts)
        .expect("projection of a generic embedding is a valid diagram")
}

/// Incremental genericity checker over integer coordinates, used by the
/// random generator to test one candidate vertex at a time.
pub(crate) struct IncrementalScan {
    points: Vec<[i128; 3]>,
    segs: Vec<Seg<i128>>,
    crossing_points: std::collections::BTreeSet<(Rational, Rational)>,
}

impl IncrementalScan {
    pub fn new() -> Self {
        IncrementalScan { points: Vec::new(), segs: Vec::new(), crossing_points: Default::default() }
    }

    /// Adds vertex `p` (joined by straight edges to every earlier vertex) if
    /// the projection along Z stays generic. Returns whether it was added.
    pub fn try_push(&mut self, p: [i128; 3]) -> bool {
        if self.points.iter().any(|q| q[0] == p[0] && q[1] == p[1]) {
            return false;
        }
        let v = self.points.len();
        let new: Vec<Seg<i128>> = self
            .points
            .iter()
            .enumerate()
            .map(|(u, q)| Seg { edge: Edge::new(u, v), index: 0, a: *q, b: p })
            .collect();
        let mut fresh = std::collections::BTreeSet::new();
        for (i, s) in new.iter().enumerate() {
            for r in self.segs.iter().chain(new[i + 1..].iter()) {
                match classify(s, r) {
                    Outcome::Clear => {}
                    Outcome::Bad(_) => return false,
                    Outcome::Cross(c) => {
                        if self.crossing_points.contains(&c.point) || !fresh.insert(c.point) {
                            return false;
                        }
                    }
                }
            }
        }
        self.points.push(p);
        self.segs.extend(new);
        self.crossing_points.extend(fresh);
        true
    }
}
