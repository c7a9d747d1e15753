//! Exact PL embeddings of complete graphs and their projections.

mod generate;
pub(crate) mod scan;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub use self::generate::{random_linear_embedding, resolve_degeneracy, RETRY_BUDGET};
pub use self::scan::Violation;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(int(x), int(y), int(z))
    }

    pub fn coord(&self, i: usize) -> &Rational {
        match i {
            0 => &self.x,
            1 => &self.y,
            _ => &self.z,
        }
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Projection direction. The viewer sits on the positive side of the axis and
/// the screen coordinates are chosen so that (screen u, screen v, depth) is a
/// right-handed frame; crossing signs therefore agree across axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Coordinate indices of (u, v, depth).
    pub fn frame(self) -> [usize; 3] {
        match self {
            Axis::Z => [0, 1, 2],
            Axis::X => [1, 2, 0],
            Axis::Y => [2, 0, 1],
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            _ => Err(Error::InvalidArgument(format!("unknown axis {s:?}"))),
        }
    }
}

/// An edge of `K_n`, stored with its lower endpoint first. The canonical
/// direction of an edge runs from `lo` to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Panics when `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        Edge { lo: a.min(b), hi: a.max(b) }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!("loop edge {a}-{b}")));
        }
        Ok(Edge::new(a, b))
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.contains(other.lo) || self.contains(other.hi)
    }

    /// +1 when traversing `from -> to` follows the canonical direction.
    pub fn direction(self, from: usize, to: usize) -> i32 {
        debug_assert_eq!(Edge::new(from, to), self);
        if from < to {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad edge {s:?}, expected \"u-v\""));
        let (a, b) = s.trim().split_once('-').ok_or_else(bad)?;
        let a = a.trim().parse::<usize>().map_err(|_| bad())?;
        let b = b.trim().parse::<usize>().map_err(|_| bad())?;
        Edge::try_new(a, b)
    }
}

pub fn complete_graph_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| Edge::new(a, b)))
}

/// A PL embedding of `K_n`: one point per vertex, straight edges unless an
/// edge carries interior bend points.
///
/// Geometric validity (distinct points, no intersections) is not enforced at
/// construction; [`validate_generic`] reports every violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    coords: Vec<Point3>,
    bends: BTreeMap<Edge, Vec<Point3>>,
}

impl Embedding {
    pub fn new(coords: Vec<Point3>, bends: BTreeMap<Edge, Vec<Point3>>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument("an embedding needs at least 2 vertices".into()));
        }
        if let Some(e) = bends.keys().find(|e| e.hi() >= coords.len()) {
            return Err(Error::MissingEdge(*e));
        }
        Ok(Embedding { coords, bends })
    }

    pub fn straight(coords: Vec<Point3>) -> Result<Self> {
        Embedding::new(coords, BTreeMap::new())
    }

    pub fn from_int_coords(coords: &[[i64; 3]]) -> Result<Self> {
        Embedding::straight(coords.iter().map(|c| Point3::from_ints(c[0], c[1], c[2])).collect())
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Point3] {
        &self.coords
    }

    pub fn bends(&self) -> &BTreeMap<Edge, Vec<Point3>> {
        &self.bends
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        complete_graph_edges(self.n())
    }

    /// Polyline nodes of `edge` in canonical direction (lower vertex first).
    pub fn polyline(&self, edge: Edge) -> Vec<&Point3> {
        let mut nodes = vec![&self.coords[edge.lo()]];
        if let Some(b) = self.bends.get(&edge) {
            nodes.extend(b.iter());
        }
        nodes.push(&self.coords[edge.hi()]);
        nodes
    }

    /// Returns a copy with vertex coordinates replaced.
    pub fn with_coords(&self, coords: Vec<Point3>) -> Result<Self> {
        if coords.len() != self.n() {
            return Err(Error::InvalidArgument("vertex count changed".into()));
        }
        Embedding::new(coords, self.bends.clone())
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let text = crate::format::embedding_to_json(self);
        let hash = Sha256::digest(text.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub(crate) fn all_nodes(&self) -> impl Iterator<Item = &Point3> {
        self.coords.iter().chain(self.bends.values().flatten())
    }

    /// Least common multiple of every coordinate denominator.
    pub(crate) fn common_denominator(&self) -> BigInt {
        let mut l = BigInt::one();
        for p in self.all_nodes() {
            for i in 0..3 {
                l = num_integer::Integer::lcm(&l, p.coord(i).denom());
            }
        }
        l
    }

    /// Spread of the vertex coordinates (max - min over all axes), at least 1.
    pub(crate) fn spread(&self) -> Rational {
        let mut best = Rational::one();
        for i in 0..3 {
            let lo = self.coords.iter().map(|p| p.coord(i)).min().unwrap();
            let hi = self.coords.iter().map(|p| p.coord(i)).max().unwrap();
            let d = hi - lo;
            if d > best {
                best = d;
            }
        }
        if best.is_zero() {
            Rational::one()
        } else {
            best
        }
    }
}

/// Every genericity violation of the projection along `axis`; empty iff the
/// projection is a valid crossing diagram of an embedding.
pub fn validate_generic(e: &Embedding, axis: Axis) -> Vec<Violation> {
    scan::scan(e, axis).violations
}

/// Projects along `axis`. Fails if the projection is not generic.
pub fn project(e: &Embedding, axis: Axis) -> Result<Diagram> {
    let out = scan::scan(e, axis);
    if let Some(v) = out.violations.first() {
        return Err(Error::DegenerateProjection {
            axis: axis.letter(),
            detail: format!("{v} ({} violation(s))", out.violations.len()),
        });
    }
    Ok(scan::build_diagram(e, axis, out.crossings))
}

/// Projects along Z, falling back to Y and then X.
pub fn project_default(e: &Embedding) -> Result<Diagram> {
    let mut last = None;
    for axis in [Axis::Z, Axis::Y, Axis::X] {
        match project(e, axis) {
            Ok(d) => return Ok(d),
            Err(err) => last = Some(err),
        }
    }
    Err(last.unwrap())
}
