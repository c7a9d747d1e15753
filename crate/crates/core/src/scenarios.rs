//! Builders for concrete test diagrams: stacked polygons whose linking is
//! set by half-twist rewrites, random connector graphs, random knots.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{collapse_to_d4, insert_half_twists, Cycle, D4Diagram, Diagram, ConnectorMarks};
use crate::error::{Error, Result};
use crate::geometry::scan::IncrementalScan;
use crate::geometry::{project, random_linear_embedding, Axis, Edge, Embedding, Point3, RETRY_BUDGET};
use crate::invariants::LinkingTable;

const RADIUS: f64 = 100_000.0;
const LAYER: i128 = 1_000_000;

/// Diagram of a straight-edge `K_n` together with some of its cycles.
#[derive(Clone, Debug)]
pub struct Layered {
    pub embedding: Embedding,
    pub diagram: Diagram,
    pub cycles: Vec<Cycle>,
}

/// Embeds `K_n` with `n = sizes.sum()` so that cycle `i` is a convex polygon
/// on vertices `offset_i..offset_i + sizes[i]`, lying near height
/// `layers[i]`. All polygons are inscribed in nearly the same circle, so
/// their projections cross many times, but being stacked they are pairwise
/// unlinked.
pub fn layered(sizes: &[usize], layers: &[usize], seed: u64) -> Result<Layered> {
    if sizes.len() != layers.len() || sizes.iter().any(|s| *s < 3) {
        return Err(Error::InvalidArgument("need one layer per cycle and cycles of length >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scan = IncrementalScan::new();
    let mut coords = Vec::new();
    let mut cycles = Vec::new();
    for (&k, &layer) in sizes.iter().zip(layers) {
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let radius = RADIUS * rng.gen_range(0.99..1.01);
        let start = coords.len();
        for j in 0..k {
            let mut placed = false;
            for _ in 0..RETRY_BUDGET {
                let theta = phase + std::f64::consts::TAU * (j as f64 + rng.gen_range(-0.2..0.2)) / k as f64;
                let p = [
                    (radius * theta.cos()) as i128 + rng.gen_range(-50..=50),
                    (radius * theta.sin()) as i128 + rng.gen_range(-50..=50),
                    layer as i128 * LAYER + rng.gen_range(-1000..=1000),
                ];
                if scan.try_push(p) {
                    coords.push(Point3::from_ints(p[0] as i64, p[1] as i64, p[2] as i64));
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Err(Error::RetryBudget { what: "layered vertex placement", budget: RETRY_BUDGET });
            }
        }
        cycles.push(Cycle::new((start..start + k).collect())?);
    }
    let embedding = Embedding::straight(coords)?;
    let diagram = project(&embedding, Axis::Z)?;
    Ok(Layered { embedding, diagram, cycles })
}

/// Edge pairs `(e on a, f on b)` that cross in `d` and whose extra positive
/// crossings would change `lk(a, b)` by `sign` each.
pub fn twist_sites(d: &Diagram, a: &Cycle, b: &Cycle, sign: i32) -> Vec<(Edge, Edge)> {
    let mut out = BTreeSet::new();
    for c in d.crossings() {
        for (e, f) in [(c.over.edge, c.under.edge), (c.under.edge, c.over.edge)] {
            if let (Some(de), Some(df)) = (a.direction_of(e), b.direction_of(f)) {
                if de * df == sign {
                    out.insert((e, f));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Adds `2|delta|` half twists between a random crossing edge pair of `a`
/// and `b`, changing `lk(a, b)` by exactly `delta`.
pub fn shift_linking<R: Rng>(d: &Diagram, a: &Cycle, b: &Cycle, delta: i64, rng: &mut R) -> Result<Diagram> {
    if delta == 0 {
        return Ok(d.clone());
    }
    let sites = twist_sites(d, a, b, delta.signum() as i32);
    let (e, f) = sites
        .choose(rng)
        .ok_or_else(|| Error::Precondition(format!("cycles {a} and {b} have no suitable crossing")))?;
    insert_half_twists(d, *e, *f, 2 * delta.unsigned_abs() as usize)
}

/// Links two unlinked cycles: adds `2k` half twists at a random crossing
/// edge pair and returns `b`, reversed if needed, so that `lk(a, b) = k`.
pub fn link_unlinked<R: Rng>(d: &Diagram, a: &Cycle, b: &Cycle, k: i64, rng: &mut R) -> Result<(Diagram, Cycle)> {
    if k <= 0 {
        return Err(Error::InvalidArgument(format!("target linking number must be positive, got {k}")));
    }
    let sites: Vec<(Edge, Edge, bool)> = twist_sites(d, a, b, 1)
        .into_iter()
        .map(|(e, f)| (e, f, false))
        .chain(twist_sites(d, a, b, -1).into_iter().map(|(e, f)| (e, f, true)))
        .collect();
    let &(e, f, flip) =
        sites.choose(rng).ok_or_else(|| Error::Precondition(format!("cycles {a} and {b} never cross")))?;
    let d = insert_half_twists(d, e, f, 2 * k as usize)?;
    Ok((d, if flip { b.reversed() } else { b.clone() }))
}

fn shuffled_layers<R: Rng>(k: usize, rng: &mut R) -> Vec<usize> {
    let mut l: Vec<usize> = (0..k).collect();
    l.shuffle(rng);
    l
}

#[derive(Clone, Debug)]
pub struct Lemma1Scenario {
    pub diagram: Diagram,
    pub l: Cycle,
    pub z: Cycle,
    pub w: Cycle,
    pub p1: i64,
    pub p2: i64,
    pub q: usize,
}

/// Three stacked cycles with `lk(L,Z) = p1`, `lk(L,W) = p2`, `Z` and `W`
/// of at least `q` vertices. Stacking order and cycle lengths are random.
pub fn lemma1_scenario(p1: i64, p2: i64, q: usize, seed: u64) -> Result<Lemma1Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = [rng.gen_range(3..=5), q + rng.gen_range(0..=2), q + rng.gen_range(0..=2)];
    let lay = layered(&sizes, &shuffled_layers(3, &mut rng), rng.gen())?;
    let l = lay.cycles[0].clone();
    let (d, z) = link_unlinked(&lay.diagram, &l, &lay.cycles[1], p1, &mut rng)?;
    let (d, w) = link_unlinked(&d, &l, &lay.cycles[2], p2, &mut rng)?;
    // Unrelated twists between Z and W vary the ladder without touching L.
    let extra = rng.gen_range(0..=2);
    let d = if extra > 0 { link_unlinked(&d, &z, &w, extra, &mut rng)?.0 } else { d };
    Ok(Lemma1Scenario { diagram: d, l, z, w, p1, p2, q })
}

#[derive(Clone, Debug)]
pub struct Lemma2Scenario {
    pub diagram: Diagram,
    pub x1: Cycle,
    pub y1: Cycle,
    pub x2: Cycle,
    pub y2: Cycle,
    pub q: usize,
}

/// Four stacked cycles with `lk(X1,Y1) = k1` and `lk(X2,Y2) = p`. With
/// `cross = 1` also `lk(X2,Y1) != 0`; with `cross = 2` also
/// `lk(Y2,X1) != 0` and `lk(X2,Y1) = 0`; otherwise both vanish.
pub fn lemma2_scenario(k1: i64, p: i64, q: usize, cross: u8, seed: u64) -> Result<Lemma2Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..4).map(|_| q + rng.gen_range(0..=2)).collect();
    let lay = layered(&sizes, &shuffled_layers(4, &mut rng), rng.gen())?;
    let (x1, x2) = (lay.cycles[0].clone(), lay.cycles[2].clone());
    let (d, y1) = link_unlinked(&lay.diagram, &x1, &lay.cycles[1], k1, &mut rng)?;
    let (mut d, y2) = link_unlinked(&d, &x2, &lay.cycles[3], p, &mut rng)?;
    let extra = rng.gen_range(1..=2);
    match cross {
        1 => d = link_unlinked(&d, &x2, &y1, extra, &mut rng)?.0,
        2 => d = link_unlinked(&d, &y2, &x1, extra, &mut rng)?.0,
        _ => {}
    }
    Ok(Lemma2Scenario { diagram: d, x1, y1, x2, y2, q })
}

/// Four stacked cycles of the given lengths with `lk(X1,Y1) = lk1` and
/// `lk(X2,Y2) = lk2` (both positive), collapsed to D4 with the default marks.
pub fn d4_scenario(lk1: i64, lk2: i64, sizes: [usize; 4], seed: u64) -> Result<D4Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lay = layered(&sizes, &shuffled_layers(4, &mut rng), rng.gen())?;
    let (x1, x2) = (lay.cycles[0].clone(), lay.cycles[2].clone());
    let (d, y1) = link_unlinked(&lay.diagram, &x1, &lay.cycles[1], lk1, &mut rng)?;
    let (d, y2) = link_unlinked(&d, &x2, &lay.cycles[3], lk2, &mut rng)?;
    let marks = ConnectorMarks::default_for(&x1, &y1, &x2, &y2);
    collapse_to_d4(&d, &x1, &y1, &x2, &y2, marks)
}

/// Random D4: four disjoint cycles of length 3 or 4 in a random embedding,
/// followed by random pairs of half twists between crossing edges of the
/// connector graph, keeping at most `max_crossings` crossings on the graph.
pub fn random_d4(seed: u64, max_crossings: usize) -> Result<D4Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(3..=4)).collect();
        let n: usize = sizes.iter().sum();
        let e = random_linear_embedding(n, 1000, rng.gen())?;
        let d = project(&e, Axis::Z)?;
        let mut start = 0;
        let cycles: Vec<Cycle> = sizes
            .iter()
            .map(|k| {
                let c = Cycle::new((start..start + k).collect()).unwrap();
                start += k;
                c
            })
            .collect();
        let marks = ConnectorMarks::default_for(&cycles[0], &cycles[1], &cycles[2], &cycles[3]);
        let base = collapse_to_d4(&d, &cycles[0], &cycles[1], &cycles[2], &cycles[3], marks)?;
        if base.crossing_count() > max_crossings {
            continue;
        }
        let mut g = base.diagram().clone();
        for _ in 0..rng.gen_range(0..=4) {
            let pairs: BTreeSet<(Edge, Edge)> = g.crossings().map(|c| (c.over.edge, c.under.edge)).collect();
            let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            let Some(&(a, b)) = pairs.choose(&mut rng) else { break };
            let t = 2 * rng.gen_range(1..=2);
            if g.crossing_count() + t > max_crossings {
                break;
            }
            g = insert_half_twists(&g, a, b, t)?;
        }
        return collapse_to_d4(&g, &cycles[0], &cycles[1], &cycles[2], &cycles[3], marks);
    }
    Err(Error::RetryBudget { what: "random D4 with few crossings", budget: RETRY_BUDGET })
}

/// Random knot diagram: a closed polygon through 5 to 8 random points,
/// resampled until it has at most `max_crossings` crossings.
pub fn random_knot(seed: u64, max_crossings: usize) -> Result<(Diagram, Cycle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let k = rng.gen_range(5..=8);
        let e = random_linear_embedding(k, 1000, rng.gen())?;
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(&mut rng);
        let c = Cycle::new(order)?;
        let d = project(&e, Axis::Z)?.restrict(&c.edge_set());
        if d.crossing_count() <= max_crossings {
            return Ok((d, c));
        }
    }
    Err(Error::RetryBudget { what: "random knot with few crossings", budget: RETRY_BUDGET })
}

/// Largest `|lk|` over all pairs of disjoint triangles of a `K_6` diagram.
pub fn max_triangle_lk(d: &Diagram) -> Result<i64> {
    let t = LinkingTable::new(d);
    Ok(crate::cycles::disjoint_cycle_pairs(d.n(), 3, 3)?.map(|(a, b)| t.lk(&a, &b).abs()).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cycles_linking_number;

    #[test]
    fn stacked_cycles_are_unlinked_but_cross() {
        let lay = layered(&[3, 5, 4], &[2, 0, 1], 7).unwrap();
        assert_eq!(lay.embedding.n(), 12);
        let [a, b, c] = [0, 1, 2].map(|i| lay.cycles[i].clone());
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
            assert_eq!(cycles_linking_number(&lay.diagram, x, y).unwrap(), 0);
            assert!(!twist_sites(&lay.diagram, x, y, 1).is_empty() || !twist_sites(&lay.diagram, x, y, -1).is_empty());
        }
    }

    #[test]
    fn shifting_sets_linking_numbers() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let lay = layered(&[4, 4], &[0, 1], 3).unwrap();
        let (a, b) = (&lay.cycles[0], &lay.cycles[1]);
        for delta in [-3, -1, 2, 4] {
            let d = shift_linking(&lay.diagram, a, b, delta, &mut rng).unwrap();
            assert_eq!(cycles_linking_number(&d, a, b).unwrap(), delta);
        }
    }

    #[test]
    fn random_knots_respect_crossing_cap() {
        for seed in 0..20 {
            let (d, c) = random_knot(seed, 14).unwrap();
            assert!(d.crossing_count() <= 14);
            assert!(d.crossings().all(|x| c.direction_of(x.over.edge).is_some()));
        }
    }
}
