//! Local diagram rewrites. Both rewrites only add crossings; existing
//! crossings keep their ids.

use num_traits::{One, Signed, Zero};

use super::{Diagram, Frame, Param, Role, Strand};
use crate::error::{Error, Result};
use crate::geometry::{Edge, Rational};

/// `count` parameters strictly between `lo` and the next event on `edge`
/// (or the end of `lo`'s segment), evenly spaced.
fn free_params(d: &Diagram, edge: Edge, lo: &Param, count: usize) -> Vec<Param> {
    let hi = d
        .events(edge)
        .iter()
        .map(|ev| &ev.param)
        .find(|p| *p > lo)
        .filter(|p| p.segment == lo.segment)
        .map(|p| p.frac.clone())
        .unwrap_or_else(Rational::one);
    let step = (hi - &lo.frac) / Rational::from_integer((count as i64 + 1).into());
    (1..=count)
        .map(|i| Param::new(lo.segment, &lo.frac + &step * Rational::from_integer((i as i64).into())))
        .collect()
}

/// Adds `t` half twists between edges `e` and `f`.
///
/// The twists are placed in the region next to the lowest-id crossing
/// between `e` and `f`, where the two strands are adjacent, so the result is
/// again a diagram of a spatial graph. `t` must be even: an odd number of
/// half twists would exchange the strands' sides and could not be closed up
/// without new crossings. Every inserted crossing is positive for the
/// canonical orientations of `e` and `f`.
pub fn insert_half_twists(d: &Diagram, e: Edge, f: Edge, t: usize) -> Result<Diagram> {
    if t == 0 {
        return Err(Error::InvalidArgument("number of half twists must be positive".into()));
    }
    if e == f {
        return Err(Error::InvalidArgument(format!("cannot twist edge {e} with itself")));
    }
    if t % 2 != 0 {
        return Err(Error::InvalidArgument(format!("half twists must come in pairs, got {t}")));
    }
    for edge in [e, f] {
        if !d.has_edge(edge) {
            return Err(Error::MissingEdge(edge));
        }
    }
    let c = d
        .crossings()
        .find(|c| (c.over.edge == e && c.under.edge == f) || (c.over.edge == f && c.under.edge == e))
        .ok_or(Error::NoAdjacentCrossing(e, f))?;
    let (e_strand, f_strand, a, b) = if c.over.edge == e {
        (&c.over, &c.under, &c.frame.over_dir, &c.frame.under_dir)
    } else {
        (&c.under, &c.over, &c.frame.under_dir, &c.frame.over_dir)
    };
    // Leaving the crossing along both canonical directions, e is on the left
    // exactly when cross(a, b) < 0.
    let mut e_left = (&a[0] * &b[1] - &a[1] * &b[0]).is_negative();
    let e_params = free_params(d, e, &e_strand.param, t);
    let f_params = free_params(d, f, &f_strand.param, t);

    let mut out = d.clone();
    for (pe, pf) in e_params.into_iter().zip(f_params) {
        let se = Strand { edge: e, param: pe };
        let sf = Strand { edge: f, param: pf };
        let (over, under) = if e_left { (se, sf) } else { (sf, se) };
        out.add_crossing(over, under, Frame::positive())?;
        e_left = !e_left;
    }
    out.mark_synthetic();
    Ok(out)
}

/// Splices `count` right-handed trefoil summands into edge `e`, each as the
/// long-knot pattern O1 U2 O3 U1 O2 U3 with all crossings positive.
pub fn insert_trefoil(d: &Diagram, e: Edge, count: usize) -> Result<Diagram> {
    if !d.has_edge(e) {
        return Err(Error::MissingEdge(e));
    }
    let mut out = d.clone();
    if count == 0 {
        return Ok(out);
    }
    let params = free_params(d, e, &Param::new(0, Rational::zero()), 6 * count);
    const PATTERN: [(usize, Role); 6] =
        [(0, Role::Over), (1, Role::Under), (2, Role::Over), (0, Role::Under), (1, Role::Over), (2, Role::Under)];
    for chunk in params.chunks(6) {
        let mut over = [None, None, None];
        let mut under = [None, None, None];
        for ((k, role), p) in PATTERN.iter().zip(chunk) {
            let slot = match role {
                Role::Over => &mut over[*k],
                Role::Under => &mut under[*k],
            };
            *slot = Some(Strand { edge: e, param: p.clone() });
        }
        for k in 0..3 {
            out.add_crossing(over[k].take().unwrap(), under[k].take().unwrap(), Frame::positive())?;
        }
    }
    out.mark_synthetic();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Provenance;
    use crate::geometry::ratio;

    fn one_crossing() -> Diagram {
        let mut d = Diagram::empty(4, Provenance::Synthetic);
        d.add_crossing(
            Strand { edge: Edge::new(0, 1), param: Param::new(0, ratio(1, 2)) },
            Strand { edge: Edge::new(2, 3), param: Param::new(0, ratio(1, 2)) },
            Frame::from_ints([1, 0], [0, 1]),
        )
        .unwrap();
        d
    }

    #[test]
    fn twist_errors() {
        let d = one_crossing();
        let (e, f) = (Edge::new(0, 1), Edge::new(2, 3));
        assert!(insert_half_twists(&d, e, f, 0).is_err());
        assert!(insert_half_twists(&d, e, e, 2).is_err());
        assert!(insert_half_twists(&d, e, f, 3).is_err());
        assert!(matches!(
            insert_half_twists(&d, e, Edge::new(1, 2), 2),
            Err(Error::NoAdjacentCrossing(..))
        ));
    }

    #[test]
    fn twists_alternate_and_stay_local() {
        let d = one_crossing();
        let (e, f) = (Edge::new(0, 1), Edge::new(2, 3));
        let t = insert_half_twists(&d, e, f, 4).unwrap();
        t.check_invariants().unwrap();
        assert_eq!(t.crossings_between(e, f), 5);
        assert_eq!(t.crossing(0), d.crossing(0));
        let roles: Vec<Role> = t.events(e).iter().skip(1).map(|ev| ev.role).collect();
        // e heads east, f north: f is on the left leaving the crossing, so it goes over first.
        assert_eq!(roles, vec![Role::Under, Role::Over, Role::Under, Role::Over]);
        assert!(t.crossings().skip(1).all(|c| c.sign() == 1));
        assert!(t.events(e).iter().skip(1).all(|ev| ev.param.frac > ratio(1, 2)));
    }

    #[test]
    fn trefoil_adds_three_self_crossings_each() {
        let d = one_crossing();
        let e = Edge::new(0, 1);
        let t = insert_trefoil(&d, e, 2).unwrap();
        t.check_invariants().unwrap();
        assert_eq!(t.crossing_count(), 7);
        assert!(t.events(e).iter().take(12).all(|ev| ev.param.frac < ratio(1, 2)));
        assert_eq!(insert_trefoil(&d, e, 0).unwrap().crossing_count(), 1);
        assert!(insert_trefoil(&d, Edge::new(0, 9), 1).is_err());
    }
}
