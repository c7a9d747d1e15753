use linkforge::diagram::{extract_link, gauss_code, insert_half_twists, insert_trefoil, Frame, Param, Provenance, Strand};
use linkforge::geometry::{int, project, ratio, resolve_degeneracy};
use linkforge::invariants::{a2_descent, a2_oracle, cycle_a2, cycles_linking_number, eq2_check, eq2_sides, evaluate_d4};
use linkforge::scenarios::{d4_scenario, layered, link_unlinked, twist_sites};
use linkforge::{Axis, Cycle, Diagram, Edge, Embedding};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cycle(v: &[usize]) -> Cycle {
    Cycle::new(v.to_vec()).unwrap()
}

fn strand(a: usize, b: usize, k: i64) -> Strand {
    Strand { edge: Edge::new(a, b), param: Param::new(0, ratio(k, 5)) }
}

/// Two triangles whose edges 0-1 and 3-4 cross `k` times, alternating over
/// and under, all positive.
fn torus_link(k: i64) -> Diagram {
    let parts = (1..=k)
        .map(|i| {
            let (p, q) = (strand(0, 1, i), strand(3, 4, i));
            if i % 2 == 1 {
                (p, q, Frame::positive())
            } else {
                (q, p, Frame::positive())
            }
        })
        .collect();
    Diagram::from_parts(6, Provenance::Synthetic, parts).unwrap()
}

#[test]
fn split_triangles_and_torus_links() {
    let (a, b) = (cycle(&[0, 1, 2]), cycle(&[3, 4, 5]));
    let split = Embedding::from_int_coords(&[[0, 0, 0], [10, 1, 3], [1, 9, 7], [50, 50, 100], [61, 52, 97], [52, 63, 105]]);
    let split = resolve_degeneracy(&split.unwrap(), 1).unwrap();
    assert_eq!(cycles_linking_number(&project(&split, Axis::Z).unwrap(), &a, &b).unwrap(), 0);
    assert_eq!(cycles_linking_number(&torus_link(2), &a, &b).unwrap(), 1);
    assert_eq!(cycles_linking_number(&torus_link(4), &a, &b).unwrap(), 2);
    assert_eq!(cycles_linking_number(&torus_link(4), &a.reversed(), &b).unwrap(), -2);
    assert_eq!(cycles_linking_number(&torus_link(4), &b, &a).unwrap(), 2);
}

#[test]
fn unknot_trefoil_granny() {
    let tri = Embedding::from_int_coords(&[[0, 0, 0], [4, 1, 0], [1, 3, 0]]).unwrap();
    let d = project(&tri, Axis::Z).unwrap();
    let c = cycle(&[0, 1, 2]);
    assert_eq!(cycle_a2(&d, &c).unwrap(), 0);
    assert!(gauss_code(&extract_link(&d, &[c.clone()]).unwrap(), 0).unwrap().events().is_empty());
    for count in 1..=3 {
        let t = insert_trefoil(&d, Edge::new(1, 2), count).unwrap();
        assert_eq!(t.crossing_count(), 3 * count);
        assert_eq!(cycle_a2(&t, &c).unwrap(), count as i64);
        let code = gauss_code(&extract_link(&t, &[c.clone()]).unwrap(), 0).unwrap();
        assert_eq!(a2_oracle(&code).unwrap().0, count as i64);
        assert_eq!(a2_descent(&code.rotated(2)).unwrap(), count as i64);
    }
}

#[test]
fn twists_on_split_triangles() {
    let lay = layered(&[3, 3], &[0, 1], 11).unwrap();
    let (a, b) = (&lay.cycles[0], &lay.cycles[1]);
    for sign in [1, -1] {
        for (e, f) in twist_sites(&lay.diagram, a, b, sign) {
            for k in 1..=3 {
                let t = insert_half_twists(&lay.diagram, e, f, 2 * k).unwrap();
                assert_eq!(t.crossings_between(e, f), lay.diagram.crossings_between(e, f) + 2 * k);
                assert_eq!(cycles_linking_number(&t, a, b).unwrap(), sign as i64 * k as i64);
            }
        }
    }
}

#[test]
fn hand_built_d4_values() {
    for (lk1, lk2) in [(1, 1), (2, 2), (3, 1)] {
        let d4 = d4_scenario(lk1, lk2, [3, 3, 4, 3], 5).unwrap();
        let ev = evaluate_d4(&d4).unwrap();
        assert_eq!(ev.lambda, (lk1 * lk2) as u64);
        assert_eq!(eq2_sides(&d4).unwrap(), (ev.lambda, ev.lambda));
        assert!(eq2_check(&d4));
        assert_eq!(ev.rows.len(), 16);
        if lk1 * lk2 >= 4 {
            assert!(ev.max_row().a2 != 0);
        }
    }
}

#[test]
fn linking_after_link_unlinked_is_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lay = layered(&[4, 5], &[1, 0], 2).unwrap();
    for k in 1..=4 {
        let (d, b) = link_unlinked(&lay.diagram, &lay.cycles[0], &lay.cycles[1], k, &mut rng).unwrap();
        assert_eq!(cycles_linking_number(&d, &lay.cycles[0], &b).unwrap(), k);
    }
}

#[test]
fn integer_helper() {
    assert_eq!(int(3), ratio(6, 2));
}
