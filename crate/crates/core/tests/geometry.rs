use linkforge::geometry::{complete_graph_edges, project, random_linear_embedding, resolve_degeneracy, validate_generic};
use linkforge::invariants::cycles_linking_number;
use linkforge::{Axis, Cycle, Edge, Embedding};
use num_traits::ToPrimitive;

fn xy(e: &Embedding, v: usize) -> [i128; 2] {
    let p = &e.coords()[v];
    [0, 1].map(|i| p.coord(i).to_integer().to_i128().unwrap())
}

fn orient(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).signum()
}

fn brute_force_crossings(e: &Embedding) -> usize {
    let edges: Vec<Edge> = complete_graph_edges(e.n()).collect();
    let mut count = 0;
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if a.shares_vertex(*b) {
                continue;
            }
            let (p, q, r, s) = (xy(e, a.lo()), xy(e, a.hi()), xy(e, b.lo()), xy(e, b.hi()));
            if orient(p, q, r) * orient(p, q, s) < 0 && orient(r, s, p) * orient(r, s, q) < 0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn planar_triangle_has_no_crossings() {
    let e = Embedding::from_int_coords(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
    assert_eq!(project(&e, Axis::Z).unwrap().crossing_count(), 0);
}

#[test]
fn higher_segment_is_over() {
    let e = Embedding::from_int_coords(&[[-10, 1, 0], [10, -1, 0], [1, -10, 5], [-1, 10, 5]]).unwrap();
    let d = project(&e, Axis::Z).unwrap();
    let c = d.crossings().find(|c| c.over.edge == Edge::new(2, 3) && c.under.edge == Edge::new(0, 1));
    assert!(c.is_some(), "{:?}", d.crossings().collect::<Vec<_>>());
}

#[test]
fn crossing_count_matches_brute_force() {
    for seed in [42, 1, 2, 3] {
        for n in [6, 9] {
            let e = random_linear_embedding(n, 1_000_000, seed).unwrap();
            assert_eq!(project(&e, Axis::Z).unwrap().crossing_count(), brute_force_crossings(&e), "K{n} seed {seed}");
        }
    }
}

#[test]
fn k3_and_generated_k6_are_generic() {
    let e = random_linear_embedding(3, 100, 1).unwrap();
    assert_eq!(e.n(), 3);
    assert!(validate_generic(&random_linear_embedding(6, 1_000_000, 42).unwrap(), Axis::Z).is_empty());
}

#[test]
fn duplicate_vertex_is_reported() {
    let e = Embedding::from_int_coords(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 0, 0]]).unwrap();
    assert!(!validate_generic(&e, Axis::Z).is_empty());
}

#[test]
fn moment_curve_resolution_is_a_fixed_point() {
    let pts: Vec<[i64; 3]> = (1..=6i64).map(|t| [t, t * t, t * t * t]).collect();
    let e = Embedding::from_int_coords(&pts).unwrap();
    let r = resolve_degeneracy(&e, 5).unwrap();
    assert!(validate_generic(&r, Axis::Z).is_empty());
    assert_eq!(r, resolve_degeneracy(&e, 5).unwrap());
}

#[test]
fn linking_numbers_agree_across_axes() {
    let a = Cycle::new(vec![0, 1, 2]).unwrap();
    let b = Cycle::new(vec![3, 4, 5]).unwrap();
    for seed in 1..=30 {
        let e = random_linear_embedding(6, 1_000_000, seed).unwrap();
        let values: Vec<i64> = Axis::ALL
            .iter()
            .filter_map(|axis| project(&e, *axis).ok())
            .map(|d| cycles_linking_number(&d, &a, &b).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "seed {seed}: {values:?}");
    }
}
