use proptest::prelude::*;

use linkforge::cycles::disjoint_cycle_pairs;
use linkforge::diagram::{extract_link, gauss_code, insert_half_twists};
use linkforge::format::{diagram_from_json, diagram_to_json, embedding_from_json, embedding_to_json};
use linkforge::geometry::{project, random_linear_embedding};
use linkforge::invariants::{a2_descent, a2_oracle, cycle_a2, cycles_linking_number, smoothing_linking_number};
use linkforge::scenarios::{layered, random_knot, twist_sites};
use linkforge::{Axis, Cycle};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lk_is_symmetric_and_odd_under_reversal(seed in 0u64..10_000, pair in 0usize..10) {
        let d = project(&random_linear_embedding(6, 1_000_000, seed).unwrap(), Axis::Z).unwrap();
        let (a, b) = disjoint_cycle_pairs(6, 3, 3).unwrap().nth(pair).unwrap();
        let lk = cycles_linking_number(&d, &a, &b).unwrap();
        prop_assert_eq!(cycles_linking_number(&d, &b, &a).unwrap(), lk);
        prop_assert_eq!(cycles_linking_number(&d, &a.reversed(), &b).unwrap(), -lk);
        prop_assert_eq!(cycles_linking_number(&d, &a.rotated(1), &b.reversed()).unwrap(), -lk);
    }

    #[test]
    fn descent_matches_oracle_from_every_basepoint(seed in 0u64..100_000) {
        let (d, c) = random_knot(seed, 14).unwrap();
        let code = gauss_code(&extract_link(&d, &[c.clone()]).unwrap(), 0).unwrap();
        let value = a2_descent(&code).unwrap();
        prop_assert_eq!(a2_oracle(&code).unwrap().0, value);
        for k in 0..code.events().len() {
            prop_assert_eq!(a2_descent(&code.rotated(k)).unwrap(), value);
        }
        prop_assert_eq!(cycle_a2(&d, &c.reversed()).unwrap(), value);
        prop_assert_eq!(cycle_a2(&d, &c.rotated(2)).unwrap(), value);
    }

    #[test]
    fn switching_obeys_skein(seed in 0u64..100_000, pick in 0usize..64) {
        let (d, c) = random_knot(seed, 14).unwrap();
        prop_assume!(d.crossing_count() > 0);
        let code = gauss_code(&extract_link(&d, &[c]).unwrap(), 0).unwrap();
        let ids: Vec<usize> = code.crossing_ids().into_iter().collect();
        let x = ids[pick % ids.len()];
        let sign = code.events().iter().find(|e| e.crossing == x).unwrap().sign as i64;
        let switched = code.switched(x);
        let lk = smoothing_linking_number(&code, x).unwrap();
        let (plus, minus) = if sign > 0 { (&code, &switched) } else { (&switched, &code) };
        prop_assert_eq!(a2_descent(plus).unwrap() - a2_descent(minus).unwrap(), lk);
    }

    #[test]
    fn files_round_trip(n in 3usize..9, seed in 0u64..10_000) {
        let e = random_linear_embedding(n, 1_000_000, seed).unwrap();
        let text = embedding_to_json(&e);
        let back = embedding_from_json(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(embedding_to_json(&back), text);
        let d = project(&e, Axis::Z).unwrap();
        let text = diagram_to_json(&d);
        prop_assert_eq!(diagram_from_json(&text).unwrap(), d);
    }

    #[test]
    fn canonical_form_ignores_rotation_and_direction(
        v in Just((0usize..12).collect::<Vec<_>>()).prop_shuffle(),
        len in 3usize..12,
        k in 0usize..12,
    ) {
        let c = Cycle::new(v[..len].to_vec()).unwrap();
        let canon = c.canonical();
        prop_assert!(canon.is_canonical());
        prop_assert_eq!(c.rotated(k).canonical(), canon.clone());
        prop_assert_eq!(c.reversed().rotated(k).canonical(), canon);
    }

    #[test]
    fn twists_shift_lk_by_half_their_number(seed in 0u64..2_000, k in 1usize..4, pick in 0usize..32) {
        let lay = layered(&[3, 4], &[0, 1], seed).unwrap();
        let (a, b) = (&lay.cycles[0], &lay.cycles[1]);
        let sites: Vec<_> = twist_sites(&lay.diagram, a, b, 1)
            .into_iter()
            .map(|s| (s, 1))
            .chain(twist_sites(&lay.diagram, a, b, -1).into_iter().map(|s| (s, -1)))
            .collect();
        prop_assume!(!sites.is_empty());
        let ((e, f), sign) = sites[pick % sites.len()];
        let t = insert_half_twists(&lay.diagram, e, f, 2 * k).unwrap();
        prop_assert_eq!(t.crossing_count(), lay.diagram.crossing_count() + 2 * k);
        prop_assert_eq!(cycles_linking_number(&t, a, b).unwrap(), sign * k as i64);
    }
}
