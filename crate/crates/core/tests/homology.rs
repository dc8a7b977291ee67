mod common;

use proptest::prelude::*;
use troproots::graph::samples::theta;
use troproots::Cycle;

use common::{brute_h1, graph_from_pairs};

fn pairs_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let extra = prop::collection::vec((0..n, 0..n), 0..=(8 - (n - 1)).min(5));
        (Just(n), extra)
    })
}

fn build(n: usize, extra: &[(usize, usize)]) -> troproots::DecoratedGraph {
    // a path first keeps the graph connected
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    pairs.extend_from_slice(extra);
    if pairs.is_empty() {
        pairs.push((0, 0));
    }
    graph_from_pairs(n, &pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn basis_matches_boundary_rank((n, extra) in pairs_strategy()) {
        let g = build(n, &extra);
        let basis = g.homology_basis().unwrap();
        prop_assert_eq!(basis.len(), brute_h1(&g));
        prop_assert_eq!(g.h1(), brute_h1(&g));
        for c in &basis {
            prop_assert!(g.is_cycle(c));
        }
    }

    #[test]
    fn coordinates_invert_combination(
        (n, extra) in pairs_strategy(),
        coeffs in prop::collection::vec(-3i64..=3, 8),
    ) {
        let g = build(n, &extra);
        let basis = g.homology_basis().unwrap();
        let a = &coeffs[..basis.len()];
        let c = Cycle::combine(&basis, a, g.n_edges());
        prop_assert_eq!(g.basis_coords(&c).unwrap(), a.to_vec());
    }

    #[test]
    fn pairing_symmetric_and_positive(
        (n, extra) in pairs_strategy(),
        a in prop::collection::vec(-2i64..=2, 8),
        b in prop::collection::vec(-2i64..=2, 8),
    ) {
        let g = build(n, &extra);
        let basis = g.homology_basis().unwrap();
        let h = basis.len();
        let x = Cycle::combine(&basis, &a[..h], g.n_edges());
        let y = Cycle::combine(&basis, &b[..h], g.n_edges());
        prop_assert_eq!(
            g.intersection_pairing(&x, &y).unwrap(),
            g.intersection_pairing(&y, &x).unwrap()
        );
        prop_assert!(g.intersection_pairing(&x, &x).unwrap().is_nonnegative());
    }

    #[test]
    fn subdivision_round_trips((n, extra) in pairs_strategy(), r in 1usize..=4) {
        let g = build(n, &extra);
        let s = g.subdivide(r).unwrap();
        prop_assert_eq!(s.h1(), g.h1());
        prop_assert_eq!(s.n_edges(), r * g.n_edges());
        prop_assert_eq!(s.contract_chains().unwrap(), g);
    }
}

#[test]
fn non_cycle_has_no_coordinates() {
    let g = theta();
    assert!(g
        .basis_coords(&Cycle {
            coeffs: vec![1, 0, 0]
        })
        .is_err());
}
