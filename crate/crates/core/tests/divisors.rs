mod common;

use troproots::divpl::{
    coset_representatives, interior_vertices, multidegree_omega_twist, nabla, primitive_beta,
    shift_rep, Divisor, PicLattice,
};
use troproots::graph::samples::{single_loop, theta, two_cycle, two_loops};
use troproots::pixton::{assemble_p, LineBundleSpec, SamplingPolicy};
use troproots::tropjac::torsion_points;

use common::{bq, small_graphs};

#[test]
fn divisible_classes_form_a_subgroup() {
    for g in small_graphs(3) {
        for r in 1..=3 {
            let pts = torsion_points(&g, r, 1).unwrap();
            assert_eq!(pts.len() as i64, r.pow(g.h1() as u32));
            let div: Vec<&Vec<i64>> = pts
                .iter()
                .filter(|p| p.divisible)
                .map(|p| &p.residues)
                .collect();
            assert!(div.iter().any(|a| a.iter().all(|&x| x == 0)));
            for a in &div {
                for b in &div {
                    let s: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| (x + y) % r).collect();
                    assert!(div.contains(&&s));
                }
            }
        }
    }
}

#[test]
fn coset_count_matches_torsion() {
    for g in [single_loop(), theta(), two_cycle(), two_loops()] {
        for r in 1..=3 {
            let g_r = g.subdivide(r as usize).unwrap();
            let reps = coset_representatives(&g_r, &Divisor::zero(g_r.n_vertices()), r).unwrap();
            assert_eq!(reps.len(), torsion_points(&g, r, 1).unwrap().len());
            assert_eq!(
                reps.len() as i64,
                PicLattice::new(&g_r).unwrap().torsion_count(r)
            );
            let pic = PicLattice::new(&g_r).unwrap();
            let mut keys: Vec<_> = reps.iter().map(|c| pic.class_key(&c.d)).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), reps.len());
        }
    }
}

#[test]
fn trivial_root_gives_one_class() {
    for g in [single_loop(), theta()] {
        let reps = coset_representatives(&g, &Divisor::zero(g.n_vertices()), 1).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].alpha.slopes.iter().all(|&s| s == 0));
        assert!(reps[0].d.values.iter().all(|&x| x == 0));
    }
}

#[test]
fn primitive_shift_moves_divisor_by_its_laplacian() {
    let g_r = theta().subdivide(3).unwrap();
    let reps = coset_representatives(&g_r, &Divisor::zero(g_r.n_vertices()), 3).unwrap();
    for u in interior_vertices(&g_r) {
        let beta = primitive_beta(&g_r, u).unwrap();
        let grad = nabla(&g_r, &beta).unwrap();
        assert_eq!(grad.degree(), 0);
        let moved = shift_rep(&g_r, &reps[1], &beta, 3).unwrap();
        assert_eq!(moved.d, reps[1].d.add(&grad));
    }
}

#[test]
fn genus_two_multidegree() {
    let g = troproots::DecoratedGraph::new(
        vec![troproots::graph::Vertex { id: 0, genus: 2 }],
        vec![],
        vec![],
        1,
    )
    .unwrap();
    assert_eq!(
        multidegree_omega_twist(&g, 1, &[], 2).unwrap().values,
        vec![2]
    );
    assert_eq!(
        multidegree_omega_twist(&g, 1, &[], 3).unwrap_err().kind(),
        "input"
    );
}

#[test]
fn unrooted_loop_degree_one_part() {
    let a = assemble_p(
        &single_loop(),
        &LineBundleSpec::Multidegree(vec![0]),
        1,
        None,
        SamplingPolicy::default(),
    )
    .unwrap();
    let top = &a.classes[0].p_top;
    assert_eq!(top.coeff(&[1, 0]), bq(-1, 12));
    assert_eq!(top.coeff(&[0, 1]), bq(-1, 2));
    assert_eq!(top.terms().count(), 2);
}
