mod common;

use troproots::divpl::Divisor;
use troproots::graph::samples::{single_loop, theta};
use troproots::pixton::{enumerate_weightings, f_s, p_w, SamplingPolicy};
use troproots::poly::GradedPolynomial;

use common::{bq, brute_f_s, brute_weightings, small_graphs};

fn divisors(n: usize, lo: i64, hi: i64) -> Vec<Divisor> {
    troproots::tropjac::residue_tuples(n, hi - lo + 1)
        .into_iter()
        .map(|v| Divisor {
            values: v.iter().map(|x| x + lo).collect(),
        })
        .collect()
}

#[test]
fn enumeration_matches_exhaustive_labelings() {
    for g in small_graphs(4) {
        for s in 1..=4 {
            for d in divisors(g.n_vertices(), -1, 1) {
                let fast: Vec<Vec<i64>> = enumerate_weightings(&g, &d, s)
                    .unwrap()
                    .into_iter()
                    .map(|w| w.values)
                    .collect();
                assert_eq!(
                    fast,
                    brute_weightings(&g, &d, s),
                    "{:?} s={s} D={:?}",
                    g.edges,
                    d.values
                );
            }
        }
    }
}

#[test]
fn grouped_sum_matches_edgewise_product() {
    for g in small_graphs(3) {
        for s in 1..=4 {
            let d = Divisor::zero(g.n_vertices());
            assert_eq!(f_s(&g, &d, s, 3).unwrap(), brute_f_s(&g, &d, s, 3));
        }
    }
}

#[test]
fn loop_linear_coefficient_closed_form() {
    let g = single_loop();
    let d = Divisor::zero(1);
    for s in 1..=12i64 {
        let f = f_s(&g, &d, s, 1).unwrap();
        assert_eq!(f.coeff(&[1, 0]), bq(s * s - 1, 12), "s = {s}");
        assert_eq!(brute_f_s(&g, &d, s, 1).coeff(&[1, 0]), bq(s * s - 1, 12));
    }
}

fn poly(terms: &[(&[u32], (i64, i64))], nvars: usize, t: usize) -> GradedPolynomial {
    let mut p = GradedPolynomial::zero(nvars, t);
    for (m, (a, b)) in terms {
        p.add_term(m.to_vec(), bq(*a, *b));
    }
    p
}

#[test]
fn subdivided_loop_polynomial_parts() {
    // reference values from an independent rational-arithmetic prototype
    let g = single_loop().subdivide(2).unwrap();
    let pol = SamplingPolicy::default();
    let trivial = p_w(&g, &Divisor::zero(2), 3, pol).unwrap();
    let expected = poly(
        &[
            (&[0, 0], (1, 1)),
            (&[1, 0], (-1, 12)),
            (&[2, 0], (-1, 240)),
            (&[3, 0], (-1, 2016)),
        ],
        1,
        3,
    );
    assert_eq!(trivial, expected);
    let other = p_w(
        &g,
        &Divisor {
            values: vec![1, -1],
        },
        3,
        pol,
    )
    .unwrap();
    let expected = poly(
        &[
            (&[0, 0], (1, 1)),
            (&[1, 0], (-1, 12)),
            (&[2, 0], (1, 160)),
            (&[3, 0], (1, 40320)),
        ],
        1,
        3,
    );
    assert_eq!(other, expected);
}

#[test]
fn fit_is_stable_under_extra_samples() {
    let g = theta().subdivide(2).unwrap();
    let d = Divisor::zero(g.n_vertices());
    let a = p_w(&g, &d, 2, SamplingPolicy::default()).unwrap();
    let b = p_w(
        &g,
        &d,
        2,
        SamplingPolicy {
            s0: None,
            extra_samples: 5,
        },
    )
    .unwrap();
    assert_eq!(a, b);
}
