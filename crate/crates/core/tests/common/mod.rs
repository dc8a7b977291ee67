//! Slow reference computations shared by integration tests. Nothing here
//! calls into the lattice or enumeration code under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use troproots::divpl::Divisor;
use troproots::graph::{Edge, Vertex};
use troproots::poly::GradedPolynomial;
use troproots::{DecoratedGraph, MonoidElement, Q};

/// Connected graph on `n` vertices with the given `(tail, head)` edges,
/// edge `i` of length `e_i`.
pub fn graph_from_pairs(n: usize, pairs: &[(usize, usize)]) -> DecoratedGraph {
    let k = pairs.len().max(1);
    let vertices = (0..n)
        .map(|i| Vertex {
            id: i as u32,
            genus: 0,
        })
        .collect();
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(t, h))| Edge {
            id: i as u32,
            tail: t,
            head: h,
            length: MonoidElement::generator(k, i),
        })
        .collect();
    DecoratedGraph::new(vertices, vec![], edges, k).expect("valid graph")
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra] = rb;
    }
    let r0 = find(&mut comp, 0);
    (0..n).all(|v| find(&mut comp, v) == r0)
}

/// Every connected multigraph with loops having `1..=max_edges` edges, up
/// to relabelling only in the crude sense that edge lists are sorted.
pub fn small_graphs(max_edges: usize) -> Vec<DecoratedGraph> {
    let mut out = Vec::new();
    for e in 1..=max_edges {
        for n in 1..=e + 1 {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
            let mut idx = vec![0usize; e];
            loop {
                let chosen: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                if connected(n, &chosen) {
                    out.push(graph_from_pairs(n, &chosen));
                }
                // next non-decreasing index tuple
                let mut j = e;
                while j > 0 && idx[j - 1] == pairs.len() - 1 {
                    j -= 1;
                }
                if j == 0 {
                    break;
                }
                idx[j - 1] += 1;
                for t in j..e {
                    idx[t] = idx[j - 1];
                }
            }
        }
    }
    out
}

pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `#E − rank ∂`.
pub fn brute_h1(g: &DecoratedGraph) -> usize {
    let rows: Vec<Vec<i64>> = g
        .edges
        .iter()
        .map(|e| {
            let mut r = vec![0; g.n_vertices()];
            r[e.head] += 1;
            r[e.tail] -= 1;
            r
        })
        .collect();
    g.n_edges() - rational_rank(&rows)
}

/// Membership straight from the presentation `M ⊕ ℤ^H / relations`,
/// saturated: some `d ≤ 2r + 1` has `r | d·y_j` for all `j` and
/// `d·m + Σ (d·y_j / r)·c_j ≥ 0`.
pub fn brute_saturated(pairings: &[Vec<i64>], r: i64, m: &[i64], y: &[i64]) -> bool {
    (1..=2 * r + 1).any(|d| {
        y.iter().all(|yj| (d * yj) % r == 0)
            && (0..m.len()).all(|i| {
                d * m[i]
                    + y.iter()
                        .zip(pairings)
                        .map(|(yj, c)| (d * yj / r) * c[i])
                        .sum::<i64>()
                    >= 0
            })
    })
}

/// All `s^{#E}` tail labelings, keeping those whose vertex sums are `−D`
/// mod `s`; returned as half-edge vectors.
pub fn brute_weightings(g: &DecoratedGraph, d: &Divisor, s: i64) -> Vec<Vec<i64>> {
    let ne = g.n_edges();
    let total = (s as usize).pow(ne as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut w = Vec::with_capacity(2 * ne);
        for _ in 0..ne {
            let x = (c % s as usize) as i64;
            c /= s as usize;
            w.push(x);
            w.push((s - x) % s);
        }
        let mut sums = vec![0i64; g.n_vertices()];
        for (i, e) in g.edges.iter().enumerate() {
            sums[e.tail] += w[2 * i];
            sums[e.head] += w[2 * i + 1];
        }
        if sums
            .iter()
            .zip(&d.values)
            .all(|(a, dv)| (a + dv).rem_euclid(s) == 0)
        {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// `s^{−h1} Σ_w Π_e exp(w w' ℓ_e / 2)`, one exponential per edge.
pub fn brute_f_s(g: &DecoratedGraph, d: &Divisor, s: i64, t: usize) -> GradedPolynomial {
    let k = g.base_rank;
    let mut acc = GradedPolynomial::zero(k, t);
    for w in brute_weightings(g, d, s) {
        let mut term = GradedPolynomial::one(k, t);
        for (i, e) in g.edges.iter().enumerate() {
            let p = w[2 * i] * w[2 * i + 1];
            let half: Vec<Q> = e.length.coords.iter().map(|x| x * p / 2).collect();
            term = term.mul(&GradedPolynomial::linear(t, &half).exp());
        }
        acc = acc.add(&term);
    }
    let h = brute_h1(g) as u32;
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(s).pow(h)))
}

pub fn bq(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
