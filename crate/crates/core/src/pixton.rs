//! Weightings mod `s`, the sums `f_s(D)`, their constant terms `P_w` in `s`,
//! the correction `P_η`, the graded pieces `P_d` and the assembled class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::divpl::{
    compare_reps, coset_representatives, multidegree_omega_twist, nabla, primitive_beta, CosetRep,
    Divisor,
};
use crate::error::{Error, Result};
use crate::graph::{DecoratedGraph, Q};
use crate::poly::{big_int, GradedPolynomial};
use crate::tropjac::residue_tuples;

/// Value in `[0, s)` per half-edge; half-edge `2i` sits at the tail of edge
/// `i`, `2i + 1` at its head.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weighting {
    pub values: Vec<i64>,
}

/// Every weighting mod `s` with vertex sums `≡ −D(v)`, lexicographically.
///
/// The tail value of each edge determines its head value, so weightings are
/// mod-`s` chains `x` with `∂x ≡ −D`: free on non-tree edges, forced on the
/// spanning tree by peeling leaves.
pub fn enumerate_weightings(g: &DecoratedGraph, d: &Divisor, s: i64) -> Result<Vec<Weighting>> {
    if s < 1 {
        return Err(Error::input("s", "must be positive"));
    }
    if d.values.len() != g.n_vertices() {
        return Err(Error::Structural("divisor does not match graph".into()));
    }
    if d.degree().rem_euclid(s) != 0 {
        return Ok(Vec::new());
    }
    let tree = g.spanning_tree()?;
    let free = tree.non_tree_edges();
    let mut out: Vec<Weighting> = residue_tuples(free.len(), s)
        .into_par_iter()
        .map(|choice| {
            let mut x = vec![0i64; g.n_edges()];
            let mut partial = vec![0i64; g.n_vertices()];
            for (&e, &c) in free.iter().zip(&choice) {
                x[e] = c;
                partial[g.edges[e].tail] += c;
                partial[g.edges[e].head] -= c;
            }
            for &v in tree.order.iter().rev() {
                let Some((p, e)) = tree.parent[v] else {
                    continue;
                };
                let need = -d.values[v] - partial[v];
                let c = if g.edges[e].tail == v { need } else { -need }.rem_euclid(s);
                x[e] = c;
                if g.edges[e].tail == p {
                    partial[p] += c;
                } else {
                    partial[p] -= c;
                }
            }
            let mut values = Vec::with_capacity(2 * g.n_edges());
            for &c in &x {
                values.push(c);
                values.push((-c).rem_euclid(s));
            }
            Weighting { values }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `Σ_e w(h)w(h')·ℓ(e)` in base units.
fn weight_exponent(g: &DecoratedGraph, w: &Weighting) -> Vec<Q> {
    let mut n = vec![Q::zero(); g.base_rank];
    for (i, e) in g.edges.iter().enumerate() {
        let p = w.values[2 * i] * w.values[2 * i + 1];
        if p != 0 {
            for (a, l) in n.iter_mut().zip(&e.length.coords) {
                *a += l * p;
            }
        }
    }
    n
}

/// `s^{−h1} Σ_w Π_e exp(w(h)w(h')ℓ(e)/2)`, truncated at degree `t`.
///
/// The product over edges is `exp(N_w/2)` with `N_w = Σ_e w(h)w(h')ℓ(e)`, so
/// weightings are grouped by `N_w` and each exponential expanded once.
pub fn f_s(g: &DecoratedGraph, d: &Divisor, s: i64, t: usize) -> Result<GradedPolynomial> {
    let ws = enumerate_weightings(g, d, s)?;
    let exps: Vec<Vec<Q>> = ws.par_iter().map(|w| weight_exponent(g, w)).collect();
    let mut groups: BTreeMap<Vec<Q>, i64> = BTreeMap::new();
    for n in exps {
        *groups.entry(n).or_insert(0) += 1;
    }
    let half = Q::new(1, 2);
    let terms: Vec<GradedPolynomial> = groups
        .par_iter()
        .map(|(n, &count)| {
            let lin: Vec<Q> = n.iter().map(|x| x * half).collect();
            GradedPolynomial::linear(t, &lin)
                .exp()
                .scale(&big_int(count))
        })
        .collect();
    let mut total = GradedPolynomial::zero(g.base_rank, t);
    for p in &terms {
        total = total.add(p);
    }
    let norm = BigRational::new(BigInt::one(), BigInt::from(s).pow(g.h1() as u32));
    Ok(total.scale(&norm))
}

/// Where to sample `f_s` when extracting its polynomial part in `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingPolicy {
    /// First sample; `None` means `t·r + 2`.
    pub s0: Option<i64>,
    /// Samples beyond the `2t + 1` needed for the fit, used as a check.
    pub extra_samples: usize,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            s0: None,
            extra_samples: 2,
        }
    }
}

impl SamplingPolicy {
    pub fn start(&self, t: usize, r: usize) -> i64 {
        self.s0.unwrap_or((t * r + 2) as i64)
    }
}

/// Value at `x` of the interpolating polynomial through `(xs, ys)`.
pub fn lagrange_eval(xs: &[i64], ys: &[BigRational], x: i64) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = yi.clone();
        for (j, &xj) in xs.iter().enumerate() {
            if j != i {
                term *= BigRational::new(BigInt::from(x - xj), BigInt::from(xi - xj));
            }
        }
        acc += term;
    }
    acc
}

/// Constant term in `s` of the eventually polynomial `f_s(D)`.
///
/// Each monomial coefficient is fitted by a polynomial of degree `≤ 2t` in
/// `s` through `2t + 1` samples, checked against the extra samples, and
/// evaluated at `s = 0`.
pub fn p_w(
    g: &DecoratedGraph,
    d: &Divisor,
    t: usize,
    policy: SamplingPolicy,
) -> Result<GradedPolynomial> {
    let s0 = policy.start(t, g.subdivision);
    if s0 < 1 {
        return Err(Error::input("s0", "must be positive"));
    }
    let fit = 2 * t + 1;
    let xs: Vec<i64> = (0..(fit + policy.extra_samples) as i64)
        .map(|i| s0 + i)
        .collect();
    let samples: Vec<GradedPolynomial> = xs
        .par_iter()
        .map(|&s| f_s(g, d, s, t))
        .collect::<Result<_>>()?;
    let mut monomials: Vec<Vec<u32>> = samples
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let mut out = GradedPolynomial::zero(g.base_rank, t);
    for m in monomials {
        let ys: Vec<BigRational> = samples.iter().map(|p| p.coeff(&m)).collect();
        for i in fit..xs.len() {
            if lagrange_eval(&xs[..fit], &ys[..fit], xs[i]) != ys[i] {
                return Err(Error::Interpolation {
                    monomial: out.monomial_name(&m),
                    s0: s0 as u64,
                });
            }
        }
        out.add_term(m, lagrange_eval(&xs[..fit], &ys[..fit], 0));
    }
    Ok(out)
}

/// `(1/r) Σ_v α(v)·∇α(v)`; linear in the length symbols.
pub fn p_eta(g: &DecoratedGraph, rep: &CosetRep, r: i64, t: usize) -> Result<GradedPolynomial> {
    if !rep.alpha.vanishes_on_original(g) {
        return Err(Error::Contract("representative is not normalized".into()));
    }
    let grad = nabla(g, &rep.alpha)?;
    let mut acc = vec![Q::zero(); g.base_rank];
    for (a, &n) in rep.alpha.values.iter().zip(&grad.values) {
        for (x, c) in acc.iter_mut().zip(&a.coords) {
            *x += c * n;
        }
    }
    let scaled: Vec<Q> = acc.iter().map(|x| x / r).collect();
    Ok(GradedPolynomial::linear(t, &scaled))
}

/// `exp(−P_η/2)·P_w` together with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSeries {
    pub p_w: GradedPolynomial,
    pub p_eta: GradedPolynomial,
    pub series: GradedPolynomial,
}

impl ClassSeries {
    pub fn p_d(&self, d: usize) -> GradedPolynomial {
        self.series.part(d)
    }
}

pub fn class_series(
    g: &DecoratedGraph,
    rep: &CosetRep,
    r: i64,
    t: usize,
    policy: SamplingPolicy,
) -> Result<ClassSeries> {
    let pe = p_eta(g, rep, r, t)?;
    let pw = p_w(g, &rep.d, t, policy)?;
    let series = pe
        .scale(&BigRational::new((-1).into(), 2.into()))
        .exp()
        .mul(&pw);
    Ok(ClassSeries {
        p_w: pw,
        p_eta: pe,
        series,
    })
}

/// `[exp(−P_η/2)·P_w]_d`.
pub fn p_d(
    g: &DecoratedGraph,
    rep: &CosetRep,
    r: i64,
    d: usize,
    policy: SamplingPolicy,
) -> Result<GradedPolynomial> {
    Ok(class_series(g, rep, r, d, policy)?.p_d(d))
}

/// Whether `P_d` agrees for two representatives of one class, `d ≤ d_max`.
pub fn independence_check(
    g: &DecoratedGraph,
    rep1: &CosetRep,
    rep2: &CosetRep,
    r: i64,
    d_max: usize,
    policy: SamplingPolicy,
) -> Result<bool> {
    if compare_reps(g, rep1, rep2, r)?.is_none() {
        return Err(Error::input(
            "rep2",
            "representatives lie in different classes",
        ));
    }
    let a = class_series(g, rep1, r, d_max, policy)?;
    let b = class_series(g, rep2, r, d_max, policy)?;
    Ok((0..=d_max).all(|d| a.p_d(d) == b.p_d(d)))
}

/// How `deg L` is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineBundleSpec {
    /// `ω^k(−Σ r·a_i p_i)` with twists in leg order.
    OmegaTwist { k: i64, twists: Vec<i64> },
    /// Explicit multidegree on the vertices of the unsubdivided graph.
    Multidegree(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub rep: CosetRep,
    pub p_eta: GradedPolynomial,
    pub p_w: GradedPolynomial,
    /// `P_d` for `d = 0..=t`.
    pub p_d: Vec<GradedPolynomial>,
    /// `exp(−η/(2r²))·Σ_d P_d`, truncated at `t`.
    pub p: GradedPolynomial,
    /// Degree-`g` part of `p`.
    pub p_top: GradedPolynomial,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub genus: usize,
    pub trunc: usize,
    pub r: i64,
    pub subdivided: DecoratedGraph,
    pub deg_l: Divisor,
    pub classes: Vec<ClassEntry>,
    /// Sum of `p` over all classes.
    pub total: GradedPolynomial,
}

impl Assembly {
    pub fn to_json(&self) -> Value {
        let g = &self.subdivided;
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let pd: BTreeMap<String, Value> = c
                    .p_d
                    .iter()
                    .enumerate()
                    .map(|(d, p)| (d.to_string(), p.to_json()))
                    .collect();
                json!({
                    "residues": c.rep.residues,
                    "D": c.rep.d.to_json(g),
                    "alpha": c.rep.alpha.to_json(g),
                    "P_eta": c.p_eta.to_json(),
                    "P_w": c.p_w.to_json(),
                    "P_d": pd,
                    "P": c.p.to_json(),
                    "P_top": c.p_top.to_json(),
                })
            })
            .collect();
        json!({
            "genus": self.genus,
            "truncation": self.trunc,
            "r": self.r,
            "degL": self.deg_l.to_json(g),
            "classes": classes,
            "total": self.total.to_json(),
        })
    }
}

/// The `r`-fold subdivision of `g` with `deg L` placed on the original
/// vertices.
pub fn subdivided_degree(
    g: &DecoratedGraph,
    spec: &LineBundleSpec,
    r: i64,
) -> Result<(DecoratedGraph, Divisor)> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    let base_deg = match spec {
        LineBundleSpec::OmegaTwist { k, twists } => multidegree_omega_twist(g, *k, twists, r)?,
        LineBundleSpec::Multidegree(v) => {
            if v.len() != g.n_vertices() {
                return Err(Error::input("degl", "one value per vertex required"));
            }
            Divisor { values: v.clone() }
        }
    };
    if base_deg.degree() % r != 0 {
        return Err(Error::input(
            "degl",
            format!(
                "total degree {} is not divisible by r = {r}",
                base_deg.degree()
            ),
        ));
    }
    let g_r = g.subdivide(r as usize)?;
    let mut deg_l = Divisor::zero(g_r.n_vertices());
    deg_l.values[..g.n_vertices()].copy_from_slice(&base_deg.values);
    Ok((g_r, deg_l))
}

pub fn assemble_p(
    g: &DecoratedGraph,
    spec: &LineBundleSpec,
    r: i64,
    t: Option<usize>,
    policy: SamplingPolicy,
) -> Result<Assembly> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    let genus = g.total_genus();
    let t = t.unwrap_or(genus);
    if t < genus {
        return Err(Error::input(
            "trunc",
            format!("truncation {t} is below the total genus {genus}"),
        ));
    }
    let (g_r, deg_l) = subdivided_degree(g, spec, r)?;
    let reps = coset_representatives(&g_r, &deg_l, r)?;

    let k = g.base_rank;
    let eta_term = GradedPolynomial::eta(k, t)
        .scale(&BigRational::new((-1).into(), BigInt::from(2 * r * r)))
        .exp();
    let classes: Vec<ClassEntry> = reps
        .into_par_iter()
        .map(|rep| {
            let cs = class_series(&g_r, &rep, r, t, policy)?;
            let p_d: Vec<GradedPolynomial> = (0..=t).map(|d| cs.p_d(d)).collect();
            let p = eta_term.mul(&cs.series);
            let p_top = p.part(genus);
            Ok(ClassEntry {
                rep,
                p_eta: cs.p_eta,
                p_w: cs.p_w,
                p_d,
                p,
                p_top,
            })
        })
        .collect::<Result<_>>()?;
    let mut total = GradedPolynomial::zero(k, t);
    for c in &classes {
        total = total.add(&c.p);
    }
    Ok(Assembly {
        genus,
        trunc: t,
        r,
        subdivided: g_r,
        deg_l,
        classes,
        total,
    })
}

/// Both sides of the shift law for the primitive function at `u`:
/// `f_s(D + ∇β_u)` and `exp((1 − D(u))·ℓ/r)·f_s(D)`, where `ℓ/r` is the
/// segment length at `u`.
pub fn shift_law_sides(
    g: &DecoratedGraph,
    d: &Divisor,
    u: usize,
    s: i64,
    t: usize,
) -> Result<(GradedPolynomial, GradedPolynomial)> {
    let beta = primitive_beta(g, u)?;
    let moved = d.add(&nabla(g, &beta)?);
    let lhs = f_s(g, &moved, s, t)?;
    let seg = &beta.values[u].coords;
    let factor: Vec<Q> = seg.iter().map(|x| x * (1 - d.values[u])).collect();
    let rhs = GradedPolynomial::linear(t, &factor)
        .exp()
        .mul(&f_s(g, d, s, t)?);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    fn bq(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn tree_has_single_zero_weighting() {
        let g = path(3);
        let ws = enumerate_weightings(&g, &Divisor::zero(3), 5).unwrap();
        assert_eq!(ws, vec![Weighting { values: vec![0; 4] }]);
        assert_eq!(
            f_s(&g, &Divisor::zero(3), 5, 3).unwrap(),
            GradedPolynomial::one(2, 3)
        );
    }

    #[test]
    fn loop_weighting_counts() {
        let g = single_loop().subdivide(2).unwrap();
        assert_eq!(
            enumerate_weightings(&g, &Divisor::zero(2), 2)
                .unwrap()
                .len(),
            2
        );
        // degree 1 is not ≡ 0 mod 2
        assert!(enumerate_weightings(&g, &Divisor { values: vec![1, 0] }, 2)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_weightings(
                &g,
                &Divisor {
                    values: vec![1, -1]
                },
                2
            )
            .unwrap()
            .len(),
            2
        );
    }

    #[test]
    fn loop_degree_one_coefficient() {
        let g = single_loop();
        for s in 1..=12 {
            let f = f_s(&g, &Divisor::zero(1), s, 1).unwrap();
            assert_eq!(f.coeff(&[1, 0]), bq(s * s - 1, 12), "s = {s}");
            assert_eq!(f.constant_term(), bq(1, 1));
        }
        let pw = p_w(&g, &Divisor::zero(1), 1, SamplingPolicy::default()).unwrap();
        assert_eq!(pw.coeff(&[0, 0]), bq(1, 1));
        assert_eq!(pw.coeff(&[1, 0]), bq(-1, 12));
    }

    #[test]
    fn truncation_zero_counts_weightings() {
        let g = theta().subdivide(2).unwrap();
        let d = Divisor::zero(g.n_vertices());
        let f = f_s(&g, &d, 3, 0).unwrap();
        assert_eq!(f, GradedPolynomial::one(3, 0));
    }

    #[test]
    fn p_eta_on_loop_class() {
        let g = single_loop().subdivide(2).unwrap();
        let reps = coset_representatives(&g, &Divisor::zero(2), 2).unwrap();
        assert!(p_eta(&g, &reps[0], 2, 2).unwrap().is_zero());
        // (1/2)·(ℓ/2)·(−2)
        assert_eq!(p_eta(&g, &reps[1], 2, 2).unwrap().coeff(&[1, 0]), bq(-1, 2));
    }

    #[test]
    fn loop_top_degree_r1() {
        let g = single_loop();
        let a = assemble_p(
            &g,
            &LineBundleSpec::Multidegree(vec![0]),
            1,
            None,
            SamplingPolicy::default(),
        )
        .unwrap();
        assert_eq!(a.classes.len(), 1);
        let top = &a.classes[0].p_top;
        assert_eq!(top.coeff(&[1, 0]), bq(-1, 12));
        assert_eq!(top.coeff(&[0, 1]), bq(-1, 2));
        assert_eq!(top.terms().count(), 2);
        assert_eq!(a.classes[0].p_d[1].coeff(&[1, 0]), bq(-1, 12));
    }

    #[test]
    fn tree_assembly_is_pure_eta() {
        let mut g = path(2);
        g.vertices[0].genus = 1;
        let a = assemble_p(
            &g,
            &LineBundleSpec::Multidegree(vec![0, 0]),
            2,
            None,
            SamplingPolicy::default(),
        )
        .unwrap();
        assert_eq!(a.classes.len(), 1);
        let c = &a.classes[0];
        assert!(c.p_d[1].is_zero());
        assert_eq!(c.p_top.coeff(&[0, 1]), bq(-1, 8));
        assert_eq!(c.p_top.terms().count(), 1);
    }

    #[test]
    fn truncation_below_genus_rejected() {
        let g = single_loop();
        let err = assemble_p(
            &g,
            &LineBundleSpec::Multidegree(vec![0]),
            1,
            Some(0),
            SamplingPolicy::default(),
        )
        .unwrap_err();
        assert_eq!(err.kind(), "input");
    }
}
