//! Divisors and piecewise-linear functions on a subdivided graph, the
//! outgoing-slope map `∇`, and coset representatives `D` with
//! `r·D = deg L + ∇α`.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{DecoratedGraph, MonoidElement};
use crate::lattice::{self, IMat, Smith};
use crate::tropjac::residue_tuples;

/// Integer per vertex position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    pub values: Vec<i64>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { values: vec![0; n] }
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        Divisor {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Divisor {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Divisor {
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    pub fn to_json(&self, g: &DecoratedGraph) -> Value {
        let m: BTreeMap<String, i64> = g
            .vertices
            .iter()
            .zip(&self.values)
            .map(|(v, &d)| (v.id.to_string(), d))
            .collect();
        json!(m)
    }
}

/// Values in `M^gp ⊗ ℚ` and an integer slope per oriented edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    pub values: Vec<MonoidElement>,
    pub slopes: Vec<i64>,
}

impl PlFunction {
    pub fn zero(g: &DecoratedGraph) -> Self {
        PlFunction {
            values: vec![MonoidElement::zero(g.base_rank); g.n_vertices()],
            slopes: vec![0; g.n_edges()],
        }
    }

    /// Integrates slopes along the spanning tree starting from `base` at the
    /// root, then checks every edge closes up.
    pub fn from_slopes(g: &DecoratedGraph, slopes: &[i64], base: MonoidElement) -> Result<Self> {
        if slopes.len() != g.n_edges() {
            return Err(Error::Structural("one slope per edge required".into()));
        }
        let t = g.spanning_tree()?;
        let mut values = vec![MonoidElement::zero(g.base_rank); g.n_vertices()];
        values[t.root] = base;
        for &v in t.order.iter().skip(1) {
            let (p, e) = t.parent[v].expect("non-root");
            let step = g.edges[e].length.scale_int(slopes[e]);
            values[v] = if g.edges[e].tail == p {
                values[p].add(&step)
            } else {
                values[p].sub(&step)
            };
        }
        let f = PlFunction {
            values,
            slopes: slopes.to_vec(),
        };
        f.check_consistent(g)?;
        Ok(f)
    }

    pub fn check_consistent(&self, g: &DecoratedGraph) -> Result<()> {
        if self.values.len() != g.n_vertices() || self.slopes.len() != g.n_edges() {
            return Err(Error::Structural("PL function does not match graph".into()));
        }
        for (i, e) in g.edges.iter().enumerate() {
            let diff = self.values[e.head].sub(&self.values[e.tail]);
            if diff != e.length.scale_int(self.slopes[i]) {
                return Err(Error::Contract(format!(
                    "PL function inconsistent along edge {}",
                    e.id
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        PlFunction {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a.add(b))
                .collect(),
            slopes: self
                .slopes
                .iter()
                .zip(&o.slopes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        PlFunction {
            values: self.values.iter().map(|a| a.scale_int(c)).collect(),
            slopes: self.slopes.iter().map(|a| a * c).collect(),
        }
    }

    pub fn vanishes_on_original(&self, g: &DecoratedGraph) -> bool {
        self.values
            .iter()
            .zip(&g.original)
            .all(|(v, &o)| !o || v.is_zero())
    }

    pub fn to_json(&self, g: &DecoratedGraph) -> Value {
        let m: BTreeMap<String, Vec<String>> = g
            .vertices
            .iter()
            .zip(&self.values)
            .map(|(v, a)| (v.id.to_string(), a.to_strings()))
            .collect();
        json!(m)
    }
}

/// Sum of outgoing slopes at each vertex.
pub fn nabla(g: &DecoratedGraph, alpha: &PlFunction) -> Result<Divisor> {
    alpha.check_consistent(g)?;
    let mut d = Divisor::zero(g.n_vertices());
    for (e, &s) in g.edges.iter().zip(&alpha.slopes) {
        d.values[e.tail] += s;
        d.values[e.head] -= s;
    }
    Ok(d)
}

/// Multidegree of `ω^k(−Σ r·a_i p_i)`: `k(2g(v) − 2 + val(v)) − r·Σ_{i at v} a_i`.
/// `twists` follows the order of `g.legs`. Only `r | k(2g − 2)` is enforced;
/// twists summing to `k(2g − 2)/r` give total degree zero.
pub fn multidegree_omega_twist(
    g: &DecoratedGraph,
    k: i64,
    twists: &[i64],
    r: i64,
) -> Result<Divisor> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    if twists.len() != g.legs.len() {
        return Err(Error::input(
            "twists",
            format!("expected {} twists, one per leg", g.legs.len()),
        ));
    }
    let total = k * (2 * g.total_genus() as i64 - 2);
    if total % r != 0 {
        return Err(Error::input(
            "r",
            format!("r = {r} does not divide k(2g-2) = {total}"),
        ));
    }
    let mut d = Divisor::zero(g.n_vertices());
    for (v, val) in d.values.iter_mut().enumerate() {
        *val = k * (2 * g.vertices[v].genus as i64 - 2 + g.valence(v) as i64);
    }
    for (l, a) in g.legs.iter().zip(twists) {
        d.values[l.vertex] -= r * a;
    }
    Ok(d)
}

/// The lattice of principal divisors `∇PL` on a graph whose lengths are
/// generic: slopes must close up around every cycle separately in each
/// length coordinate.
#[derive(Clone, Debug)]
pub struct PicLattice {
    /// Basis of admissible slope vectors.
    pub slope_basis: IMat,
    pub smith: Smith,
}

impl PicLattice {
    pub fn new(g: &DecoratedGraph) -> Result<Self> {
        let basis = g.homology_basis()?;
        let k = g.base_rank;
        let ne = g.n_edges();
        let nv = g.n_vertices();
        let width = basis.len() * k;
        let lens: Vec<Vec<i64>> = (0..ne).map(|e| g.chart_length(e)).collect();
        let constraints: IMat = (0..ne)
            .map(|e| {
                let mut row = vec![0i128; width];
                for (j, c) in basis.iter().enumerate() {
                    for kk in 0..k {
                        row[j * k + kk] = (c.coeffs[e] * lens[e][kk]) as i128;
                    }
                }
                row
            })
            .collect();
        let slope_basis = if width == 0 {
            lattice::identity(ne)
        } else {
            lattice::left_kernel(&constraints, width)
        };
        let incidence: IMat = g
            .edges
            .iter()
            .map(|e| {
                let mut row = vec![0i128; nv];
                row[e.tail] += 1;
                row[e.head] -= 1;
                row
            })
            .collect();
        let principal = lattice::mat_mul(&slope_basis, &incidence, nv);
        let smith = lattice::smith(&principal, nv);
        Ok(PicLattice { slope_basis, smith })
    }

    /// `|Pic[r]|`.
    pub fn torsion_count(&self, r: i64) -> i64 {
        self.smith
            .diag
            .iter()
            .map(|&d| (d as i64).gcd(&r))
            .product()
    }

    /// Invariant of the linear-equivalence class.
    pub fn class_key(&self, d: &Divisor) -> Vec<i128> {
        let x: Vec<i128> = d.values.iter().map(|&v| v as i128).collect();
        let y = self.smith.coords(&x);
        y.iter()
            .enumerate()
            .map(|(i, &yi)| match self.smith.diag.get(i) {
                Some(&di) => yi.rem_euclid(di),
                None => yi,
            })
            .collect()
    }

    /// Slopes of a PL function with `∇β = d`, if `d` is principal.
    pub fn solve(&self, d: &Divisor) -> Option<Vec<i64>> {
        let x: Vec<i128> = d.values.iter().map(|&v| v as i128).collect();
        let z = self.smith.solve(&x)?;
        let ne = self.slope_basis.first().map_or(0, Vec::len);
        let s = lattice::mat_vec_left(&z, &self.slope_basis, ne);
        Some(s.into_iter().map(|v| v as i64).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    /// Residues of the class against the homology basis of the unsubdivided
    /// graph.
    pub residues: Vec<i64>,
    pub d: Divisor,
    pub alpha: PlFunction,
}

impl CosetRep {
    pub fn to_json(&self, g: &DecoratedGraph) -> Value {
        json!({
            "residues": self.residues,
            "D": self.d.to_json(g),
            "alpha": self.alpha.to_json(g),
        })
    }
}

fn check_subdivided(g_r: &DecoratedGraph, r: i64) -> Result<()> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    if g_r.subdivision as i64 != r {
        return Err(Error::input(
            "graph",
            format!(
                "expected a graph subdivided {r} times, got {}",
                g_r.subdivision
            ),
        ));
    }
    Ok(())
}

fn check_deg_l(g_r: &DecoratedGraph, deg_l: &Divisor, r: i64) -> Result<()> {
    if deg_l.values.len() != g_r.n_vertices() {
        return Err(Error::input("degL", "one value per vertex required"));
    }
    if deg_l
        .values
        .iter()
        .zip(&g_r.original)
        .any(|(&d, &o)| !o && d != 0)
    {
        return Err(Error::input("degL", "must vanish on subdivision vertices"));
    }
    if deg_l.degree() % r != 0 {
        return Err(Error::input(
            "degL",
            format!(
                "total degree {} is not divisible by r = {r}",
                deg_l.degree()
            ),
        ));
    }
    Ok(())
}

/// One representative per class `D` with `r·D ~ deg L`, each with `α|_V = 0`.
///
/// A normalized `α` has, on the chain of each original edge `e`, slopes all
/// congruent to some `c_e` mod `r` and summing to zero; the `c_e` form a
/// mod-`r` chain with boundary `−deg L`. Each such chain is realized by the
/// slope pattern `(c, …, c, −(r−1)c)` with `c ∈ [0, r)`, and the chains are
/// `c_0 + Σ a_j γ_j`, giving residues `a`.
pub fn coset_representatives(
    g_r: &DecoratedGraph,
    deg_l: &Divisor,
    r: i64,
) -> Result<Vec<CosetRep>> {
    check_subdivided(g_r, r)?;
    check_deg_l(g_r, deg_l, r)?;
    let base = g_r.contract_chains()?;
    let nb = base.n_vertices();
    debug_assert!(g_r.original[..nb].iter().all(|&o| o));

    // c0 with boundary ≡ −deg L (mod r), supported on the spanning tree
    let tree = base.spanning_tree()?;
    let mut c0 = vec![0i64; base.n_edges()];
    let mut partial = vec![0i64; nb];
    for &v in tree.order.iter().rev() {
        let Some((p, e)) = tree.parent[v] else {
            continue;
        };
        let need = -deg_l.values[v] - partial[v];
        // edge e contributes +c at its tail, −c at its head
        let c = if base.edges[e].tail == v { need } else { -need };
        let c = c.rem_euclid(r);
        c0[e] = c;
        if base.edges[e].tail == p {
            partial[p] += c;
        } else {
            partial[p] -= c;
        }
    }
    let basis = base.homology_basis()?;
    let pic = PicLattice::new(g_r)?;

    let reps: Vec<CosetRep> = residue_tuples(basis.len(), r)
        .into_par_iter()
        .map(|a| {
            let mut slopes = vec![0i64; g_r.n_edges()];
            for (p, &c_base) in c0.iter().enumerate() {
                let mut c = c_base;
                for (j, b) in basis.iter().enumerate() {
                    c += a[j] * b.coeffs[p];
                }
                let c = c.rem_euclid(r);
                let chain = g_r.chain_edges(p);
                for (i, &e) in chain.iter().enumerate() {
                    slopes[e] = if i + 1 < chain.len() { c } else { -(r - 1) * c };
                }
            }
            let alpha = PlFunction::from_slopes(g_r, &slopes, MonoidElement::zero(g_r.base_rank))?;
            let grad = nabla(g_r, &alpha)?;
            let rd = deg_l.add(&grad);
            if rd.values.iter().any(|v| v % r != 0) {
                return Err(Error::Contract(format!(
                    "class {a:?}: deg L + ∇α not divisible by r"
                )));
            }
            let d = Divisor {
                values: rd.values.iter().map(|v| v / r).collect(),
            };
            if !alpha.vanishes_on_original(g_r) {
                return Err(Error::Contract(format!(
                    "class {a:?}: α does not vanish on V"
                )));
            }
            Ok(CosetRep {
                residues: a,
                d,
                alpha,
            })
        })
        .collect::<Result<_>>()?;

    let keys: HashSet<Vec<i128>> = reps.iter().map(|rep| pic.class_key(&rep.d)).collect();
    let expected = pic.torsion_count(r);
    if keys.len() != reps.len() || reps.len() as i64 != expected {
        return Err(Error::Contract(format!(
            "found {} representatives in {} classes, expected {expected}",
            reps.len(),
            keys.len()
        )));
    }
    Ok(reps)
}

/// Replaces `(D, α)` by `(D + ∇β, α + r·β)` so that `α` vanishes on the
/// original vertices. Constants are absorbed first.
pub fn normalize_alpha(
    g_r: &DecoratedGraph,
    deg_l: &Divisor,
    d: &Divisor,
    alpha: &PlFunction,
    r: i64,
) -> Result<(Divisor, PlFunction)> {
    check_subdivided(g_r, r)?;
    let grad = nabla(g_r, alpha)?;
    if d.scale(r) != deg_l.add(&grad) {
        return Err(Error::Contract("r·D != deg L + ∇α".into()));
    }
    let root = g_r.spanning_tree()?.root;
    let shift = alpha.values[root].clone();
    let shifted = PlFunction {
        values: alpha.values.iter().map(|v| v.sub(&shift)).collect(),
        slopes: alpha.slopes.clone(),
    };
    let mut beta_slopes = vec![0i64; g_r.n_edges()];
    for p in 0..g_r.n_original_edges() {
        let chain = g_r.chain_edges(p);
        let sigma: i64 = chain.iter().map(|&e| alpha.slopes[e]).sum();
        if sigma % r != 0 {
            return Err(Error::Contract(format!(
                "slopes along original edge {p} sum to {sigma}, not divisible by r"
            )));
        }
        beta_slopes[chain[0]] = -sigma / r;
    }
    let beta = PlFunction::from_slopes(g_r, &beta_slopes, MonoidElement::zero(g_r.base_rank))?;
    let new_alpha = shifted.add(&beta.scale(r));
    let new_d = d.add(&nabla(g_r, &beta)?);
    if !new_alpha.vanishes_on_original(g_r) {
        return Err(Error::Contract("normalized α does not vanish on V".into()));
    }
    debug_assert_eq!(new_d.scale(r), deg_l.add(&nabla(g_r, &new_alpha)?));
    Ok((new_d, new_alpha))
}

/// `β` vanishing on `V` with `D2 = D1 + ∇β`, if the classes agree.
pub fn compare_reps(
    g_r: &DecoratedGraph,
    rep1: &CosetRep,
    rep2: &CosetRep,
    r: i64,
) -> Result<Option<PlFunction>> {
    check_subdivided(g_r, r)?;
    let pic = PicLattice::new(g_r)?;
    let diff = rep2.d.sub(&rep1.d);
    let Some(slopes) = pic.solve(&diff) else {
        return Ok(None);
    };
    let beta = PlFunction::from_slopes(g_r, &slopes, MonoidElement::zero(g_r.base_rank))?;
    if nabla(g_r, &beta)? != diff {
        return Err(Error::Contract("lattice solve returned a wrong β".into()));
    }
    if !beta.vanishes_on_original(g_r) {
        return Err(Error::Contract(
            "β does not vanish on V; representatives are not normalized".into(),
        ));
    }
    Ok(Some(beta))
}

/// The function with value `ℓ/r` (one segment length) at the subdivision
/// vertex `u` and zero at every other vertex.
pub fn primitive_beta(g_r: &DecoratedGraph, u: usize) -> Result<PlFunction> {
    if u >= g_r.n_vertices() || g_r.original[u] {
        return Err(Error::input("u", "must be a subdivision vertex"));
    }
    let mut f = PlFunction::zero(g_r);
    for (i, e) in g_r.edges.iter().enumerate() {
        if e.head == u {
            f.slopes[i] = 1;
            f.values[u] = e.length.clone();
        } else if e.tail == u {
            f.slopes[i] = -1;
        }
    }
    f.check_consistent(g_r)?;
    Ok(f)
}

/// `(D + ∇β, α + r·β)`.
pub fn shift_rep(
    g_r: &DecoratedGraph,
    rep: &CosetRep,
    beta: &PlFunction,
    r: i64,
) -> Result<CosetRep> {
    Ok(CosetRep {
        residues: rep.residues.clone(),
        d: rep.d.add(&nabla(g_r, beta)?),
        alpha: rep.alpha.add(&beta.scale(r)),
    })
}

/// Subdivision vertices, in position order.
pub fn interior_vertices(g_r: &DecoratedGraph) -> Vec<usize> {
    (0..g_r.n_vertices())
        .filter(|&v| !g_r.original[v])
        .collect()
}
