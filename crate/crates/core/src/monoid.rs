//! Saturated extensions of `M = ℕ^k` obtained by adjoining `r`-th roots of
//! intersection pairings.
//!
//! An extension is presented as `N = (ℤ^k ⊕ ℤ^H) / ⟨(c_j, −r·e_j)⟩` where the
//! `c_j ∈ ℤ^k` are pairings in chart units. Every element of `N` has a unique
//! normal form `α + Σ a_j f_j` with `α ∈ ℤ^k` and `0 ≤ a_j < r`, and it lies in
//! the saturation of `M` exactly when `r·α + Σ a_j c_j ≥ 0`. Elements killed
//! by `r` (torsion of `N`) pass that test and are kept.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{fmt_q, Cycle, DecoratedGraph, Q};
use crate::lattice::{self, Hermite, IMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// Roots of `γ ∩ –` for a single cycle.
    GammaOverR(Cycle),
    /// Roots of the full pairing, residues indexed by `H1 ⊗ H1`.
    Xsr,
}

/// Normal form `(α, residues)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub alpha: Vec<i64>,
    pub residues: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ExtendedMonoid {
    pub kind: MonoidKind,
    pub r: i64,
    pub rank: usize,
    pub root_index: i64,
    pub basis: Vec<Cycle>,
    /// `c_j` in chart units, one row per residue slot.
    pub pairings: Vec<Vec<i64>>,
    /// Hilbert basis of the sharp quotient, as rational points of `ℚ^k`.
    pub hilbert_basis: Vec<Vec<Q>>,
    lattice: Hermite,
}

impl ExtendedMonoid {
    fn new(g: &DecoratedGraph, kind: MonoidKind, r: i64, pairings: Vec<Vec<i64>>) -> Result<Self> {
        if r < 1 {
            return Err(Error::input("r", "must be positive"));
        }
        let k = g.base_rank;
        // rows [c_j ; r·e_i] generate r·Λ
        let mut rows: IMat = pairings
            .iter()
            .map(|c| c.iter().map(|&x| x as i128).collect())
            .collect();
        for i in 0..k {
            let mut e = vec![0i128; k];
            e[i] = r as i128;
            rows.push(e);
        }
        let lattice = lattice::hermite(&rows, k);
        let mut m = ExtendedMonoid {
            kind,
            r,
            rank: k,
            root_index: g.root_index,
            basis: g.homology_basis()?,
            pairings,
            hilbert_basis: Vec::new(),
            lattice,
        };
        m.hilbert_basis = m.compute_hilbert_basis();
        Ok(m)
    }

    pub fn slots(&self) -> usize {
        self.pairings.len()
    }

    /// Rows `(c_j, −r·e_j)` presenting `N`.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        let h = self.slots();
        self.pairings
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut row = c.clone();
                row.extend((0..h).map(|i| if i == j { -self.r } else { 0 }));
                row
            })
            .collect()
    }

    /// Normal form of the class of `(m, y)` in the raw presentation.
    pub fn normal_form(&self, m: &[i64], y: &[i64]) -> ExtElement {
        let mut alpha = m.to_vec();
        let mut residues = Vec::with_capacity(y.len());
        for (j, &yj) in y.iter().enumerate() {
            let (q, a) = yj.div_mod_floor(&self.r);
            residues.push(a);
            for (x, c) in alpha.iter_mut().zip(&self.pairings[j]) {
                *x += q * c;
            }
        }
        ExtElement { alpha, residues }
    }

    pub fn from_base(&self, m: &[i64]) -> ExtElement {
        ExtElement {
            alpha: m.to_vec(),
            residues: vec![0; self.slots()],
        }
    }

    /// Image of the `j`-th residue generator (`f(γ_j)` for `M_{γ/r}`).
    pub fn slot_generator(&self, j: usize) -> ExtElement {
        let mut y = vec![0; self.slots()];
        y[j] = 1;
        self.normal_form(&vec![0; self.rank], &y)
    }

    pub fn add(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let m: Vec<i64> = x.alpha.iter().zip(&y.alpha).map(|(a, b)| a + b).collect();
        let s: Vec<i64> = x
            .residues
            .iter()
            .zip(&y.residues)
            .map(|(a, b)| a + b)
            .collect();
        self.normal_form(&m, &s)
    }

    pub fn neg(&self, x: &ExtElement) -> ExtElement {
        let m: Vec<i64> = x.alpha.iter().map(|a| -a).collect();
        let s: Vec<i64> = x.residues.iter().map(|a| -a).collect();
        self.normal_form(&m, &s)
    }

    pub fn scale(&self, x: &ExtElement, n: i64) -> ExtElement {
        let m: Vec<i64> = x.alpha.iter().map(|a| a * n).collect();
        let s: Vec<i64> = x.residues.iter().map(|a| a * n).collect();
        self.normal_form(&m, &s)
    }

    /// `r·x` as an element of `M^gp`.
    pub fn r_times(&self, x: &ExtElement) -> Vec<i64> {
        let mut out: Vec<i64> = x.alpha.iter().map(|a| a * self.r).collect();
        for (a, c) in x.residues.iter().zip(&self.pairings) {
            for (o, ci) in out.iter_mut().zip(c) {
                *o += a * ci;
            }
        }
        out
    }

    /// Image in `ℚ^k` (chart units); forgets torsion.
    pub fn value(&self, x: &ExtElement) -> Vec<Q> {
        self.r_times(x)
            .into_iter()
            .map(|v| Q::new(v, self.r))
            .collect()
    }

    fn check_shape(&self, x: &ExtElement) -> Result<()> {
        if x.alpha.len() != self.rank
            || x.residues.len() != self.slots()
            || x.residues.iter().any(|&a| a < 0 || a >= self.r)
        {
            return Err(Error::Structural(
                "element is not a normal form of this extension".into(),
            ));
        }
        Ok(())
    }

    pub fn contains(&self, x: &ExtElement) -> Result<bool> {
        self.check_shape(x)?;
        Ok(self.r_times(x).iter().all(|&v| v >= 0))
    }

    /// Whether a point of `ℚ^k` lies in the image lattice at all.
    pub fn in_lattice(&self, v: &[Q]) -> bool {
        let scaled: Option<Vec<i128>> = v
            .iter()
            .map(|q| {
                let x = q * self.r;
                x.is_integer().then(|| x.to_integer() as i128)
            })
            .collect();
        scaled.is_some_and(|s| self.lattice.contains(&s))
    }

    pub fn contains_value(&self, v: &[Q]) -> bool {
        self.in_lattice(v) && v.iter().all(|q| !q.is_negative())
    }

    /// Some normal form with the given value, if the value is in the lattice.
    pub fn lift_value(&self, v: &[Q]) -> Option<ExtElement> {
        let target: Vec<i128> = v
            .iter()
            .map(|q| {
                let x = q * self.r;
                x.is_integer().then(|| x.to_integer() as i128)
            })
            .collect::<Option<_>>()?;
        let z = self.lattice.solve(&target)?;
        let h = self.slots();
        let y: Vec<i64> = z[..h].iter().map(|&b| b as i64).collect();
        let m: Vec<i64> = z[h..].iter().map(|&b| b as i64).collect();
        Some(self.normal_form(&m, &y))
    }

    fn compute_hilbert_basis(&self) -> Vec<Vec<Q>> {
        let k = self.rank;
        let r = self.r;
        // subgroup of (ℤ/r)^k generated by the pairings
        let gens: Vec<Vec<i64>> = self
            .pairings
            .iter()
            .map(|c| c.iter().map(|x| x.rem_euclid(r)).collect())
            .collect();
        let mut reps: HashSet<Vec<i64>> = HashSet::from([vec![0; k]]);
        let mut queue = VecDeque::from([vec![0; k]]);
        while let Some(x) = queue.pop_front() {
            for gen in &gens {
                let y: Vec<i64> = x.iter().zip(gen).map(|(a, b)| (a + b) % r).collect();
                if reps.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        // irreducibles are nonzero coset representatives and the r·e_i
        let mut cands: BTreeSet<Vec<i64>> = reps
            .into_iter()
            .filter(|x| x.iter().any(|&v| v != 0))
            .collect();
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = r;
            cands.insert(e);
        }
        let irreducible: Vec<&Vec<i64>> = cands
            .iter()
            .filter(|x| {
                !cands
                    .iter()
                    .any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b))
            })
            .collect();
        irreducible
            .into_iter()
            .map(|x| x.iter().map(|&v| Q::new(v, r)).collect())
            .collect()
    }

    /// `M ↪ ext` on the level of sharp quotients.
    pub fn inclusion(&self) -> Inclusion {
        Inclusion {
            source_images: (0..self.rank)
                .map(|i| {
                    (0..self.rank)
                        .map(|j| Q::from_integer(i64::from(i == j)))
                        .collect()
                })
                .collect(),
            target_generators: self.hilbert_basis.clone(),
        }
    }

    /// The inclusion `M ↪ ext` is an isomorphism.
    pub fn is_trivial(&self) -> bool {
        self.hilbert_basis.len() == self.rank
            && self
                .hilbert_basis
                .iter()
                .all(|v| v.iter().all(|q| q.is_integer()))
    }

    pub fn to_json(&self) -> Value {
        let kind = match &self.kind {
            MonoidKind::GammaOverR(c) => json!({"tag": "gamma_over_r", "gamma": c.coeffs}),
            MonoidKind::Xsr => json!({"tag": "xsr"}),
        };
        let gens: Vec<Value> = self
            .hilbert_basis
            .iter()
            .map(|v| {
                let nf = self.lift_value(v).expect("basis element lies in lattice");
                json!({
                    "value": v.iter().map(fmt_q).collect::<Vec<_>>(),
                    "alpha": nf.alpha,
                    "residues": nf.residues,
                })
            })
            .collect();
        json!({
            "kind": kind,
            "r": self.r,
            "rank": self.rank,
            "root_index": self.root_index,
            "relations": self.relation_matrix(),
            "generators": gens,
            "trivial": self.is_trivial(),
        })
    }
}

pub fn build_gamma_over_r(g: &DecoratedGraph, gamma: &Cycle, r: i64) -> Result<ExtendedMonoid> {
    if !g.is_cycle(gamma) {
        return Err(Error::Structural(
            "gamma is not a cycle of the graph".into(),
        ));
    }
    let basis = g.homology_basis()?;
    let pairings = basis
        .iter()
        .map(|b| g.pairing_chart(gamma, b))
        .collect::<Result<_>>()?;
    ExtendedMonoid::new(g, MonoidKind::GammaOverR(gamma.clone()), r, pairings)
}

pub fn build_xsr(g: &DecoratedGraph, r: i64) -> Result<ExtendedMonoid> {
    let basis = g.homology_basis()?;
    let mut pairings = Vec::new();
    for a in &basis {
        for b in &basis {
            pairings.push(g.pairing_chart(a, b)?);
        }
    }
    ExtendedMonoid::new(g, MonoidKind::Xsr, r, pairings)
}

/// Identity-on-`M` isomorphism `M_{γ1/r} → M_{γ2/r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIso {
    /// `(γ1 − γ2)/r`.
    pub gamma0: Cycle,
    /// `γ_j ∩ γ0` in chart units, added to `α` per unit of residue `j`.
    pub shifts: Vec<Vec<i64>>,
}

impl MonoidIso {
    pub fn apply(&self, x: &ExtElement) -> ExtElement {
        let mut alpha = x.alpha.clone();
        for (a, s) in x.residues.iter().zip(&self.shifts) {
            for (o, si) in alpha.iter_mut().zip(s) {
                *o += a * si;
            }
        }
        ExtElement {
            alpha,
            residues: x.residues.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaComparison {
    Isomorphic(MonoidIso),
    /// A basis cycle whose pairing with `γ1 − γ2` is not in `r·M`, if any.
    Distinct {
        witness: Option<Cycle>,
    },
}

pub fn iso_gamma_classes(
    g: &DecoratedGraph,
    gamma1: &Cycle,
    gamma2: &Cycle,
    r: i64,
) -> Result<GammaComparison> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    let diff = gamma1.sub(gamma2);
    let coords = g.basis_coords(&diff)?;
    g.basis_coords(gamma1)?;
    let basis = g.homology_basis()?;
    if coords.iter().all(|c| c % r == 0) {
        let q: Vec<i64> = coords.iter().map(|c| c / r).collect();
        let gamma0 = Cycle::combine(&basis, &q, g.n_edges());
        let shifts = basis
            .iter()
            .map(|b| g.pairing_chart(b, &gamma0))
            .collect::<Result<_>>()?;
        return Ok(GammaComparison::Isomorphic(MonoidIso { gamma0, shifts }));
    }
    for b in &basis {
        let p = g.pairing_chart(&diff, b)?;
        if p.iter().any(|x| x % r != 0) {
            return Ok(GammaComparison::Distinct {
                witness: Some(b.clone()),
            });
        }
    }
    Ok(GammaComparison::Distinct { witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityWitness {
    pub n_common: ExtElement,
    pub m1: Vec<i64>,
    pub m2: Vec<i64>,
}

/// Given `m1 + n1 = m2 + n2` with `m_i ∈ M` and `n_i` in the extension,
/// splits `n_i = n' + m'_i` with `m'_i ∈ M` and `m1 + m'_1 = m2 + m'_2`.
///
/// `n'` carries the shared residues with its integral part shifted by the
/// floor of their fractional value, which keeps both `n'` and `m'_i` inside
/// the monoids even when pairings have negative coordinates.
pub fn integrality_witness(
    ext: &ExtendedMonoid,
    m1: &[i64],
    m2: &[i64],
    n1: &ExtElement,
    n2: &ExtElement,
) -> Result<IntegralityWitness> {
    for (name, m) in [("m1", m1), ("m2", m2)] {
        if m.len() != ext.rank || m.iter().any(|&x| x < 0) {
            return Err(Error::Contract(format!("{name} is not in the base monoid")));
        }
    }
    for (name, n) in [("n1", n1), ("n2", n2)] {
        if !ext.contains(n)? {
            return Err(Error::Contract(format!("{name} is not in the extension")));
        }
    }
    if ext.add(&ext.from_base(m1), n1) != ext.add(&ext.from_base(m2), n2) {
        return Err(Error::Contract("m1 + n1 != m2 + n2".into()));
    }
    let mut shift = vec![0i64; ext.rank];
    for (i, s) in shift.iter_mut().enumerate() {
        let num: i64 = n1
            .residues
            .iter()
            .zip(&ext.pairings)
            .map(|(a, c)| a * c[i])
            .sum();
        *s = Integer::div_floor(&num, &ext.r);
    }
    let n_common = ExtElement {
        alpha: shift.iter().map(|s| -s).collect(),
        residues: n1.residues.clone(),
    };
    let lift =
        |n: &ExtElement| -> Vec<i64> { n.alpha.iter().zip(&shift).map(|(a, s)| a + s).collect() };
    let w = IntegralityWitness {
        n_common,
        m1: lift(n1),
        m2: lift(n2),
    };
    debug_assert!(w.m1.iter().chain(&w.m2).all(|&x| x >= 0));
    Ok(w)
}

/// A monoid map `ℕ^a → P` described by where the generators land, together
/// with generators of `P`; everything lives in a common `ℚ^n`.
#[derive(Clone, Debug)]
pub struct Inclusion {
    pub source_images: Vec<Vec<Q>>,
    pub target_generators: Vec<Vec<Q>>,
}

/// Solve `Σ λ_i cols_i = t` over ℚ for independent `cols`.
fn rational_coords(cols: &[Vec<Q>], t: &[Q]) -> Option<Vec<Q>> {
    let m = cols.len();
    let n = t.len();
    // augmented n × (m+1) system
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i]).collect();
            row.push(t[i]);
            row
        })
        .collect();
    let mut piv_row = 0;
    let mut pivots = Vec::new();
    for c in 0..m {
        let Some(p) = (piv_row..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv_row, p);
        let inv = a[piv_row][c].recip();
        for x in a[piv_row].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != piv_row && !a[i][c].is_zero() {
                let f = a[i][c];
                let src = a[piv_row].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x -= f * s;
                }
            }
        }
        pivots.push(c);
        piv_row += 1;
    }
    if pivots.len() < m || (piv_row..n).any(|i| !a[i][m].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); m];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = a[row][m];
    }
    Some(out)
}

fn rational_rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a = rows.to_vec();
    let n = a[0].len();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = a[i][c] / a[rank][c];
                let src = a[rank].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x -= f * s;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Injective, and every target generator has a positive multiple in the
/// image of the source.
pub fn kummer_check(inc: &Inclusion) -> bool {
    if rational_rank(&inc.source_images) != inc.source_images.len() {
        return false;
    }
    inc.target_generators.iter().all(|t| {
        rational_coords(&inc.source_images, t).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    })
}

/// Rank of the kernel of `M_{γ/r}^gp → M_{X/S,r}^gp`, `(m, γ') ↦ (m, γ ⊗ γ')`.
pub fn torsion_kernel_rank(g: &DecoratedGraph, gamma: &Cycle, r: i64) -> Result<usize> {
    let src = build_gamma_over_r(g, gamma, r)?;
    let dst = build_xsr(g, r)?;
    let k = g.base_rank;
    let h = src.slots();
    let coords = g.basis_coords(gamma)?;
    let width = k + h * h;
    let mut rows: IMat = Vec::new();
    for i in 0..k {
        let mut row = vec![0i128; width];
        row[i] = 1;
        rows.push(row);
    }
    for j in 0..h {
        let mut row = vec![0i128; width];
        for (i, &gi) in coords.iter().enumerate() {
            row[k + i * h + j] = gi as i128;
        }
        rows.push(row);
    }
    for rel in dst.relation_matrix() {
        rows.push(rel.iter().map(|&x| x as i128).collect());
    }
    let ker = lattice::left_kernel(&rows, width);
    let proj: IMat = ker.iter().map(|row| row[..k + h].to_vec()).collect();
    let rank = lattice::rank(&proj, k + h);
    Ok(rank - h)
}

pub fn torsion_kernel_check(g: &DecoratedGraph, gamma: &Cycle, r: i64) -> Result<bool> {
    Ok(torsion_kernel_rank(g, gamma, r)? == 0)
}
