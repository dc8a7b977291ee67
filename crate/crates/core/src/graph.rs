//! Decorated multigraphs with monoid-valued edge lengths.
//!
//! Vertices and edges are addressed by position internally; the `id` fields
//! are labels carried through to JSON. Edge `i` owns half-edges `2i` (at its
//! tail) and `2i + 1` (at its head).

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

/// Parse `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Q::new(p, q))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Element of `M^gp` for `M = ℕ^k`, with rational coordinates so that
/// subdivided lengths stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    pub coords: Vec<Q>,
}

impl MonoidElement {
    pub fn zero(k: usize) -> Self {
        MonoidElement {
            coords: vec![Q::zero(); k],
        }
    }

    pub fn generator(k: usize, i: usize) -> Self {
        let mut m = Self::zero(k);
        m.coords[i] = Q::from_integer(1);
        m
    }

    pub fn from_ints(v: &[i64]) -> Self {
        MonoidElement {
            coords: v.iter().map(|&x| Q::from_integer(x)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        MonoidElement {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        MonoidElement {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Q) -> Self {
        MonoidElement {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(Q::from_integer(c))
    }

    /// Lies in `M` itself: integral and nonnegative.
    pub fn in_base(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }

    /// Integer coordinates after multiplying by `rho`, if they are integral.
    pub fn scaled(&self, rho: i64) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                let x = c * rho;
                x.is_integer().then(|| x.to_integer())
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_q).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: u32,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub marking: u32,
    /// Vertex position.
    pub vertex: usize,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: u32,
    pub tail: usize,
    pub head: usize,
    pub length: MonoidElement,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Where an edge of a subdivided graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub parent: usize,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub legs: Vec<Leg>,
    pub edges: Vec<Edge>,
    pub base_rank: usize,
    /// Lengths have denominators dividing this.
    pub root_index: i64,
    /// Number of segments each original edge was cut into.
    pub subdivision: usize,
    /// `true` for vertices of the graph before subdivision.
    pub original: Vec<bool>,
    pub segments: Vec<Segment>,
}

/// Integer coefficient per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub coeffs: Vec<i64>,
}

impl Cycle {
    pub fn zero(n: usize) -> Self {
        Cycle { coeffs: vec![0; n] }
    }

    pub fn add(&self, o: &Cycle) -> Cycle {
        Cycle {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Cycle) -> Cycle {
        Cycle {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Cycle {
        Cycle {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Linear combination of basis cycles.
    pub fn combine(basis: &[Cycle], coeffs: &[i64], n_edges: usize) -> Cycle {
        let mut out = Cycle::zero(n_edges);
        for (b, &c) in basis.iter().zip(coeffs) {
            out = out.add(&b.scale(c));
        }
        out
    }
}

/// Spanning tree found by BFS from the lowest vertex id.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: usize,
    /// BFS discovery order.
    pub order: Vec<usize>,
    /// `(parent vertex, edge)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub in_tree: Vec<bool>,
    pub depth: Vec<usize>,
}

impl SpanningTree {
    pub fn non_tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&e| !self.in_tree[e])
            .collect()
    }
}

impl DecoratedGraph {
    /// Builds and validates a base graph (root index 1, no subdivision).
    pub fn new(
        vertices: Vec<Vertex>,
        legs: Vec<Leg>,
        edges: Vec<Edge>,
        base_rank: usize,
    ) -> Result<Self> {
        let nv = vertices.len();
        let ne = edges.len();
        let g = DecoratedGraph {
            vertices,
            legs,
            edges,
            base_rank,
            root_index: 1,
            subdivision: 1,
            original: vec![true; nv],
            segments: (0..ne)
                .map(|i| Segment {
                    parent: i,
                    position: 0,
                })
                .collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::input("vertices", "graph has no vertices"));
        }
        let mut seen = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if seen.insert(v.id, i).is_some() {
                return Err(Error::input(
                    format!("vertices[{i}].id"),
                    format!("duplicate vertex id {}", v.id),
                ));
            }
        }
        let nv = self.vertices.len();
        for (i, l) in self.legs.iter().enumerate() {
            if l.vertex >= nv {
                return Err(Error::input(format!("legs[{i}].vertex"), "unknown vertex"));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !edge_ids.insert(e.id) {
                return Err(Error::input(
                    format!("edges[{i}].id"),
                    format!("duplicate edge id {}", e.id),
                ));
            }
            if e.tail >= nv || e.head >= nv {
                return Err(Error::input(format!("edges[{i}]"), "unknown endpoint"));
            }
            if e.length.rank() != self.base_rank {
                return Err(Error::input(
                    format!("edges[{i}].length"),
                    format!("expected {} coordinates", self.base_rank),
                ));
            }
            if e.length.is_zero() || !e.length.is_nonnegative() {
                return Err(Error::input(
                    format!("edges[{i}].length"),
                    "length must be a nonzero element of the base monoid",
                ));
            }
            if e.length.scaled(self.root_index).is_none() {
                return Err(Error::input(
                    format!("edges[{i}].length"),
                    format!("denominator does not divide root index {}", self.root_index),
                ));
            }
        }
        if self.root_index < 1 {
            return Err(Error::input("root_index", "must be positive"));
        }
        self.spanning_tree()?;
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn h1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn total_genus(&self) -> usize {
        self.h1()
            + self
                .vertices
                .iter()
                .map(|v| v.genus as usize)
                .sum::<usize>()
    }

    /// Edge endpoints counted at each vertex; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn with_root_index(&self, rho: i64) -> Result<Self> {
        let mut g = self.clone();
        g.root_index = rho;
        g.validate()?;
        Ok(g)
    }

    /// Length of edge `e` in chart units (`root_index` times base units).
    pub fn chart_length(&self, e: usize) -> Vec<i64> {
        self.edges[e]
            .length
            .scaled(self.root_index)
            .expect("validated lengths are integral in chart units")
    }

    pub fn spanning_tree(&self) -> Result<SpanningTree> {
        let nv = self.n_vertices();
        let root = (0..nv)
            .min_by_key(|&i| self.vertices[i].id)
            .ok_or_else(|| Error::Structural("empty graph".into()))?;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        let mut parent = vec![None; nv];
        let mut depth = vec![0; nv];
        let mut visited = vec![false; nv];
        let mut in_tree = vec![false; self.n_edges()];
        let mut order = vec![root];
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some((v, e));
                    depth[w] = depth[v] + 1;
                    in_tree[e] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        if order.len() != nv {
            return Err(Error::Structural(format!(
                "graph is disconnected: {} of {} vertices reachable",
                order.len(),
                nv
            )));
        }
        Ok(SpanningTree {
            root,
            order,
            parent,
            in_tree,
            depth,
        })
    }

    /// Signed boundary of a cycle at each vertex.
    pub fn boundary(&self, c: &Cycle) -> Result<Vec<i64>> {
        self.check_cycle_len(c)?;
        let mut b = vec![0i64; self.n_vertices()];
        for (e, &k) in self.edges.iter().zip(&c.coeffs) {
            b[e.head] += k;
            b[e.tail] -= k;
        }
        Ok(b)
    }

    fn check_cycle_len(&self, c: &Cycle) -> Result<()> {
        if c.coeffs.len() != self.n_edges() {
            return Err(Error::Structural(format!(
                "cycle has {} coefficients, graph has {} edges",
                c.coeffs.len(),
                self.n_edges()
            )));
        }
        Ok(())
    }

    pub fn is_cycle(&self, c: &Cycle) -> bool {
        self.boundary(c).is_ok_and(|b| b.iter().all(|&x| x == 0))
    }

    /// One fundamental cycle per non-tree edge, in edge order.
    pub fn homology_basis(&self) -> Result<Vec<Cycle>> {
        let t = self.spanning_tree()?;
        let mut basis = Vec::new();
        for e in t.non_tree_edges() {
            let mut c = Cycle::zero(self.n_edges());
            c.coeffs[e] = 1;
            // close up from head back to tail through the tree
            let (mut a, mut b) = (self.edges[e].head, self.edges[e].tail);
            let mut tail_side = Vec::new();
            while a != b {
                if t.depth[a] >= t.depth[b] {
                    let (p, pe) = t.parent[a].expect("non-root");
                    // walking a -> p
                    c.coeffs[pe] += if self.edges[pe].tail == a { 1 } else { -1 };
                    a = p;
                } else {
                    let (p, pe) = t.parent[b].expect("non-root");
                    tail_side.push((p, b, pe));
                    b = p;
                }
            }
            // walk from the meeting point down to the tail
            for (p, w, pe) in tail_side {
                c.coeffs[pe] += if self.edges[pe].tail == p && self.edges[pe].head == w {
                    1
                } else {
                    -1
                };
            }
            basis.push(c);
        }
        Ok(basis)
    }

    /// Coordinates of a cycle against [`homology_basis`](Self::homology_basis):
    /// its coefficients on the non-tree edges.
    pub fn basis_coords(&self, c: &Cycle) -> Result<Vec<i64>> {
        if !self.is_cycle(c) {
            return Err(Error::Structural("not a cycle".into()));
        }
        let t = self.spanning_tree()?;
        Ok(t.non_tree_edges().iter().map(|&e| c.coeffs[e]).collect())
    }

    pub fn intersection_pairing(&self, c1: &Cycle, c2: &Cycle) -> Result<MonoidElement> {
        self.check_cycle_len(c1)?;
        self.check_cycle_len(c2)?;
        let mut out = MonoidElement::zero(self.base_rank);
        for (i, e) in self.edges.iter().enumerate() {
            let k = c1.coeffs[i] * c2.coeffs[i];
            if k != 0 {
                out = out.add(&e.length.scale_int(k));
            }
        }
        Ok(out)
    }

    /// Pairing in chart units, as integers.
    pub fn pairing_chart(&self, c1: &Cycle, c2: &Cycle) -> Result<Vec<i64>> {
        let p = self.intersection_pairing(c1, c2)?;
        Ok(p.scaled(self.root_index)
            .expect("chart pairing is integral"))
    }

    /// `Σ |c(e)| ℓ(e)`.
    pub fn cycle_length(&self, c: &Cycle) -> Result<MonoidElement> {
        self.check_cycle_len(c)?;
        let mut out = MonoidElement::zero(self.base_rank);
        for (e, &k) in self.edges.iter().zip(&c.coeffs) {
            out = out.add(&e.length.scale_int(k.abs()));
        }
        Ok(out)
    }

    /// For free base monoids "a bounded by b" reduces to
    /// `support(a) ⊆ support(b)`; `values[j]` belongs to basis cycle `j`.
    pub fn bounded_monodromy(&self, values: &[MonoidElement]) -> Result<bool> {
        let basis = self.homology_basis()?;
        if values.len() != basis.len() {
            return Err(Error::Structural(format!(
                "expected {} values, got {}",
                basis.len(),
                values.len()
            )));
        }
        for (c, a) in basis.iter().zip(values) {
            let b = self.cycle_length(c)?;
            if !a.support().is_subset(&b.support()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cuts every edge into a chain of `r` equal segments.
    ///
    /// New vertices get ids above the current maximum, edge by edge, in chain
    /// order from the tail. Segment `j` of edge `i` becomes edge `i·r + j`.
    pub fn subdivide(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::input("r", "must be positive"));
        }
        if r == 1 {
            return Ok(self.clone());
        }
        let mut vertices = self.vertices.clone();
        let mut original = self.original.clone();
        let mut next_id = self.vertices.iter().map(|v| v.id).max().unwrap_or(0) + 1;
        let mut edges = Vec::new();
        let mut segments = Vec::new();
        let mut next_edge_id = 0u32;
        let rq = Q::from_integer(r as i64);
        for (i, e) in self.edges.iter().enumerate() {
            let len = e.length.scale(rq.recip());
            let mut prev = e.tail;
            for j in 0..r {
                let next = if j + 1 == r {
                    e.head
                } else {
                    vertices.push(Vertex {
                        id: next_id,
                        genus: 0,
                    });
                    original.push(false);
                    next_id += 1;
                    vertices.len() - 1
                };
                edges.push(Edge {
                    id: next_edge_id,
                    tail: prev,
                    head: next,
                    length: len.clone(),
                });
                next_edge_id += 1;
                segments.push(Segment {
                    parent: self.segments[i].parent,
                    position: self.segments[i].position * r + j,
                });
                prev = next;
            }
        }
        let g = DecoratedGraph {
            vertices,
            legs: self.legs.clone(),
            edges,
            base_rank: self.base_rank,
            root_index: self.root_index * r as i64,
            subdivision: self.subdivision * r,
            original,
            segments,
        };
        g.validate()?;
        Ok(g)
    }

    /// Interior vertices of the chain replacing original edge `parent`, in
    /// order from its tail.
    pub fn chain(&self, parent: usize) -> Vec<usize> {
        let mut segs: Vec<(usize, usize)> = (0..self.n_edges())
            .filter(|&i| self.segments[i].parent == parent)
            .map(|i| (self.segments[i].position, i))
            .collect();
        segs.sort();
        segs.iter()
            .skip(1)
            .map(|&(_, i)| self.edges[i].tail)
            .collect()
    }

    /// Edges of the chain replacing `parent`, in order from its tail.
    pub fn chain_edges(&self, parent: usize) -> Vec<usize> {
        let mut segs: Vec<(usize, usize)> = (0..self.n_edges())
            .filter(|&i| self.segments[i].parent == parent)
            .map(|i| (self.segments[i].position, i))
            .collect();
        segs.sort();
        segs.into_iter().map(|(_, i)| i).collect()
    }

    pub fn n_original_edges(&self) -> usize {
        self.segments
            .iter()
            .map(|s| s.parent + 1)
            .max()
            .unwrap_or(0)
    }

    /// Inverse of [`subdivide`](Self::subdivide): merges each chain back into
    /// one edge. Edge ids are renumbered by position.
    pub fn contract_chains(&self) -> Result<Self> {
        if self.subdivision == 1 {
            return Ok(self.clone());
        }
        let r = self.subdivision as i64;
        let keep: Vec<usize> = (0..self.n_vertices())
            .filter(|&v| self.original[v])
            .collect();
        let mut new_index = vec![usize::MAX; self.n_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let mut edges = Vec::new();
        for p in 0..self.n_original_edges() {
            let chain = self.chain_edges(p);
            let first = &self.edges[chain[0]];
            let last = &self.edges[*chain.last().expect("nonempty chain")];
            let mut len = MonoidElement::zero(self.base_rank);
            for &c in &chain {
                len = len.add(&self.edges[c].length);
            }
            edges.push(Edge {
                id: p as u32,
                tail: new_index[first.tail],
                head: new_index[last.head],
                length: len,
            });
        }
        let legs = self
            .legs
            .iter()
            .map(|l| Leg {
                vertex: new_index[l.vertex],
                ..l.clone()
            })
            .collect();
        let nv = keep.len();
        let ne = edges.len();
        let g = DecoratedGraph {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            legs,
            edges,
            base_rank: self.base_rank,
            root_index: self.root_index / r,
            subdivision: 1,
            original: vec![true; nv],
            segments: (0..ne)
                .map(|i| Segment {
                    parent: i,
                    position: 0,
                })
                .collect(),
        };
        g.validate()?;
        Ok(g)
    }
}

// ---- JSON schema -------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: u32,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LegJson {
    pub i: u32,
    pub vertex: u32,
    #[serde(default)]
    pub twist: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: u32,
    pub from: u32,
    pub to: u32,
    pub length: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub legs: Vec<LegJson>,
    pub edges: Vec<EdgeJson>,
    pub base_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_index: Option<i64>,
}

impl GraphJson {
    pub fn into_graph(&self) -> Result<DecoratedGraph> {
        let index: HashMap<u32, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
        let lookup = |id: u32, path: String| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::input(path, format!("unknown vertex id {id}")))
        };
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id,
                genus: v.genus,
            })
            .collect();
        let mut legs = Vec::new();
        for (i, l) in self.legs.iter().enumerate() {
            legs.push(Leg {
                marking: l.i,
                vertex: lookup(l.vertex, format!("legs[{i}].vertex"))?,
                twist: l.twist,
            });
        }
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let mut coords = Vec::new();
            for (j, s) in e.length.iter().enumerate() {
                coords.push(parse_q(s).ok_or_else(|| {
                    Error::input(
                        format!("edges[{i}].length[{j}]"),
                        format!("`{s}` is not a rational \"p/q\""),
                    )
                })?);
            }
            edges.push(Edge {
                id: e.id,
                tail: lookup(e.from, format!("edges[{i}].from"))?,
                head: lookup(e.to, format!("edges[{i}].to"))?,
                length: MonoidElement { coords },
            });
        }
        let nv = self.vertices.len();
        let ne = edges.len();
        let g = DecoratedGraph {
            vertices,
            legs,
            edges,
            base_rank: self.base_rank,
            root_index: self.root_index.unwrap_or(1),
            subdivision: 1,
            original: vec![true; nv],
            segments: (0..ne)
                .map(|i| Segment {
                    parent: i,
                    position: 0,
                })
                .collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn from_graph(g: &DecoratedGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    genus: v.genus,
                })
                .collect(),
            legs: g
                .legs
                .iter()
                .map(|l| LegJson {
                    i: l.marking,
                    vertex: g.vertices[l.vertex].id,
                    twist: l.twist,
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id,
                    from: g.vertices[e.tail].id,
                    to: g.vertices[e.head].id,
                    length: e.length.to_strings(),
                })
                .collect(),
            base_rank: g.base_rank,
            root_index: (g.root_index != 1).then_some(g.root_index),
        }
    }
}

/// Lowest common multiple of denominators, handy for picking a root index.
pub fn common_denominator(xs: &[Q]) -> i64 {
    xs.iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// Small graphs used across tests and the CLI's self-checks.
pub mod samples {
    use super::*;

    fn len(v: &[i64]) -> MonoidElement {
        MonoidElement::from_ints(v)
    }

    fn vtx(n: usize) -> Vec<Vertex> {
        (0..n)
            .map(|i| Vertex {
                id: i as u32,
                genus: 0,
            })
            .collect()
    }

    fn edge(id: u32, tail: usize, head: usize, l: &[i64]) -> Edge {
        Edge {
            id,
            tail,
            head,
            length: len(l),
        }
    }

    /// One vertex with a loop of length `1 ∈ ℕ`.
    pub fn single_loop() -> DecoratedGraph {
        DecoratedGraph::new(vtx(1), vec![], vec![edge(0, 0, 0, &[1])], 1).unwrap()
    }

    /// Two vertices, three parallel edges with independent lengths.
    pub fn theta() -> DecoratedGraph {
        DecoratedGraph::new(
            vtx(2),
            vec![],
            vec![
                edge(0, 0, 1, &[1, 0, 0]),
                edge(1, 0, 1, &[0, 1, 0]),
                edge(2, 0, 1, &[0, 0, 1]),
            ],
            3,
        )
        .unwrap()
    }

    /// Two vertices joined by two edges.
    pub fn two_cycle() -> DecoratedGraph {
        DecoratedGraph::new(
            vtx(2),
            vec![],
            vec![edge(0, 0, 1, &[1, 0]), edge(1, 1, 0, &[0, 1])],
            2,
        )
        .unwrap()
    }

    /// One vertex with two loops.
    pub fn two_loops() -> DecoratedGraph {
        DecoratedGraph::new(
            vtx(1),
            vec![],
            vec![edge(0, 0, 0, &[1, 0]), edge(1, 0, 0, &[0, 1])],
            2,
        )
        .unwrap()
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> DecoratedGraph {
        let edges = (0..n.saturating_sub(1))
            .map(|i| {
                let mut l = vec![0; n - 1];
                l[i] = 1;
                edge(i as u32, i, i + 1, &l)
            })
            .collect();
        DecoratedGraph::new(vtx(n), vec![], edges, n.saturating_sub(1).max(1)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn loop_basis_and_pairing() {
        let g = single_loop();
        let b = g.homology_basis().unwrap();
        assert_eq!(b, vec![Cycle { coeffs: vec![1] }]);
        assert_eq!(
            g.intersection_pairing(&b[0], &b[0]).unwrap(),
            MonoidElement::from_ints(&[1])
        );
    }

    #[test]
    fn tree_has_empty_basis() {
        assert!(path(2).homology_basis().unwrap().is_empty());
    }

    #[test]
    fn theta_basis_and_pairing() {
        let g = theta();
        let b = g.homology_basis().unwrap();
        assert_eq!(b.len(), 2);
        // e1 is the tree edge; cycles run along e2, e3 and back along e1
        assert_eq!(b[0].coeffs, vec![-1, 1, 0]);
        assert_eq!(b[1].coeffs, vec![-1, 0, 1]);
        let g1 = Cycle {
            coeffs: vec![1, -1, 0],
        };
        let g2 = Cycle {
            coeffs: vec![0, 1, -1],
        };
        assert_eq!(
            g.intersection_pairing(&g1, &g2).unwrap(),
            MonoidElement::from_ints(&[0, -1, 0])
        );
        assert!(g
            .intersection_pairing(&g1, &Cycle::zero(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn disconnected_is_structural() {
        let err = DecoratedGraph::new(
            vec![Vertex { id: 0, genus: 0 }, Vertex { id: 1, genus: 0 }],
            vec![],
            vec![],
            1,
        )
        .unwrap_err();
        assert_eq!(err.kind(), "structural");
    }

    #[test]
    fn bounded_monodromy_support_rule() {
        let g = single_loop();
        assert!(g
            .bounded_monodromy(&[MonoidElement::from_ints(&[5])])
            .unwrap());
        assert!(g.bounded_monodromy(&[MonoidElement::zero(1)]).unwrap());
        let g2 = DecoratedGraph::new(
            vec![Vertex { id: 0, genus: 0 }],
            vec![],
            vec![Edge {
                id: 0,
                tail: 0,
                head: 0,
                length: MonoidElement::from_ints(&[1, 0]),
            }],
            2,
        )
        .unwrap();
        assert!(!g2
            .bounded_monodromy(&[MonoidElement::from_ints(&[0, 1])])
            .unwrap());
    }

    #[test]
    fn subdivision_counts() {
        let g = single_loop().subdivide(2).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.original, vec![true, false]);
        assert_eq!(g.edges[0].length.coords, vec![Q::new(1, 2)]);
        let t = theta().subdivide(3).unwrap();
        assert_eq!((t.n_vertices(), t.n_edges(), t.h1()), (8, 9, 2));
        assert_eq!(theta().subdivide(1).unwrap(), theta());
        assert_eq!(t.contract_chains().unwrap(), theta());
    }

    #[test]
    fn json_round_trip() {
        let g = theta();
        let j = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        let back: GraphJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.into_graph().unwrap(), g);
    }
}
