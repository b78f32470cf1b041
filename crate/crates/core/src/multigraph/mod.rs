//! Loopless multigraphs on at most 64 vertices.
//!
//! Parallel edges are stored as a multiplicity per vertex pair; every cut
//! and degree computation sums multiplicities.

mod canon;
mod enumerate;
pub(crate) mod family;
mod flow;
mod vertex_set;

pub use canon::{are_isomorphic, automorphisms, canonical_form, canonical_labeling, CanonicalForm};
pub use enumerate::{
    connected_multigraphs, connected_simple_graphs, enumerate_connected_multigraphs, enumerate_up_to, MultigraphStream,
    MAX_ENUM_MULT, MAX_ENUM_VERTICES,
};
pub use family::Family;
pub use flow::{max_flow, FlowCut};
pub(crate) use vertex_set::submasks;
pub use vertex_set::{VertexIter, VertexSet};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count a [`Multigraph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A non-negative integer extended with infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtNat {
    Finite(u32),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Infinite)
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinite) => Ordering::Less,
            (ExtNat::Infinite, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinite, ExtNat::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<u32> for ExtNat {
    fn eq(&self, other: &u32) -> bool {
        *self == ExtNat::Finite(*other)
    }
}

impl From<u32> for ExtNat {
    fn from(v: u32) -> Self {
        ExtNat::Finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u32(*v),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtNat::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(ExtNat::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// A finite loopless multigraph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    /// Dense multiplicity matrix, row-major.
    mult: Vec<u32>,
    nbrs: Vec<VertexSet>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeBound(format!(
                "{n} vertices exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        Ok(Multigraph {
            n,
            mult: vec![0; n * n],
            nbrs: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs
    /// accumulate; zero multiplicities are ignored.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v, m) in edges {
            g.add_edges(u, v, m)?;
        }
        Ok(g)
    }

    /// Builds a simple graph from an edge list.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn add_edges(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if m == 0 {
            return Ok(());
        }
        let cur = self.mult[u * self.n + v];
        self.set_multiplicity(u, v, cur + m);
        Ok(())
    }

    pub(crate) fn set_multiplicity(&mut self, u: usize, v: usize, m: u32) {
        let n = self.n;
        self.mult[u * n + v] = m;
        self.mult[v * n + u] = m;
        if m == 0 {
            self.nbrs[u].remove(v);
            self.nbrs[v].remove(u);
        } else {
            self.nbrs[u].insert(v);
            self.nbrs[v].insert(u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.nbrs[v]
    }

    /// Multiplicity-weighted degree.
    pub fn degree(&self, v: usize) -> u32 {
        self.mult[v * self.n..(v + 1) * self.n].iter().sum()
    }

    /// Bundles as `(u, v, multiplicity)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.nbrs[u].iter().filter(|&v| v > u) {
                out.push((u, v, self.multiplicity(u, v)));
            }
        }
        out
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u32 {
        self.mult.iter().sum::<u32>() / 2
    }

    /// Number of adjacent vertex pairs.
    pub fn bundle_count(&self) -> usize {
        self.nbrs.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Copy with one edge between `u` and `v` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Self> {
        let m = if u < self.n && v < self.n {
            self.multiplicity(u, v)
        } else {
            0
        };
        if m == 0 {
            return Err(Error::InvalidParameter(format!("no edge between {u} and {v}")));
        }
        let mut g = self.clone();
        g.set_multiplicity(u, v, m - 1);
        Ok(g)
    }

    /// Subgraph induced by `keep`, relabelled densely in increasing order.
    /// Returns the graph and the map from new to old labels.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Self, Vec<usize>) {
        let keep = keep.intersection(self.vertices());
        let map: Vec<usize> = keep.to_vec();
        let mut g = Multigraph::empty(map.len()).expect("subgraph is smaller");
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate().skip(i + 1) {
                let m = self.multiplicity(a, b);
                if m > 0 {
                    g.set_multiplicity(i, j, m);
                }
            }
        }
        (g, map)
    }

    /// Copy with vertex `v` and its incident edges deleted; later labels shift down.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        Ok(self.induced_subgraph(self.vertices().without(v)).0)
    }

    /// Copy with vertices renamed by `perm` (old label `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Multigraph::empty(self.n).unwrap();
        for (u, v, m) in self.edges() {
            g.set_multiplicity(perm[u], perm[v], m);
        }
        g
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.nbrs[v]);
            }
            next = next.intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether `s` is nonempty and induces a connected subgraph.
    pub fn is_connected_subset(&self, s: VertexSet) -> bool {
        match s.min() {
            None => false,
            Some(v) => self.reach(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.is_connected_subset(self.vertices())
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.min() {
            let c = self.reach(v, left);
            out.push(c);
            left = left.difference(c);
        }
        out
    }

    /// Connected and with exactly `n - 1` edges (counted with multiplicity).
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() as usize == self.n - 1
    }

    /// Number of edges with exactly one endpoint in `a`.
    pub fn cut_size(&self, a: VertexSet) -> u32 {
        let mut total = 0;
        for u in a.iter() {
            for v in self.nbrs[u].difference(a).iter() {
                total += self.multiplicity(u, v);
            }
        }
        total
    }

    /// Edges between disjoint sets `a` and `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> u32 {
        let mut total = 0;
        for u in a.iter() {
            for v in self.nbrs[u].intersection(b).iter() {
                total += self.multiplicity(u, v);
            }
        }
        total
    }

    /// Edges with both endpoints in `a`.
    pub fn internal_edges(&self, a: VertexSet) -> u32 {
        let mut total = 0;
        for u in a.iter() {
            for v in self.nbrs[u].intersection(a).iter().filter(|&v| v > u) {
                total += self.multiplicity(u, v);
            }
        }
        total
    }

    /// Edge connectivity λ: the minimum number of edges whose deletion
    /// disconnects the graph. Zero for disconnected graphs, infinite for a
    /// single vertex. Computed with Stoer–Wagner.
    pub fn edge_connectivity(&self) -> ExtNat {
        if self.n <= 1 {
            return ExtNat::Infinite;
        }
        if !self.is_connected() {
            return ExtNat::Finite(0);
        }
        ExtNat::Finite(stoer_wagner(self))
    }

    /// λ₂: the fewest edges whose deletion leaves exactly two connected
    /// components with at least two vertices each. Infinite when no such
    /// split exists. Exhaustive over bipartitions, so only for small graphs.
    pub fn lambda2(&self) -> ExtNat {
        let mut best = ExtNat::Infinite;
        for (a, cut) in self.connected_bipartitions() {
            let b = self.vertices().difference(a);
            if a.len() >= 2 && b.len() >= 2 && ExtNat::Finite(cut) < best {
                best = ExtNat::Finite(cut);
            }
        }
        best
    }

    /// Unordered bipartitions `{A, V∖A}` with both sides nonempty and
    /// connected, reported as `(A, |∂A|)` with vertex 0 in `A`.
    pub fn connected_bipartitions(&self) -> Vec<(VertexSet, u32)> {
        if self.n < 2 {
            return Vec::new();
        }
        let all = self.vertices();
        self.connected_subsets()
            .into_iter()
            .filter(|a| a.contains(0) && *a != all)
            .filter(|a| self.is_connected_subset(all.difference(*a)))
            .map(|a| (a, self.cut_size(a)))
            .collect()
    }

    /// Independence number α, by branch and bound.
    pub fn independence_number(&self) -> usize {
        fn mis(g: &Multigraph, p: VertexSet) -> usize {
            let Some(v) = p.iter().max_by_key(|&v| g.nbrs[v].intersection(p).len()) else {
                return 0;
            };
            let nv = g.nbrs[v].intersection(p);
            if nv.is_empty() {
                // p is independent
                return p.len();
            }
            let skip = mis(g, p.without(v));
            let take = 1 + mis(g, p.difference(nv).without(v));
            skip.max(take)
        }
        mis(self, self.vertices())
    }

    /// Multiplicity-one edges whose deletion increases the number of
    /// components. Parallel bundles are never bridges.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let base = self.components().len();
        self.edges()
            .into_iter()
            .filter(|&(_, _, m)| m == 1)
            .filter(|&(u, v, _)| {
                let mut g = self.clone();
                g.set_multiplicity(u, v, 0);
                g.components().len() > base
            })
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// All nonempty vertex sets inducing a connected subgraph, sorted by
    /// size and then by bit value.
    ///
    /// Each set is generated once by extending from its smallest vertex
    /// through exclusive neighbourhoods, so the cost is proportional to
    /// the output.
    pub fn connected_subsets(&self) -> Vec<VertexSet> {
        fn extend(
            g: &Multigraph,
            root: usize,
            set: VertexSet,
            nbhd: VertexSet,
            mut ext: VertexSet,
            out: &mut Vec<VertexSet>,
        ) {
            out.push(set);
            while let Some(w) = ext.min() {
                ext.remove(w);
                let excl = g.nbrs[w].difference(set).difference(nbhd);
                let above = excl.intersection(strictly_above(root));
                extend(g, root, set.with(w), nbhd.union(g.nbrs[w]), ext.union(above), out);
            }
        }
        let mut out = Vec::new();
        for v in 0..self.n {
            let above = self.nbrs[v].intersection(strictly_above(v));
            extend(self, v, VertexSet::singleton(v), self.nbrs[v].with(v), above, &mut out);
        }
        out.sort_by_key(|s| (s.len(), s.bits()));
        out
    }

    /// Simple graph on the same vertices with every bundle collapsed to one edge.
    pub fn underlying_simple(&self) -> Self {
        let mut g = Multigraph::empty(self.n).unwrap();
        for (u, v, _) in self.edges() {
            g.set_multiplicity(u, v, 1);
        }
        g
    }
}

fn strictly_above(v: usize) -> VertexSet {
    if v >= 63 {
        VertexSet::EMPTY
    } else {
        VertexSet(!((1u64 << (v + 1)) - 1))
    }
}

fn stoer_wagner(g: &Multigraph) -> u32 {
    let n = g.n();
    let mut w: Vec<Vec<u64>> = (0..n)
        .map(|u| (0..n).map(|v| g.multiplicity(u, v) as u64).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0u64; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let sel = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by_key(|&&v| (key[v], std::cmp::Reverse(v)))
                .unwrap();
            added[sel] = true;
            if step == active.len() - 1 {
                best = best.min(key[sel]);
                prev = last;
                last = sel;
                break;
            }
            prev = last;
            last = sel;
            for &v in &active {
                if !added[v] {
                    key[v] += w[sel][v];
                }
            }
        }
        // merge `last` into `prev`
        for &v in &active {
            if v != prev && v != last {
                w[prev][v] += w[last][v];
                w[v][prev] = w[prev][v];
            }
        }
        active.retain(|&v| v != last);
    }
    best as u32
}
