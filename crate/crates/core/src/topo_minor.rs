//! Smoothing, multi-smoothing and topological-minor containment.
//!
//! `H ⪯ G` is decided by searching for a subdivision embedding: distinct
//! branch vertices in `G` for the vertices of `H`, and for every edge of `H`
//! (each parallel copy separately) a path in `G` between the two branch
//! vertices. Path interiors avoid all branch vertices and each other.

use crate::error::{Error, Result};
use crate::multigraph::{canonical_form, CanonicalForm, Multigraph, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

/// Host size accepted by [`is_multi_topological_minor`].
pub const MAX_MULTI_MINOR_VERTICES: usize = 10;
/// State budget of the multi-minor closure search.
pub const MAX_MULTI_MINOR_STATES: usize = 1_000_000;

/// Interior vertices of a candidate path, and the path itself.
type Candidate = (VertexSet, Vec<usize>);

/// Smooths over `v`: requires exactly two incident edges going to two
/// different neighbours, which become joined by one more edge.
pub fn smooth(g: &Multigraph, v: usize) -> Result<Multigraph> {
    if v >= g.n() {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
    }
    if g.degree(v) != 2 {
        return Err(Error::InvalidParameter(format!(
            "vertex {v} has degree {}, smoothing needs degree 2",
            g.degree(v)
        )));
    }
    let nb = g.neighbors(v).to_vec();
    if nb.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "both edges at vertex {v} go to the same neighbour"
        )));
    }
    join_and_remove(g, v, nb[0], nb[1], 1)
}

/// Multi-smoothing at `u`: `u` must have exactly two neighbours `v`, `w`,
/// joined to it by `m` and `n` edges; `u` is removed and `min(m, n)` edges
/// are added between `v` and `w`.
pub fn multi_smooth(g: &Multigraph, u: usize) -> Result<Multigraph> {
    if u >= g.n() {
        return Err(Error::InvalidParameter(format!("vertex {u} out of range")));
    }
    let nb = g.neighbors(u).to_vec();
    if nb.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "vertex {u} has {} distinct neighbours, multi-smoothing needs 2",
            nb.len()
        )));
    }
    let add = g.multiplicity(u, nb[0]).min(g.multiplicity(u, nb[1]));
    join_and_remove(g, u, nb[0], nb[1], add)
}

fn join_and_remove(g: &Multigraph, u: usize, a: usize, b: usize, add: u32) -> Result<Multigraph> {
    let mut h = g.clone();
    h.add_edges(a, b, add)?;
    h.remove_vertex(u)
}

/// One `G`-path realising one copy of an edge of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    /// Endpoints in `H`, smaller first.
    pub edge: (usize, usize),
    /// Which parallel copy, counting from 0.
    pub copy: u32,
    /// Vertices of `G` from the image of `edge.0` to the image of `edge.1`.
    pub path: Vec<usize>,
}

/// A subdivision embedding of `H` into `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingModel {
    /// `branch_map[x]` is the `G`-vertex standing for `x`.
    pub branch_map: Vec<usize>,
    pub path_map: Vec<EdgePath>,
}

impl EmbeddingModel {
    /// Checks the embedding from scratch.
    pub fn verify(&self, h: &Multigraph, g: &Multigraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("embedding: {msg}")));
        if self.branch_map.len() != h.n() {
            return bad(format!(
                "{} branch vertices for {} pattern vertices",
                self.branch_map.len(),
                h.n()
            ));
        }
        let mut images = VertexSet::EMPTY;
        for &b in &self.branch_map {
            if b >= g.n() {
                return bad(format!("branch vertex {b} is not in the host"));
            }
            if images.contains(b) {
                return bad(format!("branch vertex {b} is used twice"));
            }
            images.insert(b);
        }
        let mut expected: Vec<(usize, usize, u32)> = h
            .edges()
            .into_iter()
            .flat_map(|(u, v, m)| (0..m).map(move |c| (u, v, c)))
            .collect();
        let mut got: Vec<(usize, usize, u32)> = self.path_map.iter().map(|p| (p.edge.0, p.edge.1, p.copy)).collect();
        expected.sort();
        got.sort();
        if expected != got {
            return bad("paths do not match the pattern's edges one to one".into());
        }
        let mut interiors = VertexSet::EMPTY;
        let mut direct = std::collections::HashMap::new();
        for p in &self.path_map {
            let (x, y) = p.edge;
            let path = &p.path;
            if path.len() < 2 || path[0] != self.branch_map[x] || path[path.len() - 1] != self.branch_map[y] {
                return bad(format!("path for {x}-{y} has wrong ends"));
            }
            for w in path.windows(2) {
                if w[0] >= g.n() || w[1] >= g.n() || g.multiplicity(w[0], w[1]) == 0 {
                    return bad(format!("path for {x}-{y} uses a missing edge"));
                }
            }
            for &v in &path[1..path.len() - 1] {
                if images.contains(v) || interiors.contains(v) {
                    return bad(format!("vertex {v} is used twice"));
                }
                interiors.insert(v);
            }
            if path.len() == 2 {
                let key = (path[0].min(path[1]), path[0].max(path[1]));
                *direct.entry(key).or_insert(0u32) += 1;
            }
        }
        for (&(a, b), &used) in &direct {
            if used > g.multiplicity(a, b) {
                return bad(format!(
                    "{used} paths share the {} edges between {a} and {b}",
                    g.multiplicity(a, b)
                ));
            }
        }
        Ok(())
    }
}

/// Searches for a subdivision embedding of `h` into `g`.
///
/// Branch vertices are placed in decreasing order of degree, each onto a
/// host vertex of at least the same weighted degree. Paths are then packed
/// bundle by bundle, always taking the bundle with the fewest candidate
/// paths next.
pub fn is_topological_minor(h: &Multigraph, g: &Multigraph) -> Option<EmbeddingModel> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return None;
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(h.degree(x)), x));
    let mut host_degrees: Vec<u32> = (0..g.n()).map(|v| g.degree(v)).collect();
    host_degrees.sort_unstable_by(|a, b| b.cmp(a));
    if order.iter().zip(&host_degrees).any(|(&x, &d)| h.degree(x) > d) {
        return None;
    }
    let mut search = Search {
        h,
        g,
        order,
        branch: vec![usize::MAX; h.n()],
        bundles: h.edges(),
    };
    search.place(0, VertexSet::EMPTY)
}

struct Search<'a> {
    h: &'a Multigraph,
    g: &'a Multigraph,
    order: Vec<usize>,
    branch: Vec<usize>,
    bundles: Vec<(usize, usize, u32)>,
}

impl Search<'_> {
    fn place(&mut self, i: usize, used: VertexSet) -> Option<EmbeddingModel> {
        if i == self.order.len() {
            let mut paths = Vec::new();
            let pending: Vec<usize> = (0..self.bundles.len()).collect();
            if self.pack(&pending, used, &mut paths) {
                return Some(EmbeddingModel {
                    branch_map: self.branch.clone(),
                    path_map: paths,
                });
            }
            return None;
        }
        let x = self.order[i];
        for v in 0..self.g.n() {
            if used.contains(v) || self.g.degree(v) < self.h.degree(x) {
                continue;
            }
            self.branch[x] = v;
            if let Some(m) = self.place(i + 1, used.with(v)) {
                return Some(m);
            }
        }
        self.branch[x] = usize::MAX;
        None
    }

    /// Simple paths between the images of bundle `b`'s ends whose interior
    /// avoids `blocked`; a direct edge comes first when present.
    fn candidates(&self, b: usize, blocked: VertexSet) -> Vec<Candidate> {
        let (x, y, _) = self.bundles[b];
        let (s, t) = (self.branch[x], self.branch[y]);
        let mut out = Vec::new();
        if self.g.multiplicity(s, t) > 0 {
            out.push((VertexSet::EMPTY, vec![s, t]));
        }
        let free = self.g.vertices().difference(blocked);
        let mut path = vec![s];
        self.extend_paths(t, free, VertexSet::EMPTY, &mut path, &mut out);
        out
    }

    fn extend_paths(
        &self,
        t: usize,
        free: VertexSet,
        interior: VertexSet,
        path: &mut Vec<usize>,
        out: &mut Vec<Candidate>,
    ) {
        let last = *path.last().unwrap();
        for w in self.g.neighbors(last).intersection(free).difference(interior).iter() {
            path.push(w);
            let inner = interior.with(w);
            if self.g.multiplicity(w, t) > 0 {
                let mut p = path.clone();
                p.push(t);
                out.push((inner, p));
            }
            self.extend_paths(t, free, inner, path, out);
            path.pop();
        }
    }

    fn pack(&self, pending: &[usize], blocked: VertexSet, paths: &mut Vec<EdgePath>) -> bool {
        if pending.is_empty() {
            return true;
        }
        let mut best: Option<(usize, Vec<Candidate>)> = None;
        for (i, &b) in pending.iter().enumerate() {
            let cands = self.candidates(b, blocked);
            let need = self.bundles[b].2 as usize;
            let (x, y, _) = self.bundles[b];
            let direct = self.g.multiplicity(self.branch[x], self.branch[y]) as usize;
            let capacity = cands.len() + if direct > 0 { direct - 1 } else { 0 };
            if capacity < need {
                return false;
            }
            if best.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                best = Some((i, cands));
            }
        }
        let (i, cands) = best.unwrap();
        let b = pending[i];
        let rest: Vec<usize> = pending.iter().copied().filter(|&c| c != b).collect();
        let (x, y, need) = self.bundles[b];
        let direct = self.g.multiplicity(self.branch[x], self.branch[y]);
        let mut chosen = Vec::new();
        self.choose(b, &cands, 0, need, direct, blocked, &rest, &mut chosen, paths)
    }

    /// Picks `need` pairwise interior-disjoint candidates with
    /// non-decreasing index; the direct edge may repeat up to `direct` times.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        b: usize,
        cands: &[(VertexSet, Vec<usize>)],
        from: usize,
        need: u32,
        direct: u32,
        blocked: VertexSet,
        rest: &[usize],
        chosen: &mut Vec<usize>,
        paths: &mut Vec<EdgePath>,
    ) -> bool {
        if need == 0 {
            let before = paths.len();
            let (x, y, _) = self.bundles[b];
            for (c, &j) in chosen.iter().enumerate() {
                paths.push(EdgePath {
                    edge: (x, y),
                    copy: c as u32,
                    path: cands[j].1.clone(),
                });
            }
            if self.pack(rest, blocked, paths) {
                return true;
            }
            paths.truncate(before);
            return false;
        }
        for j in from..cands.len() {
            let (interior, _) = &cands[j];
            if interior.is_empty() {
                if direct == 0 {
                    continue;
                }
                chosen.push(j);
                if self.choose(b, cands, j, need - 1, direct - 1, blocked, rest, chosen, paths) {
                    return true;
                }
                chosen.pop();
            } else if interior.is_disjoint(blocked) {
                chosen.push(j);
                if self.choose(
                    b,
                    cands,
                    j + 1,
                    need - 1,
                    direct,
                    blocked.union(*interior),
                    rest,
                    chosen,
                    paths,
                ) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// Decides whether `h` arises from `g` by deleting vertices and edges and
/// multi-smoothing, by breadth-first search over isomorphism classes.
///
/// Only connected intermediate graphs are kept: the surviving vertices of a
/// connected `h` stay inside one component throughout, and every operation
/// outside that component can be dropped.
pub fn is_multi_topological_minor(h: &Multigraph, g: &Multigraph) -> Result<bool> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let target = canonical_form(h);
    let mut found = false;
    closure(g, h.n(), h.edge_count(), |cur| {
        found = cur.n() == h.n() && cur.edge_count() == h.edge_count() && canonical_form(cur) == target;
        !found
    })?;
    Ok(found)
}

/// Every connected multi-topological minor of the connected graph `g`,
/// one per isomorphism class, `g` itself first.
pub fn multi_topological_minors(g: &Multigraph) -> Result<Vec<Multigraph>> {
    let mut out = Vec::new();
    closure(g, 1, 0, |cur| {
        out.push(cur.clone());
        true
    })?;
    Ok(out)
}

/// Breadth-first walk over the connected multi-minors of `g` with at least
/// `min_n` vertices and `min_edges` edges; stops when `visit` returns false.
fn closure(g: &Multigraph, min_n: usize, min_edges: u32, mut visit: impl FnMut(&Multigraph) -> bool) -> Result<()> {
    if g.n() > MAX_MULTI_MINOR_VERTICES {
        return Err(Error::SizeBound(format!(
            "multi-minor search supports hosts up to {MAX_MULTI_MINOR_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        if !visit(&cur) {
            return Ok(());
        }
        for next in multi_minor_steps(&cur) {
            if next.n() < min_n || next.edge_count() < min_edges {
                continue;
            }
            if seen.insert(canonical_form(&next)) {
                if seen.len() > MAX_MULTI_MINOR_STATES {
                    return Err(Error::SizeBound(format!(
                        "multi-minor search exceeded {MAX_MULTI_MINOR_STATES} states"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(())
}

/// Connected graphs one operation away from `g`.
fn multi_minor_steps(g: &Multigraph) -> Vec<Multigraph> {
    let mut out = Vec::new();
    let mut push_parts = |x: Multigraph| {
        if x.n() == 0 {
            return;
        }
        let comps = x.components();
        if comps.len() == 1 {
            out.push(x);
        } else {
            for c in comps {
                out.push(x.induced_subgraph(c).0);
            }
        }
    };
    for (u, v, _) in g.edges() {
        push_parts(g.remove_edge(u, v).expect("edge exists"));
    }
    for v in 0..g.n() {
        push_parts(g.remove_vertex(v).expect("vertex exists"));
        if g.neighbors(v).len() == 2 {
            push_parts(multi_smooth(g, v).expect("two neighbours"));
        }
    }
    out
}
