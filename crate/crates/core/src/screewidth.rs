//! Tree-cut decompositions and screewidth.
//!
//! Tree vertices are called nodes and tree edges links, to keep them apart
//! from the vertices and edges of the decomposed graph.

use crate::error::{Error, Result};
use crate::multigraph::family::tilde_bundles;
use crate::multigraph::{submasks, Family, Multigraph, VertexSet};

/// Screewidth is computed exactly up to this many vertices.
pub const MAX_SCW_VERTICES: usize = 12;

/// A tree on nodes `0..bags.len()` with one bag per node. The bags form a
/// near partition of the graph's vertices: pairwise disjoint, possibly
/// empty, covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCutDecomposition {
    pub links: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
}

impl TreeCutDecomposition {
    pub fn new(links: Vec<(usize, usize)>, bags: Vec<VertexSet>) -> Self {
        TreeCutDecomposition { links, bags }
    }

    /// Single node holding every vertex.
    pub fn trivial(g: &Multigraph) -> Self {
        TreeCutDecomposition {
            links: vec![],
            bags: vec![g.vertices()],
        }
    }

    /// Path of nodes with the given bags in order.
    pub fn path(bags: Vec<VertexSet>) -> Self {
        let links = (1..bags.len()).map(|i| (i - 1, i)).collect();
        TreeCutDecomposition { links, bags }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.links {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks the tree structure and the near-partition property against `g`.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        let m = self.bags.len();
        if m == 0 {
            return Err(Error::InvalidDecomposition("tree has no nodes".into()));
        }
        for &(a, b) in &self.links {
            if a >= m || b >= m {
                return Err(Error::InvalidDecomposition(format!(
                    "link ({a}, {b}) names a missing node"
                )));
            }
            if a == b {
                return Err(Error::InvalidDecomposition(format!("link ({a}, {a}) is a loop")));
            }
        }
        if self.links.len() != m - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{} links on {m} nodes cannot form a tree",
                self.links.len()
            )));
        }
        let adj = self.neighbors();
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidDecomposition("tree is disconnected".into()));
        }
        let mut covered = VertexSet::EMPTY;
        for (i, &bag) in self.bags.iter().enumerate() {
            if !bag.is_subset(g.vertices()) {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} has vertices outside the graph"
                )));
            }
            if covered.intersects(bag) {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} overlaps an earlier bag in {:?}",
                    covered.intersection(bag)
                )));
            }
            covered = covered.union(bag);
        }
        if covered != g.vertices() {
            return Err(Error::InvalidDecomposition(format!(
                "vertices {:?} are in no bag",
                g.vertices().difference(covered)
            )));
        }
        Ok(())
    }

    /// Union of bags over the nodes reachable from `start` without entering `blocked`.
    fn side(&self, adj: &[Vec<usize>], start: usize, blocked: usize) -> VertexSet {
        let mut seen = vec![false; self.bags.len()];
        seen[blocked] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = VertexSet::EMPTY;
        while let Some(x) = stack.pop() {
            out = out.union(self.bags[x]);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }

    /// Edges of `g` whose endpoints lie on opposite sides of link `l`.
    pub fn link_adhesion(&self, g: &Multigraph, l: usize) -> Result<Vec<(usize, usize, u32)>> {
        self.validate(g)?;
        let &(a, b) = self
            .links
            .get(l)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown link {l}")))?;
        let side = self.side(&self.neighbors(), a, b);
        Ok(g.edges()
            .into_iter()
            .filter(|&(u, v, _)| side.contains(u) != side.contains(v))
            .collect())
    }

    /// Edges of `g` joining the vertex sets of two different components of
    /// the tree minus node `b`. Empty for leaves.
    pub fn node_adhesion(&self, g: &Multigraph, b: usize) -> Result<Vec<(usize, usize, u32)>> {
        self.validate(g)?;
        if b >= self.bags.len() {
            return Err(Error::InvalidParameter(format!("unknown node {b}")));
        }
        Ok(self.node_adhesion_unchecked(g, &self.neighbors(), b))
    }

    fn node_adhesion_unchecked(&self, g: &Multigraph, adj: &[Vec<usize>], b: usize) -> Vec<(usize, usize, u32)> {
        if adj[b].len() < 2 {
            return Vec::new();
        }
        let mut label = vec![usize::MAX; g.n()];
        for (i, &c) in adj[b].iter().enumerate() {
            for v in self.side(adj, c, b).iter() {
                label[v] = i;
            }
        }
        g.edges()
            .into_iter()
            .filter(|&(u, v, _)| label[u] != usize::MAX && label[v] != usize::MAX && label[u] != label[v])
            .collect()
    }

    /// Width: the larger of the maximum link adhesion and the maximum over
    /// nodes of node adhesion plus bag size.
    pub fn width(&self, g: &Multigraph) -> Result<u32> {
        self.validate(g)?;
        let adj = self.neighbors();
        let count = |es: Vec<(usize, usize, u32)>| es.iter().map(|e| e.2).sum::<u32>();
        let mut w = 0;
        for &(a, b) in &self.links {
            let side = self.side(&adj, a, b);
            w = w.max(g.cut_size(side));
        }
        for b in 0..self.bags.len() {
            let adh = count(self.node_adhesion_unchecked(g, &adj, b));
            w = w.max(adh + self.bags[b].len() as u32);
        }
        Ok(w)
    }

    /// Joins two decompositions by a new link between `left_node` and
    /// `right_node`. Node indices of `right` are shifted past `left`'s.
    pub(crate) fn join(left: &Self, left_node: usize, right: &Self, right_node: usize) -> Self {
        let off = left.bags.len();
        let mut links = left.links.clone();
        links.extend(right.links.iter().map(|&(a, b)| (a + off, b + off)));
        links.push((left_node, right_node + off));
        let mut bags = left.bags.clone();
        bags.extend(right.bags.iter().copied());
        TreeCutDecomposition { links, bags }
    }

    /// Renames graph vertices through `map` (`map[v]` is the new label of `v`).
    pub(crate) fn map_vertices(&self, map: &[usize]) -> Self {
        TreeCutDecomposition {
            links: self.links.clone(),
            bags: self.bags.iter().map(|b| b.iter().map(|v| map[v]).collect()).collect(),
        }
    }

    /// Node whose bag contains `v`.
    pub fn node_of(&self, v: usize) -> Option<usize> {
        self.bags.iter().position(|b| b.contains(v))
    }
}

/// Exact screewidth with an optimal decomposition.
///
/// Roots every decomposition at a node and works over vertex subsets: a
/// subset `Y` is *feasible* at width `w` when some subtree hanging from a
/// link with adhesion `∂Y ≤ w` can hold exactly `Y`. Its root bag `X ⊆ Y`
/// splits the rest into feasible children `Z_1..Z_p`, and the root's
/// adhesion plus bag size equals
/// `|X| + E(G - X) - E(V∖Y) - Σ E(Z_i)`, with `E(S)` the edges inside `S`.
/// So only the partition of `Y∖X` maximising `Σ E(Z_i)` matters, which a
/// subset-partition table supplies. Nodes with an empty bag and a single
/// child, and subtrees with no vertices, never lower the width and are
/// excluded, so every produced tree has fewer than `2|V|` nodes.
pub fn screewidth_exact(g: &Multigraph) -> Result<(u32, TreeCutDecomposition)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if n > MAX_SCW_VERTICES {
        return Err(Error::SizeBound(format!(
            "screewidth is exact up to {MAX_SCW_VERTICES} vertices, got {n}"
        )));
    }
    let tables = Tables::new(g);
    for w in 1..=n as u32 {
        if let Some(d) = tables.solve(w) {
            debug_assert_eq!(d.width(g).unwrap(), w);
            return Ok((w, d));
        }
    }
    unreachable!("the one-node decomposition has width |V|")
}

struct Tables {
    n: usize,
    internal: Vec<i64>,
    cut: Vec<u32>,
    by_size: Vec<u64>,
}

struct Solution {
    feasible: Vec<bool>,
    bag: Vec<u64>,
    best: Vec<i64>,
    best_single: Vec<bool>,
    best2: Vec<i64>,
    best2_first: Vec<u64>,
}

impl Tables {
    fn new(g: &Multigraph) -> Self {
        let n = g.n();
        let size = 1usize << n;
        let mut internal = vec![0i64; size];
        let mut cut = vec![0u32; size];
        for y in 1..size as u64 {
            let v = y.trailing_zeros() as usize;
            let rest = y & (y - 1);
            internal[y as usize] =
                internal[rest as usize] + g.edges_between(VertexSet::singleton(v), VertexSet(rest)) as i64;
            cut[y as usize] = g.cut_size(VertexSet(y));
        }
        let mut by_size: Vec<u64> = (1..size as u64).collect();
        by_size.sort_by_key(|y| (y.count_ones(), *y));
        Tables {
            n,
            internal,
            cut,
            by_size,
        }
    }

    fn solve(&self, w: u32) -> Option<TreeCutDecomposition> {
        let size = 1usize << self.n;
        let full = (size - 1) as u64;
        let mut s = Solution {
            feasible: vec![false; size],
            bag: vec![0; size],
            best: vec![-1; size],
            best_single: vec![false; size],
            best2: vec![-1; size],
            best2_first: vec![0; size],
        };
        s.best[0] = 0;
        for &y in &self.by_size {
            let yi = y as usize;
            let low = y & y.wrapping_neg();
            // partitions of y into at least two feasible blocks
            for z in submasks(y & !low) {
                let z = z | low;
                if z == y || !s.feasible[z as usize] {
                    continue;
                }
                let rest = s.best[(y & !z) as usize];
                if rest < 0 {
                    continue;
                }
                let cand = self.internal[z as usize] + rest;
                if cand > s.best2[yi] {
                    s.best2[yi] = cand;
                    s.best2_first[yi] = z;
                }
            }
            if self.cut[yi] <= w {
                let outside = self.internal[(full & !y) as usize];
                for x in submasks(y) {
                    let blocks = if x == 0 { s.best2[yi] } else { s.best[(y & !x) as usize] };
                    if blocks < 0 {
                        continue;
                    }
                    let cost = x.count_ones() as i64 + self.internal[(full & !x) as usize] - outside - blocks;
                    if cost <= w as i64 {
                        s.feasible[yi] = true;
                        s.bag[yi] = x;
                        break;
                    }
                }
            }
            s.best[yi] = s.best2[yi];
            if s.feasible[yi] && self.internal[yi] >= s.best[yi] {
                s.best[yi] = self.internal[yi];
                s.best_single[yi] = true;
            }
        }
        if !s.feasible[full as usize] {
            return None;
        }
        let mut d = TreeCutDecomposition::new(vec![], vec![]);
        build(&s, full, None, &mut d);
        Some(d)
    }
}

fn partition_best(s: &Solution, mut r: u64, out: &mut Vec<u64>) {
    while r != 0 {
        if s.best_single[r as usize] {
            out.push(r);
            return;
        }
        let z = s.best2_first[r as usize];
        out.push(z);
        r &= !z;
    }
}

fn build(s: &Solution, y: u64, parent: Option<usize>, d: &mut TreeCutDecomposition) {
    let node = d.bags.len();
    let x = s.bag[y as usize];
    d.bags.push(VertexSet(x));
    if let Some(p) = parent {
        d.links.push((p, node));
    }
    let mut blocks = Vec::new();
    if x == 0 {
        let z = s.best2_first[y as usize];
        blocks.push(z);
        partition_best(s, y & !z, &mut blocks);
    } else {
        partition_best(s, y & !x, &mut blocks);
    }
    for z in blocks {
        build(s, z, Some(node), d);
    }
}

/// The path decompositions used to bound the screewidth of `C_{n;k} - e`
/// and `C̃_{n;k} - e`, where `e` is one edge of bundle `bundle` (joining
/// vertices `bundle` and `bundle + 1 mod n`). Returns the edge-deleted graph
/// and its decomposition.
///
/// * `C_{n;k}` and the `k`-bundles of `C̃_{n;k}`: singleton bags along the
///   cycle, starting just after the deleted bundle. Width `2k - 1` for
///   `C_{n;k}` and at most `2k` for `C̃_{n;k}`.
/// * a `(k+1)`-bundle of `C̃_{n;k}`, after reflecting so that the bundle
///   index `j` satisfies `k ≤ j < 2k`: bags `{0..=j}`, `{j+1..=2k}`, then
///   singletons `2k+1, ..., n-1`. Width at most `2k`.
pub fn canonical_decomposition(family: Family, bundle: usize) -> Result<(Multigraph, TreeCutDecomposition)> {
    let g = family.build()?;
    let n = g.n();
    if bundle >= n {
        return Err(Error::InvalidParameter(format!(
            "bundle {bundle} is outside the {n} bundles of {}",
            family.name()
        )));
    }
    let h = g.remove_edge(bundle, (bundle + 1) % n)?;
    let cyclic_path =
        |start: usize| TreeCutDecomposition::path((0..n).map(|i| VertexSet::singleton((start + i) % n)).collect());
    let d = match family {
        Family::MultiCycle { .. } => cyclic_path(bundle + 1),
        Family::TildeCycle { k, .. } => {
            let k = k as usize;
            debug_assert_eq!(
                tilde_bundles(n, k as u32)[bundle] as usize,
                if bundle < 2 * k { k + 1 } else { k }
            );
            if bundle >= 2 * k {
                cyclic_path(bundle + 1)
            } else {
                // v -> 2k - v (mod n) maps the heavy arc onto itself and
                // bundle j onto bundle 2k - 1 - j
                let reflect: Vec<usize> = (0..n).map(|v| (2 * k + n - v) % n).collect();
                let (j, map) = if bundle >= k {
                    (bundle, (0..n).collect::<Vec<_>>())
                } else {
                    (2 * k - 1 - bundle, reflect)
                };
                let mut bags = vec![(0..=j).collect::<VertexSet>(), (j + 1..=2 * k).collect()];
                bags.extend((2 * k + 1..n).map(VertexSet::singleton));
                TreeCutDecomposition::path(bags).map_vertices(&map)
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "no canonical decomposition for {}",
                other.name()
            )))
        }
    };
    d.validate(&h)?;
    Ok((h, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn c83_lemma_decomposition() {
        let (h, d) = canonical_decomposition(Family::MultiCycle { n: 8, k: 3 }, 7).unwrap();
        for l in 0..d.links.len() {
            let adh: u32 = d.link_adhesion(&h, l).unwrap().iter().map(|e| e.2).sum();
            assert_eq!(adh, 5);
        }
        for b in 1..7 {
            let adh: u32 = d.node_adhesion(&h, b).unwrap().iter().map(|e| e.2).sum();
            assert_eq!(adh, 2);
        }
        assert!(d.node_adhesion(&h, 0).unwrap().is_empty());
        assert!(d.node_adhesion(&h, 7).unwrap().is_empty());
        assert_eq!(d.width(&h).unwrap(), 5);
    }

    #[test]
    fn multicycle_decompositions_have_width_2k_minus_1() {
        for k in 2..=3u32 {
            for n in 2 * k as usize..=8 {
                for bundle in 0..n {
                    let (h, d) = canonical_decomposition(Family::MultiCycle { n, k }, bundle).unwrap();
                    assert_eq!(d.width(&h).unwrap(), 2 * k - 1, "n={n} k={k} bundle={bundle}");
                }
            }
        }
    }

    #[test]
    fn tilde_decompositions_have_width_2k() {
        for k in 2..=3u32 {
            for n in 3 * k as usize..=10 {
                for bundle in 0..n {
                    let (h, d) = canonical_decomposition(Family::TildeCycle { n, k }, bundle).unwrap();
                    assert!(d.width(&h).unwrap() <= 2 * k, "n={n} k={k} bundle={bundle}");
                }
            }
        }
    }

    #[test]
    fn tilde_c82_examples() {
        // e1 in a light bundle, e2 in a heavy bundle
        let (h, d) = canonical_decomposition(Family::TildeCycle { n: 8, k: 2 }, 5).unwrap();
        assert_eq!(d.width(&h).unwrap(), 4);
        let (h, d) = canonical_decomposition(Family::TildeCycle { n: 8, k: 2 }, 3).unwrap();
        assert_eq!(d.width(&h).unwrap(), 4);
        for l in 0..d.links.len() {
            let adh: u32 = d.link_adhesion(&h, l).unwrap().iter().map(|e| e.2).sum();
            assert_eq!(adh, 4);
        }
    }

    #[test]
    fn one_bag_has_no_link_adhesion() {
        let g = Family::Complete { n: 4 }.build().unwrap();
        let d = TreeCutDecomposition::new(vec![(0, 1)], vec![g.vertices(), VertexSet::EMPTY]);
        assert!(d.link_adhesion(&g, 0).unwrap().is_empty());
        assert_eq!(d.width(&g).unwrap(), 4);
        let star = TreeCutDecomposition::new(
            vec![(0, 1), (0, 2)],
            vec![g.vertices(), VertexSet::EMPTY, VertexSet::EMPTY],
        );
        assert!(star.node_adhesion(&g, 0).unwrap().is_empty());
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let g = Family::Path { n: 3 }.build().unwrap();
        let overlap = TreeCutDecomposition::path(vec![set(&[0, 1]), set(&[1, 2])]);
        assert!(overlap.width(&g).is_err());
        let missing = TreeCutDecomposition::path(vec![set(&[0]), set(&[1])]);
        assert!(missing.width(&g).is_err());
        let cyclic = TreeCutDecomposition::new(vec![(0, 1), (1, 2), (2, 0)], vec![set(&[0]), set(&[1]), set(&[2])]);
        assert!(cyclic.width(&g).is_err());
        let d = TreeCutDecomposition::path(vec![set(&[0]), set(&[1, 2])]);
        assert!(d.link_adhesion(&g, 3).is_err());
        assert!(d.node_adhesion(&g, 9).is_err());
    }

    #[test]
    fn trees_have_screewidth_one() {
        let star = Multigraph::from_pairs(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let (w, d) = screewidth_exact(&star).unwrap();
        assert_eq!(w, 1);
        assert_eq!(d.width(&star).unwrap(), 1);
        // the tree itself with singleton bags
        let mirror = TreeCutDecomposition::new(
            star.edges().iter().map(|&(u, v, _)| (u, v)).collect(),
            (0..5).map(VertexSet::singleton).collect(),
        );
        assert_eq!(mirror.width(&star).unwrap(), 1);
    }

    #[test]
    fn four_graphs_have_screewidth_three() {
        for fam in [
            Family::Complete { n: 4 },
            Family::MultiPath { n: 3, k: 3 },
            Family::Triangle221,
            Family::LoopOfLoops,
        ] {
            let g = fam.build().unwrap();
            let (w, d) = screewidth_exact(&g).unwrap();
            assert_eq!(w, 3, "{}", fam.name());
            assert_eq!(d.width(&g).unwrap(), 3);
            assert!(d.node_count() < 2 * g.n());
        }
    }

    #[test]
    fn wheel_has_screewidth_four() {
        let g = Family::Wheel { rim: 5 }.build().unwrap();
        assert_eq!(screewidth_exact(&g).unwrap().0, 4);
    }

    #[test]
    fn size_bound() {
        let g = Family::Path { n: 13 }.build().unwrap();
        assert!(matches!(screewidth_exact(&g), Err(Error::SizeBound(_))));
    }

    /// Exhaustive oracle: every labelled tree on `m` nodes (Prüfer codes)
    /// and every assignment of vertices to nodes.
    fn brute_screewidth(g: &Multigraph, max_nodes: usize) -> u32 {
        let n = g.n();
        let mut best = n as u32;
        for m in 1..=max_nodes {
            let trees: Vec<Vec<(usize, usize)>> = if m == 1 {
                vec![vec![]]
            } else if m == 2 {
                vec![vec![(0, 1)]]
            } else {
                let mut all = Vec::new();
                for code in 0..m.pow(m as u32 - 2) {
                    let mut c = code;
                    let seq: Vec<usize> = (0..m - 2)
                        .map(|_| {
                            let x = c % m;
                            c /= m;
                            x
                        })
                        .collect();
                    all.push(prufer_decode(&seq, m));
                }
                all
            };
            for links in &trees {
                for assign in 0..m.pow(n as u32) {
                    let mut a = assign;
                    let mut bags = vec![VertexSet::EMPTY; m];
                    for v in 0..n {
                        bags[a % m].insert(v);
                        a /= m;
                    }
                    let d = TreeCutDecomposition::new(links.clone(), bags);
                    best = best.min(d.width(g).unwrap());
                }
            }
        }
        best
    }

    fn prufer_decode(seq: &[usize], m: usize) -> Vec<(usize, usize)> {
        let mut degree = vec![1; m];
        for &x in seq {
            degree[x] += 1;
        }
        let mut links = Vec::new();
        for &x in seq {
            let leaf = (0..m).find(|&v| degree[v] == 1).unwrap();
            links.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
        links.push((rest[0], rest[1]));
        links
    }

    #[test]
    fn dp_matches_exhaustive_search_on_tiny_graphs() {
        use crate::multigraph::enumerate_up_to;
        for g in enumerate_up_to(3, 3).unwrap() {
            let brute = brute_screewidth(&g, 2 * g.n() - 1);
            assert_eq!(screewidth_exact(&g).unwrap().0, brute, "{g:?}");
        }
        for g in crate::multigraph::connected_multigraphs(4, 2).unwrap() {
            // trees on up to five nodes; the DP may only do better
            let brute = brute_screewidth(&g, 5);
            let (w, _) = screewidth_exact(&g).unwrap();
            assert!(w <= brute, "{g:?}");
        }
    }
}
