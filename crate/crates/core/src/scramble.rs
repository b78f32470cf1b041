//! Scrambles and their order.
//!
//! An egg is a nonempty vertex set inducing a connected subgraph; a scramble
//! is a set of eggs. Its order is `min(h, e)` where `h` is the minimum size
//! of a vertex set meeting every egg and `e` the fewest edges whose deletion
//! splits the graph into two components that each contain an egg.

use crate::error::{Error, Result};
use crate::multigraph::{max_flow, ExtNat, Multigraph, VertexSet};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scramble {
    host: Multigraph,
    eggs: Vec<VertexSet>,
}

/// An egg-cut realising the egg-cut number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggCutWitness {
    /// Indices of the two separated eggs.
    pub eggs: (usize, usize),
    /// One side of the cut; both it and its complement induce connected
    /// subgraphs, and it contains the first egg.
    pub side: VertexSet,
    /// Cut bundles as `(u, v, multiplicity)`.
    pub edges: Vec<(usize, usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScrambleOrder {
    pub hitting: u32,
    pub egg_cut: ExtNat,
    pub order: u32,
    pub hitting_set: VertexSet,
    pub egg_cut_witness: Option<EggCutWitness>,
}

impl Scramble {
    /// Validates and stores the eggs. Duplicates are merged; eggs are kept
    /// sorted by size and then bit value.
    pub fn new(host: Multigraph, eggs: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut eggs: Vec<VertexSet> = eggs.into_iter().collect();
        for &e in &eggs {
            if e.is_empty() {
                return Err(Error::InvalidScramble("empty egg".into()));
            }
            if !e.is_subset(host.vertices()) {
                return Err(Error::InvalidScramble(format!(
                    "egg {:?} has vertices outside the host",
                    e
                )));
            }
            if !host.is_connected_subset(e) {
                return Err(Error::InvalidScramble(format!("egg {:?} is not connected", e)));
            }
        }
        eggs.sort_by_key(|e| (e.len(), e.bits()));
        eggs.dedup();
        Ok(Scramble { host, eggs })
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    pub fn eggs(&self) -> &[VertexSet] {
        &self.eggs
    }

    pub fn len(&self) -> usize {
        self.eggs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eggs.is_empty()
    }

    /// Pairwise disjoint eggs.
    pub fn is_disjoint(&self) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &e in &self.eggs {
            if seen.intersects(e) {
                return false;
            }
            seen = seen.union(e);
        }
        true
    }

    /// Minimum hitting set size and one minimum hitting set.
    pub fn hitting_number(&self) -> Result<(u32, VertexSet)> {
        if self.eggs.is_empty() {
            return Err(Error::EmptyScramble);
        }
        Ok(min_hitting_set(&self.eggs))
    }

    /// Egg-cut number, with a witness when finite.
    ///
    /// For every pair of disjoint eggs the two eggs are contracted to
    /// terminals and a maximum flow is computed; the minimum over pairs is
    /// the answer. Infinite when every two eggs intersect.
    pub fn egg_cut_number(&self) -> Result<(ExtNat, Option<EggCutWitness>)> {
        if !self.host.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut best: Option<(u32, usize, usize, VertexSet)> = None;
        for (i, &a) in self.eggs.iter().enumerate() {
            for (j, &b) in self.eggs.iter().enumerate().skip(i + 1) {
                if a.intersects(b) {
                    continue;
                }
                let cut = max_flow(&self.host, a, b);
                if best.is_none_or(|(v, ..)| cut.value < v) {
                    best = Some((cut.value, i, j, cut.source_side));
                }
            }
        }
        Ok(match best {
            None => (ExtNat::Infinite, None),
            Some((value, i, j, side)) => {
                let side = connected_side(&self.host, side, self.eggs[i], self.eggs[j]);
                debug_assert_eq!(self.host.cut_size(side), value);
                let edges = cut_edges(&self.host, side);
                (
                    ExtNat::Finite(value),
                    Some(EggCutWitness {
                        eggs: (i, j),
                        side,
                        edges,
                    }),
                )
            }
        })
    }

    pub fn order(&self) -> Result<ScrambleOrder> {
        let (hitting, hitting_set) = self.hitting_number()?;
        let (egg_cut, egg_cut_witness) = self.egg_cut_number()?;
        let order = match egg_cut {
            ExtNat::Finite(e) => e.min(hitting),
            ExtNat::Infinite => hitting,
        };
        Ok(ScrambleOrder {
            hitting,
            egg_cut,
            order,
            hitting_set,
            egg_cut_witness,
        })
    }

    /// Restriction to a subgraph `sub`, where `map[i]` is the host vertex
    /// playing the role of `sub`'s vertex `i`. Each egg is intersected with
    /// the image and kept when the pulled-back set is nonempty and connected
    /// in `sub`.
    pub fn restrict(&self, sub: &Multigraph, map: &[usize]) -> Result<Scramble> {
        if map.len() != sub.n() {
            return Err(Error::NotSubgraph(format!(
                "vertex map has {} entries for {} vertices",
                map.len(),
                sub.n()
            )));
        }
        let mut image = VertexSet::EMPTY;
        for &v in map {
            if v >= self.host.n() || image.contains(v) {
                return Err(Error::NotSubgraph(format!(
                    "vertex map is not injective into the host at {v}"
                )));
            }
            image.insert(v);
        }
        for (u, v, m) in sub.edges() {
            if self.host.multiplicity(map[u], map[v]) < m {
                return Err(Error::NotSubgraph(format!(
                    "edge ({u}, {v}) x{m} exceeds host multiplicity {}",
                    self.host.multiplicity(map[u], map[v])
                )));
            }
        }
        let eggs = self.eggs.iter().filter_map(|&e| {
            let pulled: VertexSet = (0..sub.n()).filter(|&i| e.contains(map[i])).collect();
            sub.is_connected_subset(pulled).then_some(pulled)
        });
        Scramble::new(sub.clone(), eggs.collect::<Vec<_>>())
    }

    /// Restriction to the host with one edge between `u` and `v` deleted.
    pub fn restrict_to_edge_deleted(&self, u: usize, v: usize) -> Result<Scramble> {
        let sub = self.host.remove_edge(u, v)?;
        let map: Vec<usize> = (0..sub.n()).collect();
        self.restrict(&sub, &map)
    }

    /// Drops every egg that strictly contains another egg.
    pub fn minimal_eggs(&self) -> Scramble {
        let eggs = self
            .eggs
            .iter()
            .copied()
            .filter(|&e| !self.eggs.iter().any(|&f| f != e && f.is_subset(e)))
            .collect();
        Scramble {
            host: self.host.clone(),
            eggs,
        }
    }
}

/// The scramble whose eggs are the endpoint pairs of every bundle.
pub fn uniform_scramble_2(g: &Multigraph) -> Result<Scramble> {
    if g.bundle_count() == 0 {
        return Err(Error::InvalidParameter(
            "2-uniform scramble needs at least one edge".into(),
        ));
    }
    let eggs = g.edges().into_iter().map(|(u, v, _)| VertexSet::singleton(u).with(v));
    Scramble::new(g.clone(), eggs.collect::<Vec<_>>())
}

/// Minimum hitting set by branch and bound: branch on the vertices of the
/// smallest egg not yet hit, bounded below by a greedy packing of pairwise
/// disjoint unhit eggs.
pub(crate) fn min_hitting_set(eggs: &[VertexSet]) -> (u32, VertexSet) {
    let mut sorted: Vec<VertexSet> = eggs.to_vec();
    sorted.sort_by_key(|e| (e.len(), e.bits()));
    sorted.dedup();
    // greedy upper bound
    let mut greedy = VertexSet::EMPTY;
    for &e in &sorted {
        if !e.intersects(greedy) {
            greedy.insert(e.min().unwrap());
        }
    }
    let mut best = (greedy.len() as u32, greedy);

    fn packing_bound(sorted: &[VertexSet], chosen: VertexSet) -> u32 {
        let mut used = VertexSet::EMPTY;
        let mut count = 0;
        for &e in sorted {
            if !e.intersects(chosen) && !e.intersects(used) {
                used = used.union(e);
                count += 1;
            }
        }
        count
    }

    fn rec(sorted: &[VertexSet], chosen: VertexSet, best: &mut (u32, VertexSet)) {
        let size = chosen.len() as u32;
        let Some(&unhit) = sorted.iter().find(|e| !e.intersects(chosen)) else {
            if size < best.0 {
                *best = (size, chosen);
            }
            return;
        };
        if size + packing_bound(sorted, chosen) >= best.0 {
            return;
        }
        for v in unhit.iter() {
            rec(sorted, chosen.with(v), best);
        }
    }

    rec(&sorted, VertexSet::EMPTY, &mut best);
    best
}

/// Turns a minimum cut side into one where both sides are connected
/// without changing the cut size.
fn connected_side(g: &Multigraph, side: VertexSet, a: VertexSet, b: VertexSet) -> VertexSet {
    let all = g.vertices();
    let c = g.reach(a.min().unwrap(), side);
    let d = g.reach(b.min().unwrap(), all.difference(c));
    all.difference(d)
}

fn cut_edges(g: &Multigraph, side: VertexSet) -> Vec<(usize, usize, u32)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v, _)| side.contains(u) != side.contains(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    fn singletons(g: &Multigraph) -> Scramble {
        Scramble::new(g.clone(), (0..g.n()).map(VertexSet::singleton)).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    /// Egg-cut number from the definition: the smallest cut `∂A` with both
    /// `A` and its complement connected and each containing an egg.
    fn definitional_egg_cut(s: &Scramble) -> ExtNat {
        let g = s.host();
        let mut best = ExtNat::Infinite;
        for (a, cut) in g.connected_bipartitions() {
            let b = g.vertices().difference(a);
            let left = s.eggs().iter().any(|e| e.is_subset(a));
            let right = s.eggs().iter().any(|e| e.is_subset(b));
            if left && right && ExtNat::Finite(cut) < best {
                best = ExtNat::Finite(cut);
            }
        }
        best
    }

    fn brute_hitting(s: &Scramble) -> u32 {
        (0u64..1 << s.host().n())
            .map(VertexSet)
            .filter(|h| s.eggs().iter().all(|e| e.intersects(*h)))
            .map(|h| h.len() as u32)
            .min()
            .unwrap()
    }

    #[test]
    fn disjoint_eggs_hitting_number_is_egg_count() {
        let g = Family::LoopOfLoops.build().unwrap();
        let s = Scramble::new(g, [set(&[0, 5]), set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert!(s.is_disjoint());
        assert_eq!(s.hitting_number().unwrap().0, 3);
    }

    #[test]
    fn whole_vertex_set_egg() {
        let g = Family::Complete { n: 4 }.build().unwrap();
        let s = Scramble::new(g.clone(), [g.vertices()]).unwrap();
        let o = s.order().unwrap();
        assert_eq!((o.hitting, o.egg_cut, o.order), (1, ExtNat::Infinite, 1));
    }

    #[test]
    fn ll6_scramble_has_egg_cut_three() {
        // eggs are the pairs joined by single edges; each meets four edges
        let g = Family::LoopOfLoops.build().unwrap();
        let s = Scramble::new(g, [set(&[1, 2]), set(&[3, 4]), set(&[5, 0])]).unwrap();
        for e in s.eggs() {
            assert_eq!(s.host().cut_size(*e), 4);
        }
        let o = s.order().unwrap();
        assert_eq!((o.hitting, o.egg_cut, o.order), (3, ExtNat::Finite(3), 3));
        let w = o.egg_cut_witness.unwrap();
        assert_eq!(w.edges.iter().map(|e| e.2).sum::<u32>(), 3);
    }

    #[test]
    fn vertex_scramble_on_multicycle() {
        for (n, k) in [(4, 2), (6, 2), (6, 3), (8, 3)] {
            let g = Family::MultiCycle { n, k }.build().unwrap();
            let o = singletons(&g).order().unwrap();
            assert_eq!(o.hitting, n as u32);
            assert_eq!(o.egg_cut, ExtNat::Finite(2 * k));
        }
    }

    #[test]
    fn overlapping_eggs_have_infinite_egg_cut() {
        let g = Family::Path { n: 3 }.build().unwrap();
        let s = Scramble::new(g, [set(&[0, 1]), set(&[1, 2])]).unwrap();
        assert_eq!(s.egg_cut_number().unwrap().0, ExtNat::Infinite);
        let g = Family::Cycle { n: 4 }.build().unwrap();
        let s = Scramble::new(g, [set(&[2])]).unwrap();
        let o = s.order().unwrap();
        assert_eq!((o.order, o.egg_cut), (1, ExtNat::Infinite));
    }

    #[test]
    fn k4_vertex_scramble() {
        let g = Family::Complete { n: 4 }.build().unwrap();
        let o = singletons(&g).order().unwrap();
        assert_eq!((o.hitting, o.egg_cut, o.order), (4, ExtNat::Finite(3), 3));
    }

    #[test]
    fn tilde_scramble_has_order_five() {
        // eggs {v2}..{v5} and the arc v6..v8,v1 (one-indexed)
        let g = Family::TildeCycle { n: 8, k: 2 }.build().unwrap();
        let mut eggs: Vec<VertexSet> = (1..=4).map(VertexSet::singleton).collect();
        eggs.push(set(&[5, 6, 7, 0]));
        let o = Scramble::new(g, eggs).unwrap().order().unwrap();
        assert_eq!((o.hitting, o.egg_cut, o.order), (5, ExtNat::Finite(5), 5));
    }

    #[test]
    fn uniform_two_scramble_examples() {
        let w5 = Family::Wheel { rim: 5 }.build().unwrap();
        let e2 = uniform_scramble_2(&w5).unwrap();
        assert_eq!(e2.len(), 10);
        assert!(!e2.is_disjoint());
        assert_eq!(brute_hitting(&e2), 4);
        let o = e2.order().unwrap();
        assert_eq!((o.hitting, o.order), (4, 4));

        let k2 = Family::Path { n: 2 }.build().unwrap();
        assert_eq!(uniform_scramble_2(&k2).unwrap().order().unwrap().order, 1);

        let c4 = Family::Cycle { n: 4 }.build().unwrap();
        let e2 = uniform_scramble_2(&c4).unwrap();
        assert_eq!(e2.len(), 4);
        assert_eq!(brute_hitting(&e2), 2);
        let o = e2.order().unwrap();
        assert_eq!((o.hitting, o.egg_cut, o.order), (2, ExtNat::Finite(2), 2));

        assert!(uniform_scramble_2(&Multigraph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn hitting_matches_brute_force() {
        let g = Family::Wheel { rim: 5 }.build().unwrap();
        let subs = g.connected_subsets();
        let mut state = 12345u64;
        for _ in 0..300 {
            let mut eggs = Vec::new();
            for &s in &subs {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if state >> 60 == 0 {
                    eggs.push(s);
                }
            }
            if eggs.is_empty() {
                continue;
            }
            let s = Scramble::new(g.clone(), eggs).unwrap();
            assert_eq!(s.hitting_number().unwrap().0, brute_hitting(&s));
            assert_eq!(s.egg_cut_number().unwrap().0, definitional_egg_cut(&s));
        }
    }

    #[test]
    fn restriction_examples() {
        let g = Family::Complete { n: 4 }.build().unwrap();
        let s = singletons(&g);
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(s.restrict(&g, &id).unwrap(), s);

        let path = Family::Path { n: 3 }.build().unwrap();
        let s = Scramble::new(path.clone(), [set(&[0, 1, 2]), set(&[1])]).unwrap();
        // drop the middle vertex: {0,1,2} becomes {0,2}, disconnected
        let (sub, map) = path.induced_subgraph(set(&[0, 2]));
        let r = s.restrict(&sub, &map).unwrap();
        assert!(r.is_empty());

        let bad = Family::Complete { n: 5 }.build().unwrap();
        assert!(s.restrict(&bad, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn empty_scramble_is_an_error() {
        let g = Family::Path { n: 2 }.build().unwrap();
        let s = Scramble::new(g, []).unwrap();
        assert_eq!(s.order().unwrap_err(), Error::EmptyScramble);
    }

    #[test]
    fn rejects_disconnected_eggs() {
        let g = Family::Path { n: 3 }.build().unwrap();
        assert!(Scramble::new(g, [set(&[0, 2])]).is_err());
    }
}
