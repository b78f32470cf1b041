//! Exhaustive decision procedures for `sn ≥ k` and `dsn ≥ k`.
//!
//! A scramble has egg-cut number at least `k` exactly when, for every
//! bipartition `(A, B)` into connected sides with fewer than `k` crossing
//! edges, one of `A`, `B` contains no egg entirely. Once one egg-free side
//! is fixed for each such cut, adding eggs can only raise the hitting
//! number, so the best scramble for that choice is every connected set not
//! inside a chosen side. The search walks over these choices and keeps
//! the sets as a bitset over all connected subsets of the graph.

use super::Deadline;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexSet};
use crate::scramble::Scramble;
use std::collections::HashSet;

/// Decision searches run on graphs with at most this many vertices.
pub const MAX_SEARCH_VERTICES: usize = 10;

const WORDS: usize = 16;

/// Subset of the connected sets of a graph with at most ten vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Bits([u64; WORDS]);

impl Bits {
    const ZERO: Bits = Bits([0; WORDS]);

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and_not(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0) {
            *a &= !b;
        }
        r
    }

    fn meets(&self, o: &Bits) -> bool {
        self.0.iter().zip(o.0).any(|(a, b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Connected sets of a graph and, for every vertex set `Y`, which of them lie inside `Y`.
pub(crate) struct EggUniverse {
    pub sets: Vec<VertexSet>,
    inside: Vec<Bits>,
    all: Bits,
}

impl EggUniverse {
    pub fn new(g: &Multigraph) -> Result<Self> {
        if g.n() > MAX_SEARCH_VERTICES {
            return Err(Error::SizeBound(format!(
                "scramble search supports at most {MAX_SEARCH_VERTICES} vertices, got {}",
                g.n()
            )));
        }
        let sets = g.connected_subsets();
        let mut inside = vec![Bits::ZERO; 1 << g.n()];
        for (i, s) in sets.iter().enumerate() {
            // mark every superset of s
            let rest = g.vertices().difference(*s).bits();
            for extra in crate::multigraph::submasks(rest) {
                inside[(s.bits() | extra) as usize].set(i);
            }
        }
        let all = inside[g.vertices().bits() as usize];
        Ok(EggUniverse { sets, inside, all })
    }

    fn within(&self, y: VertexSet) -> &Bits {
        &self.inside[y.bits() as usize]
    }
}

/// Searches for a scramble of order at least `k` on the connected graph `g`.
/// Returns one with minimal eggs when it exists.
pub fn sn_at_least(g: &Multigraph, k: u32, deadline: &Deadline) -> Result<Option<Scramble>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let universe = EggUniverse::new(g)?;
    sn_at_least_in(g, &universe, k, deadline)
}

pub(crate) fn sn_at_least_in(
    g: &Multigraph,
    universe: &EggUniverse,
    k: u32,
    deadline: &Deadline,
) -> Result<Option<Scramble>> {
    let n = g.n();
    if k == 0 {
        return Ok(Some(Scramble::new(g.clone(), [VertexSet::singleton(0)])?));
    }
    if k as usize > n {
        return Ok(None);
    }
    let full = g.vertices();
    // the complements of every (k-1)-set: a family has hitting number at
    // least k iff it has a member inside each of them
    let mut blockers: Vec<VertexSet> = Vec::new();
    for y in crate::multigraph::submasks(full.bits()) {
        if y.count_ones() == k - 1 {
            blockers.push(full.difference(VertexSet(y)));
        }
    }
    let mut cuts: Vec<(VertexSet, VertexSet)> = g
        .connected_bipartitions()
        .into_iter()
        .filter(|&(_, c)| c < k)
        .map(|(a, _)| {
            let b = full.difference(a);
            if a.len() <= b.len() {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    cuts.sort_by_key(|&(a, b)| (a.len(), a.bits(), b.bits()));
    let mut s = OrientationSearch {
        blockers: blockers.iter().map(|&y| *universe.within(y)).collect(),
        cuts: cuts
            .iter()
            .map(|&(a, b)| (*universe.within(a), *universe.within(b)))
            .collect(),
        failed: HashSet::new(),
        deadline,
    };
    match s.run(0, universe.all)? {
        None => Ok(None),
        Some(family) => {
            let eggs: Vec<VertexSet> = family.iter().map(|i| universe.sets[i]).collect();
            let minimal: Vec<VertexSet> = eggs
                .iter()
                .copied()
                .filter(|&e| !eggs.iter().any(|&f| f != e && f.is_subset(e)))
                .collect();
            Ok(Some(Scramble::new(g.clone(), minimal)?))
        }
    }
}

struct OrientationSearch<'a> {
    blockers: Vec<Bits>,
    cuts: Vec<(Bits, Bits)>,
    failed: HashSet<(usize, Bits)>,
    deadline: &'a Deadline,
}

impl OrientationSearch<'_> {
    fn hitting_at_least_k(&self, family: &Bits) -> bool {
        self.blockers.iter().all(|b| family.meets(b))
    }

    fn run(&mut self, mut i: usize, family: Bits) -> Result<Option<Bits>> {
        self.deadline.check()?;
        if !self.hitting_at_least_k(&family) {
            return Ok(None);
        }
        while i < self.cuts.len() {
            let (a, b) = &self.cuts[i];
            if family.meets(a) && family.meets(b) {
                break;
            }
            i += 1;
        }
        if i == self.cuts.len() {
            return Ok(Some(family));
        }
        if self.failed.contains(&(i, family)) {
            return Ok(None);
        }
        let (a, b) = self.cuts[i];
        for side in [a, b] {
            if let Some(f) = self.run(i + 1, family.and_not(&side))? {
                return Ok(Some(f));
            }
        }
        self.failed.insert((i, family));
        Ok(None)
    }
}

/// Searches for `k` pairwise disjoint eggs with egg-cut number at least
/// `k`; such a family has order exactly `k`, and any disjoint scramble of
/// order at least `k` contains one.
pub fn dsn_at_least(g: &Multigraph, k: u32, deadline: &Deadline) -> Result<Option<Scramble>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > MAX_SEARCH_VERTICES {
        return Err(Error::SizeBound(format!(
            "scramble search supports at most {MAX_SEARCH_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    if k == 0 {
        return Ok(Some(Scramble::new(g.clone(), [VertexSet::singleton(0)])?));
    }
    if k as usize > g.n() {
        return Ok(None);
    }
    let full = g.vertices();
    let cuts: Vec<VertexSet> = g
        .connected_bipartitions()
        .into_iter()
        .filter(|&(_, c)| c < k)
        .map(|(a, _)| a)
        .collect();
    let words = cuts.len().div_ceil(64).max(1);
    let sets = g.connected_subsets();
    let mut side_a = vec![vec![0u64; words]; sets.len()];
    let mut side_b = vec![vec![0u64; words]; sets.len()];
    for (i, &s) in sets.iter().enumerate() {
        for (j, &a) in cuts.iter().enumerate() {
            if s.is_subset(a) {
                side_a[i][j / 64] |= 1 << (j % 64);
            } else if s.is_subset(full.difference(a)) {
                side_b[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut d = DisjointSearch {
        sets: &sets,
        side_a: &side_a,
        side_b: &side_b,
        k: k as usize,
        n: g.n(),
        chosen: Vec::new(),
        deadline,
    };
    let (ma, mb) = (vec![0u64; words], vec![0u64; words]);
    if d.run(0, VertexSet::EMPTY, &ma, &mb)? {
        let eggs: Vec<VertexSet> = d.chosen.iter().map(|&i| sets[i]).collect();
        return Ok(Some(Scramble::new(g.clone(), eggs)?));
    }
    Ok(None)
}

struct DisjointSearch<'a> {
    sets: &'a [VertexSet],
    side_a: &'a [Vec<u64>],
    side_b: &'a [Vec<u64>],
    k: usize,
    n: usize,
    chosen: Vec<usize>,
    deadline: &'a Deadline,
}

impl DisjointSearch<'_> {
    fn run(&mut self, from: usize, used: VertexSet, ma: &[u64], mb: &[u64]) -> Result<bool> {
        if self.chosen.len() == self.k {
            return Ok(true);
        }
        self.deadline.check()?;
        let need = self.k - self.chosen.len();
        for i in from..self.sets.len() {
            let s = self.sets[i];
            // later sets are at least as large
            if used.len() + need * s.len() > self.n {
                break;
            }
            if s.intersects(used) {
                continue;
            }
            let na: Vec<u64> = ma.iter().zip(&self.side_a[i]).map(|(x, y)| x | y).collect();
            let nb: Vec<u64> = mb.iter().zip(&self.side_b[i]).map(|(x, y)| x | y).collect();
            if na.iter().zip(&nb).any(|(x, y)| x & y != 0) {
                continue;
            }
            self.chosen.push(i);
            if self.run(i + 1, used.union(s), &na, &nb)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    fn no_deadline() -> Deadline {
        Deadline::none()
    }

    #[test]
    fn wheel_thresholds() {
        let g = Family::Wheel { rim: 5 }.build().unwrap();
        let s = sn_at_least(&g, 4, &no_deadline()).unwrap().unwrap();
        assert!(s.order().unwrap().order >= 4);
        assert!(sn_at_least(&g, 5, &no_deadline()).unwrap().is_none());
        let d = dsn_at_least(&g, 3, &no_deadline()).unwrap().unwrap();
        assert!(d.is_disjoint());
        assert_eq!(d.order().unwrap().order, 3);
        assert!(dsn_at_least(&g, 4, &no_deadline()).unwrap().is_none());
    }

    #[test]
    fn universe_marks_subsets() {
        let g = Family::Path { n: 3 }.build().unwrap();
        let u = EggUniverse::new(&g).unwrap();
        assert_eq!(u.sets.len(), 6);
        let inside: Vec<usize> = u.within(VertexSet(0b011)).iter().collect();
        let sets: Vec<VertexSet> = inside.iter().map(|&i| u.sets[i]).collect();
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|s| s.is_subset(VertexSet(0b011))));
    }
}
