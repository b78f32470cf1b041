//! Exact scramble number and disjoint scramble number with certificates.
//!
//! `sn_exact` settles trees directly, splits at bridges, optionally asks
//! the forbidden-minor classifier whether the value is 2, and otherwise
//! closes the gap between the all-singletons scramble and the screewidth
//! with the orientation search in [`search`].

mod classify;
mod minimal;
pub mod search;
mod sweeps;

pub use classify::{classify_sn_le_2, ClassificationResult, PatternCheck, Verdict, FORBIDDEN_PATTERNS};
pub use minimal::{is_k_scramble_minimal, EdgeCheck, MinimalityReport};
pub use search::{dsn_at_least, sn_at_least, MAX_SEARCH_VERTICES};
pub use sweeps::{
    pseudorandom_sample, verify_corollary_3ec, verify_lemma, verify_lemma_on, Corollary3ecReport, Lemma, LemmaReport,
    Violation,
};

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexSet};
use crate::scramble::Scramble;
use crate::screewidth::{screewidth_exact, TreeCutDecomposition, MAX_SCW_VERTICES};
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

/// Cooperative time limit shared by the searches.
#[derive(Debug, Default)]
pub struct Deadline {
    at: Option<Instant>,
    ticks: AtomicU32,
}

impl Clone for Deadline {
    fn clone(&self) -> Self {
        Deadline {
            at: self.at,
            ticks: AtomicU32::new(0),
        }
    }
}

impl Deadline {
    pub fn none() -> Self {
        Deadline::default()
    }

    pub fn at(at: Instant) -> Self {
        Deadline {
            at: Some(at),
            ticks: AtomicU32::new(0),
        }
    }

    pub fn after(d: std::time::Duration) -> Self {
        Deadline::at(Instant::now() + d)
    }

    pub fn instant(&self) -> Option<Instant> {
        self.at
    }

    pub fn expired(&self) -> bool {
        self.at.is_some_and(|t| Instant::now() >= t)
    }

    /// Fails with placeholder bounds once the deadline has passed; callers
    /// replace them with what they know.
    pub(crate) fn check(&self) -> Result<()> {
        let Some(at) = self.at else { return Ok(()) };
        let t = self.ticks.fetch_add(1, Ordering::Relaxed).wrapping_add(1);
        if t % 256 == 1 && Instant::now() >= at {
            return Err(Error::Timeout { lower: 0, upper: 0 });
        }
        Ok(())
    }
}

/// Which pipeline stages `sn_exact_with` may use.
#[derive(Clone, Debug)]
pub struct SnOptions {
    pub use_classifier: bool,
    pub use_bridge_split: bool,
    pub deadline: Deadline,
}

impl Default for SnOptions {
    fn default() -> Self {
        SnOptions {
            use_classifier: true,
            use_bridge_split: true,
            deadline: Deadline::none(),
        }
    }
}

impl SnOptions {
    /// Bounds and exhaustive search only.
    pub fn search_only() -> Self {
        SnOptions {
            use_classifier: false,
            use_bridge_split: false,
            deadline: Deadline::none(),
        }
    }
}

/// Evidence that no scramble is larger than the claimed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperWitness {
    /// A tree-cut decomposition whose width equals the value.
    Decomposition(TreeCutDecomposition),
    /// An exhaustive search found no scramble of order `value + 1`.
    ExhaustiveSearch { searched: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnCertificate {
    pub value: u32,
    pub lower_witness: Scramble,
    pub upper_witness: UpperWitness,
}

impl SnCertificate {
    /// Rechecks both witnesses against `g`. An exhaustive-search witness
    /// is rechecked by running the search again.
    pub fn verify(&self, g: &Multigraph) -> Result<()> {
        if self.lower_witness.host() != g {
            return Err(Error::InvalidScramble("lower witness lives on another graph".into()));
        }
        let order = self.lower_witness.order()?.order;
        if order != self.value {
            return Err(Error::InvalidScramble(format!(
                "lower witness has order {order}, certificate claims {}",
                self.value
            )));
        }
        match &self.upper_witness {
            UpperWitness::Decomposition(d) => {
                let w = d.width(g)?;
                if w != self.value {
                    return Err(Error::InvalidDecomposition(format!(
                        "upper witness has width {w}, certificate claims {}",
                        self.value
                    )));
                }
            }
            UpperWitness::ExhaustiveSearch { .. } => {
                if scramble_number_at_least(g, self.value + 1, &Deadline::none())? {
                    return Err(Error::InvalidScramble(format!(
                        "a scramble of order {} exists",
                        self.value + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Largest graph `sn_exact` accepts.
pub const MAX_SN_VERTICES: usize = MAX_SEARCH_VERTICES;

/// Exact scramble number of a connected multigraph, with certificate.
pub fn sn_exact(g: &Multigraph) -> Result<SnCertificate> {
    sn_exact_with(g, &SnOptions::default())
}

pub fn sn_exact_with(g: &Multigraph, opts: &SnOptions) -> Result<SnCertificate> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > MAX_SN_VERTICES {
        return Err(Error::SizeBound(format!(
            "scramble number is exact up to {MAX_SN_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    if g.is_tree() {
        let d = TreeCutDecomposition::new(
            g.edges().iter().map(|&(u, v, _)| (u, v)).collect(),
            (0..g.n()).map(VertexSet::singleton).collect(),
        );
        return Ok(SnCertificate {
            value: 1,
            lower_witness: Scramble::new(g.clone(), [VertexSet::singleton(0)])?,
            upper_witness: UpperWitness::Decomposition(d),
        });
    }
    let bridges = g.bridges();
    if opts.use_bridge_split && !bridges.is_empty() {
        return bridge_split(g, &bridges, opts);
    }
    let singletons = Scramble::new(g.clone(), (0..g.n()).map(VertexSet::singleton).collect::<Vec<_>>())?;
    let mut lower = g.edge_connectivity().finite().unwrap_or(u32::MAX).min(g.n() as u32);
    let mut lower_witness = singletons;
    let (upper, decomposition) = if g.n() <= MAX_SCW_VERTICES {
        let (w, d) = screewidth_exact(g)?;
        (w, d)
    } else {
        (g.n() as u32, TreeCutDecomposition::trivial(g))
    };
    if opts.use_classifier && lower < upper {
        let c = classify_sn_le_2(g)?;
        if c.verdict == Verdict::Two && lower == 2 {
            let upper_witness = if upper == 2 {
                UpperWitness::Decomposition(decomposition)
            } else {
                UpperWitness::ExhaustiveSearch {
                    searched: "no topological minor among the four order-3 patterns".into(),
                }
            };
            return Ok(SnCertificate {
                value: 2,
                lower_witness,
                upper_witness,
            });
        }
    }
    let universe = search::EggUniverse::new(g)?;
    let timeout = |lower: u32| {
        move |e: Error| match e {
            Error::Timeout { .. } => Error::Timeout { lower, upper },
            other => other,
        }
    };
    while lower < upper {
        let k = lower + 1;
        match search::sn_at_least_in(g, &universe, k, &opts.deadline).map_err(timeout(lower))? {
            Some(s) => {
                lower = k;
                lower_witness = s;
            }
            None => {
                return Ok(SnCertificate {
                    value: lower,
                    lower_witness,
                    upper_witness: UpperWitness::ExhaustiveSearch {
                        searched: format!(
                            "every choice of egg-free sides for the cuts below {k} over the {} connected vertex sets leaves hitting number below {k}",
                            universe.sets.len()
                        ),
                    },
                });
            }
        }
    }
    Ok(SnCertificate {
        value: lower,
        lower_witness,
        upper_witness: UpperWitness::Decomposition(decomposition),
    })
}

/// Deleting every bridge leaves bridgeless components; the scramble number
/// is the largest of theirs, and their decompositions join along the
/// bridges without raising the width.
fn bridge_split(g: &Multigraph, bridges: &[(usize, usize)], opts: &SnOptions) -> Result<SnCertificate> {
    let mut cut = g.clone();
    for &(u, v) in bridges {
        cut = cut.remove_edge(u, v)?;
    }
    let comps = cut.components();
    let mut comp_of = vec![0; g.n()];
    let mut best: Option<(u32, Scramble)> = None;
    let mut pieces: Vec<Option<TreeCutDecomposition>> = Vec::new();
    let mut exhaustive = None;
    for (ci, &c) in comps.iter().enumerate() {
        for v in c.iter() {
            comp_of[v] = ci;
        }
        let (sub, map) = g.induced_subgraph(c);
        let cert = sn_exact_with(&sub, opts)?;
        if best.as_ref().is_none_or(|(b, _)| cert.value > *b) {
            let eggs: Vec<VertexSet> = cert
                .lower_witness
                .eggs()
                .iter()
                .map(|e| e.iter().map(|v| map[v]).collect())
                .collect();
            best = Some((cert.value, Scramble::new(g.clone(), eggs)?));
        }
        match cert.upper_witness {
            UpperWitness::Decomposition(d) => pieces.push(Some(d.map_vertices(&map))),
            UpperWitness::ExhaustiveSearch { searched } => {
                exhaustive.get_or_insert(searched);
                pieces.push(None);
            }
        }
    }
    let (value, lower_witness) = best.expect("at least one component");
    let upper_witness = if let Some(searched) = exhaustive {
        UpperWitness::ExhaustiveSearch {
            searched: format!("components between bridges; {searched}"),
        }
    } else {
        let mut group: Vec<usize> = (0..comps.len()).collect();
        let mut joined: Vec<Option<TreeCutDecomposition>> = pieces;
        for &(u, v) in bridges {
            let (gu, gv) = (group[comp_of[u]], group[comp_of[v]]);
            let left = joined[gu].take().expect("group present");
            let right = joined[gv].take().expect("group present");
            let merged = TreeCutDecomposition::join(
                &left,
                left.node_of(u).expect("vertex placed"),
                &right,
                right.node_of(v).expect("vertex placed"),
            );
            joined[gu] = Some(merged);
            for x in group.iter_mut() {
                if *x == gv {
                    *x = gu;
                }
            }
        }
        let d = joined[group[0]].take().expect("single tree remains");
        UpperWitness::Decomposition(d)
    };
    Ok(SnCertificate {
        value,
        lower_witness,
        upper_witness,
    })
}

/// Scramble number of any multigraph: the largest over its components,
/// since eggs in different components are separated by the empty cut.
pub fn scramble_number(g: &Multigraph, opts: &SnOptions) -> Result<u32> {
    let mut best = 0;
    for c in g.components() {
        let (sub, _) = g.induced_subgraph(c);
        best = best.max(sn_exact_with(&sub, opts)?.value);
    }
    Ok(best)
}

/// Whether some component of `g` carries a scramble of order at least `k`.
pub fn scramble_number_at_least(g: &Multigraph, k: u32, deadline: &Deadline) -> Result<bool> {
    for c in g.components() {
        let (sub, _) = g.induced_subgraph(c);
        if sub.n() < k as usize {
            continue;
        }
        let lambda = sub.edge_connectivity().finite().unwrap_or(u32::MAX);
        if lambda.min(sub.n() as u32) >= k {
            return Ok(true);
        }
        if sub.n() <= MAX_SCW_VERTICES && screewidth_exact(&sub)?.0 < k {
            continue;
        }
        if sn_at_least(&sub, k, deadline)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsnResult {
    pub value: u32,
    pub witness: Scramble,
}

/// Exact disjoint scramble number of a connected multigraph.
pub fn dsn_exact(g: &Multigraph) -> Result<DsnResult> {
    dsn_exact_with(g, &Deadline::none())
}

pub fn dsn_exact_with(g: &Multigraph, deadline: &Deadline) -> Result<DsnResult> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > MAX_SN_VERTICES {
        return Err(Error::SizeBound(format!(
            "disjoint scramble number is exact up to {MAX_SN_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut value = g.edge_connectivity().finite().unwrap_or(u32::MAX).min(g.n() as u32);
    let mut witness = Scramble::new(g.clone(), (0..g.n()).map(VertexSet::singleton).collect::<Vec<_>>())?;
    loop {
        let found = dsn_at_least(g, value + 1, deadline).map_err(|e| match e {
            Error::Timeout { .. } => Error::Timeout {
                lower: value,
                upper: g.n() as u32,
            },
            other => other,
        })?;
        match found {
            Some(s) => {
                value += 1;
                witness = s;
            }
            None => return Ok(DsnResult { value, witness }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    fn fam(f: Family) -> Multigraph {
        f.build().unwrap()
    }

    #[test]
    fn four_graphs_have_scramble_number_three() {
        for f in [
            Family::Complete { n: 4 },
            Family::MultiPath { n: 3, k: 3 },
            Family::Triangle221,
            Family::LoopOfLoops,
        ] {
            let g = fam(f);
            for opts in [SnOptions::default(), SnOptions::search_only()] {
                let c = sn_exact_with(&g, &opts).unwrap();
                assert_eq!(c.value, 3, "{}", f.name());
                c.verify(&g).unwrap();
            }
        }
    }

    #[test]
    fn wheel_and_complete_minus_cycle() {
        let w5 = fam(Family::Wheel { rim: 5 });
        let c = sn_exact(&w5).unwrap();
        assert_eq!(c.value, 4);
        c.verify(&w5).unwrap();
        assert_eq!(dsn_exact(&w5).unwrap().value, 3);
    }

    #[test]
    fn trees_and_bridges() {
        let star = Multigraph::from_pairs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = sn_exact(&star).unwrap();
        assert_eq!(c.value, 1);
        c.verify(&star).unwrap();
        // two K4s joined by a bridge, plus a pendant path
        let mut g = Multigraph::empty(10).unwrap();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    g.add_edges(base + u, base + v, 1).unwrap();
                }
            }
        }
        g.add_edges(3, 4, 1).unwrap();
        g.add_edges(7, 8, 1).unwrap();
        g.add_edges(8, 9, 1).unwrap();
        let c = sn_exact(&g).unwrap();
        assert_eq!(c.value, 3);
        c.verify(&g).unwrap();
        assert!(matches!(c.upper_witness, UpperWitness::Decomposition(_)));
        assert_eq!(sn_exact_with(&g, &SnOptions::search_only()).unwrap().value, 3);
    }

    #[test]
    fn errors() {
        let two = Multigraph::empty(2).unwrap();
        assert_eq!(sn_exact(&two).unwrap_err(), Error::Disconnected);
        let big = fam(Family::Cycle { n: 11 });
        assert!(matches!(sn_exact(&big), Err(Error::SizeBound(_))));
        assert!(matches!(dsn_exact(&big), Err(Error::SizeBound(_))));
    }

    #[test]
    fn expired_deadline_reports_interval() {
        let g = fam(Family::CompleteMinusCycle { n: 7 });
        let opts = SnOptions {
            deadline: Deadline::at(Instant::now()),
            ..SnOptions::default()
        };
        match sn_exact_with(&g, &opts) {
            Err(Error::Timeout { lower, upper }) => assert!(lower <= 5 && upper >= 5),
            other => panic!("expected timeout, got {other:?}"),
        }
    }
}
