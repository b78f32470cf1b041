//! Exhaustive property sweeps over enumerated small multigraphs.

use super::{classify::FORBIDDEN_PATTERNS, scramble_number, sn_exact_with, SnOptions};
use crate::error::{Error, Result};
use crate::multigraph::{enumerate_connected_multigraphs, enumerate_up_to, ExtNat, Multigraph, VertexSet};
use crate::scramble::{uniform_scramble_2, Scramble};
use crate::screewidth::screewidth_exact;
use crate::topo_minor::{is_topological_minor, multi_smooth, multi_topological_minors, smooth};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollary3ecReport {
    pub max_n: usize,
    pub max_mult: u32,
    /// Connected multigraphs with at least three vertices in range.
    pub enumerated: usize,
    /// Those with edge connectivity at least 3.
    pub checked: usize,
    pub skipped: usize,
    /// How many checked graphs were settled by each pattern (first match).
    pub by_pattern: BTreeMap<String, usize>,
    pub counterexamples: Vec<Multigraph>,
}

/// Checks that every 3-edge-connected multigraph with `3..=max_n`
/// vertices and multiplicities at most `max_mult` contains `K4`, `P_{3;3}`
/// or `C_{3;2,2,1}` as a topological minor.
pub fn verify_corollary_3ec(max_n: usize, max_mult: u32) -> Result<Corollary3ecReport> {
    if max_n > 6 || max_mult > 4 {
        return Err(Error::SizeBound(format!(
            "sweep supports up to 6 vertices and multiplicity 4, got {max_n} and {max_mult}"
        )));
    }
    let patterns: Vec<(String, Multigraph)> = FORBIDDEN_PATTERNS[..3]
        .iter()
        .map(|p| Ok((p.name(), p.build()?)))
        .collect::<Result<_>>()?;
    let mut graphs = Vec::new();
    for n in 3..=max_n {
        graphs.extend(enumerate_connected_multigraphs(n, max_mult)?);
    }
    let enumerated = graphs.len();
    let outcomes: Vec<Option<Option<usize>>> = graphs
        .par_iter()
        .map(|g| {
            if g.edge_connectivity() < ExtNat::Finite(3) {
                return None;
            }
            Some(patterns.iter().position(|(_, h)| is_topological_minor(h, g).is_some()))
        })
        .collect();
    let mut report = Corollary3ecReport {
        max_n,
        max_mult,
        enumerated,
        checked: 0,
        skipped: 0,
        by_pattern: patterns.iter().map(|(name, _)| (name.clone(), 0)).collect(),
        counterexamples: Vec::new(),
    };
    for (g, o) in graphs.into_iter().zip(outcomes) {
        match o {
            None => report.skipped += 1,
            Some(Some(i)) => {
                report.checked += 1;
                *report.by_pattern.get_mut(&patterns[i].0).unwrap() += 1;
            }
            Some(None) => {
                report.checked += 1;
                report.counterexamples.push(g);
            }
        }
    }
    Ok(report)
}

/// Properties checked by [`verify_lemma`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `sn ≥ min(λ, |V|)`, attained by the all-singletons scramble.
    EdgeConnect,
    /// Deleting bridges splits the scramble number as a maximum.
    Bridge,
    /// Restricting a scramble to `G - e`, `e` not a bridge, costs at most 1.
    Restrict,
    /// Subgraphs and topological minors never have larger scramble number;
    /// smoothing keeps it; the topological-minor relation is a preorder.
    Monotone,
    /// Multi-topological minors never have larger scramble number.
    MultiMonotone,
    /// `sn ≤ scw`.
    ScwBound,
    /// `sn(G) - 1 ≤ sn(G - e) ≤ sn(G)` for non-bridges `e`.
    EdgeDeletion,
    /// Adding eggs that contain existing eggs leaves the order unchanged.
    SupersetEggs,
    /// Pairwise minimum cuts give the same egg-cut number as minimising
    /// over all vertex bipartitions.
    EggCut,
}

impl Lemma {
    pub const ALL: [Lemma; 9] = [
        Lemma::EdgeConnect,
        Lemma::Bridge,
        Lemma::Restrict,
        Lemma::Monotone,
        Lemma::MultiMonotone,
        Lemma::ScwBound,
        Lemma::EdgeDeletion,
        Lemma::SupersetEggs,
        Lemma::EggCut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::EdgeConnect => "edgeconnect",
            Lemma::Bridge => "bridge",
            Lemma::Restrict => "restrict",
            Lemma::Monotone => "monotone",
            Lemma::MultiMonotone => "multi-monotone",
            Lemma::ScwBound => "scw-bound",
            Lemma::EdgeDeletion => "edge-deletion",
            Lemma::SupersetEggs => "superset-eggs",
            Lemma::EggCut => "egg-cut",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub graph: Multigraph,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub graphs: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

/// `count` graphs taken at a fixed stride from the enumeration of
/// connected `n`-vertex multigraphs with multiplicities at most
/// `max_mult`: positions `0, stride, 2 stride, ...`.
pub fn pseudorandom_sample(count: usize, n: usize, max_mult: u32, stride: usize) -> Result<Vec<Multigraph>> {
    if stride == 0 {
        return Err(Error::InvalidParameter("stride must be positive".into()));
    }
    Ok(enumerate_connected_multigraphs(n, max_mult)?
        .step_by(stride)
        .take(count)
        .collect())
}

/// Runs `lemma` on every connected multigraph with at most `max_n`
/// vertices and multiplicities at most `max_mult`.
pub fn verify_lemma(lemma: Lemma, max_n: usize, max_mult: u32) -> Result<LemmaReport> {
    let graphs: Vec<Multigraph> = enumerate_up_to(max_n, max_mult)?.collect();
    verify_lemma_on(lemma, &graphs)
}

/// Runs `lemma` on the given connected graphs.
pub fn verify_lemma_on(lemma: Lemma, graphs: &[Multigraph]) -> Result<LemmaReport> {
    let per_graph: Vec<Result<(usize, Vec<String>)>> = graphs.par_iter().map(|g| check_graph(lemma, g)).collect();
    let mut report = LemmaReport {
        lemma,
        graphs: graphs.len(),
        checks: 0,
        violations: Vec::new(),
    };
    for (g, r) in graphs.iter().zip(per_graph) {
        let (checks, bad) = r?;
        report.checks += checks;
        report.violations.extend(bad.into_iter().map(|detail| Violation {
            graph: g.clone(),
            detail,
        }));
    }
    if lemma == Lemma::Monotone {
        let (checks, bad) = check_minor_pairs(graphs)?;
        report.checks += checks;
        report.violations.extend(bad);
    }
    Ok(report)
}

fn sn(g: &Multigraph) -> Result<u32> {
    scramble_number(g, &SnOptions::default())
}

fn check_graph(lemma: Lemma, g: &Multigraph) -> Result<(usize, Vec<String>)> {
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut expect = |ok: bool, msg: String| {
        checks += 1;
        if !ok {
            bad.push(msg);
        }
    };
    match lemma {
        Lemma::EdgeConnect => {
            let bound = match g.edge_connectivity() {
                ExtNat::Finite(l) => l.min(g.n() as u32),
                ExtNat::Infinite => g.n() as u32,
            };
            let singletons = Scramble::new(g.clone(), (0..g.n()).map(VertexSet::singleton).collect::<Vec<_>>())?;
            let order = singletons.order()?.order;
            expect(
                order == bound,
                format!("singleton scramble has order {order}, expected {bound}"),
            );
            let value = sn(g)?;
            expect(value >= bound, format!("sn = {value} below min(lambda, |V|) = {bound}"));
        }
        Lemma::Bridge => {
            let bridges = g.bridges();
            if !bridges.is_empty() {
                let whole = sn_exact_with(g, &SnOptions::search_only())?.value;
                let mut cut = g.clone();
                for &(u, v) in &bridges {
                    cut = cut.remove_edge(u, v)?;
                }
                let mut parts = 0;
                for c in cut.components() {
                    let (sub, _) = cut.induced_subgraph(c);
                    parts = parts.max(sn_exact_with(&sub, &SnOptions::search_only())?.value);
                }
                expect(
                    whole == parts,
                    format!("sn = {whole} but the bridge-free parts reach {parts}"),
                );
            }
        }
        Lemma::Restrict => {
            let s = sn_exact_with(g, &SnOptions::default())?.lower_witness;
            let order = s.order()?.order;
            if order >= 2 {
                let bridges = g.bridges();
                for (u, v, _) in g.edges() {
                    if bridges.contains(&(u, v)) {
                        continue;
                    }
                    let r = s.restrict_to_edge_deleted(u, v)?;
                    let got = if r.is_empty() { 0 } else { r.order()?.order };
                    expect(
                        got + 1 >= order,
                        format!("restriction to G - ({u},{v}) has order {got}, scramble had {order}"),
                    );
                }
            }
        }
        Lemma::Monotone => {
            let value = sn(g)?;
            for (u, v, _) in g.edges() {
                let h = g.remove_edge(u, v)?;
                let w = sn(&h)?;
                expect(w <= value, format!("deleting ({u},{v}) raises sn from {value} to {w}"));
            }
            if g.n() > 1 {
                for v in 0..g.n() {
                    let h = g.remove_vertex(v)?;
                    let w = sn(&h)?;
                    expect(w <= value, format!("deleting vertex {v} raises sn from {value} to {w}"));
                }
            }
            for v in 0..g.n() {
                if let Ok(h) = smooth(g, v) {
                    let w = sn(&h)?;
                    expect(w == value, format!("smoothing {v} changes sn from {value} to {w}"));
                }
            }
        }
        Lemma::MultiMonotone => {
            let value = sn(g)?;
            for v in 0..g.n() {
                if let Ok(h) = multi_smooth(g, v) {
                    let w = sn(&h)?;
                    expect(w <= value, format!("multi-smoothing {v} raises sn from {value} to {w}"));
                }
            }
            for h in multi_topological_minors(g)?.iter().skip(1) {
                let w = sn(h)?;
                expect(w <= value, format!("multi-minor {h:?} has sn {w} above {value}"));
            }
        }
        Lemma::ScwBound => {
            let value = sn(g)?;
            let (w, d) = screewidth_exact(g)?;
            expect(value <= w, format!("sn = {value} exceeds scw = {w}"));
            let dw = d.width(g)?;
            expect(
                dw == w,
                format!("optimal decomposition evaluates to width {dw}, not {w}"),
            );
        }
        Lemma::EdgeDeletion => {
            let value = sn(g)?;
            let bridges = g.bridges();
            for (u, v, _) in g.edges() {
                if bridges.contains(&(u, v)) {
                    continue;
                }
                let w = sn(&g.remove_edge(u, v)?)?;
                expect(
                    w <= value && w + 1 >= value,
                    format!("sn(G - ({u},{v})) = {w} outside [{}, {value}]", value.saturating_sub(1)),
                );
            }
        }
        Lemma::SupersetEggs => {
            let s = sn_exact_with(g, &SnOptions::default())?.lower_witness;
            let base = s.order()?.order;
            let sets = g.connected_subsets();
            for &c in &sets {
                if s.eggs().contains(&c) || !s.eggs().iter().any(|e| e.is_subset(c)) {
                    continue;
                }
                let mut eggs = s.eggs().to_vec();
                eggs.push(c);
                let bigger = Scramble::new(g.clone(), eggs)?;
                let o = bigger.order()?.order;
                expect(
                    o == base,
                    format!("adding superset egg {c:?} changes order {base} to {o}"),
                );
                let back = bigger.minimal_eggs().order()?.order;
                expect(
                    back == o,
                    format!("dropping non-minimal eggs changes order {o} to {back}"),
                );
            }
        }
        Lemma::EggCut => {
            let mut scrambles = vec![
                sn_exact_with(g, &SnOptions::default())?.lower_witness,
                Scramble::new(g.clone(), (0..g.n()).map(VertexSet::singleton).collect::<Vec<_>>())?,
            ];
            if g.bundle_count() > 0 {
                scrambles.push(uniform_scramble_2(g)?);
            }
            // every connected set paired with its complement's components
            for c in g.connected_subsets() {
                let mut eggs = vec![c];
                let (rest, map) = g.induced_subgraph(g.vertices().difference(c));
                eggs.extend(
                    rest.components()
                        .into_iter()
                        .map(|p| p.iter().map(|v| map[v]).collect::<VertexSet>()),
                );
                scrambles.push(Scramble::new(g.clone(), eggs)?);
            }
            for s in &scrambles {
                let (fast, _) = s.egg_cut_number()?;
                let slow = egg_cut_by_definition(g, s.eggs());
                expect(
                    fast == slow,
                    format!(
                        "egg-cut number {fast} by flows, {slow} by definition for {:?}",
                        s.eggs()
                    ),
                );
            }
        }
    }
    Ok((checks, bad))
}

/// Minimum over all vertex sets `A` with an egg inside `A` and an egg
/// inside its complement of the number of edges leaving `A`.
fn egg_cut_by_definition(g: &Multigraph, eggs: &[VertexSet]) -> ExtNat {
    let full = g.vertices();
    let mut best = ExtNat::Infinite;
    for a in 1..full.bits() {
        let a = VertexSet(a);
        let b = full.difference(a);
        if eggs.iter().any(|e| e.is_subset(a)) && eggs.iter().any(|e| e.is_subset(b)) {
            best = best.min(ExtNat::Finite(g.cut_size(a)));
        }
    }
    best
}

/// Topological-minor pairs within the list: monotonicity of sn,
/// reflexivity, and transitivity of the relation.
fn check_minor_pairs(graphs: &[Multigraph]) -> Result<(usize, Vec<Violation>)> {
    let values: Vec<u32> = graphs.par_iter().map(sn).collect::<Result<_>>()?;
    let rows: Vec<Vec<bool>> = graphs
        .par_iter()
        .map(|g| graphs.iter().map(|h| is_topological_minor(h, g).is_some()).collect())
        .collect();
    let mut checks = 0;
    let mut out = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        checks += 1;
        if !rows[i][i] {
            out.push(Violation {
                graph: g.clone(),
                detail: "graph is not a topological minor of itself".into(),
            });
        }
        for (j, h) in graphs.iter().enumerate() {
            if !rows[i][j] {
                continue;
            }
            checks += 1;
            if values[j] > values[i] {
                out.push(Violation {
                    graph: g.clone(),
                    detail: format!("topological minor {h:?} has sn {} above {}", values[j], values[i]),
                });
            }
            for (l, f) in graphs.iter().enumerate() {
                if rows[j][l] {
                    checks += 1;
                    if !rows[i][l] {
                        out.push(Violation {
                            graph: g.clone(),
                            detail: format!("{f:?} is below {h:?} which is below this graph, but not below it"),
                        });
                    }
                }
            }
        }
    }
    Ok((checks, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn corollary_on_three_vertices() {
        let r = verify_corollary_3ec(3, 3).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(r.checked >= 2);
        assert!(r.by_pattern["P_{3;3}"] >= 1);
        assert!(verify_corollary_3ec(7, 1).is_err());
    }

    #[test]
    fn sample_is_deterministic() {
        let a = pseudorandom_sample(5, 4, 2, 3).unwrap();
        let b = pseudorandom_sample(5, 4, 2, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
    }
}
