use super::{scramble_number_at_least, search, Deadline, MAX_SN_VERTICES};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexSet};
use crate::scramble::Scramble;
use crate::screewidth::{screewidth_exact, MAX_SCW_VERTICES};
use serde::Serialize;

/// Outcome for one edge deletion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub edge: (usize, usize),
    /// Whether the scramble number drops below `k` after deleting one copy.
    pub below_k: bool,
    /// How that was decided.
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub k: u32,
    pub minimal: bool,
    /// A scramble of order at least `k`, if one exists.
    pub lower_witness: Option<Scramble>,
    /// Vertices that could be smoothed over.
    pub smoothable: Vec<usize>,
    /// One entry per bundle, stopping at the first failure.
    pub edge_checks: Vec<EdgeCheck>,
}

/// Decides whether `g` is `k`-scramble minimal: `sn(g) ≥ k`, while every
/// proper topological minor has scramble number below `k`.
///
/// Smoothing never changes the scramble number and every other proper
/// topological minor lies below a single-edge deletion, so it suffices
/// that no vertex can be smoothed and that `sn(g - e) < k` for one edge
/// `e` of every bundle.
pub fn is_k_scramble_minimal(g: &Multigraph, k: u32) -> Result<MinimalityReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > MAX_SN_VERTICES {
        return Err(Error::SizeBound(format!(
            "minimality is checked up to {MAX_SN_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let deadline = Deadline::none();
    let lambda = g.edge_connectivity().finite().unwrap_or(u32::MAX);
    let lower_witness = if lambda.min(g.n() as u32) >= k {
        Some(Scramble::new(
            g.clone(),
            (0..g.n()).map(VertexSet::singleton).collect::<Vec<_>>(),
        )?)
    } else {
        search::sn_at_least(g, k, &deadline)?
    };
    let mut report = MinimalityReport {
        k,
        minimal: false,
        lower_witness,
        smoothable: (0..g.n())
            .filter(|&v| g.degree(v) == 2 && g.neighbors(v).len() == 2)
            .collect(),
        edge_checks: Vec::new(),
    };
    if report.lower_witness.is_none() || !report.smoothable.is_empty() {
        return Ok(report);
    }
    for (u, v, _) in g.edges() {
        let h = g.remove_edge(u, v)?;
        let (below_k, method) = below(&h, k, &deadline)?;
        report.edge_checks.push(EdgeCheck {
            edge: (u, v),
            below_k,
            method,
        });
        if !below_k {
            return Ok(report);
        }
    }
    report.minimal = true;
    Ok(report)
}

fn below(h: &Multigraph, k: u32, deadline: &Deadline) -> Result<(bool, String)> {
    if h.is_connected() && h.n() <= MAX_SCW_VERTICES {
        let (w, _) = screewidth_exact(h)?;
        if w < k {
            return Ok((true, format!("screewidth {w}")));
        }
    }
    let reached = scramble_number_at_least(h, k, deadline)?;
    Ok((!reached, "scramble search".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    #[test]
    fn examples() {
        let c42 = Family::MultiCycle { n: 4, k: 2 }.build().unwrap();
        assert!(is_k_scramble_minimal(&c42, 4).unwrap().minimal);
        let t62 = Family::TildeCycle { n: 6, k: 2 }.build().unwrap();
        assert!(is_k_scramble_minimal(&t62, 5).unwrap().minimal);
        let mut k4p = Multigraph::empty(5).unwrap();
        for u in 0..4 {
            for v in u + 1..4 {
                k4p.add_edges(u, v, 1).unwrap();
            }
        }
        k4p.add_edges(3, 4, 1).unwrap();
        let r = is_k_scramble_minimal(&k4p, 3).unwrap();
        assert!(!r.minimal);
        assert!(r.lower_witness.is_some());
        assert!(!r.edge_checks.last().unwrap().below_k);
        // a simple cycle can be smoothed
        let c5 = Family::Cycle { n: 5 }.build().unwrap();
        let r = is_k_scramble_minimal(&c5, 2).unwrap();
        assert!(!r.minimal && r.smoothable.len() == 5);
        // never minimal above its scramble number
        assert!(!is_k_scramble_minimal(&c42, 5).unwrap().minimal);
        assert!(!is_k_scramble_minimal(&c42, 3).unwrap().minimal);
    }
}
