use super::{Multigraph, VertexSet};
use std::collections::VecDeque;

/// Result of a minimum cut computation between two vertex sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowCut {
    /// Maximum number of edge-disjoint paths, equal to the minimum cut.
    pub value: u32,
    /// Vertices reachable from the sources in the final residual graph.
    pub source_side: VertexSet,
}

/// Maximum flow from `sources` to `sinks` with one unit of capacity per
/// parallel edge. Both sets are treated as contracted terminals and must be
/// disjoint and nonempty.
pub fn max_flow(g: &Multigraph, sources: VertexSet, sinks: VertexSet) -> FlowCut {
    debug_assert!(sources.is_disjoint(sinks));
    debug_assert!(!sources.is_empty() && !sinks.is_empty());
    let n = g.n();
    let s = n;
    let t = n + 1;
    let size = n + 2;
    const BIG: i64 = i64::MAX / 4;
    let mut cap = vec![0i64; size * size];
    for (u, v, m) in g.edges() {
        cap[u * size + v] += m as i64;
        cap[v * size + u] += m as i64;
    }
    for v in sources.iter() {
        cap[s * size + v] = BIG;
    }
    for v in sinks.iter() {
        cap[v * size + t] = BIG;
    }
    let mut value = 0i64;
    let mut parent = vec![usize::MAX; size];
    loop {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..size {
                if parent[v] == usize::MAX && cap[u * size + v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            break;
        }
        let mut bottleneck = BIG;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u * size + v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u * size + v] -= bottleneck;
            cap[v * size + u] += bottleneck;
            v = u;
        }
        value += bottleneck;
    }
    let source_side: VertexSet = (0..n).filter(|&v| parent[v] != usize::MAX).collect();
    FlowCut {
        value: value as u32,
        source_side,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    #[test]
    fn cut_matches_source_side() {
        let g = Family::TildeCycle { n: 6, k: 2 }.build().unwrap();
        let f = max_flow(&g, VertexSet::singleton(0), VertexSet::singleton(3));
        assert_eq!(f.value, g.cut_size(f.source_side));
        assert!(f.source_side.contains(0) && !f.source_side.contains(3));
        assert_eq!(f.value, 5);
    }

    #[test]
    fn disconnected_terminals() {
        let g = Multigraph::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let f = max_flow(&g, VertexSet::singleton(0), VertexSet::singleton(3));
        assert_eq!(f.value, 0);
    }
}
