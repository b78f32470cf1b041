//! Canonical labelling of multigraphs by individualisation and refinement.
//!
//! The initial ordered partition groups vertices by weighted degree. Each
//! refinement pass splits cells by the vector of multiplicity sums into
//! every current cell; both steps are invariant under relabelling, so the
//! lexicographically smallest adjacency code over all leaves of the search
//! tree is a canonical form.

use super::Multigraph;

/// Canonical form of a multigraph: its vertex count and the upper triangle
/// of the multiplicity matrix under the canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u32>,
}

impl CanonicalForm {
    /// Rebuilds the canonically labelled graph.
    pub fn to_graph(&self) -> Multigraph {
        let mut g = Multigraph::empty(self.n).expect("canonical form within bounds");
        let mut idx = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.code[idx] > 0 {
                    g.set_multiplicity(u, v, self.code[idx]);
                }
                idx += 1;
            }
        }
        g
    }
}

type Partition = Vec<Vec<usize>>;

fn refine(g: &Multigraph, mut cells: Partition) -> Partition {
    loop {
        let before = cells.len();
        let mut cell_of = vec![0usize; g.n()];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for u in g.neighbors(v).iter() {
                        sig[cell_of[u]] += g.multiplicity(v, u);
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        cells = next;
        if cells.len() == before {
            return cells;
        }
    }
}

fn code_for(g: &Multigraph, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(g.multiplicity(order[i], order[j]));
        }
    }
    code
}

fn search(g: &Multigraph, cells: Partition, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let Some(split) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[split] {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..split]);
        next.push(vec![v]);
        next.push(cells[split].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[split + 1..]);
        search(g, refine(g, next), best);
    }
}

/// Canonical form together with the canonical order: `order[i]` is the
/// original vertex placed at position `i`.
pub fn canonical_labeling(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (CanonicalForm { n: 0, code: vec![] }, vec![]);
    }
    let mut by_degree: Vec<(u32, usize, usize)> = (0..n).map(|v| (g.degree(v), g.neighbors(v).len(), v)).collect();
    by_degree.sort();
    let mut cells: Partition = Vec::new();
    for (i, &(d, b, v)) in by_degree.iter().enumerate() {
        if i > 0 && by_degree[i - 1].0 == d && by_degree[i - 1].1 == b {
            cells.last_mut().unwrap().push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    let mut best = None;
    search(g, refine(g, cells), &mut best);
    let (code, order) = best.expect("search reaches a leaf");
    (CanonicalForm { n, code }, order)
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// All automorphisms of `g` as vertex permutations (`perm[v]` is the image of `v`).
pub fn automorphisms(g: &Multigraph) -> Vec<Vec<usize>> {
    fn extend(g: &Multigraph, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = perm.len();
        if v == g.n() {
            out.push(perm.clone());
            return;
        }
        for w in 0..g.n() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            let ok = (0..v).all(|u| g.multiplicity(u, v) == g.multiplicity(perm[u], w));
            if ok {
                used[w] = true;
                perm.push(w);
                extend(g, perm, used, out);
                perm.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.n()], &mut out);
    out
}
