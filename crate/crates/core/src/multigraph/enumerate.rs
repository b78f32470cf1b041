//! Connected multigraphs up to isomorphism.
//!
//! Simple graphs are generated by vertex augmentation with canonical-form
//! deduplication. Each connected simple graph is then decorated with edge
//! multiplicities, keeping only the lexicographically smallest vector in
//! each orbit of its automorphism group. Two decorated graphs are
//! isomorphic only if their underlying simple graphs are, so the stream
//! holds every isomorphism class exactly once.

use super::canon::{automorphisms, canonical_form};
use super::Multigraph;
use crate::error::{Error, Result};
use std::collections::HashSet;
use std::sync::Mutex;

pub const MAX_ENUM_VERTICES: usize = 7;
pub const MAX_ENUM_MULT: u32 = 4;

static SIMPLE_LEVELS: Mutex<Vec<Vec<Multigraph>>> = Mutex::new(Vec::new());

/// All simple graphs on exactly `n` vertices up to isomorphism.
fn simple_graphs(n: usize) -> Vec<Multigraph> {
    let mut levels = SIMPLE_LEVELS.lock().unwrap();
    if levels.is_empty() {
        levels.push(vec![Multigraph::empty(0).unwrap()]);
    }
    while levels.len() <= n {
        let prev = levels.last().unwrap();
        let m = levels.len() - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in prev {
            for nbrs in 0u64..1 << m {
                let mut h = Multigraph::empty(m + 1).unwrap();
                for (u, v, _) in g.edges() {
                    h.set_multiplicity(u, v, 1);
                }
                for u in 0..m {
                    if nbrs >> u & 1 == 1 {
                        h.set_multiplicity(u, m, 1);
                    }
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(canonical_form(&h).to_graph());
                }
            }
        }
        levels.push(next);
    }
    levels[n].clone()
}

/// Connected simple graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_simple_graphs(n: usize) -> Result<Vec<Multigraph>> {
    check_bounds(n, 1)?;
    Ok(simple_graphs(n).into_iter().filter(|g| g.is_connected()).collect())
}

fn check_bounds(n: usize, max_mult: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("enumeration needs at least one vertex".into()));
    }
    if n > MAX_ENUM_VERTICES {
        return Err(Error::SizeBound(format!(
            "enumeration supports at most {MAX_ENUM_VERTICES} vertices, got {n}"
        )));
    }
    if max_mult == 0 || max_mult > MAX_ENUM_MULT {
        return Err(Error::SizeBound(format!(
            "enumeration supports multiplicities 1..={MAX_ENUM_MULT}, got {max_mult}"
        )));
    }
    Ok(())
}

struct Skeleton {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// For each non-identity automorphism, `inv[j]` is the edge mapped onto edge `j`.
    inverse_edge_perms: Vec<Vec<usize>>,
}

impl Skeleton {
    fn new(g: &Multigraph) -> Self {
        let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
        let index = |u: usize, v: usize| {
            let key = (u.min(v), u.max(v));
            edges.iter().position(|&e| e == key).unwrap()
        };
        let identity: Vec<usize> = (0..g.n()).collect();
        let inverse_edge_perms = automorphisms(g)
            .into_iter()
            .filter(|p| *p != identity)
            .map(|p| {
                let mut inv = vec![0; edges.len()];
                for (i, &(u, v)) in edges.iter().enumerate() {
                    inv[index(p[u], p[v])] = i;
                }
                inv
            })
            .collect();
        Skeleton {
            n: g.n(),
            edges,
            inverse_edge_perms,
        }
    }

    fn is_orbit_minimal(&self, mult: &[u32]) -> bool {
        self.inverse_edge_perms.iter().all(|inv| {
            for j in 0..mult.len() {
                let y = mult[inv[j]];
                if y != mult[j] {
                    return y > mult[j];
                }
            }
            true
        })
    }

    fn build(&self, mult: &[u32]) -> Multigraph {
        Multigraph::new(self.n, self.edges.iter().zip(mult).map(|(&(u, v), &m)| (u, v, m)))
            .expect("skeleton edges are valid")
    }
}

/// Lazy stream of connected multigraphs on exactly `n` vertices with every
/// multiplicity at most `max_mult`, one per isomorphism class.
pub struct MultigraphStream {
    skeletons: std::vec::IntoIter<Multigraph>,
    current: Option<(Skeleton, Vec<u32>, bool)>,
    max_mult: u32,
}

impl Iterator for MultigraphStream {
    type Item = Multigraph;

    fn next(&mut self) -> Option<Multigraph> {
        loop {
            if self.current.is_none() {
                let g = self.skeletons.next()?;
                let sk = Skeleton::new(&g);
                let start = vec![1; sk.edges.len()];
                self.current = Some((sk, start, false));
            }
            let (sk, mult, exhausted) = self.current.as_mut().unwrap();
            while !*exhausted {
                let found = sk.is_orbit_minimal(mult).then(|| sk.build(mult));
                // odometer step, last edge fastest
                let mut i = mult.len();
                loop {
                    if i == 0 {
                        *exhausted = true;
                        break;
                    }
                    i -= 1;
                    if mult[i] < self.max_mult {
                        mult[i] += 1;
                        break;
                    }
                    mult[i] = 1;
                }
                if let Some(g) = found {
                    return Some(g);
                }
            }
            self.current = None;
        }
    }
}

/// Every connected multigraph with exactly `n` vertices and multiplicities
/// at most `max_mult`, once per isomorphism class. Bounded by
/// [`MAX_ENUM_VERTICES`] and [`MAX_ENUM_MULT`].
pub fn enumerate_connected_multigraphs(n: usize, max_mult: u32) -> Result<MultigraphStream> {
    check_bounds(n, max_mult)?;
    Ok(MultigraphStream {
        skeletons: connected_simple_graphs(n)?.into_iter(),
        current: None,
        max_mult,
    })
}

/// Connected multigraphs with `1..=max_n` vertices, smallest first.
pub fn enumerate_up_to(max_n: usize, max_mult: u32) -> Result<impl Iterator<Item = Multigraph>> {
    check_bounds(max_n.max(1), max_mult)?;
    let streams = (1..=max_n)
        .map(|n| enumerate_connected_multigraphs(n, max_mult))
        .collect::<Result<Vec<_>>>()?;
    Ok(streams.into_iter().flatten())
}

/// Collected form of [`enumerate_connected_multigraphs`].
pub fn connected_multigraphs(n: usize, max_mult: u32) -> Result<Vec<Multigraph>> {
    Ok(enumerate_connected_multigraphs(n, max_mult)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    #[test]
    fn tiny_cases() {
        let two = connected_multigraphs(2, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|g| g.multiplicity(0, 1) == 2));
        let three = connected_multigraphs(3, 1).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three
            .iter()
            .any(|g| super::super::are_isomorphic(g, &Family::Path { n: 3 }.build().unwrap())));
        assert!(three
            .iter()
            .any(|g| super::super::are_isomorphic(g, &Family::Cycle { n: 3 }.build().unwrap())));
    }

    #[test]
    fn connected_simple_graph_counts() {
        // OEIS A001349
        let expected = [1, 1, 2, 6, 21, 112];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(connected_simple_graphs(i + 1).unwrap().len(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(enumerate_connected_multigraphs(8, 1).is_err());
        assert!(enumerate_connected_multigraphs(3, 5).is_err());
        assert!(enumerate_connected_multigraphs(0, 1).is_err());
    }
}
