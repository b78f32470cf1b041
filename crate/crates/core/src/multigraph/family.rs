//! Named graph families.
//!
//! Cycles are labelled in cyclic order `0, 1, ..., n-1`; bundle `i` joins
//! vertex `i` to vertex `i + 1 (mod n)`.

use super::Multigraph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Complete graph `K_n`.
    Complete { n: usize },
    /// Simple path on `n` vertices.
    Path { n: usize },
    /// Simple cycle on `n >= 3` vertices.
    Cycle { n: usize },
    /// `P_{n;k}`: path on `n` vertices with every edge repeated `k` times.
    /// `P_{2;k}` is the dipole with `k` parallel edges.
    MultiPath { n: usize, k: u32 },
    /// `C_{3;2,2,1}`: triangle with bundles `2, 2, 1`.
    Triangle221,
    /// `LL_6`: a 6-cycle whose bundles alternate `2, 1, 2, 1, 2, 1`.
    LoopOfLoops,
    /// `C_{n;k}`: cycle on `n` vertices, each edge with `k` parallel copies.
    MultiCycle { n: usize, k: u32 },
    /// `C̃_{n;k}`: cycle on `n` vertices whose bundles `0..2k` carry `k + 1`
    /// copies and the rest `k`.
    TildeCycle { n: usize, k: u32 },
    /// Wheel: a cycle on `rim` vertices `0..rim` plus hub `rim` joined to all.
    Wheel { rim: usize },
    /// `K_n` minus the Hamiltonian cycle `0, 1, ..., n-1`.
    CompleteMinusCycle { n: usize },
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

impl Family {
    /// Parses a family id as used on the command line.
    pub fn from_id(id: &str, n: Option<usize>, k: Option<u32>) -> Result<Self> {
        let n_req = || n.ok_or_else(|| Error::InvalidParameter(format!("family {id} needs --n")));
        let k_req = || k.ok_or_else(|| Error::InvalidParameter(format!("family {id} needs --k")));
        Ok(match id {
            "K" | "complete" => Family::Complete { n: n_req()? },
            "path" => Family::Path { n: n_req()? },
            "cycle" => Family::Cycle { n: n_req()? },
            "P" | "multipath" => Family::MultiPath {
                n: n_req()?,
                k: k_req()?,
            },
            "K4" => Family::Complete { n: 4 },
            "P33" => Family::MultiPath { n: 3, k: 3 },
            "C3221" => Family::Triangle221,
            "LL6" => Family::LoopOfLoops,
            "C" | "multicycle" => Family::MultiCycle {
                n: n_req()?,
                k: k_req()?,
            },
            "Ctilde" | "tildecycle" => Family::TildeCycle {
                n: n_req()?,
                k: k_req()?,
            },
            "W5" => Family::Wheel { rim: 5 },
            "wheel" => Family::Wheel { rim: n_req()? },
            "KminusC" => Family::CompleteMinusCycle { n: n_req()? },
            _ => return Err(Error::InvalidParameter(format!("unknown family {id:?}"))),
        })
    }

    /// Short display name.
    pub fn name(&self) -> String {
        match *self {
            Family::Complete { n } => format!("K{n}"),
            Family::Path { n } => format!("P{n}"),
            Family::Cycle { n } => format!("C{n}"),
            Family::MultiPath { n, k } => format!("P_{{{n};{k}}}"),
            Family::Triangle221 => "C_{3;2,2,1}".into(),
            Family::LoopOfLoops => "LL6".into(),
            Family::MultiCycle { n, k } => format!("C_{{{n};{k}}}"),
            Family::TildeCycle { n, k } => format!("Ctilde_{{{n};{k}}}"),
            Family::Wheel { rim } => format!("W{rim}"),
            Family::CompleteMinusCycle { n } => format!("K{n}-C{n}"),
        }
    }

    pub fn build(&self) -> Result<Multigraph> {
        match *self {
            Family::Complete { n } => {
                need(n >= 1, "K_n needs n >= 1")?;
                let mut g = Multigraph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edges(u, v, 1)?;
                    }
                }
                Ok(g)
            }
            Family::Path { n } => {
                need(n >= 1, "path needs n >= 1")?;
                Multigraph::from_pairs(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle { n } => {
                need(n >= 3, "simple cycle needs n >= 3")?;
                cycle(&vec![1; n])
            }
            Family::MultiPath { n, k } => {
                need(n >= 2, "P_{n;k} needs n >= 2")?;
                need(k >= 1, "P_{n;k} needs k >= 1")?;
                Multigraph::new(n, (1..n).map(|i| (i - 1, i, k)))
            }
            Family::Triangle221 => cycle(&[2, 2, 1]),
            Family::LoopOfLoops => cycle(&[2, 1, 2, 1, 2, 1]),
            Family::MultiCycle { n, k } => {
                need(k >= 2, "C_{n;k} needs k >= 2")?;
                need(n >= 2 * k as usize, "C_{n;k} needs n >= 2k")?;
                cycle(&vec![k; n])
            }
            Family::TildeCycle { n, k } => {
                need(k >= 2, "Ctilde_{n;k} needs k >= 2")?;
                need(n >= 3 * k as usize, "Ctilde_{n;k} needs n >= 3k")?;
                cycle(&tilde_bundles(n, k))
            }
            Family::Wheel { rim } => {
                need(rim >= 3, "wheel needs at least 3 rim vertices")?;
                let mut g = cycle_on(rim + 1, &vec![1; rim])?;
                for v in 0..rim {
                    g.add_edges(v, rim, 1)?;
                }
                Ok(g)
            }
            Family::CompleteMinusCycle { n } => {
                need(n >= 5, "K_n minus a Hamiltonian cycle needs n >= 5 to be connected")?;
                let mut g = Multigraph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        let cyc = v == u + 1 || (u == 0 && v == n - 1);
                        if !cyc {
                            g.add_edges(u, v, 1)?;
                        }
                    }
                }
                Ok(g)
            }
        }
    }
}

/// Bundle multiplicities of `C̃_{n;k}` in cyclic order.
pub(crate) fn tilde_bundles(n: usize, k: u32) -> Vec<u32> {
    (0..n).map(|i| if i < 2 * k as usize { k + 1 } else { k }).collect()
}

/// Cycle whose bundle `i` joins `i` and `i + 1 (mod len)` with the given multiplicity.
pub(crate) fn cycle(bundles: &[u32]) -> Result<Multigraph> {
    cycle_on(bundles.len(), bundles)
}

fn cycle_on(n: usize, bundles: &[u32]) -> Result<Multigraph> {
    let len = bundles.len();
    let mut g = Multigraph::empty(n)?;
    for (i, &m) in bundles.iter().enumerate() {
        g.add_edges(i, (i + 1) % len, m)?;
    }
    Ok(g)
}
