use crate::error::{Error, Result};
use crate::multigraph::{Family, Multigraph};
use crate::topo_minor::{is_topological_minor, EmbeddingModel};
use serde::Serialize;

/// The graphs of scramble number 3 that every graph of scramble number at
/// least 3 contains as a topological minor.
pub const FORBIDDEN_PATTERNS: [Family; 4] = [
    Family::Complete { n: 4 },
    Family::MultiPath { n: 3, k: 3 },
    Family::Triangle221,
    Family::LoopOfLoops,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "sn=1")]
    One,
    #[serde(rename = "sn=2")]
    Two,
    #[serde(rename = "sn>=3")]
    AtLeastThree,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::One => "sn=1",
            Verdict::Two => "sn=2",
            Verdict::AtLeastThree => "sn>=3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub pattern: String,
    pub embedding: Option<EmbeddingModel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Pattern searches in the order they ran. Empty for trees; ends with
    /// the first embedding found for `sn>=3`; all four negative for `sn=2`.
    pub checks: Vec<PatternCheck>,
}

impl ClassificationResult {
    /// The pattern and embedding behind an `sn>=3` verdict.
    pub fn witness(&self) -> Option<(&str, &EmbeddingModel)> {
        self.checks
            .iter()
            .find_map(|c| c.embedding.as_ref().map(|e| (c.pattern.as_str(), e)))
    }
}

/// Decides whether a connected multigraph has scramble number 1, 2 or at
/// least 3: trees have 1, other graphs have 2 unless one of the four
/// patterns is a topological minor.
pub fn classify_sn_le_2(g: &Multigraph) -> Result<ClassificationResult> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_tree() {
        return Ok(ClassificationResult {
            verdict: Verdict::One,
            checks: vec![],
        });
    }
    let mut checks = Vec::new();
    for p in FORBIDDEN_PATTERNS {
        let h = p.build()?;
        let embedding = is_topological_minor(&h, g);
        let found = embedding.is_some();
        checks.push(PatternCheck {
            pattern: p.name(),
            embedding,
        });
        if found {
            return Ok(ClassificationResult {
                verdict: Verdict::AtLeastThree,
                checks,
            });
        }
    }
    Ok(ClassificationResult {
        verdict: Verdict::Two,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let tree = Family::Path { n: 5 }.build().unwrap();
        assert_eq!(classify_sn_le_2(&tree).unwrap().verdict, Verdict::One);
        let c5 = Family::Cycle { n: 5 }.build().unwrap();
        let r = classify_sn_le_2(&c5).unwrap();
        assert_eq!(r.verdict, Verdict::Two);
        assert_eq!(r.checks.len(), 4);
        let w5 = Family::Wheel { rim: 5 }.build().unwrap();
        let r = classify_sn_le_2(&w5).unwrap();
        assert_eq!(r.verdict, Verdict::AtLeastThree);
        let (name, emb) = r.witness().unwrap();
        assert_eq!(name, Family::Complete { n: 4 }.name());
        emb.verify(&Family::Complete { n: 4 }.build().unwrap(), &w5).unwrap();
        assert_eq!(
            classify_sn_le_2(&Multigraph::empty(2).unwrap()).unwrap_err(),
            Error::Disconnected
        );
    }
}
