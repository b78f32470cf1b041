//! JSON and text formats.
//!
//! All JSON output is canonical: object keys sorted, no whitespace, edge
//! triples `[u, v, m]` with `u < v` in increasing order, vertex lists
//! sorted. Parsing then serializing a canonical document gives back the
//! same bytes.
//!
//! * graph: `{"edges":[[0,1,2],[1,2,1]],"n":3}`
//! * scramble: `{"eggs":[[0],[1,2]],"graph":<graph or path string>}`
//! * decomposition: `{"bags":{"0":[0,1],"1":[]},"tree_links":[[0,1]]}`
//! * text graph: one `u v [m]` per line, `#` starts a comment, and an
//!   optional `n N` line fixes the vertex count (otherwise the largest
//!   index plus one).

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexSet, MAX_VERTICES};
use crate::scramble::Scramble;
use crate::screewidth::TreeCutDecomposition;
use crate::sn_solver::{SnCertificate, UpperWitness};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn graph_to_value(g: &Multigraph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(u, v, m)| json!([u, v, m])).collect::<Vec<_>>(),
    })
}

pub fn graph_to_json(g: &Multigraph) -> String {
    graph_to_value(g).to_string()
}

pub fn graph_from_value(v: &Value) -> Result<Multigraph> {
    let obj = v.as_object().ok_or_else(|| perr("graph must be a JSON object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| perr("graph needs a non-negative integer \"n\""))? as usize;
    if n > MAX_VERTICES {
        return Err(Error::SizeBound(format!(
            "at most {MAX_VERTICES} vertices supported, got {n}"
        )));
    }
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("graph needs an \"edges\" array"))?;
    let mut g = Multigraph::empty(n)?;
    for e in edges {
        let t = e
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| perr(format!("edge {e} is not a [u, v, multiplicity] triple")))?;
        let num = |x: &Value| {
            x.as_u64()
                .ok_or_else(|| perr(format!("edge {e} has a non-integer entry")))
        };
        let (u, v, m) = (num(&t[0])? as usize, num(&t[1])? as usize, num(&t[2])?);
        if m == 0 || m > u32::MAX as u64 {
            return Err(perr(format!("edge {e} has multiplicity out of range")));
        }
        if u < n && v < n && u != v && g.multiplicity(u, v) > 0 {
            return Err(perr(format!("pair ({u}, {v}) listed twice")));
        }
        g.add_edges(u, v, m as u32).map_err(|err| perr(err.to_string()))?;
    }
    Ok(g)
}

pub fn graph_from_json(s: &str) -> Result<Multigraph> {
    let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    graph_from_value(&v)
}

pub fn graph_from_text(s: &str) -> Result<Multigraph> {
    let mut n: Option<usize> = None;
    let mut triples = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || {
            perr(format!(
                "line {}: expected `u v [multiplicity]` or `n N`, got {raw:?}",
                lineno + 1
            ))
        };
        if fields[0] == "n" {
            if fields.len() != 2 || n.is_some() {
                return Err(bad());
            }
            n = Some(fields[1].parse().map_err(|_| bad())?);
            continue;
        }
        if !(2..=3).contains(&fields.len()) {
            return Err(bad());
        }
        let u: usize = fields[0].parse().map_err(|_| bad())?;
        let v: usize = fields[1].parse().map_err(|_| bad())?;
        let m: u32 = match fields.get(2) {
            Some(x) => x.parse().map_err(|_| bad())?,
            None => 1,
        };
        if m == 0 {
            return Err(bad());
        }
        triples.push((u, v, m));
    }
    let n = n.unwrap_or_else(|| triples.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0));
    if n > MAX_VERTICES {
        return Err(Error::SizeBound(format!(
            "at most {MAX_VERTICES} vertices supported, got {n}"
        )));
    }
    let mut g = Multigraph::empty(n)?;
    for (u, v, m) in triples {
        g.add_edges(u, v, m).map_err(|e| perr(e.to_string()))?;
    }
    Ok(g)
}

/// JSON when the first non-blank character is `{`, text edge list otherwise.
pub fn parse_graph(s: &str) -> Result<Multigraph> {
    if s.trim_start().starts_with('{') {
        graph_from_json(s)
    } else {
        graph_from_text(s)
    }
}

fn set_value(s: VertexSet) -> Value {
    Value::from(s.to_vec())
}

fn set_from_value(v: &Value, what: &str) -> Result<VertexSet> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr(format!("{what} must be an array of vertices")))?;
    let mut out = VertexSet::EMPTY;
    for x in arr {
        let i = x
            .as_u64()
            .filter(|&i| (i as usize) < MAX_VERTICES)
            .ok_or_else(|| perr(format!("{what} has an invalid vertex {x}")))?;
        out.insert(i as usize);
    }
    Ok(out)
}

pub fn scramble_to_value(s: &Scramble) -> Value {
    json!({
        "graph": graph_to_value(s.host()),
        "eggs": s.eggs().iter().map(|&e| set_value(e)).collect::<Vec<_>>(),
    })
}

pub fn scramble_to_json(s: &Scramble) -> String {
    scramble_to_value(s).to_string()
}

/// Parses a scramble. A string `"graph"` field is handed to `load` (for
/// instance a file path); an object is parsed inline.
pub fn scramble_from_json(s: &str, load: impl Fn(&str) -> Result<Multigraph>) -> Result<Scramble> {
    let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| perr("scramble must be a JSON object"))?;
    let g = match obj.get("graph") {
        Some(Value::String(path)) => load(path)?,
        Some(inline @ Value::Object(_)) => graph_from_value(inline)?,
        _ => return Err(perr("scramble needs a \"graph\" object or path")),
    };
    let eggs = obj
        .get("eggs")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("scramble needs an \"eggs\" array"))?
        .iter()
        .map(|e| set_from_value(e, "egg"))
        .collect::<Result<Vec<_>>>()?;
    Scramble::new(g, eggs)
}

pub fn decomposition_to_value(d: &TreeCutDecomposition) -> Value {
    let bags: Map<String, Value> = d
        .bags
        .iter()
        .enumerate()
        .map(|(i, &b)| (i.to_string(), set_value(b)))
        .collect();
    let mut links: Vec<(usize, usize)> = d.links.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    links.sort_unstable();
    json!({
        "bags": bags,
        "tree_links": links.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn decomposition_to_json(d: &TreeCutDecomposition) -> String {
    decomposition_to_value(d).to_string()
}

pub fn decomposition_from_value(v: &Value) -> Result<TreeCutDecomposition> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr("decomposition must be a JSON object"))?;
    let bags_obj = obj
        .get("bags")
        .and_then(Value::as_object)
        .ok_or_else(|| perr("decomposition needs a \"bags\" object"))?;
    let mut bags = BTreeMap::new();
    for (k, b) in bags_obj {
        let id: usize = k
            .parse()
            .map_err(|_| perr(format!("node id {k:?} is not an integer")))?;
        bags.insert(id, set_from_value(b, "bag")?);
    }
    if bags.keys().copied().ne(0..bags.len()) {
        return Err(perr("node ids must be 0, 1, ..., m-1"));
    }
    let links = obj
        .get("tree_links")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("decomposition needs a \"tree_links\" array"))?
        .iter()
        .map(|l| {
            let pair = l
                .as_array()
                .filter(|p| p.len() == 2)
                .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
                .ok_or_else(|| perr(format!("tree link {l} is not a pair of node ids")))?;
            Ok(pair)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeCutDecomposition::new(links, bags.into_values().collect()))
}

pub fn decomposition_from_json(s: &str) -> Result<TreeCutDecomposition> {
    let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    decomposition_from_value(&v)
}

pub fn certificate_to_value(c: &SnCertificate) -> Value {
    let upper = match &c.upper_witness {
        UpperWitness::Decomposition(d) => json!({ "decomposition": decomposition_to_value(d) }),
        UpperWitness::ExhaustiveSearch { searched } => json!({ "exhaustive_search": searched }),
    };
    json!({
        "value": c.value,
        "lower_witness": scramble_to_value(&c.lower_witness),
        "upper_witness": upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Family;

    #[test]
    fn graph_round_trip_is_byte_stable() {
        let g = Family::TildeCycle { n: 6, k: 2 }.build().unwrap();
        let s = graph_to_json(&g);
        assert_eq!(
            s,
            r#"{"edges":[[0,1,3],[0,5,2],[1,2,3],[2,3,3],[3,4,3],[4,5,2]],"n":6}"#
        );
        let back = graph_from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(graph_to_json(&back), s);
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(graph_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,0,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,1,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,1,1],[1,0,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,5,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            graph_from_json(r#"{"n":65,"edges":[]}"#),
            Err(Error::SizeBound(_))
        ));
    }

    #[test]
    fn text_format() {
        let g = parse_graph("# triangle\n0 1 2\n1 2 2\n2 0 # closing\n").unwrap();
        assert_eq!(g, Family::Triangle221.build().unwrap());
        let isolated = parse_graph("n 4\n0 1\n").unwrap();
        assert_eq!(isolated.n(), 4);
        assert!(matches!(parse_graph("0 1 x\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("0 1 2 3\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn scramble_round_trip() {
        let g = Family::LoopOfLoops.build().unwrap();
        let s = Scramble::new(g.clone(), [VertexSet(0b110), VertexSet(0b11000), VertexSet(0b100001)]).unwrap();
        let text = scramble_to_json(&s);
        let back = scramble_from_json(&text, |_| unreachable!()).unwrap();
        assert_eq!(back, s);
        assert_eq!(scramble_to_json(&back), text);
        let by_path = r#"{"eggs":[[0]],"graph":"g.json"}"#;
        let loaded = scramble_from_json(by_path, |p| {
            assert_eq!(p, "g.json");
            Ok(g.clone())
        })
        .unwrap();
        assert_eq!(loaded.eggs(), &[VertexSet::singleton(0)]);
        assert!(scramble_from_json(r#"{"eggs":[[0,3]],"graph":{"n":6,"edges":[]}}"#, |_| unreachable!()).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let d = TreeCutDecomposition::new(
            vec![(1, 0), (1, 2)],
            vec![VertexSet(0b1), VertexSet::EMPTY, VertexSet(0b110)],
        );
        let text = decomposition_to_json(&d);
        assert_eq!(
            text,
            r#"{"bags":{"0":[0],"1":[],"2":[1,2]},"tree_links":[[0,1],[1,2]]}"#
        );
        let back = decomposition_from_json(&text).unwrap();
        assert_eq!(decomposition_to_json(&back), text);
        assert!(decomposition_from_json(r#"{"bags":{"1":[]},"tree_links":[]}"#).is_err());
    }
}
