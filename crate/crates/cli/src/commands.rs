//! One function per subcommand. Each returns the result fields of the run
//! report together with an exit code.

use crate::report::{relative_to, write_json, CmdResult, Failure, Inputs, Outcome, EXIT_NOT_FOUND, EXIT_VIOLATION};
use serde_json::{json, Value};
use snkit::io::{
    certificate_to_value, decomposition_from_value, decomposition_to_value, graph_from_value, graph_to_value,
    scramble_from_json, scramble_to_value,
};
use snkit::screewidth::{canonical_decomposition, screewidth_exact, TreeCutDecomposition};
use snkit::sn_solver::{
    classify_sn_le_2, dsn_exact_with, is_k_scramble_minimal, sn_exact_with, verify_corollary_3ec, verify_lemma,
    Deadline, Lemma, LemmaReport, SnOptions, UpperWitness,
};
use snkit::topo_minor::{is_multi_topological_minor, is_topological_minor};
use snkit::{Error, Family, Multigraph};
use std::path::{Path, PathBuf};

/// Shared state for one invocation.
pub struct Ctx {
    pub inputs: Inputs,
    pub deadline: Deadline,
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
}

/// A decomposition file that also carries its graph, so `width` can read it
/// on its own.
pub fn decomposition_file(g: &Multigraph, d: &TreeCutDecomposition) -> Value {
    let mut v = decomposition_to_value(d);
    v["graph"] = graph_to_value(g);
    v
}

pub fn family(id: &str, n: Option<usize>, k: Option<u32>, out: Option<&Path>) -> CmdResult<Outcome> {
    let f = Family::from_id(id, n, k)?;
    let g = f.build()?;
    let graph = graph_to_value(&g);
    if let Some(out) = out {
        write_json(out, &graph)?;
    }
    Ok(Outcome::ok(json!({
        "family": f.name(),
        "n": g.n(),
        "edges": g.edge_count(),
        "graph": graph,
        "out": out.map(|p| p.display().to_string()),
    })))
}

pub fn canonical_decomp(
    id: &str,
    n: Option<usize>,
    k: Option<u32>,
    bundle: usize,
    out: Option<&Path>,
) -> CmdResult<Outcome> {
    let f = Family::from_id(id, n, k)?;
    let (h, d) = canonical_decomposition(f, bundle)?;
    let width = d.width(&h)?;
    let file = decomposition_file(&h, &d);
    if let Some(out) = out {
        write_json(out, &file)?;
    }
    Ok(Outcome::ok(json!({
        "family": f.name(),
        "deleted_bundle": bundle,
        "width": width,
        "decomposition": file,
        "out": out.map(|p| p.display().to_string()),
    })))
}

pub fn topominor(ctx: &Ctx, pattern: &Path, host: &Path, multi: bool) -> CmdResult<Outcome> {
    let h = ctx.inputs.graph(pattern)?;
    let g = ctx.inputs.graph(host)?;
    if multi {
        let found = is_multi_topological_minor(&h, &g)?;
        let exit = if found { 0 } else { EXIT_NOT_FOUND };
        return Ok(Outcome::with_exit(json!({ "found": found, "multi": true }), exit));
    }
    match is_topological_minor(&h, &g) {
        Some(model) => {
            model.verify(&h, &g)?;
            Ok(Outcome::ok(json!({
                "found": true,
                "multi": false,
                "branch_map": model.branch_map,
                "path_map": to_value(&model.path_map),
            })))
        }
        None => Ok(Outcome::with_exit(
            json!({ "found": false, "multi": false }),
            EXIT_NOT_FOUND,
        )),
    }
}

pub fn order(ctx: &Ctx, scramble: &Path) -> CmdResult<Outcome> {
    let text = ctx.inputs.read(scramble)?;
    let load = |p: &str| {
        ctx.inputs
            .graph(&relative_to(scramble, p))
            .map_err(|f| Error::Parse(f.message()))
    };
    let s = scramble_from_json(&text, load)?;
    let o = s.order()?;
    Ok(Outcome::ok(json!({
        "eggs": s.len(),
        "h": o.hitting,
        "e": to_value(o.egg_cut),
        "order": o.order,
        "hitting_set": to_value(o.hitting_set),
        "egg_cut_witness": to_value(&o.egg_cut_witness),
    })))
}

pub fn scw(ctx: &Ctx, graph: &Path, certify: bool, witness_dir: &Path) -> CmdResult<Outcome> {
    let g = ctx.inputs.graph(graph)?;
    let (w, d) = screewidth_exact(&g)?;
    let file = decomposition_file(&g, &d);
    let mut out = json!({ "scw": w, "decomposition": file });
    if certify {
        let checked = d.width(&g)?;
        if checked != w {
            return Err(Failure::Usage(format!("decomposition evaluates to {checked}, not {w}")));
        }
        let path = witness_dir.join(format!("{}.scw.decomp.json", stem(graph)));
        write_json(&path, &file)?;
        out["witnesses"] = json!({ "upper": path.display().to_string() });
    }
    Ok(Outcome::ok(out))
}

pub fn width(ctx: &Ctx, decomp: &Path, graph: Option<&Path>) -> CmdResult<Outcome> {
    let text = ctx.inputs.read(decomp)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", decomp.display())))?;
    let d = decomposition_from_value(&v)?;
    let g = match (graph, v.get("graph")) {
        (Some(p), _) => ctx.inputs.graph(p)?,
        (None, Some(Value::String(p))) => ctx.inputs.graph(&relative_to(decomp, p))?,
        (None, Some(inline)) => graph_from_value(inline)?,
        (None, None) => return Err(Failure::Usage("the decomposition names no graph; pass --graph".into())),
    };
    match d.width(&g) {
        Ok(w) => {
            let weight = |edges: Vec<(usize, usize, u32)>| edges.iter().map(|e| e.2).sum::<u32>();
            let links = (0..d.links.len())
                .map(|l| {
                    let (a, b) = d.links[l];
                    Ok(json!({ "link": [a, b], "adhesion": weight(d.link_adhesion(&g, l)?) }))
                })
                .collect::<CmdResult<Vec<Value>>>()?;
            let nodes = (0..d.bags.len())
                .map(|b| Ok(json!({ "node": b, "bag": d.bags[b].len(), "adhesion": weight(d.node_adhesion(&g, b)?) })))
                .collect::<CmdResult<Vec<Value>>>()?;
            Ok(Outcome::ok(json!({
                "valid": true,
                "width": w,
                "link_adhesions": links,
                "node_adhesions": nodes,
            })))
        }
        Err(Error::InvalidDecomposition(m)) => Ok(Outcome::with_exit(
            json!({ "valid": false, "error": m }),
            EXIT_VIOLATION,
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn sn(ctx: &Ctx, graph: &Path, certify: bool, witness_dir: &Path) -> CmdResult<Outcome> {
    let g = ctx.inputs.graph(graph)?;
    let opts = SnOptions {
        deadline: ctx.deadline.clone(),
        ..SnOptions::default()
    };
    let cert = sn_exact_with(&g, &opts)?;
    let mut out = json!({
        "sn": cert.value,
        "certificate": certificate_to_value(&cert),
    });
    if certify {
        cert.verify(&g)?;
        let lower = witness_dir.join(format!("{}.sn.scramble.json", stem(graph)));
        write_json(&lower, &scramble_to_value(&cert.lower_witness))?;
        let mut witnesses = json!({ "lower": lower.display().to_string() });
        if let UpperWitness::Decomposition(d) = &cert.upper_witness {
            let upper = witness_dir.join(format!("{}.sn.decomp.json", stem(graph)));
            write_json(&upper, &decomposition_file(&g, d))?;
            witnesses["upper"] = Value::from(upper.display().to_string());
        }
        out["witnesses"] = witnesses;
        out["verified"] = Value::from(true);
    }
    Ok(Outcome::ok(out))
}

pub fn dsn(ctx: &Ctx, graph: &Path, certify: bool, witness_dir: &Path) -> CmdResult<Outcome> {
    let g = ctx.inputs.graph(graph)?;
    let r = dsn_exact_with(&g, &ctx.deadline)?;
    let mut out = json!({ "dsn": r.value, "witness": scramble_to_value(&r.witness) });
    if certify {
        let o = r.witness.order()?;
        if !r.witness.is_disjoint() || o.order != r.value {
            return Err(Failure::Usage("disjoint witness failed its recheck".into()));
        }
        let path = witness_dir.join(format!("{}.dsn.scramble.json", stem(graph)));
        write_json(&path, &scramble_to_value(&r.witness))?;
        out["witnesses"] = json!({ "lower": path.display().to_string() });
        out["verified"] = Value::from(true);
    }
    Ok(Outcome::ok(out))
}

pub fn classify(ctx: &Ctx, graph: &Path) -> CmdResult<Outcome> {
    let g = ctx.inputs.graph(graph)?;
    let r = classify_sn_le_2(&g)?;
    let witness = r.witness().map(|(p, _)| p.to_string());
    let mut out = to_value(&r);
    out["witness_pattern"] = to_value(witness);
    Ok(Outcome::ok(out))
}

pub fn minimal(ctx: &Ctx, graph: &Path, k: u32) -> CmdResult<Outcome> {
    let g = ctx.inputs.graph(graph)?;
    let r = is_k_scramble_minimal(&g, k)?;
    Ok(Outcome::ok(json!({
        "k": r.k,
        "minimal": r.minimal,
        "lower_witness": r.lower_witness.as_ref().map(scramble_to_value),
        "smoothable": r.smoothable,
        "edge_checks": to_value(&r.edge_checks),
    })))
}

pub fn verify_corollary(max_n: usize, max_mult: u32) -> CmdResult<Outcome> {
    let r = verify_corollary_3ec(max_n, max_mult)?;
    let ok = r.counterexamples.is_empty();
    let out = json!({
        "property": "corollary-3ec",
        "verified": ok,
        "max_n": r.max_n,
        "max_mult": r.max_mult,
        "enumerated": r.enumerated,
        "checked": r.checked,
        "skipped": r.skipped,
        "by_pattern": to_value(&r.by_pattern),
        "counterexamples": r.counterexamples.iter().map(graph_to_value).collect::<Vec<_>>(),
    });
    Ok(Outcome::with_exit(out, if ok { 0 } else { EXIT_VIOLATION }))
}

pub fn lemma_report_value(r: &LemmaReport) -> Value {
    json!({
        "property": r.lemma.name(),
        "verified": r.violations.is_empty(),
        "graphs": r.graphs,
        "checks": r.checks,
        "violations": r.violations.iter().map(|v| json!({
            "graph": graph_to_value(&v.graph),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn verify_lemma_cmd(name: &str, max_n: usize, max_mult: u32) -> CmdResult<Outcome> {
    let lemma: Lemma = name.parse()?;
    let r = verify_lemma(lemma, max_n, max_mult)?;
    let mut out = lemma_report_value(&r);
    out["max_n"] = Value::from(max_n);
    out["max_mult"] = Value::from(max_mult);
    let exit = if r.violations.is_empty() { 0 } else { EXIT_VIOLATION };
    Ok(Outcome::with_exit(out, exit))
}

/// Default directory for witness files.
pub fn default_witness_dir() -> PathBuf {
    PathBuf::from(".")
}
