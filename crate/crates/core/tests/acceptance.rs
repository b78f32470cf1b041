//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! running time against a fixed limit; the test fails if any criterion does.

use rayon::prelude::*;
use snkit::multigraph::{are_isomorphic, canonical_form, enumerate_connected_multigraphs, enumerate_up_to, Family};
use snkit::scramble::uniform_scramble_2;
use snkit::screewidth::{canonical_decomposition, screewidth_exact};
use snkit::sn_solver::{
    classify_sn_le_2, dsn_exact, is_k_scramble_minimal, pseudorandom_sample, scramble_number, sn_exact, sn_exact_with,
    verify_corollary_3ec, verify_lemma_on, Lemma, SnOptions, UpperWitness, Verdict,
};
use snkit::{ExtNat, Multigraph};
use std::collections::HashSet;
use std::time::{Duration, Instant};

const FOUR_GRAPHS: [Family; 4] = [
    Family::Complete { n: 4 },
    Family::MultiPath { n: 3, k: 3 },
    Family::Triangle221,
    Family::LoopOfLoops,
];

/// Stride through the 6-vertex enumeration for the sampled property graphs.
const SAMPLE_STRIDE: usize = 37;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn four_graph_values() -> Outcome {
    for f in FOUR_GRAPHS {
        let g = f.build().map_err(|e| e.to_string())?;
        let cert = sn_exact(&g).map_err(|e| e.to_string())?;
        cert.verify(&g).map_err(|e| format!("{}: {e}", f.name()))?;
        let (scw, d) = screewidth_exact(&g).map_err(|e| e.to_string())?;
        check(cert.value == 3, format!("sn({}) = {}", f.name(), cert.value))?;
        check(scw == 3, format!("scw({}) = {scw}", f.name()))?;
        check(
            d.width(&g) == Ok(3),
            format!("decomposition of {} does not evaluate to 3", f.name()),
        )?;
    }
    Ok("sn = scw = 3 for K4, P_{3;3}, C_{3;2,2,1}, LL6".into())
}

fn edge_deleted_minimality() -> Outcome {
    let mut variants = 0;
    for f in FOUR_GRAPHS {
        let g = f.build().map_err(|e| e.to_string())?;
        for (u, v, _) in g.edges() {
            let h = g.remove_edge(u, v).map_err(|e| e.to_string())?;
            let sn = scramble_number(&h, &SnOptions::default()).map_err(|e| e.to_string())?;
            let (scw, d) = screewidth_exact(&h).map_err(|e| e.to_string())?;
            check(d.width(&h) == Ok(scw), "decomposition width mismatch")?;
            check(
                sn <= scw && scw <= 2,
                format!("{} minus ({u},{v}): sn = {sn}, scw = {scw}", f.name()),
            )?;
            variants += 1;
        }
    }
    Ok(format!("{variants} edge-deleted variants have sn <= scw <= 2"))
}

fn classifier_equivalence() -> Outcome {
    let graphs: Vec<Multigraph> = enumerate_up_to(5, 3).map_err(|e| e.to_string())?.collect();
    let oracle = SnOptions {
        use_classifier: false,
        ..SnOptions::default()
    };
    let mismatches: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let verdict = classify_sn_le_2(g).unwrap().verdict;
            let sn = sn_exact_with(g, &oracle).unwrap().value;
            let expected = match sn {
                1 => Verdict::One,
                2 => Verdict::Two,
                _ => Verdict::AtLeastThree,
            };
            (verdict != expected).then(|| format!("{g:?}: classifier {}, sn {sn}", verdict.label()))
        })
        .collect();
    check(
        mismatches.is_empty(),
        format!("{} mismatches, first {:?}", mismatches.len(), mismatches.first()),
    )?;
    Ok(format!("{} graphs, zero mismatches", graphs.len()))
}

fn corollary_sweep() -> Outcome {
    let r = verify_corollary_3ec(5, 4).map_err(|e| e.to_string())?;
    check(
        r.counterexamples.is_empty(),
        format!("counterexample {:?}", r.counterexamples.first()),
    )?;
    Ok(format!(
        "{} 3-edge-connected graphs checked, {} skipped, {:?}",
        r.checked, r.skipped, r.by_pattern
    ))
}

fn family_minimality() -> Outcome {
    let mut lines = Vec::new();
    for (n, k) in [(4, 2), (5, 2), (6, 2), (6, 3)] {
        let g = Family::MultiCycle { n, k }.build().map_err(|e| e.to_string())?;
        let r = is_k_scramble_minimal(&g, 2 * k).map_err(|e| e.to_string())?;
        check(r.minimal, format!("C_{{{n};{k}}} is not {}-scramble minimal", 2 * k))?;
        lines.push(format!("C_{{{n};{k}}}"));
    }
    for (n, k) in [(6, 2), (7, 2), (8, 2)] {
        let g = Family::TildeCycle { n, k }.build().map_err(|e| e.to_string())?;
        let r = is_k_scramble_minimal(&g, 2 * k + 1).map_err(|e| e.to_string())?;
        check(
            r.minimal,
            format!("C~_{{{n};{k}}} is not {}-scramble minimal", 2 * k + 1),
        )?;
        lines.push(format!("C~_{{{n};{k}}}"));
        for bundle in 0..n {
            let (h, d) = canonical_decomposition(Family::TildeCycle { n, k }, bundle).map_err(|e| e.to_string())?;
            let w = d.width(&h).map_err(|e| e.to_string())?;
            check(w <= 2 * k, format!("C~_{{{n};{k}}} minus bundle {bundle}: width {w}"))?;
        }
    }
    Ok(format!("minimal: {}", lines.join(", ")))
}

fn wheel_and_complement_of_cycle() -> Outcome {
    let w5 = Family::Wheel { rim: 5 }.build().map_err(|e| e.to_string())?;
    let sn = sn_exact(&w5).map_err(|e| e.to_string())?;
    sn.verify(&w5).map_err(|e| e.to_string())?;
    check(sn.value == 4, format!("sn(W5) = {}", sn.value))?;
    let dsn = dsn_exact(&w5).map_err(|e| e.to_string())?;
    check(dsn.value == 3, format!("dsn(W5) = {}", dsn.value))?;
    check(
        w5.lambda2() == ExtNat::Finite(4),
        format!("lambda2(W5) = {}", w5.lambda2()),
    )?;
    check(w5.independence_number() == 2, "alpha(W5) != 2")?;
    let e2 = uniform_scramble_2(&w5)
        .map_err(|e| e.to_string())?
        .order()
        .map_err(|e| e.to_string())?;
    check(
        e2.order == 4,
        format!("2-uniform scramble on W5 has order {}", e2.order),
    )?;
    let k7 = Family::CompleteMinusCycle { n: 7 }.build().map_err(|e| e.to_string())?;
    let sn = sn_exact(&k7).map_err(|e| e.to_string())?;
    sn.verify(&k7).map_err(|e| e.to_string())?;
    check(sn.value == 5, format!("sn(K7 - C7) = {}", sn.value))?;
    let dsn = dsn_exact(&k7).map_err(|e| e.to_string())?;
    check(dsn.value == 4, format!("dsn(K7 - C7) = {}", dsn.value))?;
    Ok("sn(W5)=4 dsn(W5)=3 lambda2=4 alpha=2 E2 order 4; sn(K7-C7)=5 dsn(K7-C7)=4".into())
}

fn property_suites() -> Outcome {
    let mut graphs: Vec<Multigraph> = enumerate_up_to(4, 2).map_err(|e| e.to_string())?.collect();
    let small = graphs.len();
    let sample = pseudorandom_sample(200, 6, 3, SAMPLE_STRIDE).map_err(|e| e.to_string())?;
    check(sample.len() == 200, "sample too short")?;
    graphs.extend(sample.iter().cloned());
    let mut total = 0;
    for lemma in Lemma::ALL {
        let r = verify_lemma_on(lemma, &graphs).map_err(|e| e.to_string())?;
        check(
            r.violations.is_empty(),
            format!(
                "{lemma}: {} violations, first {:?}",
                r.violations.len(),
                r.violations.first()
            ),
        )?;
        total += r.checks;
    }
    // the certificates themselves
    for g in &graphs {
        let c = sn_exact(g).map_err(|e| e.to_string())?;
        c.verify(g).map_err(|e| format!("{g:?}: {e}"))?;
        if let UpperWitness::Decomposition(d) = &c.upper_witness {
            check(d.node_count() < 2 * g.n().max(1), "decomposition tree too large")?;
        }
        let d = dsn_exact(g).map_err(|e| e.to_string())?;
        check(
            d.value <= c.value,
            format!("{g:?}: dsn {} above sn {}", d.value, c.value),
        )?;
        total += 2;
    }
    Ok(format!(
        "{} graphs ({small} small, 200 sampled), {total} checks, zero violations",
        graphs.len()
    ))
}

fn infinite_family_mechanism() -> Outcome {
    let mut found: Vec<Multigraph> = Vec::new();
    for n in [4, 5, 6] {
        let g = Family::MultiCycle { n, k: 2 }.build().map_err(|e| e.to_string())?;
        let r = is_k_scramble_minimal(&g, 4).map_err(|e| e.to_string())?;
        check(r.minimal, format!("C_{{{n};2}} is not 4-scramble minimal"))?;
        check(!found.iter().any(|h| are_isomorphic(h, &g)), "duplicate graph")?;
        found.push(g);
    }
    let forms: HashSet<_> = found.iter().map(canonical_form).collect();
    check(forms.len() == 3, "graphs not pairwise non-isomorphic")?;
    // more 4-minimal graphs beyond the three
    let extra = enumerate_connected_multigraphs(4, 3)
        .map_err(|e| e.to_string())?
        .filter(|g| is_k_scramble_minimal(g, 4).map(|r| r.minimal).unwrap_or(false))
        .count();
    Ok(format!(
        "C_{{4;2}}, C_{{5;2}}, C_{{6;2}} are 4-scramble minimal; {extra} 4-minimal graphs on 4 vertices"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 four-graph values", Duration::from_secs(10), four_graph_values),
        (
            "2 edge-deleted minimality",
            Duration::from_secs(30),
            edge_deleted_minimality,
        ),
        (
            "3 classifier equivalence",
            Duration::from_secs(30 * 60),
            classifier_equivalence,
        ),
        (
            "4 3-edge-connected sweep",
            Duration::from_secs(10 * 60),
            corollary_sweep,
        ),
        ("5 family minimality", Duration::from_secs(20 * 60), family_minimality),
        (
            "6 wheel and K7 minus C7",
            Duration::from_secs(5 * 60),
            wheel_and_complement_of_cycle,
        ),
        ("7 property suites", Duration::from_secs(30 * 60), property_suites),
        (
            "8 infinite-family mechanism",
            Duration::from_secs(20 * 60),
            infinite_family_mechanism,
        ),
    ];
    let mut failed = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {name}: {} ({:.2}s / limit {}s) {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
