//! Acceptance gate: one line per criterion, then a single assertion.
//!
//! Run with `cargo test -p pcube-harness --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use pcube::constructions::families::complete_bipartite;
use pcube::{are_isomorphic_small, Metric};
use pcube_harness::checks::global::golden_cases;
use pcube_harness::checks::{run_graph_checks, theorems, GraphCheck, PROPERTY_CHECKS};
use pcube_harness::{enumerate_corpus, verify_corpus, CorpusParams, Selection, Status, VerificationReport};
use rayon::prelude::*;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(120);

struct Gate {
    lines: Vec<(usize, bool, String)>,
}

impl Gate {
    fn record(&mut self, id: usize, ok: bool, detail: String) {
        println!("criterion {id}: {} {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id, ok, detail));
    }
}

/// `(pass, fail, skip)` for one check name, optionally restricted to the
/// exhaustive tier.
fn tally(report: &VerificationReport, check: &str, exhaustive_only: bool) -> (usize, usize, usize) {
    let mut t = (0, 0, 0);
    for r in report.for_check(check) {
        if exhaustive_only && !r.graph_id.starts_with("ex") {
            continue;
        }
        match r.status {
            Status::Pass => t.0 += 1,
            Status::Fail => t.1 += 1,
            Status::Skip => t.2 += 1,
        }
    }
    t
}

fn golden(gate: &mut Gate) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g, want) in golden_cases() {
        let start = Instant::now();
        let got = Metric::new(g).and_then(|m| m.pre_hull_number()).unwrap();
        let took = start.elapsed();
        ok &= got == want && took < GOLDEN_LIMIT;
        parts.push(format!("ph({name})={got} [{:.1} ms]", took.as_secs_f64() * 1e3));
    }
    // Trees beyond P5: every exhaustive tree up to 7 vertices.
    let trees: Vec<_> = (2..=7)
        .flat_map(pcube_harness::corpus::connected_bipartite)
        .filter(|g| g.is_tree())
        .collect();
    let tree_ok = trees.iter().all(|t| Metric::new(t.clone()).unwrap().pre_hull_number().unwrap() == 0);
    ok &= tree_ok;
    parts.push(format!("{} trees with ph=0: {tree_ok}", trees.len()));
    gate.record(1, ok, format!("golden pre-hull numbers: {}", parts.join(", ")));
}

fn recogniser_sweep(gate: &mut Gate) {
    let start = Instant::now();
    let params = CorpusParams {
        families: false,
        ..CorpusParams::default()
    };
    let corpus = enumerate_corpus(&params).unwrap();
    let checks: [(&str, GraphCheck); 1] = [("recognizers", theorems::recognizers)];
    let results: Vec<_> = corpus
        .entries
        .par_iter()
        .flat_map_iter(|e| run_graph_checks(e, params.seed, &checks))
        .collect();
    let took = start.elapsed();
    let disagreements = results.iter().filter(|r| r.status != Status::Pass).count();
    let exhaustive = corpus.exhaustive().count();
    let random = corpus.entries.len() - exhaustive;
    gate.record(
        2,
        disagreements == 0 && random == 200 && took < SWEEP_LIMIT,
        format!(
            "recogniser agreement on {exhaustive} exhaustive + {random} random graphs: \
             {disagreements} disagreements in {:.2} s",
            took.as_secs_f64()
        ),
    );
}

fn att_convex(gate: &mut Gate, report: &VerificationReport) {
    let (pass, fail, skip) = tally(report, "att_convex_theorem", true);
    // Smallest exhaustive graph that is not a partial cube.
    let corpus = enumerate_corpus(&CorpusParams {
        families: false,
        random_count: 0,
        ..CorpusParams::default()
    })
    .unwrap();
    let negatives: Vec<_> = corpus
        .exhaustive()
        .filter(|e| !Metric::new(e.graph.clone()).unwrap().is_partial_cube_winkler())
        .collect();
    let min_n = negatives.iter().map(|e| e.graph.n()).min();
    let k23 = complete_bipartite(2, 3).unwrap();
    let smallest_are_k23 = negatives
        .iter()
        .filter(|e| Some(e.graph.n()) == min_n)
        .all(|e| are_isomorphic_small(&e.graph, &k23, 7).unwrap().is_some());
    gate.record(
        3,
        fail == 0 && skip == 0 && pass > 0 && min_n == Some(5) && smallest_are_k23,
        format!(
            "partial cube <=> Att-convex on exhaustive tier: {pass} pass, {fail} fail, {skip} skip; \
             {} negatives, smallest order {min_n:?} is K2,3: {smallest_are_k23}",
            negatives.len()
        ),
    );
}

fn status_of(report: &VerificationReport, check: &str) -> Vec<Status> {
    report.for_check(check).map(|r| r.status).collect()
}

fn ph1(gate: &mut Gate, report: &VerificationReport) {
    let (pass, fail, skip) = tally(report, "ph1_implies_pc", false);
    let examples = status_of(report, "ph2_examples");
    gate.record(
        4,
        fail == 0 && pass > 0 && examples == [Status::Pass],
        format!(
            "ph<=1 => partial cube: {pass} pass, {fail} fail, {skip} skip; \
             K2,3 and Q3- (ph=2, non-PC and PC): {examples:?}"
        ),
    );
}

fn closure(gate: &mut Gate, report: &VerificationReport) {
    let p = tally(report, "closure_product", false);
    let a = tally(report, "closure_amalgam", false);
    let g = tally(report, "gated_subgraph", false);
    let ok = p == (50, 0, 0) && a == (20, 0, 0) && g.1 == 0 && g.0 > 0;
    gate.record(
        5,
        ok,
        format!(
            "closure: products {}/{} pass, amalgams {}/{} pass, gated subgraphs {} pass {} fail",
            p.0,
            p.0 + p.1 + p.2,
            a.0,
            a.0 + a.1 + a.2,
            g.0,
            g.1
        ),
    );
}

fn non_closure(gate: &mut Gate, report: &VerificationReport) {
    let r = report.for_check("convex_non_closure").next().unwrap();
    gate.record(
        6,
        r.status == Status::Pass,
        format!("convex Q3- inside M4,1: {:?} {}", r.status, r.witness.clone().unwrap_or_default()),
    );
}

fn duality(gate: &mut Gate, report: &VerificationReport) {
    let d = tally(report, "expansion_duality", false);
    let e = tally(report, "expansion_pc", false);
    gate.record(
        7,
        d.1 == 0 && e.1 == 0 && d.0 > 0 && e.0 > 0,
        format!(
            "contract-then-expand: {} pass {} fail; expansions are partial cubes: {} pass {} fail",
            d.0, d.1, e.0, e.1
        ),
    );
}

fn properties(gate: &mut Gate, report: &VerificationReport) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, _) in PROPERTY_CHECKS {
        let (pass, fail, skip) = tally(report, name, false);
        ok &= fail == 0 && pass > 0;
        parts.push(format!("{name} {pass}/{fail}/{skip}"));
    }
    gate.record(8, ok, format!("property suites (pass/fail/skip): {}", parts.join(", ")));
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new() };
    golden(&mut gate);
    recogniser_sweep(&mut gate);

    let corpus = enumerate_corpus(&CorpusParams::default()).unwrap();
    let start = Instant::now();
    let report = verify_corpus(&corpus, Selection::default());
    println!(
        "full verification: {} graphs, {} results in {:.2} s",
        corpus.entries.len(),
        report.results.len(),
        start.elapsed().as_secs_f64()
    );
    att_convex(&mut gate, &report);
    ph1(&mut gate, &report);
    closure(&mut gate, &report);
    non_closure(&mut gate, &report);
    duality(&mut gate, &report);
    properties(&mut gate, &report);

    for r in report.failures() {
        println!("failure: {} {} {}", r.graph_id, r.check, r.witness.clone().unwrap_or_default());
    }
    let failed: Vec<usize> = gate.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
