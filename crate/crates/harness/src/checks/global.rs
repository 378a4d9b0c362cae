//! Checks over constructed graphs: closure under products and gated
//! amalgams, the M₄,₁ / Q₃⁻ non-closure example, golden values and the
//! mutation probe.

use pcube::constructions::families::{
    complete_bipartite, even_cycle, grid, hypercube, hypercube_minus_antipodes,
    hypercube_minus_vertex, path,
};
use pcube::constructions::{cartesian_product, gated_amalgam, AmalgamSpec};
use pcube::{are_isomorphic_small, Graph, Metric, VertexSet, ORACLE_BOUND};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{global_result, Outcome};
use crate::corpus::{Corpus, CorpusEntry};
use crate::report::CheckResult;

pub const PRODUCT_PAIRS: usize = 50;
pub const AMALGAM_SPECS: usize = 20;
pub const MUTATIONS: usize = 12;
/// Factors and amalgam pieces are drawn from corpus partial cubes up to
/// this order.
const POOL_MAX_N: usize = 8;
const AMALGAM_ATTEMPTS: usize = 500;

/// Expected pre-hull numbers of the named examples.
pub fn golden_cases() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("K2,3", complete_bipartite(2, 3).unwrap(), 2),
        ("Q3-", hypercube_minus_vertex(3).unwrap(), 2),
        ("M4,1", hypercube_minus_antipodes(4).unwrap(), 1),
        ("P5", path(5).unwrap(), 0),
        ("Q2", hypercube(2).unwrap(), 1),
        ("Q3", hypercube(3).unwrap(), 1),
        ("C6", even_cycle(6).unwrap(), 1),
    ]
}

pub fn run_all(corpus: &Corpus) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let golden: Vec<CheckResult> = golden_cases()
        .into_par_iter()
        .map(|(name, g, want)| {
            global_result(format!("golden-{name}"), "golden".into(), "golden_ph", || {
                golden_ph(&g, want)
            })
        })
        .collect();
    out.extend(golden);
    out.push(global_result("ph2-examples".into(), "golden".into(), "ph2_examples", ph2_examples));
    out.push(global_result("m41-q3-minus".into(), "family-M4,1".into(), "convex_non_closure", convex_non_closure));
    out.extend(check_closure_product(corpus));
    out.extend(check_closure_amalgam(corpus));
    out.push(global_result("mutation".into(), "mutation".into(), "mutation_probe", || {
        mutation_probe(corpus.params.seed)
    }));
    out
}

fn ph(g: &Graph) -> usize {
    Metric::new(g.clone())
        .and_then(|m| m.pre_hull_number())
        .expect("connected and within the oracle bound")
}

pub fn golden_ph(g: &Graph, want: usize) -> Outcome {
    let got = ph(g);
    Outcome::check(got == want, || json!({ "expected": want, "ph": got }))
}

/// `K2,3` and `Q3⁻` both have `ph = 2`; only `Q3⁻` is a partial cube.
pub fn ph2_examples() -> Outcome {
    let k23 = Metric::new(complete_bipartite(2, 3).unwrap()).unwrap();
    let q3m = Metric::new(hypercube_minus_vertex(3).unwrap()).unwrap();
    let found = json!({
        "K2,3": { "ph": k23.pre_hull_number_generic(ORACLE_BOUND).unwrap(), "partial_cube": k23.is_partial_cube_winkler() },
        "Q3-": { "ph": q3m.pre_hull_number_generic(ORACLE_BOUND).unwrap(), "partial_cube": q3m.is_partial_cube_winkler() },
    });
    let ok = found["K2,3"]["ph"] == 2
        && found["K2,3"]["partial_cube"] == false
        && found["Q3-"]["ph"] == 2
        && found["Q3-"]["partial_cube"] == true;
    if ok {
        Outcome::pass_with(found)
    } else {
        Outcome::fail(found)
    }
}

/// Searches the convex sets of `M₄,₁` for one inducing `Q3⁻`; expects
/// `ph(M₄,₁) = 1` and `ph = 2` on the subgraph.
pub fn convex_non_closure() -> Outcome {
    let m41 = hypercube_minus_antipodes(4).unwrap();
    let m = Metric::new(m41.clone()).unwrap();
    let q3m = hypercube_minus_vertex(3).unwrap();
    let ph_host = m.pre_hull_number_generic(ORACLE_BOUND).unwrap();
    let family = m.convex_sets(ORACLE_BOUND).unwrap();
    let hit = family.iter().filter(|s| s.len() == q3m.n()).find(|s| {
        let (h, _) = m41.induced(s);
        are_isomorphic_small(&h, &q3m, q3m.n()).unwrap().is_some()
    });
    let Some(set) = hit else {
        return Outcome::fail(json!({ "ph_host": ph_host, "convex_q3_minus": null }));
    };
    let ph_sub = ph(&m41.induced(set).0);
    let witness = json!({ "ph_host": ph_host, "convex_q3_minus": set, "ph_sub": ph_sub });
    if ph_host == 1 && ph_sub == 2 {
        Outcome::pass_with(witness)
    } else {
        Outcome::fail(witness)
    }
}

/// Corpus partial cubes small enough to use as factors or amalgam pieces.
fn pool(corpus: &Corpus) -> Vec<&CorpusEntry> {
    corpus
        .entries
        .iter()
        .filter(|e| e.graph.n() <= POOL_MAX_N && e.graph.n() >= 2)
        .filter(|e| Metric::new(e.graph.clone()).map(|m| m.is_partial_cube_djokovic()).unwrap_or(false))
        .collect()
}

/// Pool members by id, so that examples with `ph = 2` factors are always
/// covered when present.
fn pinned<'a>(pool: &[&'a CorpusEntry], ids: &[&str]) -> Option<Vec<&'a CorpusEntry>> {
    ids.iter().map(|id| pool.iter().find(|e| e.id == *id).copied()).collect()
}

/// `ph(G0 □ G1) ≤ 1 ⟺ ph(G0) ≤ 1 ∧ ph(G1) ≤ 1` for partial cubes.
pub fn check_closure_product(corpus: &Corpus) -> Vec<CheckResult> {
    let pool = pool(corpus);
    if pool.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.params.seed ^ 0x5052_4f44);
    let mut pairs: Vec<(&CorpusEntry, &CorpusEntry)> = Vec::new();
    for ids in [["fam-Q2", "ex3-000"], ["fam-Q3-", "ex2-000"], ["fam-Q3-", "fam-C6"]] {
        if let Some(p) = pinned(&pool, &ids) {
            pairs.push((p[0], p[1]));
        }
    }
    while pairs.len() < PRODUCT_PAIRS {
        pairs.push((pool.choose(&mut rng).unwrap(), pool.choose(&mut rng).unwrap()));
    }
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (g0, g1))| {
            global_result(
                format!("product-{i:02}"),
                format!("product:{}x{}", g0.id, g1.id),
                "closure_product",
                || {
                    let (p0, p1) = (ph(&g0.graph), ph(&g1.graph));
                    let prod = cartesian_product(&g0.graph, &g1.graph);
                    let m = Metric::new(prod.graph).unwrap();
                    let pc = m.is_partial_cube_djokovic();
                    let p = m.pre_hull_number().unwrap();
                    let ok = pc && (p <= 1) == (p0 <= 1 && p1 <= 1);
                    let w = json!({ "ph0": p0, "ph1": p1, "ph": p, "partial_cube": pc });
                    if ok {
                        Outcome::pass_with(w)
                    } else {
                        Outcome::fail(w)
                    }
                },
            )
        })
        .collect()
}

fn gated_sets(g: &Graph) -> Vec<VertexSet> {
    let m = Metric::new(g.clone()).unwrap();
    m.convex_sets(ORACLE_BOUND)
        .unwrap()
        .into_iter()
        .filter(|s| m.is_gated(s))
        .collect()
}

/// Picks gated sets `A0 ⊆ G0`, `A1 ⊆ G1` with isomorphic induced subgraphs
/// and returns the glue read off the isomorphism.
fn random_spec(
    rng: &mut ChaCha8Rng,
    g0: &CorpusEntry,
    g1: &CorpusEntry,
    gated0: &[VertexSet],
    gated1: &[VertexSet],
) -> Option<AmalgamSpec> {
    let a0 = gated0.choose(rng)?;
    let (h0, map0) = g0.graph.induced(a0);
    let mut candidates: Vec<&VertexSet> = gated1.iter().filter(|s| s.len() == a0.len()).collect();
    candidates.shuffle(rng);
    for a1 in candidates {
        let (h1, map1) = g1.graph.induced(a1);
        if let Some(phi) = are_isomorphic_small(&h0, &h1, POOL_MAX_N).unwrap() {
            return Some(AmalgamSpec {
                g0: g0.graph.clone(),
                g1: g1.graph.clone(),
                glue: (0..h0.n()).map(|i| (map0[i], map1[phi[i]])).collect(),
            });
        }
    }
    None
}

/// `ph ≤ 1` is preserved and reflected by gated amalgams of partial cubes.
pub fn check_closure_amalgam(corpus: &Corpus) -> Vec<CheckResult> {
    let pool = pool(corpus);
    if pool.is_empty() {
        return Vec::new();
    }
    let gated: Vec<Vec<VertexSet>> = pool.par_iter().map(|e| gated_sets(&e.graph)).collect();
    let index = |id: &str| pool.iter().position(|e| e.id == id);
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.params.seed ^ 0x414d_414c);
    let mut specs: Vec<(usize, usize, AmalgamSpec)> = Vec::new();
    let pinned_pairs = [("fam-Q3-", "fam-Q3"), ("fam-Q3-", "fam-C6")];
    for (a, b) in pinned_pairs {
        if let (Some(i), Some(j)) = (index(a), index(b)) {
            if let Some(s) = random_spec(&mut rng, pool[i], pool[j], &gated[i], &gated[j]) {
                specs.push((i, j, s));
            }
        }
    }
    let mut attempts = 0;
    while specs.len() < AMALGAM_SPECS && attempts < AMALGAM_ATTEMPTS {
        attempts += 1;
        let (i, j) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        if let Some(s) = random_spec(&mut rng, pool[i], pool[j], &gated[i], &gated[j]) {
            specs.push((i, j, s));
        }
    }
    specs
        .par_iter()
        .enumerate()
        .map(|(k, (i, j, spec))| {
            global_result(
                format!("amalgam-{k:02}"),
                format!("amalgam:{}+{}", pool[*i].id, pool[*j].id),
                "closure_amalgam",
                || {
                    let a = match gated_amalgam(spec) {
                        Ok(a) => a,
                        Err(e) => return Outcome::fail(json!({ "glue": spec.glue, "error": e.to_string() })),
                    };
                    let (p0, p1) = (ph(&spec.g0), ph(&spec.g1));
                    let m = Metric::new(a.graph).unwrap();
                    let pc = m.is_partial_cube_djokovic();
                    let p = m.pre_hull_number().unwrap();
                    let w = json!({ "glue": spec.glue, "ph0": p0, "ph1": p1, "ph": p, "partial_cube": pc });
                    if pc && (p <= 1) == (p0 <= 1 && p1 <= 1) {
                        Outcome::pass_with(w)
                    } else {
                        Outcome::fail(w)
                    }
                },
            )
        })
        .collect()
}

/// Deletes a random edge from known partial cubes. The recognisers must
/// agree on every mutant and reject at least one, so the partial-cube
/// checks are not vacuous.
pub fn mutation_probe(seed: u64) -> Outcome {
    let sources: Vec<(&str, Graph)> = vec![
        ("Q3", hypercube(3).unwrap()),
        ("Q3-", hypercube_minus_vertex(3).unwrap()),
        ("grid3x3", grid(3, 3).unwrap()),
        ("M4,1", hypercube_minus_antipodes(4).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4d55_5441);
    let mut trials = Vec::new();
    let mut detected = 0;
    for _ in 0..MUTATIONS {
        let (name, g) = sources.choose(&mut rng).unwrap();
        let drop = rng.gen_range(0..g.m());
        let edges = g.edges().iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &e)| e);
        let mutant = Graph::new(g.n(), edges).unwrap();
        let Ok(m) = Metric::new(mutant) else {
            trials.push(json!({ "source": name, "edge": g.edges()[drop], "disconnected": true }));
            continue;
        };
        let verdicts = [
            m.is_partial_cube_djokovic(),
            m.is_partial_cube_winkler(),
            m.is_partial_cube_embedding(),
        ];
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Outcome::fail(json!({ "source": name, "edge": g.edges()[drop], "verdicts": verdicts }));
        }
        if !verdicts[0] {
            detected += 1;
        }
        trials.push(json!({ "source": name, "edge": g.edges()[drop], "partial_cube": verdicts[0] }));
    }
    let w = json!({ "detected": detected, "trials": trials });
    if detected > 0 {
        Outcome::pass_with(w)
    } else {
        Outcome::fail(w)
    }
}
