//! One check per theorem, each evaluated on a single corpus graph.

use std::collections::BTreeSet;

use pcube::constructions::{check_proper_cover, expansion, theta_contraction, ProperCover};
use pcube::{find_isomorphism, Metric, VertexSet};
use rand::Rng;
use serde_json::json;

use super::{Ctx, Outcome, EXHAUSTIVE_SUBSETS_N};

/// Sampled covers per graph above the exhaustive order.
const COVER_SAMPLES: usize = 40;

/// Djoković, Winkler and the embedding route agree.
pub fn recognizers(c: &Ctx) -> Outcome {
    let djokovic = c.m.djokovic_failure();
    let winkler = c.m.winkler_failure();
    let embedding = c.m.cube_embedding();
    let verdicts = [djokovic.is_none(), winkler.is_none(), embedding.is_ok()];
    Outcome::check(verdicts.iter().all(|&v| v == verdicts[0]), || {
        json!({
            "djokovic": djokovic,
            "winkler": winkler,
            "embedding": embedding.err().map(|e| e.to_string()),
        })
    })
}

/// Partial cube ⟺ Att-convex, with Att-convexity taken from the copoint
/// oracle so that neither side uses the half-space shortcut.
pub fn att_convex_theorem(c: &Ctx) -> Outcome {
    if !c.entry.bipartite {
        return Outcome::skip("not bipartite");
    }
    let Some(copoints) = c.copoints_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let theta = c.m.winkler_failure();
    let att = Metric::att_convexity_violation_in(copoints, &c.m);
    Outcome::check(theta.is_none() == att.is_none(), || {
        json!({ "theta_witness": theta, "att_violation": att })
    })
}

/// `ph(G) ≤ 1` forces a partial cube.
pub fn ph1_implies_pc(c: &Ctx) -> Outcome {
    if !c.entry.bipartite {
        return Outcome::skip("not bipartite");
    }
    let Some(ph) = c.ph_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let theta = c.m.winkler_failure();
    Outcome::check(ph > 1 || theta.is_none(), || {
        json!({ "ph": ph, "theta_witness": theta })
    })
}

/// `ph(G) = 0` exactly for trees.
pub fn tree_ph0(c: &Ctx) -> Outcome {
    let Some(ph) = c.ph_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let tree = c.entry.graph.is_tree();
    Outcome::check((ph == 0) == tree, || json!({ "ph": ph, "tree": tree }))
}

/// The copoints of a partial cube are its half-spaces, which are the `W_ab`.
pub fn copoints_halfspaces(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let Some(copoints) = c.copoints_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let from_copoints: BTreeSet<VertexSet> = copoints.iter().map(|k| k.set.clone()).collect();
    let mut half_spaces: BTreeSet<VertexSet> = c
        .convex_sets()
        .expect("copoints imply the family")
        .iter()
        .filter(|s| c.m.is_convex(&s.complement()))
        .cloned()
        .collect();
    // V is never a copoint; ∅ is one only in K1.
    half_spaces.remove(&c.m.all());
    if c.n() > 1 {
        half_spaces.remove(&c.m.empty_set());
    }
    let w_sets: BTreeSet<VertexSet> = c
        .entry
        .graph
        .edges()
        .iter()
        .flat_map(|&(a, b)| [c.m.w_set(a, b).unwrap(), c.m.w_set(b, a).unwrap()])
        .collect();
    let w_ok = c.n() == 1 || w_sets == half_spaces;
    Outcome::check(from_copoints == half_spaces && w_ok, || {
        json!({
            "copoints_not_half_spaces": from_copoints.difference(&half_spaces).collect::<Vec<_>>(),
            "half_spaces_not_copoints": half_spaces.difference(&from_copoints).collect::<Vec<_>>(),
            "w_sets_match": w_ok,
        })
    })
}

/// The `ph ≤ 1` tests (ph-stable `U_ab` for partial cubes, the copoint
/// criterion otherwise) agree with the pre-hull number itself.
pub fn ph_leq1_consistency(c: &Ctx) -> Outcome {
    if !c.entry.bipartite {
        return Outcome::skip("not bipartite");
    }
    let Some(ph) = c.ph_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let fast = c.m.ph_leq1_bipartite().expect("bipartite within bound");
    let by_copoints = c.m.ph_leq1_by_copoints(pcube::ORACLE_BOUND).expect("within bound");
    Outcome::check(fast == (ph <= 1) && by_copoints == (ph <= 1), || {
        json!({ "ph": ph, "ph_leq1_bipartite": fast, "ph_leq1_by_copoints": by_copoints })
    })
}

/// Every gated subgraph of a partial cube with `ph ≤ 1` has `ph ≤ 1`.
pub fn gated_subgraph(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let Some(ph) = c.ph_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    if ph > 1 {
        return Outcome::skip("ph > 1");
    }
    let family = c.convex_sets().expect("ph implies the family");
    let mut tested = 0;
    for a in family.iter().filter(|a| c.m.is_gated(a)) {
        tested += 1;
        let (h, _) = c.entry.graph.induced(a);
        let sub = Metric::new(h).expect("gated sets are convex, hence connected");
        let ph_a = sub.pre_hull_number().expect("a partial cube takes the fast path");
        if ph_a > 1 {
            return Outcome::fail(json!({ "gated_set": a, "ph": ph_a }));
        }
    }
    Outcome::pass_with(json!({ "gated_sets": tested }))
}

/// Contracting any Θ-class and expanding along the induced cover gives the
/// graph back.
pub fn expansion_duality(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let classes = c.m.theta_classes().expect("partial cubes are transitive").len();
    for k in 0..classes {
        let con = match theta_contraction(&c.m, k) {
            Ok(con) => con,
            Err(e) => return Outcome::fail(json!({ "class": k, "error": e.to_string() })),
        };
        let back = expansion(&con.graph, &con.cover);
        if find_isomorphism(&back.graph, &c.entry.graph).is_none() {
            return Outcome::fail(json!({
                "class": k,
                "contraction": con.graph.to_text(),
                "cover": con.cover,
            }));
        }
    }
    Outcome::pass()
}

/// Expansions of a partial cube are partial cubes: every proper cover for
/// small graphs, sampled hull-based covers above.
pub fn expansion_pc(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let g = &c.entry.graph;
    let n = g.n();
    let covers: Vec<(VertexSet, VertexSet)> = if n <= EXHAUSTIVE_SUBSETS_N {
        all_cover_candidates(n)
    } else {
        sampled_cover_candidates(c)
    };
    let mut tested = 0;
    for (v0, v1) in covers {
        if check_proper_cover(g, &v0, &v1).is_err() {
            continue;
        }
        tested += 1;
        let cover = ProperCover::new(g, v0, v1).expect("checked");
        let e = expansion(g, &cover);
        let me = Metric::new(e.graph.clone()).expect("expansions are connected");
        if let Some(f) = me.djokovic_failure() {
            return Outcome::fail(json!({ "cover": cover, "failure": f }));
        }
    }
    Outcome::pass_with(json!({ "proper_covers": tested }))
}

/// Each vertex goes to `V0` only, `V1` only, or both.
fn all_cover_candidates(n: usize) -> Vec<(VertexSet, VertexSet)> {
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let (mut v0, mut v1) = (VertexSet::empty(n), VertexSet::empty(n));
            for v in 0..n {
                let digit = code % 3;
                if digit != 1 {
                    v0.insert(v);
                }
                if digit != 0 {
                    v1.insert(v);
                }
                code /= 3;
            }
            (v0, v1)
        })
        .collect()
}

/// Peripheral covers `(V, co(S))` and two-sided covers
/// `(co(W_ab ∪ S), co(W_ba ∪ T))` for small random `S, T`.
fn sampled_cover_candidates(c: &Ctx) -> Vec<(VertexSet, VertexSet)> {
    let mut rng = c.rng("expansion_pc");
    let g = &c.entry.graph;
    let n = g.n();
    let small = |rng: &mut rand_chacha::ChaCha8Rng| {
        let k = rng.gen_range(1..=3);
        VertexSet::from_vertices(n, (0..k).map(|_| rng.gen_range(0..n)))
    };
    (0..COVER_SAMPLES)
        .map(|i| {
            let (s, t) = (small(&mut rng), small(&mut rng));
            if i % 2 == 0 || g.m() == 0 {
                (c.m.all(), c.m.hull(&s))
            } else {
                let (a, b) = g.edges()[rng.gen_range(0..g.m())];
                (
                    c.m.hull(&c.m.w_set(a, b).unwrap().union(&s)),
                    c.m.hull(&c.m.w_set(b, a).unwrap().union(&t)),
                )
            }
        })
        .collect()
}
