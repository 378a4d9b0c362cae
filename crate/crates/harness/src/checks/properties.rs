//! Structural invariants, each quantified over every subset (or convex set)
//! of small graphs and over samples of larger ones.

use pcube::{Graph, Metric, RecognitionFailure, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{Ctx, Outcome, EXHAUSTIVE_SUBSETS_N};

/// Largest order for which every hull of at most six vertices is checked.
const POLYTOPE_EXHAUSTIVE_N: usize = 8;
const POLYTOPE_SAMPLES: usize = 200;
/// Convex subgraphs examined per graph for Att-convexity heredity.
const HEREDITY_SAMPLES: usize = 30;

fn lift(n: usize, map: &[usize], s: &VertexSet) -> VertexSet {
    VertexSet::from_vertices(n, s.iter().map(|v| map[v]))
}

/// All subsets of `0..n` with at most `k` members.
fn small_subsets(n: usize, k: usize) -> Vec<VertexSet> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        out.push(VertexSet::from_vertices(n, cur.iter().copied()));
        if cur.len() == k {
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Extensive, idempotent and monotone, with strictly growing trace stages
/// that end in a convex fixpoint.
pub fn hull_laws(c: &Ctx) -> Outcome {
    for a in c.subsets("prop_hull_laws") {
        let trace = c.m.convex_hull(&a);
        let h = trace.hull();
        let strict = trace.stages.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]);
        if !a.is_subset(h) || !c.m.is_convex(h) || c.m.hull(h) != *h || !strict {
            return Outcome::fail(json!({ "set": a, "stages": trace.stages }));
        }
        for v in a.complement().iter() {
            if !h.is_subset(&c.m.hull(&a.with(v))) {
                return Outcome::fail(json!({ "set": a, "added": v }));
            }
        }
    }
    Outcome::pass()
}

/// `co(K ∪ {y}) = K ∪ Att(K)` for every copoint `K` and every `y ∈ Att(K)`.
pub fn attaching_independence(c: &Ctx) -> Outcome {
    let Some(copoints) = c.copoints_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    for k in copoints {
        let closed = k.set.union(&k.att);
        for y in k.att.iter() {
            if c.m.hull(&k.set.with(y)) != closed {
                return Outcome::fail(json!({ "copoint": k, "y": y }));
            }
        }
    }
    Outcome::pass()
}

/// The one-sided and symmetric ph-stability conditions agree on every set
/// of at most four vertices and on every `U_ab`.
pub fn ph_stability_forms(c: &Ctx) -> Outcome {
    let mut sets = small_subsets(c.n(), 4);
    for &(a, b) in c.entry.graph.edges() {
        sets.push(c.m.u_set(a, b).unwrap());
        sets.push(c.m.u_set(b, a).unwrap());
    }
    for s in &sets {
        let one = c.m.is_ph_stable(s);
        let sym = c.m.is_ph_stable_symmetric(s);
        if one != sym {
            return Outcome::fail(json!({ "set": s, "one_sided": one, "symmetric": sym }));
        }
    }
    Outcome::pass_with(json!({ "sets": sets.len() }))
}

/// Intervals of a partial cube are convex.
pub fn interval_convexity(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    for x in 0..c.n() {
        for y in x + 1..c.n() {
            if let Some(v) = c.m.convexity_violation(c.m.interval(x, y)) {
                return Outcome::fail(json!({ "x": x, "y": y, "violation": v }));
            }
        }
    }
    Outcome::pass()
}

/// In a partial cube, a convex `C` with boundary edge `ab`, `a ∈ C`, lies in
/// `W_ab`.
pub fn boundary_lemma(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    for set in c.convex_sample("prop_boundary_lemma", 10) {
        for &(u, v) in c.entry.graph.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if set.contains(a) && !set.contains(b) && !set.is_subset(&c.m.w_set(a, b).unwrap()) {
                    return Outcome::fail(json!({ "convex": set, "a": a, "b": b }));
                }
            }
        }
    }
    Outcome::pass()
}

/// The half-space fast path for copoints matches the convex-set oracle.
pub fn copoint_oracle(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let Some(oracle) = c.copoints_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    let fast = c.m.copoints_partial_cube();
    Outcome::check(fast == oracle, || {
        let missing: Vec<_> = oracle.iter().filter(|k| !fast.contains(k)).collect();
        let extra: Vec<_> = fast.iter().filter(|k| !oracle.contains(k)).collect();
        json!({ "missing_from_fast": missing, "extra_in_fast": extra })
    })
}

/// In a partial cube, each maximal proper convex subset of a convex `F` is
/// a half-space of `F`. Convexity inside a convex `F` coincides with
/// convexity in `G`, so the family of `G` serves for every `F`.
pub fn max_convex_halfspace(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let Some(family) = c.convex_sets() else {
        return Outcome::skip("beyond oracle bound");
    };
    for f in family.iter().filter(|f| !f.is_empty()) {
        let inside: Vec<&VertexSet> = family.iter().filter(|s| s.is_subset(f) && *s != f).collect();
        for m in inside.iter().filter(|m| !inside.iter().any(|s| s != *m && m.is_subset(s))) {
            let rest = f.difference(m);
            if !c.m.is_convex(&rest) {
                return Outcome::fail(json!({ "convex": f, "maximal": m }));
            }
        }
    }
    Outcome::pass()
}

/// A bipartite graph is a partial cube iff every hull of at most six
/// vertices induces one. Above the exhaustive order, sampled subsets are
/// joined by the endpoints of the Θ-transitivity witness.
pub fn polytope_lemma(c: &Ctx) -> Outcome {
    if !c.entry.bipartite {
        return Outcome::skip("not bipartite");
    }
    let n = c.n();
    let mut seeds = if n <= POLYTOPE_EXHAUSTIVE_N {
        small_subsets(n, 6)
    } else {
        let mut rng = c.rng("prop_polytope_lemma");
        let verts: Vec<usize> = (0..n).collect();
        (0..POLYTOPE_SAMPLES)
            .map(|_| {
                let k = rng.gen_range(1..=6);
                VertexSet::from_vertices(n, verts.choose_multiple(&mut rng, k).copied())
            })
            .collect()
    };
    if let Some(RecognitionFailure::NotTransitive { e1, e2, e3 }) = c.m.winkler_failure() {
        seeds.push(VertexSet::from_vertices(
            n,
            [e1.tail, e1.head, e2.tail, e2.head, e3.tail, e3.head],
        ));
    }
    let mut hulls: Vec<VertexSet> = seeds.iter().map(|s| c.m.hull(s)).filter(|h| !h.is_empty()).collect();
    hulls.sort();
    hulls.dedup();
    let bad = hulls.iter().find(|h| {
        let (g, _) = c.entry.graph.induced(h);
        !Metric::new(g).map(|m| m.is_partial_cube_djokovic()).unwrap_or(false)
    });
    Outcome::check(c.pc == bad.is_none(), || {
        json!({ "partial_cube": c.pc, "non_pc_polytope": bad, "polytopes": hulls.len() })
    })
}

/// Convex subgraphs of an Att-convex graph are Att-convex.
pub fn att_heredity(c: &Ctx) -> Outcome {
    if !c.entry.bipartite {
        return Outcome::skip("not bipartite");
    }
    let Some(copoints) = c.copoints_generic() else {
        return Outcome::skip("beyond oracle bound");
    };
    if Metric::att_convexity_violation_in(copoints, &c.m).is_some() {
        return Outcome::skip("not Att-convex");
    }
    let mut sets: Vec<VertexSet> = c
        .convex_sample("prop_att_heredity", EXHAUSTIVE_SUBSETS_N)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    if c.n() > EXHAUSTIVE_SUBSETS_N {
        sets.shuffle(&mut c.rng("prop_att_heredity/order"));
        sets.truncate(HEREDITY_SAMPLES);
    }
    for f in &sets {
        let (h, _) = c.entry.graph.induced(f);
        let sub = Metric::new(h).expect("convex sets induce connected subgraphs");
        match sub.att_convexity_violation_generic(pcube::ORACLE_BOUND) {
            Ok(None) => {}
            Ok(Some(v)) => return Outcome::fail(json!({ "convex": f, "violation": v })),
            Err(e) => return Outcome::fail(json!({ "convex": f, "error": e.to_string() })),
        }
    }
    Outcome::pass_with(json!({ "convex_subgraphs": sets.len() }))
}

/// For an isometric `F` in a partial cube, `W_ab^F = W_ab^G ∩ F` and
/// `U_ab^F ⊆ U_ab^G ∩ F`, with equality when `F` is convex.
pub fn half_space_restriction(c: &Ctx) -> Outcome {
    if !c.pc {
        return Outcome::skip("not a partial cube");
    }
    let n = c.n();
    let convex = c.convex_sample("prop_half_space_restriction", EXHAUSTIVE_SUBSETS_N);
    let isometric: Vec<VertexSet> = c
        .subsets("prop_half_space_restriction/iso")
        .into_iter()
        .filter(|s| !s.is_empty() && c.m.is_isometric_set(s))
        .collect();
    let cases = convex.iter().map(|s| (s, true)).chain(isometric.iter().map(|s| (s, false)));
    for (f, is_convex) in cases {
        if f.is_empty() {
            continue;
        }
        let (h, map): (Graph, Vec<usize>) = c.entry.graph.induced(f);
        let mf = Metric::new(h.clone()).expect("isometric sets are connected");
        for &(x, y) in h.edges() {
            for (a, b) in [(x, y), (y, x)] {
                let (ga, gb) = (map[a], map[b]);
                let w_ok = lift(n, &map, &mf.w_set(a, b).unwrap()) == c.m.w_set(ga, gb).unwrap().intersection(f);
                let u_f = lift(n, &map, &mf.u_set(a, b).unwrap());
                let u_g = c.m.u_set(ga, gb).unwrap().intersection(f);
                let u_ok = if is_convex { u_f == u_g } else { u_f.is_subset(&u_g) };
                if !w_ok || !u_ok {
                    return Outcome::fail(json!({
                        "subset": f, "convex": is_convex, "edge": [ga, gb],
                        "w_ok": w_ok, "u_ok": u_ok,
                    }));
                }
            }
        }
    }
    Outcome::pass()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_subsets_counts() {
        // Sizes 0, 1 and 2 of a 5-set.
        assert_eq!(small_subsets(5, 2).len(), 1 + 5 + 10);
        assert_eq!(small_subsets(3, 4).len(), 8);
    }
}
