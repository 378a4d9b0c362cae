use proptest::prelude::*;

use pcube::constructions::families::random_bipartite;
use pcube::constructions::{
    cartesian_product, check_proper_cover, expansion, random_partial_cube, theta_contraction,
    ProperCover,
};
use pcube::{find_isomorphism, DirectedEdge, Graph, Metric, VertexSet};

/// A connected graph: a random spanning tree plus extra edges.
fn arb_connected() -> impl Strategy<Value = Graph> {
    (1usize..=9)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> =
                (1..n).map(|i| (0..i).boxed()).collect();
            (Just(n), parents, prop::collection::vec((0..n, 0..n), 0..n))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            let mut edges: Vec<(usize, usize)> =
                edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::new(n, edges).unwrap()
        })
}

fn arb_bipartite() -> impl Strategy<Value = Graph> {
    (1usize..=9, 0.2f64..0.8, any::<u64>()).prop_map(|(n, p, s)| random_bipartite(n, p, s).unwrap())
}

fn arb_partial_cube() -> impl Strategy<Value = Graph> {
    (0usize..=5, any::<u64>()).prop_map(|(k, s)| random_partial_cube(k, s))
}

fn subset(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> (i % 64) & 1 == 1))
}

/// Parity check by DFS: every non-tree edge must close an even cycle.
fn dfs_all_cycles_even(g: &Graph) -> bool {
    let mut depth = vec![usize::MAX; g.n()];
    let mut stack = vec![0];
    depth[0] = 0;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                stack.push(w);
            }
        }
    }
    g.edges().iter().all(|&(u, v)| (depth[u] + depth[v]) % 2 == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_roundtrip(g in arb_connected()) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn metric_axioms(g in arb_connected()) {
        let m = Metric::new(g.clone()).unwrap();
        for x in 0..g.n() {
            prop_assert_eq!(m.d(x, x), 0);
            for y in 0..g.n() {
                prop_assert_eq!(m.d(x, y), m.d(y, x));
                prop_assert_eq!(m.d(x, y) == 1, g.has_edge(x, y));
                for z in 0..g.n() {
                    prop_assert!(m.d(x, y) <= m.d(x, z) + m.d(z, y));
                }
            }
        }
    }

    #[test]
    fn bipartite_matches_dfs_parity(g in arb_connected()) {
        prop_assert_eq!(g.is_bipartite(), dfs_all_cycles_even(&g));
    }

    #[test]
    fn hull_laws(g in arb_connected(), a in any::<u64>(), b in any::<u64>()) {
        let m = Metric::new(g.clone()).unwrap();
        let a = subset(g.n(), a);
        let ab = a.union(&subset(g.n(), b));
        let trace = m.convex_hull(&a);
        let h = trace.hull().clone();
        prop_assert!(a.is_subset(&h));
        prop_assert!(m.is_convex(&h));
        prop_assert_eq!(m.hull(&h), h.clone());
        prop_assert!(h.is_subset(&m.hull(&ab)));
        for w in trace.stages.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn ph_stability_forms_agree(g in arb_bipartite(), masks in prop::collection::vec(any::<u64>(), 4)) {
        let m = Metric::new(g.clone()).unwrap();
        let n = g.n();
        let mut sets: Vec<VertexSet> = masks.iter().map(|&k| subset(n, k)).collect();
        for &(a, b) in g.edges() {
            sets.push(m.u_set(a, b).unwrap());
            sets.push(m.u_set(b, a).unwrap());
        }
        for s in sets {
            prop_assert_eq!(m.is_ph_stable(&s), m.is_ph_stable_symmetric(&s), "{}", s);
        }
    }

    #[test]
    fn recognisers_agree(g in arb_bipartite()) {
        let m = Metric::new(g).unwrap();
        let d = m.is_partial_cube_djokovic();
        prop_assert_eq!(d, m.is_partial_cube_winkler());
        prop_assert_eq!(d, m.is_partial_cube_embedding());
    }

    #[test]
    fn partial_cube_structure(g in arb_partial_cube()) {
        let m = Metric::new(g.clone()).unwrap();
        prop_assert!(m.is_partial_cube_djokovic());
        prop_assert!(m.is_partial_cube_winkler());
        let emb = m.cube_embedding().unwrap();
        for x in 0..g.n() {
            for y in 0..g.n() {
                prop_assert_eq!(emb.hamming(x, y), m.d(x, y));
                prop_assert!(m.is_convex(m.interval(x, y)));
            }
        }
        for &(a, b) in g.edges() {
            let (wab, wba) = (m.w_set(a, b).unwrap(), m.w_set(b, a).unwrap());
            prop_assert!(wab.is_disjoint(&wba));
            prop_assert_eq!(wab.union(&wba), m.all());
            prop_assert!(m.u_set(a, b).unwrap().is_subset(&wab));
        }
    }

    #[test]
    fn boundary_lemma(g in arb_partial_cube(), mask in any::<u64>()) {
        let m = Metric::new(g.clone()).unwrap();
        let c = m.hull(&subset(g.n(), mask));
        for &(u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if c.contains(a) && !c.contains(b) {
                    prop_assert!(c.is_subset(&m.w_set(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn attaching_point_independence(g in arb_bipartite()) {
        let m = Metric::new(g.clone()).unwrap();
        if g.n() <= 9 {
            for cp in m.copoints_generic(16).unwrap() {
                let closed = cp.set.union(&cp.att);
                for y in &cp.att {
                    prop_assert_eq!(m.hull(&cp.set.with(y)), closed.clone());
                }
            }
        }
    }

    #[test]
    fn copoints_fast_path_matches_oracle(g in arb_partial_cube()) {
        prop_assume!(g.n() <= 16);
        let m = Metric::new(g).unwrap();
        let mut fast = m.copoints_partial_cube();
        let mut slow = m.copoints_generic(16).unwrap();
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn isometric_subgraph_half_spaces(g in arb_partial_cube(), mask in any::<u64>()) {
        let m = Metric::new(g.clone()).unwrap();
        let f = m.hull(&subset(g.n(), mask));
        let (h, map) = g.induced(&f);
        let mf = Metric::new(h.clone()).unwrap();
        for &(a, b) in h.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let lift = |s: VertexSet| VertexSet::from_vertices(g.n(), s.iter().map(|v| map[v]));
                let w_g = m.w_set(map[x], map[y]).unwrap();
                prop_assert_eq!(lift(mf.w_set(x, y).unwrap()), w_g.intersection(&f));
                // F is convex, so U sets restrict exactly.
                let u_g = m.u_set(map[x], map[y]).unwrap();
                prop_assert_eq!(lift(mf.u_set(x, y).unwrap()), u_g.intersection(&f));
            }
        }
    }

    #[test]
    fn geodesic_edges_meet_every_path(g in arb_partial_cube(), x in any::<usize>(), walk in prop::collection::vec(any::<usize>(), 0..12)) {
        let m = Metric::new(g.clone()).unwrap();
        let n = g.n();
        // A random walk from x; its endpoints define the geodesic to compare.
        let mut path = vec![x % n];
        for step in walk {
            let last = *path.last().unwrap();
            let nb = g.neighbors(last);
            if !nb.is_empty() {
                path.push(nb[step % nb.len()]);
            }
        }
        let (s, t) = (path[0], *path.last().unwrap());
        // Greedy geodesic from s towards t.
        let mut geo = vec![s];
        while *geo.last().unwrap() != t {
            let c = *geo.last().unwrap();
            let next = g.neighbors(c).iter().copied().find(|&w| m.d(w, t) + 1 == m.d(c, t)).unwrap();
            geo.push(next);
        }
        prop_assert!(m.geodesic_check(&geo).unwrap());
        for e in geo.windows(2) {
            let e = DirectedEdge::new(e[0], e[1]);
            prop_assert!(path.windows(2).any(|f| m.theta_related(e, DirectedEdge::new(f[0], f[1])).unwrap()
                || m.theta_related(e, DirectedEdge::new(f[1], f[0])).unwrap()));
        }
    }

    #[test]
    fn product_distance_property(g0 in arb_bipartite(), g1 in arb_bipartite()) {
        prop_assume!(g0.n() * g1.n() <= 40);
        let p = cartesian_product(&g0, &g1);
        let m = Metric::new(p.graph.clone()).unwrap();
        let (m0, m1) = (Metric::new(g0).unwrap(), Metric::new(g1).unwrap());
        for x in 0..p.graph.n() {
            for y in 0..p.graph.n() {
                prop_assert_eq!(m.d(x, y), m0.d(p.pr0(x), p.pr0(y)) + m1.d(p.pr1(x), p.pr1(y)));
            }
        }
    }

    #[test]
    fn expansion_of_partial_cube(g in arb_partial_cube(), s in any::<u64>(), t in any::<u64>()) {
        let m = Metric::new(g.clone()).unwrap();
        let n = g.n();
        let v0 = m.hull(&subset(n, s).union(&VertexSet::singleton(n, 0)));
        let v1 = m.hull(&subset(n, t).union(&v0.complement()).with(0));
        prop_assume!(check_proper_cover(&g, &v0, &v1).is_ok());
        let cover = ProperCover::new(&g, v0, v1).unwrap();
        let e = expansion(&g, &cover);
        let me = Metric::new(e.graph.clone()).unwrap();
        prop_assert!(me.is_partial_cube_djokovic());
        for i in 0..2 {
            for x in cover.side(i as u8) {
                for y in cover.side(i as u8) {
                    prop_assert_eq!(me.d(e.psi[i][x].unwrap(), e.psi[i][y].unwrap()), m.d(x, y));
                }
            }
        }
    }

    #[test]
    fn contract_then_expand(g in arb_partial_cube()) {
        let m = Metric::new(g.clone()).unwrap();
        for k in 0..m.theta_classes().unwrap().len() {
            let c = theta_contraction(&m, k).unwrap();
            let back = expansion(&c.graph, &c.cover);
            prop_assert!(find_isomorphism(&back.graph, &g).is_some());
        }
    }

    #[test]
    fn gen_is_deterministic(n in 1usize..12, p in 0.1f64..0.9, seed in any::<u64>(), k in 0usize..8) {
        let text = |r: pcube::Result<Graph>| r.map(|g| g.to_text()).map_err(|e| e.to_string());
        prop_assert_eq!(text(random_bipartite(n, p, seed)), text(random_bipartite(n, p, seed)));
        prop_assert_eq!(random_partial_cube(k, seed).to_text(), random_partial_cube(k, seed).to_text());
    }
}
