//! Proper covers, expansions and Θ-contractions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::Metric;
use crate::theta::{DirectedEdge, UnionFind};

/// The first clause of the proper-cover definition that a pair violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverViolation {
    UniverseMismatch,
    EmptyIntersection,
    NotCovering { vertex: usize },
    CrossEdge { u: usize, v: usize },
    /// `G[V_side]` is disconnected or distorts the distance between `u, v`.
    NotIsometric { side: u8, u: usize, v: usize },
}

impl std::fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverViolation::UniverseMismatch => write!(f, "sets are sized for a different graph"),
            CoverViolation::EmptyIntersection => write!(f, "V0 and V1 are disjoint"),
            CoverViolation::NotCovering { vertex } => write!(f, "vertex {vertex} is in neither set"),
            CoverViolation::CrossEdge { u, v } => {
                write!(f, "edge {u}-{v} joins V0 - V1 to V1 - V0")
            }
            CoverViolation::NotIsometric { side, u, v } => {
                write!(f, "V{side} is not isometric: distance {u}-{v} changes")
            }
        }
    }
}

/// A pair `(V0, V1)` that has passed [`check_proper_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperCover {
    v0: VertexSet,
    v1: VertexSet,
}

impl ProperCover {
    pub fn new(g: &Graph, v0: VertexSet, v1: VertexSet) -> Result<Self> {
        check_proper_cover(g, &v0, &v1).map_err(Error::InvalidCover)?;
        Ok(ProperCover { v0, v1 })
    }

    pub fn v0(&self) -> &VertexSet {
        &self.v0
    }

    pub fn v1(&self) -> &VertexSet {
        &self.v1
    }

    pub fn side(&self, i: u8) -> &VertexSet {
        if i == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }
}

/// Checks `V0 ∩ V1 ≠ ∅`, `V0 ∪ V1 = V`, no edge between `V0 − V1` and
/// `V1 − V0`, and that both induced subgraphs are isometric.
pub fn check_proper_cover(
    g: &Graph,
    v0: &VertexSet,
    v1: &VertexSet,
) -> std::result::Result<(), CoverViolation> {
    let n = g.n();
    if v0.universe() != n || v1.universe() != n {
        return Err(CoverViolation::UniverseMismatch);
    }
    if v0.is_disjoint(v1) {
        return Err(CoverViolation::EmptyIntersection);
    }
    if let Some(vertex) = v0.union(v1).complement().first() {
        return Err(CoverViolation::NotCovering { vertex });
    }
    let only0 = v0.difference(v1);
    let only1 = v1.difference(v0);
    for &(u, v) in g.edges() {
        if (only0.contains(u) && only1.contains(v)) || (only1.contains(u) && only0.contains(v)) {
            return Err(CoverViolation::CrossEdge { u, v });
        }
    }
    for (side, set) in [(0u8, v0), (1u8, v1)] {
        let (h, map) = g.induced(set);
        for i in 0..h.n() {
            let inner = h.bfs(i);
            let outer = g.bfs(map[i]);
            for j in 0..h.n() {
                if inner[j] != outer[map[j]] {
                    return Err(CoverViolation::NotIsometric {
                        side,
                        u: map[i],
                        v: map[j],
                    });
                }
            }
        }
    }
    Ok(())
}

/// The subgraph of `G □ K2` induced by `(V0 × {0}) ∪ (V1 × {1})`.
///
/// Vertex `(x, i)` is first named `2x + i`, then the names are compacted to
/// `0..n'` in increasing order.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Graph,
    /// `psi[i][x]` is the image of `x ∈ V_i` in the expansion.
    pub psi: [Vec<Option<usize>>; 2],
    /// Projection back onto `G`.
    pub pr: Vec<usize>,
    /// Which copy each expansion vertex lies in.
    pub side: Vec<u8>,
}

impl Expansion {
    /// `ψ(A) = ψ0(A ∩ V0) ∪ ψ1(A ∩ V1)`.
    pub fn psi_set(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.graph.n());
        for x in a {
            for copy in &self.psi {
                if let Some(y) = copy[x] {
                    out.insert(y);
                }
            }
        }
        out
    }

    pub fn pr_set(&self, a: &VertexSet, host_n: usize) -> VertexSet {
        VertexSet::from_vertices(host_n, a.iter().map(|y| self.pr[y]))
    }

    /// `V'_i`, the copy of `V_i`.
    pub fn copy(&self, i: u8) -> VertexSet {
        VertexSet::from_vertices(
            self.graph.n(),
            (0..self.graph.n()).filter(|&y| self.side[y] == i),
        )
    }
}

pub fn expansion(g: &Graph, cover: &ProperCover) -> Expansion {
    let n = g.n();
    let mut names: Vec<(usize, u8)> = Vec::new();
    for x in 0..n {
        for i in 0..2u8 {
            if cover.side(i).contains(x) {
                names.push((x, i));
            }
        }
    }
    // (x, i) ↦ 2x + i is increasing in this order already.
    let mut psi = [vec![None; n], vec![None; n]];
    for (k, &(x, i)) in names.iter().enumerate() {
        psi[i as usize][x] = Some(k);
    }
    let mut edges = BTreeSet::new();
    for &(u, v) in g.edges() {
        for copy in &psi {
            if let (Some(a), Some(b)) = (copy[u], copy[v]) {
                edges.insert((a, b));
            }
        }
    }
    for (&p0, &p1) in psi[0].iter().zip(&psi[1]) {
        if let (Some(a), Some(b)) = (p0, p1) {
            edges.insert((a, b));
        }
    }
    Expansion {
        graph: Graph::from_edge_set(names.len(), edges),
        psi,
        pr: names.iter().map(|&(x, _)| x).collect(),
        side: names.iter().map(|&(_, i)| i).collect(),
    }
}

/// Result of contracting one Θ-class.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    /// Old vertex ↦ new vertex.
    pub map: Vec<usize>,
    pub class: Vec<DirectedEdge>,
    /// Images of `W_ab` and `W_ba` for the class representative `ab`; the
    /// original graph is the expansion of the contraction along this cover.
    pub cover: ProperCover,
}

/// Identifies the endpoints of every edge in Θ-class `class_id` (classes as
/// ordered by [`Metric::theta_classes`]). The smaller endpoint names each
/// merged pair before compaction.
pub fn theta_contraction(m: &Metric, class_id: usize) -> Result<Contraction> {
    if let Some(f) = m.djokovic_failure() {
        return Err(Error::NotPartialCube(f));
    }
    let classes = m.theta_classes()?;
    let class = classes
        .get(class_id)
        .ok_or(Error::InvalidClass {
            class: class_id,
            count: classes.len(),
        })?
        .clone();

    let g = m.graph();
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for e in &class {
        uf.union(e.tail, e.head);
    }
    let roots: BTreeSet<usize> = (0..n).map(|v| uf.find(v)).collect();
    let index_of: std::collections::BTreeMap<usize, usize> =
        roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let map: Vec<usize> = (0..n).map(|v| index_of[&uf.find(v)]).collect();

    let mut edges = BTreeSet::new();
    for &(u, v) in g.edges() {
        let (a, b) = (map[u], map[v]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let graph = Graph::from_edge_set(roots.len(), edges);

    let rep = class[0];
    let image = |s: VertexSet| VertexSet::from_vertices(graph.n(), s.iter().map(|v| map[v]));
    let v0 = image(m.w_set_unchecked(rep.tail, rep.head));
    let v1 = image(m.w_set_unchecked(rep.head, rep.tail));
    let cover = ProperCover::new(&graph, v0, v1)?;
    Ok(Contraction {
        graph,
        map,
        class,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::families::{even_cycle, hypercube, path};
    use crate::iso::find_isomorphism;

    fn vs(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn cover_clauses() {
        let k2 = path(2).unwrap();
        assert!(check_proper_cover(&k2, &k2.vertices(), &k2.vertices()).is_ok());
        assert!(check_proper_cover(&k2, &vs(2, &[0, 1]), &vs(2, &[1])).is_ok());
        let p3 = path(3).unwrap();
        assert_eq!(
            check_proper_cover(&p3, &vs(3, &[0]), &vs(3, &[2])),
            Err(CoverViolation::EmptyIntersection)
        );
        assert_eq!(
            check_proper_cover(&p3, &vs(3, &[0, 1]), &vs(3, &[1])),
            Err(CoverViolation::NotCovering { vertex: 2 })
        );
        assert_eq!(
            check_proper_cover(&p3, &vs(3, &[0, 1]), &vs(3, &[0, 2])),
            Err(CoverViolation::CrossEdge { u: 1, v: 2 })
        );
        let c6 = even_cycle(6).unwrap();
        // {0,1,2,3,4} induces P5, which distorts d(0,4).
        assert!(matches!(
            check_proper_cover(&c6, &vs(6, &[0, 1, 2, 3, 4]), &vs(6, &[4, 5, 0])),
            Err(CoverViolation::NotIsometric { side: 0, .. })
        ));
    }

    #[test]
    fn expansions_of_small_graphs() {
        let k1 = Graph::empty(1);
        let cover = ProperCover::new(&k1, vs(1, &[0]), vs(1, &[0])).unwrap();
        let e = expansion(&k1, &cover);
        assert_eq!(e.graph, path(2).unwrap());

        let k2 = path(2).unwrap();
        let cover = ProperCover::new(&k2, vs(2, &[0, 1]), vs(2, &[1])).unwrap();
        let e = expansion(&k2, &cover);
        assert!(find_isomorphism(&e.graph, &path(3).unwrap()).is_some());
        assert_eq!(e.pr, vec![0, 1, 1]);
        assert_eq!(e.side, vec![0, 0, 1]);
    }

    #[test]
    fn contractions() {
        let q3 = Metric::new(hypercube(3).unwrap()).unwrap();
        for k in 0..3 {
            let c = theta_contraction(&q3, k).unwrap();
            assert!(find_isomorphism(&c.graph, &hypercube(2).unwrap()).is_some());
        }
        let c6 = Metric::new(even_cycle(6).unwrap()).unwrap();
        let c = theta_contraction(&c6, 0).unwrap();
        assert!(find_isomorphism(&c.graph, &even_cycle(4).unwrap()).is_some());
        assert!(matches!(
            theta_contraction(&c6, 3),
            Err(Error::InvalidClass { class: 3, count: 3 })
        ));
    }

    #[test]
    fn contraction_rejects_non_partial_cube() {
        let k23 = Metric::new(crate::constructions::families::complete_bipartite(2, 3).unwrap())
            .unwrap();
        assert!(matches!(
            theta_contraction(&k23, 0),
            Err(Error::NotPartialCube(_))
        ));
    }
}
