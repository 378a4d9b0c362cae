use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::Metric;

/// Two graphs and an explicit bijection `glue` between vertex sets of each,
/// given as `(vertex of g0, vertex of g1)` pairs.
#[derive(Clone, Debug)]
pub struct AmalgamSpec {
    pub g0: Graph,
    pub g1: Graph,
    pub glue: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Amalgam {
    pub graph: Graph,
    /// `g0` keeps its labels: `map0[v] = v`.
    pub map0: Vec<usize>,
    /// Glued vertices of `g1` land on their partner; the rest follow `g0`'s
    /// vertices in increasing order.
    pub map1: Vec<usize>,
}

impl Amalgam {
    pub fn copy0(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), self.map0.iter().copied())
    }

    pub fn copy1(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), self.map1.iter().copied())
    }
}

impl AmalgamSpec {
    /// The glued vertex sets in `g0` and `g1`.
    pub fn glued_sets(&self) -> (VertexSet, VertexSet) {
        (
            VertexSet::from_vertices(self.g0.n(), self.glue.iter().map(|p| p.0)),
            VertexSet::from_vertices(self.g1.n(), self.glue.iter().map(|p| p.1)),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.glue.is_empty() {
            return Err(Error::InvalidGlue("the glued sets must intersect".into()));
        }
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(a, b) in &self.glue {
            if a >= self.g0.n() || b >= self.g1.n() {
                return Err(Error::InvalidGlue(format!("pair {a}:{b} out of range")));
            }
            if !left.insert(a) || !right.insert(b) {
                return Err(Error::InvalidGlue(format!("pair {a}:{b} reuses a vertex")));
            }
        }
        for (i, &(a, b)) in self.glue.iter().enumerate() {
            for &(c, d) in &self.glue[i + 1..] {
                if self.g0.has_edge(a, c) != self.g1.has_edge(b, d) {
                    return Err(Error::InvalidGlue(format!(
                        "{a}:{b} and {c}:{d} disagree on adjacency"
                    )));
                }
            }
        }
        let (s0, s1) = self.glued_sets();
        for (name, g, s) in [("g0", &self.g0, s0), ("g1", &self.g1, s1)] {
            let m = Metric::new(g.clone())?;
            if !m.is_gated(&s) {
                return Err(Error::InvalidGlue(format!("glued set {s} is not gated in {name}")));
            }
        }
        Ok(())
    }
}

/// Disjoint union of the two graphs with each glued pair identified.
pub fn gated_amalgam(spec: &AmalgamSpec) -> Result<Amalgam> {
    spec.validate()?;
    let n0 = spec.g0.n();
    let mut map1 = vec![usize::MAX; spec.g1.n()];
    for &(a, b) in &spec.glue {
        map1[b] = a;
    }
    let mut next = n0;
    for slot in map1.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges: BTreeSet<(usize, usize)> = spec.g0.edges().iter().copied().collect();
    for &(u, v) in spec.g1.edges() {
        let (a, b) = (map1[u], map1[v]);
        edges.insert((a.min(b), a.max(b)));
    }
    Ok(Amalgam {
        graph: Graph::from_edge_set(next, edges),
        map0: (0..n0).collect(),
        map1,
    })
}
