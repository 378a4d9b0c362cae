use std::collections::BTreeSet;

use crate::graph::Graph;

/// `G0 □ G1` with vertex `(u, v)` stored as `u · |V(G1)| + v`.
#[derive(Clone, Debug)]
pub struct Product {
    pub graph: Graph,
    pub n0: usize,
    pub n1: usize,
}

impl Product {
    pub fn vertex(&self, u: usize, v: usize) -> usize {
        u * self.n1 + v
    }

    pub fn pr0(&self, x: usize) -> usize {
        x / self.n1
    }

    pub fn pr1(&self, x: usize) -> usize {
        x % self.n1
    }
}

pub fn cartesian_product(g0: &Graph, g1: &Graph) -> Product {
    let (n0, n1) = (g0.n(), g1.n());
    let mut edges = BTreeSet::new();
    for u in 0..n0 {
        for &(a, b) in g1.edges() {
            edges.insert((u * n1 + a, u * n1 + b));
        }
    }
    for &(a, b) in g0.edges() {
        for v in 0..n1 {
            edges.insert((a * n1 + v, b * n1 + v));
        }
    }
    Product {
        graph: Graph::from_edge_set(n0 * n1, edges),
        n0,
        n1,
    }
}
