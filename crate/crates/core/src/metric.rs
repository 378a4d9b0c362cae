//! Shortest-path metric of a connected graph and its geodesic intervals.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.d[x * self.n + y]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// BFS from every vertex. Errors on disconnected input.
pub fn distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut d = Vec::with_capacity(n * n);
    for s in 0..n {
        for x in g.bfs(s) {
            d.push(x.ok_or(Error::Disconnected)?);
        }
    }
    Ok(DistanceMatrix { n, d })
}

/// A connected graph together with its distance matrix and the table of all
/// geodesic intervals. Every convexity and Θ operation runs against this.
///
/// Immutable once built, so it can be shared freely across threads.
#[derive(Clone, Debug)]
pub struct Metric {
    graph: Graph,
    dist: DistanceMatrix,
    intervals: Vec<VertexSet>,
    bipartite: bool,
}

impl Metric {
    pub fn new(graph: Graph) -> Result<Self> {
        let dist = distances(&graph)?;
        let n = graph.n();
        let mut intervals = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let dxy = dist.get(x, y);
                let members = (0..n).filter(|&z| dist.get(x, z) + dist.get(z, y) == dxy);
                intervals.push(VertexSet::from_vertices(n, members));
            }
        }
        let bipartite = graph.is_bipartite();
        Ok(Metric {
            graph,
            dist,
            intervals,
            bipartite,
        })
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> u32 {
        self.dist.get(x, y)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartite
    }

    /// `I(x, y)`: every vertex on some shortest `(x, y)`-path.
    #[inline]
    pub fn interval(&self, x: usize, y: usize) -> &VertexSet {
        &self.intervals[x * self.n() + y]
    }

    #[inline]
    pub fn in_interval(&self, z: usize, x: usize, y: usize) -> bool {
        self.d(x, z) + self.d(z, y) == self.d(x, y)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n())
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub(crate) fn check_edge(&self, a: usize, b: usize) -> Result<()> {
        if self.graph.has_edge(a, b) {
            Ok(())
        } else {
            Err(Error::NotEdge { u: a, v: b })
        }
    }

    /// Whether `sub` (a set of host vertices) induces a connected subgraph
    /// whose own distances agree with the host's.
    pub fn is_isometric_set(&self, sub: &VertexSet) -> bool {
        let (h, map) = self.graph.induced(sub);
        match distances(&h) {
            Ok(dh) => (0..h.n())
                .all(|i| (0..h.n()).all(|j| dh.get(i, j) == self.d(map[i], map[j]))),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn path_and_cycle_distances() {
        assert_eq!(distances(&path(4)).unwrap().get(0, 3), 3);
        assert_eq!(distances(&cycle(6)).unwrap().diameter(), 3);
    }

    #[test]
    fn cube_distance_is_hamming() {
        let q3 = Graph::new(
            8,
            (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b)),
        )
        .unwrap();
        let d = distances(&q3).unwrap();
        for x in 0..8usize {
            for y in 0..8usize {
                assert_eq!(d.get(x, y), (x ^ y).count_ones());
            }
        }
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            distances(&Graph::empty(2)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn intervals() {
        let m = Metric::new(cycle(6)).unwrap();
        assert_eq!(m.interval(2, 2).to_vec(), vec![2]);
        assert_eq!(m.interval(0, 3).len(), 6);
        let p3 = Metric::new(path(3)).unwrap();
        assert_eq!(p3.interval(0, 2).to_vec(), vec![0, 1, 2]);
    }
}
