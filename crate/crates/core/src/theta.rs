//! The Djoković–Winkler relation Θ, half-space data and partial-cube
//! recognition.
//!
//! Θ is evaluated on directed edges. For bipartite graphs, `(xy, uv) ∈ Θ`
//! iff `d(x,u) = d(y,v) = d(x,v) − 1 = d(y,u) − 1`, which fixes an
//! orientation: `xy` and `yx` are never related. The unoriented relation is
//! the symmetrisation over both orientations of the second edge.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::convexity::ConvexityViolation;
use crate::error::{Error, Result};
use crate::metric::Metric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
}

impl DirectedEdge {
    pub fn new(tail: usize, head: usize) -> Self {
        DirectedEdge { tail, head }
    }

    pub fn reversed(self) -> Self {
        DirectedEdge::new(self.head, self.tail)
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.tail, self.head)
    }
}

/// Why a graph failed partial-cube recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecognitionFailure {
    NotBipartite,
    /// `W_{ab}` (tail→head of `edge`) is not convex.
    NonConvexHalf {
        edge: DirectedEdge,
        violation: ConvexityViolation,
    },
    /// `e1 Θ e2` and `e2 Θ e3` but not `e1 Θ e3`.
    NotTransitive {
        e1: DirectedEdge,
        e2: DirectedEdge,
        e3: DirectedEdge,
    },
    /// The half-space labelling disagrees with the metric at `u, v`.
    NotIsometric {
        u: usize,
        v: usize,
        hamming: u32,
        distance: u32,
    },
}

impl fmt::Display for RecognitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecognitionFailure::NotBipartite => write!(f, "graph is not bipartite"),
            RecognitionFailure::NonConvexHalf { edge, violation } => write!(
                f,
                "W_{edge} is not convex: {} lies between {} and {}",
                violation.z, violation.x, violation.y
            ),
            RecognitionFailure::NotTransitive { e1, e2, e3 } => {
                write!(f, "Θ not transitive: {e1} ~ {e2} ~ {e3} but {e1} ≁ {e3}")
            }
            RecognitionFailure::NotIsometric {
                u,
                v,
                hamming,
                distance,
            } => write!(
                f,
                "labels of {u} and {v} are at Hamming distance {hamming}, graph distance {distance}"
            ),
        }
    }
}

/// The four half-space sets of a directed edge `ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpaceData {
    pub edge: DirectedEdge,
    pub w_ab: VertexSet,
    pub w_ba: VertexSet,
    pub u_ab: VertexSet,
    pub u_ba: VertexSet,
}

/// Θ over the edges of a graph, indexed like [`crate::Graph::edges`].
#[derive(Clone, Debug)]
pub struct ThetaStructure {
    edges: Vec<(usize, usize)>,
    /// `related[i]` holds the indices `j` with edge `i` Θ edge `j` (unoriented).
    related: Vec<VertexSet>,
    transitive: bool,
    violation: Option<RecognitionFailure>,
    /// Classes as consistently oriented directed edges, representative first,
    /// sorted by representative. Empty when Θ is not transitive.
    classes: Vec<Vec<DirectedEdge>>,
}

impl Metric {
    /// Θ between two directed edges: the oriented four-distance identity on
    /// bipartite graphs, the unoriented inequality otherwise.
    pub fn theta_related(&self, e1: DirectedEdge, e2: DirectedEdge) -> Result<bool> {
        self.check_edge(e1.tail, e1.head)?;
        self.check_edge(e2.tail, e2.head)?;
        Ok(self.theta_unchecked(e1, e2))
    }

    #[inline]
    pub(crate) fn theta_unchecked(&self, e1: DirectedEdge, e2: DirectedEdge) -> bool {
        let (x, y, u, v) = (e1.tail, e1.head, e2.tail, e2.head);
        if self.is_bipartite() {
            let base = self.d(x, u);
            self.d(y, v) == base && self.d(x, v) == base + 1 && self.d(y, u) == base + 1
        } else {
            self.d(x, u) + self.d(y, v) != self.d(x, v) + self.d(y, u)
        }
    }

    fn theta_undirected(&self, e: (usize, usize), f: (usize, usize)) -> bool {
        let e = DirectedEdge::new(e.0, e.1);
        self.theta_unchecked(e, DirectedEdge::new(f.0, f.1))
            || self.theta_unchecked(e, DirectedEdge::new(f.1, f.0))
    }

    /// `W_ab = { x : d(a,x) < d(b,x) }`.
    pub fn w_set(&self, a: usize, b: usize) -> Result<VertexSet> {
        self.check_edge(a, b)?;
        Ok(self.w_set_unchecked(a, b))
    }

    pub(crate) fn w_set_unchecked(&self, a: usize, b: usize) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&x| self.d(a, x) < self.d(b, x)))
    }

    /// `U_ab`: the vertices of `W_ab` with a neighbour in `W_ba`.
    pub fn u_set(&self, a: usize, b: usize) -> Result<VertexSet> {
        self.check_edge(a, b)?;
        Ok(self.u_set_unchecked(a, b))
    }

    pub(crate) fn u_set_unchecked(&self, a: usize, b: usize) -> VertexSet {
        let w_ab = self.w_set_unchecked(a, b);
        let w_ba = self.w_set_unchecked(b, a);
        let members = w_ab
            .iter()
            .filter(|&x| self.graph().neighbors(x).iter().any(|&y| w_ba.contains(y)));
        VertexSet::from_vertices(self.n(), members.collect::<Vec<_>>())
    }

    pub fn half_space_data(&self, a: usize, b: usize) -> Result<HalfSpaceData> {
        self.check_edge(a, b)?;
        Ok(HalfSpaceData {
            edge: DirectedEdge::new(a, b),
            w_ab: self.w_set_unchecked(a, b),
            w_ba: self.w_set_unchecked(b, a),
            u_ab: self.u_set_unchecked(a, b),
            u_ba: self.u_set_unchecked(b, a),
        })
    }

    /// Djoković's criterion: every `W_ab` is convex.
    pub fn djokovic_failure(&self) -> Option<RecognitionFailure> {
        if !self.is_bipartite() {
            return Some(RecognitionFailure::NotBipartite);
        }
        for &(a, b) in self.graph().edges() {
            for (s, t) in [(a, b), (b, a)] {
                if let Some(violation) = self.convexity_violation(&self.w_set_unchecked(s, t)) {
                    return Some(RecognitionFailure::NonConvexHalf {
                        edge: DirectedEdge::new(s, t),
                        violation,
                    });
                }
            }
        }
        None
    }

    pub fn is_partial_cube_djokovic(&self) -> bool {
        self.djokovic_failure().is_none()
    }

    /// Winkler's criterion: Θ is transitive.
    pub fn winkler_failure(&self) -> Option<RecognitionFailure> {
        if !self.is_bipartite() {
            return Some(RecognitionFailure::NotBipartite);
        }
        self.theta_structure().violation
    }

    pub fn is_partial_cube_winkler(&self) -> bool {
        self.winkler_failure().is_none()
    }

    pub fn theta_structure(&self) -> ThetaStructure {
        ThetaStructure::new(self)
    }

    /// Θ-classes as consistently oriented edge lists. Fails when Θ is not
    /// transitive.
    pub fn theta_classes(&self) -> Result<Vec<Vec<DirectedEdge>>> {
        let t = self.theta_structure();
        match t.violation {
            Some(v) => Err(Error::NotPartialCube(v)),
            None => Ok(t.classes),
        }
    }

    /// Labels each vertex by its side of one representative edge per
    /// union-find component of Θ, then checks the labelling is isometric.
    ///
    /// This route never consults the transitivity check, so it recognises
    /// partial cubes independently of [`Metric::is_partial_cube_winkler`].
    pub fn cube_embedding(&self) -> Result<CubeEmbedding> {
        if !self.is_bipartite() {
            return Err(Error::NotPartialCube(RecognitionFailure::NotBipartite));
        }
        let edges = self.graph().edges();
        let mut uf = UnionFind::new(edges.len());
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if self.theta_undirected(edges[i], edges[j]) {
                    uf.union(i, j);
                }
            }
        }
        // Roots are component minima, so this is sorted by least edge.
        let reps: Vec<usize> = (0..edges.len()).filter(|&i| uf.find(i) == i).collect();

        let class_order: Vec<DirectedEdge> = reps
            .iter()
            .map(|&i| DirectedEdge::new(edges[i].0, edges[i].1))
            .collect();
        let sides: Vec<VertexSet> = class_order
            .iter()
            .map(|e| self.w_set_unchecked(e.head, e.tail))
            .collect();
        let labels: Vec<Vec<bool>> = (0..self.n())
            .map(|v| sides.iter().map(|s| s.contains(v)).collect())
            .collect();

        let emb = CubeEmbedding {
            class_order,
            labels,
        };
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                let hamming = emb.hamming(u, v);
                let distance = self.d(u, v);
                if hamming != distance {
                    return Err(Error::NotPartialCube(RecognitionFailure::NotIsometric {
                        u,
                        v,
                        hamming,
                        distance,
                    }));
                }
            }
        }
        Ok(emb)
    }

    pub fn is_partial_cube_embedding(&self) -> bool {
        self.cube_embedding().is_ok()
    }

    /// Whether the vertex sequence `path` is a geodesic, decided by Θ: no two
    /// distinct edges may be Θ-related. Requires a partial cube.
    pub fn geodesic_check(&self, path: &[usize]) -> Result<bool> {
        if path.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        for &v in path {
            self.check_vertex(v)?;
        }
        let mut seen = VertexSet::empty(self.n());
        for &v in path {
            if !seen.insert(v) {
                return Err(Error::NotAPath(format!("vertex {v} repeats")));
            }
        }
        for w in path.windows(2) {
            if !self.graph().has_edge(w[0], w[1]) {
                return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        if let Some(f) = self.winkler_failure() {
            return Err(Error::NotPartialCube(f));
        }
        let steps: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
        for i in 0..steps.len() {
            for j in i + 1..steps.len() {
                if self.theta_undirected(steps[i], steps[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl ThetaStructure {
    fn new(m: &Metric) -> Self {
        let edges = m.graph().edges().to_vec();
        let k = edges.len();
        let mut related = vec![VertexSet::empty(k); k];
        let mut uf = UnionFind::new(k);
        for i in 0..k {
            related[i].insert(i);
            for j in i + 1..k {
                if m.theta_undirected(edges[i], edges[j]) {
                    related[i].insert(j);
                    related[j].insert(i);
                    uf.union(i, j);
                }
            }
        }

        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..k {
            members[uf.find(i)].push(i);
        }
        let mut violation = None;
        'outer: for group in members.iter().filter(|g| !g.is_empty()) {
            for &i in group {
                for &j in group {
                    if i < j && !related[i].contains(j) {
                        violation = Some(transitivity_witness(&edges, &related, i, j));
                        break 'outer;
                    }
                }
            }
        }

        let transitive = violation.is_none();
        let mut classes = Vec::new();
        if transitive {
            for group in members.iter().filter(|g| !g.is_empty()) {
                // Groups hold ascending indices, so the first is the least
                // undirected edge; (u, v) with u < v is then the least
                // directed edge of the class.
                let (ru, rv) = edges[group[0]];
                let rep = DirectedEdge::new(ru, rv);
                let mut class = vec![rep];
                for &j in &group[1..] {
                    let (u, v) = edges[j];
                    let fwd = DirectedEdge::new(u, v);
                    class.push(if m.theta_unchecked(rep, fwd) {
                        fwd
                    } else {
                        fwd.reversed()
                    });
                }
                classes.push(class);
            }
            classes.sort_by_key(|c| c[0]);
        }

        ThetaStructure {
            edges,
            related,
            transitive,
            violation,
            classes,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn violation(&self) -> Option<&RecognitionFailure> {
        self.violation.as_ref()
    }

    pub fn classes(&self) -> &[Vec<DirectedEdge>] {
        &self.classes
    }

    /// Unoriented Θ between edges `i` and `j` of the graph's edge list.
    pub fn related(&self, i: usize, j: usize) -> bool {
        self.related[i].contains(j)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Class index of the undirected edge `{u, v}`.
    pub fn class_of(&self, u: usize, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| {
            c.iter()
                .any(|e| (e.tail, e.head) == (u, v) || (e.head, e.tail) == (u, v))
        })
    }
}

/// Walks the Θ-graph from `i` to `j` and returns the first triple along the
/// way where transitivity breaks.
fn transitivity_witness(
    edges: &[(usize, usize)],
    related: &[VertexSet],
    i: usize,
    j: usize,
) -> RecognitionFailure {
    let k = edges.len();
    let mut prev = vec![usize::MAX; k];
    let mut queue = std::collections::VecDeque::from([i]);
    prev[i] = i;
    while let Some(x) = queue.pop_front() {
        if x == j {
            break;
        }
        for y in related[x].iter() {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![j];
    while *path.last().unwrap() != i {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    let t = (1..path.len())
        .find(|&t| !related[i].contains(path[t]))
        .expect("j is not related to i");
    let undirected = |x: usize| DirectedEdge::new(edges[x].0, edges[x].1);
    RecognitionFailure::NotTransitive {
        e1: undirected(i),
        e2: undirected(path[t - 1]),
        e3: undirected(path[t]),
    }
}

/// Isometric embedding into a hypercube: bit `i` of a vertex is set iff it
/// lies in `W_ba` for the class-`i` representative `ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeEmbedding {
    pub class_order: Vec<DirectedEdge>,
    pub labels: Vec<Vec<bool>>,
}

impl CubeEmbedding {
    pub fn dimension(&self) -> usize {
        self.class_order.len()
    }

    pub fn hamming(&self, u: usize, v: usize) -> u32 {
        self.labels[u]
            .iter()
            .zip(&self.labels[v])
            .filter(|(a, b)| a != b)
            .count() as u32
    }

    pub fn bitstring(&self, v: usize) -> String {
        self.labels[v].iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Text form: a `# class_order:` header naming each bit's representative
    /// edge, then one `vertex bitstring` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# class_order:");
        for e in &self.class_order {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
        for v in 0..self.labels.len() {
            out.push_str(&format!("{v} {}\n", self.bitstring(v)));
        }
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Merges so that the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn metric(n: usize, edges: &[(usize, usize)]) -> Metric {
        Metric::new(Graph::new(n, edges.iter().copied()).unwrap()).unwrap()
    }

    fn cycle(n: usize) -> Metric {
        metric(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn e(a: usize, b: usize) -> DirectedEdge {
        DirectedEdge::new(a, b)
    }

    #[test]
    fn theta_on_c4_and_orientation() {
        // 1−2−3−4−1 relabelled to 0..4.
        let c4 = metric(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(c4.theta_related(e(0, 1), e(3, 2)).unwrap());
        assert!(!c4.theta_related(e(0, 1), e(2, 3)).unwrap());
        assert!(!c4.theta_related(e(0, 1), e(1, 0)).unwrap());
        assert!(c4.theta_related(e(0, 1), e(0, 1)).unwrap());
        assert!(c4.theta_related(e(0, 1), e(0, 2)).is_err());
    }

    #[test]
    fn theta_on_p3() {
        let p3 = metric(3, &[(0, 1), (1, 2)]);
        for (a, b) in [(1, 2), (2, 1)] {
            assert!(!p3.theta_related(e(0, 1), e(a, b)).unwrap());
        }
    }

    #[test]
    fn w_and_u_sets() {
        let k2 = metric(2, &[(0, 1)]);
        assert_eq!(k2.w_set(0, 1).unwrap().to_vec(), vec![0]);
        assert_eq!(k2.u_set(0, 1).unwrap().to_vec(), vec![0]);
        let p4 = metric(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p4.w_set(1, 2).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(p4.u_set(1, 2).unwrap().to_vec(), vec![1]);
        assert!(p4.w_set(0, 2).is_err());
    }

    #[test]
    fn c6_classes() {
        let c6 = cycle(6);
        let classes = c6.theta_classes().unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.len() == 2));
        assert_eq!(classes[0], vec![e(0, 1), e(4, 3)]);
    }

    #[test]
    fn non_bipartite_routes_to_inequality() {
        let c5 = cycle(5);
        assert!(!c5.is_partial_cube_djokovic());
        assert_eq!(c5.winkler_failure(), Some(RecognitionFailure::NotBipartite));
        // d(0,3) + d(1,2) = 3 but d(0,2) + d(1,3) = 4.
        assert!(c5.theta_related(e(0, 1), e(3, 2)).unwrap());
    }

    #[test]
    fn k23_failures_carry_witnesses() {
        let k23 = metric(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(matches!(
            k23.djokovic_failure(),
            Some(RecognitionFailure::NonConvexHalf { .. })
        ));
        match k23.winkler_failure() {
            Some(RecognitionFailure::NotTransitive { e1, e2, e3 }) => {
                let t = k23.theta_structure();
                let idx = |d: DirectedEdge| k23.graph().edge_index(d.tail, d.head).unwrap();
                assert!(t.related(idx(e1), idx(e2)));
                assert!(t.related(idx(e2), idx(e3)));
                assert!(!t.related(idx(e1), idx(e3)));
            }
            other => panic!("{other:?}"),
        }
        assert!(k23.cube_embedding().is_err());
    }

    #[test]
    fn geodesic_check_on_c6() {
        let c6 = cycle(6);
        assert!(c6.geodesic_check(&[0, 1]).unwrap());
        assert!(c6.geodesic_check(&[0, 1, 2, 3]).unwrap());
        assert!(!c6.geodesic_check(&[3, 4, 5, 0, 1]).unwrap());
        assert!(c6.geodesic_check(&[0, 2]).is_err());
        assert!(c6.geodesic_check(&[0, 1, 0]).is_err());
    }

    #[test]
    fn embedding_text() {
        let p3 = metric(3, &[(0, 1), (1, 2)]);
        let emb = p3.cube_embedding().unwrap();
        assert_eq!(emb.to_text(), "# class_order: 0-1 1-2\n0 00\n1 10\n2 11\n");
    }
}
