//! Simple undirected graphs on dense vertex indices, plus the edge-list
//! text format and a few structural predicates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::bitset::VertexSet;
use crate::error::{Error, ParseErrorKind, Result};

/// A finite simple undirected graph with vertices `0..n`.
///
/// Edges are stored once, as `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u} {v} out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self::from_sorted(n, set))
    }

    /// Like [`Graph::new`] but silently merges duplicates. Loops still panic.
    pub(crate) fn from_edge_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        Self::from_sorted(n, edges)
    }

    fn from_sorted(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            assert!(u < v && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph {
            adj,
            edges: set.into_iter().collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, BTreeSet::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Vertices adjacent to `set` but not in it.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n());
        for v in set {
            for &w in &self.adj[v] {
                out.insert(w);
            }
        }
        out.difference_with(set);
        out
    }

    /// The subgraph induced by `set`, with vertices renumbered in increasing
    /// order. The second component maps new indices back to old ones.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = set.iter().collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| set.contains(u) && set.contains(v))
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .collect();
        (Self::from_sorted(old.len(), edges), old)
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether the graph is connected. `K_0` counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// A proper 2-colouring if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.m() == self.n() - 1
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            kind: ParseErrorKind::MalformedHeader,
        })?;
        let (n, m) = parse_pair(header).ok_or(Error::Parse {
            line: hline,
            kind: ParseErrorKind::MalformedHeader,
        })?;

        let mut edges = BTreeSet::new();
        let mut last_line = hline;
        for (line, text) in lines {
            last_line = line;
            let (u, v) = parse_pair(text).ok_or(Error::Parse {
                line,
                kind: ParseErrorKind::MalformedEdge,
            })?;
            for x in [u, v] {
                if x >= n {
                    return Err(Error::Parse {
                        line,
                        kind: ParseErrorKind::VertexOutOfRange { vertex: x, n },
                    });
                }
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::Loop { vertex: u },
                });
            }
            if !edges.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::DuplicateEdge { u, v },
                });
            }
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line,
                kind: ParseErrorKind::EdgeCountMismatch {
                    declared: m,
                    found: edges.len(),
                },
            });
        }
        Ok(Self::from_sorted(n, edges))
    }

    /// Emits the edge-list format with edges sorted lexicographically.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges)
    }
}
