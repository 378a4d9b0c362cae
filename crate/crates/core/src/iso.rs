//! Isomorphism testing for small graphs by colour refinement followed by
//! backtracking over colour-compatible assignments.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ISO_BOUND: usize = 12;

/// Returns a bijection `phi` with `uv ∈ E(g) ⟺ phi[u]phi[v] ∈ E(h)`, or
/// `None` when the graphs are not isomorphic.
///
/// Fails with [`Error::BoundExceeded`] when either graph has more than
/// `bound` vertices.
pub fn are_isomorphic_small(g: &Graph, h: &Graph, bound: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n().max(h.n());
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "isomorphism search",
            n,
            bound,
        });
    }
    Ok(find_isomorphism(g, h))
}

/// Same as [`are_isomorphic_small`] without the size bound.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let n = g.n();
    let (cg, ch) = joint_refinement(g, h);
    let mut hist_g = BTreeMap::new();
    let mut hist_h = BTreeMap::new();
    for v in 0..n {
        *hist_g.entry(cg[v]).or_insert(0usize) += 1;
        *hist_h.entry(ch[v]).or_insert(0usize) += 1;
    }
    if hist_g != hist_h {
        return None;
    }

    // Rarest colours first, then keep the order connected where possible.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&v| (hist_g[&cg[v]], std::cmp::Reverse(g.degree(v)), v));
    for s in seeds {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let mut nbrs: Vec<usize> = g
                .neighbors(order[i])
                .iter()
                .copied()
                .filter(|&w| !placed[w])
                .collect();
            nbrs.sort_by_key(|&w| (hist_g[&cg[w]], w));
            for w in nbrs {
                placed[w] = true;
                order.push(w);
            }
            i += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut search = Search {
        g,
        h,
        cg: &cg,
        ch: &ch,
        order: &order,
        map: &mut map,
        used: &mut used,
    };
    search.extend(0).then_some(map)
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: &'a [usize],
    ch: &'a [usize],
    order: &'a [usize],
    map: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.h.n() {
            if self.used[w] || self.ch[w] != self.cg[v] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        // Both graphs have equal degrees per colour, so checking mapped
        // neighbours of v and the adjacency count towards mapped vertices suffices.
        let mut mapped_nbrs = 0;
        for &x in self.g.neighbors(v) {
            let y = self.map[x];
            if y != usize::MAX {
                if !self.h.has_edge(w, y) {
                    return false;
                }
                mapped_nbrs += 1;
            }
        }
        let image_nbrs = self
            .h
            .neighbors(w)
            .iter()
            .filter(|&&y| self.used[y])
            .count();
        image_nbrs == mapped_nbrs
    }
}

/// 1-dimensional Weisfeiler–Leman refinement run on both graphs at once so
/// that colour ids are comparable across them.
fn joint_refinement(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n)
        .map(|v| g.degree(v))
        .chain((0..n).map(|v| h.degree(v)))
        .collect();
    let nbrs = |i: usize| -> Vec<usize> {
        if i < n {
            g.neighbors(i).to_vec()
        } else {
            h.neighbors(i - n).iter().map(|&w| w + n).collect()
        }
    };
    let mut classes = count_distinct(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..2 * n)
            .map(|i| {
                let mut s: Vec<usize> = nbrs(i).into_iter().map(|w| colors[w]).collect();
                s.sort_unstable();
                (colors[i], s)
            })
            .collect();
        let mut ids = BTreeMap::new();
        for s in &signatures {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        colors = signatures.iter().map(|s| ids[s]).collect();
        let now = ids.len();
        if now == classes {
            break;
        }
        classes = now;
    }
    let ch = colors.split_off(n);
    (colors, ch)
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn assert_witness(g: &Graph, h: &Graph, phi: &[usize]) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(g.has_edge(u, v), h.has_edge(phi[u], phi[v]));
            }
        }
    }

    #[test]
    fn square_vs_c4() {
        let sq = Graph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let phi = are_isomorphic_small(&sq, &cycle(4), 12).unwrap().unwrap();
        assert_witness(&sq, &cycle(4), &phi);
    }

    #[test]
    fn p3_vs_k3() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(are_isomorphic_small(&p3, &cycle(3), 12).unwrap().is_none());
    }

    #[test]
    fn relabelled_cube() {
        let q3 = Graph::new(
            8,
            (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b)),
        )
        .unwrap();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let relabelled =
            Graph::new(8, q3.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let phi = are_isomorphic_small(&q3, &relabelled, 12)
            .unwrap()
            .unwrap();
        assert_witness(&q3, &relabelled, &phi);
    }

    #[test]
    fn regular_non_isomorphic() {
        // C6 and two triangles: same degrees, different graphs.
        let two_tri = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(find_isomorphism(&cycle(6), &two_tri).is_none());
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(
            are_isomorphic_small(&cycle(13), &cycle(13), 12),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
