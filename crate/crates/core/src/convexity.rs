//! Geodesic convexity: pre-hull operator, hulls, copoints and attaching
//! points, the pre-hull number, ph-stability and gated sets.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::metric::Metric;

/// Largest vertex count for which convex-set enumeration is attempted.
pub const ORACLE_BOUND: usize = 16;

/// `x, y ∈ A` with `z ∈ I(x, y)` but `z ∉ A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// The iterates `A, 𝓘(A), 𝓘²(A), …` up to the first fixed point.
///
/// Stages strictly increase; the last one is `co(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullTrace {
    pub stages: Vec<VertexSet>,
}

impl HullTrace {
    pub fn hull(&self) -> &VertexSet {
        self.stages.last().expect("a trace has at least one stage")
    }

    /// Least `k` with `𝓘^k(A) = co(A)`.
    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }
}

/// A copoint `set` at vertex `at`: a maximal convex set avoiding `at`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Copoint {
    pub at: usize,
    pub set: VertexSet,
    /// `co(set ∪ {at}) − set`.
    pub att: VertexSet,
    /// Least `k` with `𝓘^k(set ∪ {at}) = co(set ∪ {at})`.
    pub hull_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttConvexityViolation {
    pub copoint: Copoint,
    pub violation: ConvexityViolation,
}

/// Two vertices of `𝓘(A)` not covered as the one-sided condition requires:
/// no `w ∈ A` has `v ∈ I(u, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhStabilityViolation {
    pub u: usize,
    pub v: usize,
}

impl Metric {
    /// `𝓘(A) = ⋃_{x,y ∈ A} I(x, y)`.
    pub fn pre_hull(&self, a: &VertexSet) -> VertexSet {
        let members = a.to_vec();
        let mut out = a.clone();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                out.union_with(self.interval(x, y));
            }
        }
        out
    }

    pub fn convex_hull(&self, a: &VertexSet) -> HullTrace {
        let mut stages = vec![a.clone()];
        loop {
            let next = self.pre_hull(stages.last().unwrap());
            if &next == stages.last().unwrap() {
                return HullTrace { stages };
            }
            stages.push(next);
        }
    }

    /// `co(A)` without keeping the intermediate stages.
    pub fn hull(&self, a: &VertexSet) -> VertexSet {
        let mut cur = a.clone();
        loop {
            let next = self.pre_hull(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn convexity_violation(&self, a: &VertexSet) -> Option<ConvexityViolation> {
        let members = a.to_vec();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if let Some(z) = self.interval(x, y).difference(a).first() {
                    return Some(ConvexityViolation { x, y, z });
                }
            }
        }
        None
    }

    pub fn is_convex(&self, a: &VertexSet) -> bool {
        self.convexity_violation(a).is_none()
    }

    /// Every convex set, as the deduplicated hulls of all `2^n` subsets.
    ///
    /// This is the brute-force oracle; [`Metric::convex_sets`] produces the
    /// same family by growing hulls one vertex at a time.
    pub fn enumerate_convex_sets(&self, bound: usize) -> Result<Vec<VertexSet>> {
        let n = self.n();
        if n > bound || n >= 63 {
            return Err(Error::BoundExceeded {
                what: "convex-set enumeration",
                n,
                bound,
            });
        }
        let family: BTreeSet<VertexSet> = (0..1u64 << n)
            .map(|mask| self.hull(&VertexSet::from_mask(n, mask)))
            .collect();
        Ok(family.into_iter().collect())
    }

    /// Every convex set, sorted. Starts from `∅` and closes the family under
    /// `C ↦ co(C ∪ {v})`, which reaches each convex set along a chain of its
    /// own sub-hulls.
    pub fn convex_sets(&self, bound: usize) -> Result<Vec<VertexSet>> {
        let n = self.n();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "convex-set enumeration",
                n,
                bound,
            });
        }
        let empty = self.empty_set();
        let mut seen: HashSet<VertexSet> = HashSet::from([empty.clone()]);
        let mut stack = vec![empty];
        while let Some(c) = stack.pop() {
            for v in c.complement().iter() {
                let h = self.hull(&c.with(v));
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        let mut family: Vec<VertexSet> = seen.into_iter().collect();
        family.sort();
        Ok(family)
    }

    /// Sets that are convex with convex complement, from the oracle family.
    pub fn half_spaces_oracle(&self, bound: usize) -> Result<Vec<VertexSet>> {
        let family = self.convex_sets(bound)?;
        let lookup: HashSet<&VertexSet> = family.iter().collect();
        Ok(family
            .iter()
            .filter(|c| lookup.contains(&c.complement()))
            .cloned()
            .collect())
    }

    fn make_copoint(&self, at: usize, set: VertexSet) -> Copoint {
        let trace = self.convex_hull(&set.with(at));
        let att = trace.hull().difference(&set);
        Copoint {
            at,
            set,
            att,
            hull_depth: trace.depth(),
        }
    }

    /// Copoints at `x` via the convex-set family: inclusion-maximal members
    /// avoiding `x`.
    pub fn copoints_at_generic(&self, x: usize, bound: usize) -> Result<Vec<Copoint>> {
        self.check_vertex(x)?;
        let family = self.convex_sets(bound)?;
        Ok(self.copoints_at_in(&family, x))
    }

    /// Copoints at `x` given the full convex-set family, as returned by
    /// [`Metric::convex_sets`]; lets callers reuse one enumeration.
    pub fn copoints_at_in(&self, family: &[VertexSet], x: usize) -> Vec<Copoint> {
        let avoid: Vec<&VertexSet> = family.iter().filter(|c| !c.contains(x)).collect();
        let mut out: Vec<Copoint> = avoid
            .iter()
            .filter(|c| !avoid.iter().any(|d| d != *c && c.is_subset(d)))
            .map(|c| self.make_copoint(x, (*c).clone()))
            .collect();
        out.sort();
        out
    }

    /// Every (vertex, copoint) pair via the convex-set family.
    pub fn copoints_generic(&self, bound: usize) -> Result<Vec<Copoint>> {
        let family = self.convex_sets(bound)?;
        Ok((0..self.n())
            .flat_map(|x| self.copoints_at_in(&family, x))
            .collect())
    }

    /// Every (vertex, copoint) pair of a partial cube, using that its
    /// copoints are exactly the half-spaces `W_ab`. Callers must ensure the
    /// graph is a partial cube.
    pub fn copoints_partial_cube(&self) -> Vec<Copoint> {
        if self.n() == 1 {
            // No edges, so no half-spaces; ∅ is the only copoint of K1.
            return vec![self.make_copoint(0, self.empty_set())];
        }
        let mut halves: BTreeSet<(VertexSet, usize)> = BTreeSet::new();
        for &(a, b) in self.graph().edges() {
            halves.insert((self.w_set_unchecked(a, b), b));
            halves.insert((self.w_set_unchecked(b, a), a));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (k, b) in halves {
            if !seen.insert(k.clone()) {
                continue;
            }
            let closure = self.hull(&k.with(b));
            for x in closure.difference(&k).iter() {
                out.push(self.make_copoint(x, k.clone()));
            }
        }
        out.sort();
        out
    }

    /// Every (vertex, copoint) pair. Partial cubes take the half-space path;
    /// anything else needs `n ≤ ORACLE_BOUND`.
    pub fn copoints(&self) -> Result<Vec<Copoint>> {
        if self.is_partial_cube_djokovic() {
            Ok(self.copoints_partial_cube())
        } else {
            self.copoints_generic(ORACLE_BOUND)
        }
    }

    pub fn copoints_at(&self, x: usize) -> Result<Vec<Copoint>> {
        self.check_vertex(x)?;
        Ok(self.copoints()?.into_iter().filter(|c| c.at == x).collect())
    }

    /// `Att(K) = co(K ∪ {x}) − K` after checking that `K` is a copoint at `x`.
    pub fn attaching_points(&self, k: &VertexSet, x: usize) -> Result<VertexSet> {
        self.check_vertex(x)?;
        if k.contains(x) {
            return Err(Error::NotCopoint("the attaching vertex lies in K"));
        }
        if !self.is_convex(k) {
            return Err(Error::NotCopoint("K is not convex"));
        }
        for v in k.complement().iter() {
            if !self.hull(&k.with(v)).contains(x) {
                return Err(Error::NotCopoint("K is not maximal"));
            }
        }
        Ok(self.hull(&k.with(x)).difference(k))
    }

    /// First copoint whose attaching set is not convex, scanning `copoints`.
    pub fn att_convexity_violation_in(copoints: &[Copoint], m: &Metric) -> Option<AttConvexityViolation> {
        copoints.iter().find_map(|c| {
            m.convexity_violation(&c.att)
                .map(|violation| AttConvexityViolation {
                    copoint: c.clone(),
                    violation,
                })
        })
    }

    /// Att-convexity by the copoint oracle (`n ≤ bound`), independent of any
    /// partial-cube recognition.
    pub fn att_convexity_violation_generic(
        &self,
        bound: usize,
    ) -> Result<Option<AttConvexityViolation>> {
        if !self.is_bipartite() {
            return Err(Error::NotBipartite);
        }
        Ok(Self::att_convexity_violation_in(
            &self.copoints_generic(bound)?,
            self,
        ))
    }

    pub fn att_convexity_violation(&self) -> Result<Option<AttConvexityViolation>> {
        if !self.is_bipartite() {
            return Err(Error::NotBipartite);
        }
        if self.n() <= ORACLE_BOUND {
            return self.att_convexity_violation_generic(ORACLE_BOUND);
        }
        Ok(Self::att_convexity_violation_in(&self.copoints()?, self))
    }

    pub fn is_att_convex(&self) -> Result<bool> {
        Ok(self.att_convexity_violation()?.is_none())
    }

    /// One-sided ph-stability: every `u, v ∈ 𝓘(A)` admit `w ∈ A` with
    /// `v ∈ I(u, w)`.
    pub fn ph_stability_violation(&self, a: &VertexSet) -> Option<PhStabilityViolation> {
        let pre = self.pre_hull(a);
        for u in &pre {
            for v in &pre {
                if !a.iter().any(|w| self.in_interval(v, u, w)) {
                    return Some(PhStabilityViolation { u, v });
                }
            }
        }
        None
    }

    pub fn is_ph_stable(&self, a: &VertexSet) -> bool {
        self.ph_stability_violation(a).is_none()
    }

    /// The symmetric form: any `u, v ∈ 𝓘(A)` lie together on a geodesic
    /// joining two vertices of `A`.
    pub fn is_ph_stable_symmetric(&self, a: &VertexSet) -> bool {
        let pre = self.pre_hull(a);
        let ends = a.to_vec();
        pre.iter().all(|u| {
            pre.iter().all(|v| {
                ends.iter().any(|&w1| {
                    ends.iter().any(|&w2| {
                        self.d(w1, u) + self.d(u, v) + self.d(v, w2) == self.d(w1, w2)
                    })
                })
            })
        })
    }

    /// Largest hull depth over the given copoints.
    pub fn pre_hull_number_of(copoints: &[Copoint]) -> usize {
        copoints.iter().map(|c| c.hull_depth).max().unwrap_or(0)
    }

    pub fn pre_hull_number(&self) -> Result<usize> {
        Ok(Self::pre_hull_number_of(&self.copoints()?))
    }

    /// Pre-hull number from the copoint oracle alone.
    pub fn pre_hull_number_generic(&self, bound: usize) -> Result<usize> {
        Ok(Self::pre_hull_number_of(&self.copoints_generic(bound)?))
    }

    /// The gate of `x` in `A`: the `y ∈ A` lying in `I(x, z)` for all `z ∈ A`.
    pub fn gate(&self, a: &VertexSet, x: usize) -> Option<usize> {
        let y = a.iter().min_by_key(|&y| self.d(x, y))?;
        a.iter().all(|z| self.in_interval(y, x, z)).then_some(y)
    }

    /// Whether every vertex has a gate in `A`. The empty set is not gated.
    pub fn is_gated(&self, a: &VertexSet) -> bool {
        !a.is_empty() && (0..self.n()).all(|x| self.gate(a, x).is_some())
    }

    /// `ph(G) ≤ 1` for a connected bipartite graph, decided through
    /// ph-stability of the `U_ab` sets for partial cubes and through the
    /// copoint criterion (`Att(K)` convex, `N(K) ∩ Att(K)` ph-stable)
    /// otherwise.
    pub fn ph_leq1_bipartite(&self) -> Result<bool> {
        if !self.is_bipartite() {
            return Err(Error::NotBipartite);
        }
        if self.is_partial_cube_djokovic() {
            return Ok(self.graph().edges().iter().all(|&(a, b)| {
                self.is_ph_stable(&self.u_set_unchecked(a, b))
                    && self.is_ph_stable(&self.u_set_unchecked(b, a))
            }));
        }
        self.ph_leq1_by_copoints(ORACLE_BOUND)
    }

    /// The copoint criterion for `ph ≤ 1`, applied to any bipartite graph.
    pub fn ph_leq1_by_copoints(&self, bound: usize) -> Result<bool> {
        let mut seen = HashSet::new();
        for c in self.copoints_generic(bound)? {
            if !seen.insert(c.set.clone()) {
                continue;
            }
            if !self.is_convex(&c.att) {
                return Ok(false);
            }
            let boundary = self.graph().neighborhood(&c.set).intersection(&c.att);
            if !self.is_ph_stable(&boundary) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn path(n: usize) -> Metric {
        Metric::new(Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()).unwrap()
    }

    fn cycle(n: usize) -> Metric {
        Metric::new(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()).unwrap()
    }

    fn cube() -> Metric {
        Metric::new(
            Graph::new(
                8,
                (0..8usize)
                    .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b)),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn set(m: &Metric, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(m.n(), vs.iter().copied())
    }

    #[test]
    fn pre_hull_basics() {
        let q = cube();
        assert!(q.pre_hull(&q.empty_set()).is_empty());
        assert_eq!(q.pre_hull(&set(&q, &[3])), set(&q, &[3]));
        assert_eq!(q.pre_hull(&set(&q, &[0, 7])).len(), 8);
    }

    #[test]
    fn hull_traces() {
        let q = cube();
        let t = q.convex_hull(&set(&q, &[0, 7]));
        assert_eq!(t.depth(), 1);
        assert_eq!(t.hull().len(), 8);
        assert_eq!(q.convex_hull(&q.empty_set()).depth(), 0);
        let c6 = cycle(6);
        let t = c6.convex_hull(&set(&c6, &[0, 1, 3]));
        assert!(t.stages.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]));
        assert!(c6.is_convex(t.hull()));
    }

    #[test]
    fn convexity_witness() {
        let c6 = cycle(6);
        let v = c6.convexity_violation(&set(&c6, &[0, 3])).unwrap();
        assert_eq!((v.x, v.y), (0, 3));
        assert!(![0, 3].contains(&v.z));
        assert!(c6.is_convex(&c6.empty_set()));
        assert!(c6.is_convex(&set(&c6, &[4])));
    }

    #[test]
    fn convex_families() {
        let p3 = path(3);
        let fam = p3.enumerate_convex_sets(16).unwrap();
        assert_eq!(fam.len(), 7);
        assert!(!fam.contains(&set(&p3, &[0, 2])));
        assert_eq!(path(2).enumerate_convex_sets(16).unwrap().len(), 4);
        for m in [cycle(6), cube(), path(5)] {
            assert_eq!(m.enumerate_convex_sets(16).unwrap(), m.convex_sets(16).unwrap());
        }
    }

    #[test]
    fn copoints_of_p3_at_end() {
        let p3 = path(3);
        let cps = p3.copoints_at_generic(2, 16).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].set, set(&p3, &[0, 1]));
        assert_eq!(cps[0].att, set(&p3, &[2]));
    }

    #[test]
    fn k1_has_empty_copoint() {
        let k1 = Metric::new(Graph::empty(1)).unwrap();
        let cps = k1.copoints_generic(16).unwrap();
        assert_eq!(cps.len(), 1);
        assert!(cps[0].set.is_empty());
        assert_eq!(cps[0].att.to_vec(), vec![0]);
        assert_eq!(cps[0].hull_depth, 0);
        assert_eq!(k1.attaching_points(&k1.empty_set(), 0).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn attaching_point_errors() {
        let p3 = path(3);
        assert!(p3.attaching_points(&set(&p3, &[0, 1]), 1).is_err());
        assert!(p3.attaching_points(&set(&p3, &[0, 2]), 1).is_err());
        assert!(p3.attaching_points(&set(&p3, &[0]), 2).is_err());
        assert_eq!(
            p3.attaching_points(&set(&p3, &[0, 1]), 2).unwrap(),
            set(&p3, &[2])
        );
    }

    #[test]
    fn ph_stability_examples() {
        let q = cube();
        assert!(q.is_ph_stable(&set(&q, &[0, 1])));
        // U_ab for the edge 0–1 is the whole even-bit face.
        assert!(q.is_ph_stable(&set(&q, &[0, 2, 4, 6])));
    }

    #[test]
    fn gates() {
        let c6 = cycle(6);
        let a = set(&c6, &[0, 3]);
        assert!(!c6.is_gated(&a));
        assert_eq!(c6.gate(&a, 0), Some(0));
        let p5 = path(5);
        let sub = set(&p5, &[1, 2]);
        assert!(p5.is_gated(&sub));
        assert_eq!(p5.gate(&sub, 4), Some(2));
        assert!(!p5.is_gated(&p5.empty_set()));
    }

    #[test]
    fn bound_errors() {
        let p = path(17);
        assert!(matches!(
            p.convex_sets(16),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            p.enumerate_convex_sets(16),
            Err(Error::BoundExceeded { .. })
        ));
        // Trees are partial cubes, so the fast path still works.
        assert_eq!(p.pre_hull_number().unwrap(), 0);
    }
}
