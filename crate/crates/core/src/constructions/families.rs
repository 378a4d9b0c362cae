//! Named graph families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::constructions::{cartesian_product, check_proper_cover, expansion, ProperCover};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::Metric;

const RANDOM_RETRIES: usize = 1000;

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Path on `n` vertices.
    Path(usize),
    /// Cycle on `n` vertices, `n` even and at least 4.
    EvenCycle(usize),
    /// Hypercube `Q_n` with binary vertex labels.
    Hypercube(u32),
    /// `Q_n` minus the all-ones vertex.
    HypercubeMinusVertex(u32),
    /// `Q_n` minus the all-zeros and all-ones vertices.
    HypercubeMinusAntipodes(u32),
    K23,
    CompleteBipartite(usize, usize),
    Grid(usize, usize),
    RandomBipartite { n: usize, p: f64, seed: u64 },
}

impl Family {
    /// Parses a family name and its positional parameters, as used on the
    /// command line (`Q 3`, `grid 2 3`, `random 8 0.4 17`, ...).
    pub fn parse(name: &str, params: &[&str]) -> Result<Family> {
        fn int<T: FromStr>(s: Option<&&str>, what: &str) -> Result<T> {
            s.ok_or_else(|| Error::InvalidParams(format!("missing {what}")))?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad {what}")))
        }
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "{name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let p = params.first();
        let family = match name {
            "P" | "path" => {
                arity(1)?;
                Family::Path(int(p, "n")?)
            }
            "C" | "cycle" => {
                arity(1)?;
                Family::EvenCycle(int(p, "n")?)
            }
            "Q" | "hypercube" => {
                arity(1)?;
                Family::Hypercube(int(p, "dimension")?)
            }
            "Qminus" | "Q_n_minus_vertex" | "Q-" => {
                arity(1)?;
                Family::HypercubeMinusVertex(int(p, "dimension")?)
            }
            "M" | "M_n_1" => {
                arity(1)?;
                Family::HypercubeMinusAntipodes(int(p, "dimension")?)
            }
            "K23" | "K_2_3" => {
                arity(0)?;
                Family::K23
            }
            "K" | "K_a_b" | "complete_bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(int(p, "a")?, int(params.get(1), "b")?)
            }
            "grid" => {
                arity(2)?;
                Family::Grid(int(p, "a")?, int(params.get(1), "b")?)
            }
            "random" | "random_bipartite" => {
                arity(3)?;
                Family::RandomBipartite {
                    n: int(p, "n")?,
                    p: int(params.get(1), "p")?,
                    seed: int(params.get(2), "seed")?,
                }
            }
            other => return Err(Error::InvalidParams(format!("unknown family {other}"))),
        };
        Ok(family)
    }

    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Path(n) => path(n),
            Family::EvenCycle(n) => even_cycle(n),
            Family::Hypercube(d) => hypercube(d),
            Family::HypercubeMinusVertex(d) => hypercube_minus_vertex(d),
            Family::HypercubeMinusAntipodes(d) => hypercube_minus_antipodes(d),
            Family::K23 => complete_bipartite(2, 3),
            Family::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Family::Grid(a, b) => grid(a, b),
            Family::RandomBipartite { n, p, seed } => random_bipartite(n, p, seed),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "P{n}"),
            Family::EvenCycle(n) => write!(f, "C{n}"),
            Family::Hypercube(d) => write!(f, "Q{d}"),
            Family::HypercubeMinusVertex(d) => write!(f, "Q{d}-"),
            Family::HypercubeMinusAntipodes(d) => write!(f, "M{d},1"),
            Family::K23 => write!(f, "K2,3"),
            Family::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            Family::Grid(a, b) => write!(f, "grid{a}x{b}"),
            Family::RandomBipartite { n, p, seed } => write!(f, "random({n},{p},{seed})"),
        }
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("path needs n ≥ 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn even_cycle(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParams(format!(
            "even cycle needs an even n ≥ 4, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

fn check_dim(d: u32, min: u32) -> Result<()> {
    if d < min || d > 20 {
        return Err(Error::InvalidParams(format!(
            "hypercube dimension must lie in {min}..=20, got {d}"
        )));
    }
    Ok(())
}

fn cube_edges(d: u32) -> impl Iterator<Item = (usize, usize)> {
    (0..1usize << d).flat_map(move |v| {
        (0..d)
            .map(move |b| (v, v ^ (1 << b)))
            .filter(|&(a, b)| a < b)
    })
}

/// `Q_d`: vertices are `0..2^d`, adjacent when their labels differ in one bit.
pub fn hypercube(d: u32) -> Result<Graph> {
    check_dim(d, 0)?;
    Graph::new(1 << d, cube_edges(d))
}

/// `Q_d⁻`: drops vertex `2^d − 1`; the other labels are unchanged.
pub fn hypercube_minus_vertex(d: u32) -> Result<Graph> {
    check_dim(d, 1)?;
    let top = (1usize << d) - 1;
    Graph::new(top, cube_edges(d).filter(|&(_, b)| b != top))
}

/// `M_{d,1}`: drops vertices `0` and `2^d − 1`; label `v` becomes `v − 1`.
pub fn hypercube_minus_antipodes(d: u32) -> Result<Graph> {
    check_dim(d, 2)?;
    let top = (1usize << d) - 1;
    Graph::new(
        top - 1,
        cube_edges(d)
            .filter(|&(a, b)| a != 0 && b != top)
            .map(|(a, b)| (a - 1, b - 1)),
    )
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a + b == 0 {
        return Err(Error::InvalidParams("K_{a,b} needs a + b ≥ 1".into()));
    }
    Graph::new(
        a + b,
        (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))),
    )
}

/// `P_a □ P_b`.
pub fn grid(a: usize, b: usize) -> Result<Graph> {
    Ok(cartesian_product(&path(a)?, &path(b)?).graph)
}

/// A connected bipartite graph: each vertex picks a side uniformly, each
/// cross pair becomes an edge with probability `p`. Disconnected draws are
/// rejected and redrawn from the same stream.
pub fn random_bipartite(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "random_bipartite needs n ≥ 1 and p in [0, 1], got n = {n}, p = {p}"
        )));
    }
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRIES {
        let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.gen_bool(p) {
                    edges.insert((u, v));
                }
            }
        }
        let g = Graph::from_edge_set(n, edges);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParams(format!(
        "no connected sample after {RANDOM_RETRIES} draws (n = {n}, p = {p})"
    )))
}

/// A partial cube grown from `K1` by `steps` expansions.
///
/// Each step picks an edge `ab` and tries the cover
/// `(co(W_ab ∪ S), co(W_ba ∪ T))` for small random `S, T`; when that is not
/// proper it falls back to the peripheral cover `(V, co(S))`.
pub fn random_partial_cube(steps: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(1);
    for _ in 0..steps {
        let m = Metric::new(g.clone()).expect("expansions stay connected");
        let n = g.n();
        let sample = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(1..=3);
            VertexSet::from_vertices(n, (0..k).map(|_| rng.gen_range(0..n)))
        };
        let s = sample(&mut rng);
        let t = sample(&mut rng);
        let mut cover = None;
        if g.m() > 0 && rng.gen_bool(0.5) {
            let (a, b) = g.edges()[rng.gen_range(0..g.m())];
            let v0 = m.hull(&m.w_set_unchecked(a, b).union(&s));
            let v1 = m.hull(&m.w_set_unchecked(b, a).union(&t));
            if check_proper_cover(&g, &v0, &v1).is_ok() {
                cover = Some(ProperCover::new(&g, v0, v1).expect("checked"));
            }
        }
        let cover = cover.unwrap_or_else(|| {
            ProperCover::new(&g, g.vertices(), m.hull(&s)).expect("peripheral covers are proper")
        });
        g = expansion(&g, &cover).graph;
    }
    g
}
