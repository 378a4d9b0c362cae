//! The graphs every check runs over.

use std::collections::HashMap;
use std::fmt;

use pcube::constructions::families::{
    complete_bipartite, even_cycle, grid, hypercube, hypercube_minus_antipodes,
    hypercube_minus_vertex, path, random_bipartite,
};
use pcube::constructions::random_partial_cube;
use pcube::{are_isomorphic_small, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Largest exhaustive order: 7 vertices gives at most 12 cross pairs.
pub const MAX_EXHAUSTIVE_N: usize = 7;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusParams {
    /// Exhaustive tier: every connected bipartite graph on `1..=n_max`
    /// vertices, up to isomorphism.
    pub n_max: usize,
    /// Admit `K1` into the exhaustive tier.
    pub include_k1: bool,
    /// Named families (cubes, cycles, grids, ...).
    pub families: bool,
    pub random_count: usize,
    pub random_n: (usize, usize),
    pub seed: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            n_max: 6,
            include_k1: false,
            families: true,
            random_count: 200,
            random_n: (7, 10),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tier", rename_all = "snake_case")]
pub enum Provenance {
    Exhaustive { n: usize },
    Family { name: String },
    Random { seed: u64, generator: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exhaustive { n } => write!(f, "exhaustive-{n}"),
            Provenance::Family { name } => write!(f, "family-{name}"),
            Provenance::Random { seed, generator } => write!(f, "random-{generator}-{seed:#x}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub provenance: Provenance,
    pub graph: Graph,
    pub bipartite: bool,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub params: CorpusParams,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn exhaustive(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.provenance, Provenance::Exhaustive { .. }))
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

pub fn enumerate_corpus(params: &CorpusParams) -> Result<Corpus, HarnessError> {
    if params.n_max > MAX_EXHAUSTIVE_N {
        return Err(HarnessError::CorpusTooLarge {
            n: params.n_max,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let (lo, hi) = params.random_n;
    if lo == 0 || lo > hi {
        return Err(HarnessError::InvalidParams(format!(
            "random tier order range {lo}..={hi} is empty"
        )));
    }
    let mut entries = Vec::new();
    let first = if params.include_k1 { 1 } else { 2 };
    for n in first..=params.n_max {
        for (i, graph) in connected_bipartite(n).into_iter().enumerate() {
            entries.push(CorpusEntry {
                id: format!("ex{n}-{i:03}"),
                provenance: Provenance::Exhaustive { n },
                bipartite: true,
                graph,
            });
        }
    }
    if params.families {
        for (name, graph) in named_families() {
            entries.push(CorpusEntry {
                id: format!("fam-{name}"),
                provenance: Provenance::Family { name },
                bipartite: graph.is_bipartite(),
                graph,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for i in 0..params.random_count {
        let seed: u64 = rng.gen();
        let n = rng.gen_range(lo..=hi);
        // Alternate generators so that partial cubes are well represented;
        // dense random bipartite graphs rarely are.
        let (generator, graph) = if i % 2 == 0 {
            let p = rng.gen_range(0.25..0.6);
            ("bipartite", random_bipartite(n, p, seed)?)
        } else {
            ("expansion", partial_cube_of_order(n, seed))
        };
        entries.push(CorpusEntry {
            id: format!("rnd-{i:03}"),
            provenance: Provenance::Random {
                seed,
                generator: generator.into(),
            },
            bipartite: graph.is_bipartite(),
            graph,
        });
    }
    Ok(Corpus {
        params: params.clone(),
        entries,
    })
}

/// Every connected bipartite graph on exactly `n` vertices, up to
/// isomorphism: edge subsets of `K_{a,n-a}` for `a ≤ n/2`, bucketed by
/// degree sequence before the pairwise isomorphism test.
pub fn connected_bipartite(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    let mut buckets: HashMap<(usize, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut out: Vec<Graph> = Vec::new();
    for a in 1..=n / 2 {
        let cross: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..n).map(move |v| (u, v))).collect();
        for mask in 1u32..1 << cross.len() {
            if (mask.count_ones() as usize) < n - 1 {
                continue;
            }
            let edges = cross
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::new(n, edges).expect("cross edges are simple");
            if !g.is_connected() {
                continue;
            }
            let key = (g.m(), g.degree_sequence());
            let bucket = buckets.entry(key).or_default();
            let seen = bucket.iter().any(|&j| {
                are_isomorphic_small(&out[j], &g, MAX_EXHAUSTIVE_N)
                    .expect("n is within the isomorphism bound")
                    .is_some()
            });
            if !seen {
                bucket.push(out.len());
                out.push(g);
            }
        }
    }
    out
}

/// Grows random partial cubes until one has exactly `n` vertices.
fn partial_cube_of_order(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let s: u64 = rng.gen();
        for steps in 1..n {
            let g = random_partial_cube(steps, s);
            if g.n() == n {
                return g;
            }
            if g.n() > n {
                break;
            }
        }
    }
}

/// The named graphs: every worked example plus a few larger partial cubes.
pub fn named_families() -> Vec<(String, Graph)> {
    let ok = |r: pcube::Result<Graph>| r.expect("family parameters are valid");
    vec![
        ("P5".into(), ok(path(5))),
        ("P8".into(), ok(path(8))),
        ("K1,3".into(), ok(complete_bipartite(1, 3))),
        ("K2,3".into(), ok(complete_bipartite(2, 3))),
        ("K3,3".into(), ok(complete_bipartite(3, 3))),
        ("K2,4".into(), ok(complete_bipartite(2, 4))),
        ("C4".into(), ok(even_cycle(4))),
        ("C6".into(), ok(even_cycle(6))),
        ("C8".into(), ok(even_cycle(8))),
        ("C10".into(), ok(even_cycle(10))),
        ("Q2".into(), ok(hypercube(2))),
        ("Q3".into(), ok(hypercube(3))),
        ("Q4".into(), ok(hypercube(4))),
        ("Q3-".into(), ok(hypercube_minus_vertex(3))),
        ("Q4-".into(), ok(hypercube_minus_vertex(4))),
        ("M4,1".into(), ok(hypercube_minus_antipodes(4))),
        ("grid2x3".into(), ok(grid(2, 3))),
        ("grid3x3".into(), ok(grid(3, 3))),
        ("grid2x5".into(), ok(grid(2, 5))),
    ]
}
