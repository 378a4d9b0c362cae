//! Per-graph and whole-corpus checks, and the driver that runs them.

use std::sync::OnceLock;
use std::time::Instant;

use pcube::{Copoint, Metric, VertexSet, ORACLE_BOUND};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{enumerate_corpus, Corpus, CorpusEntry, CorpusParams};
use crate::error::HarnessError;
use crate::report::{CheckResult, Status, VerificationReport};

pub mod global;
pub mod properties;
pub mod theorems;

/// Property checks enumerate every subset up to this order and sample above.
pub const EXHAUSTIVE_SUBSETS_N: usize = 6;
/// Subsets drawn per graph when sampling.
pub const SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            witness: None,
        }
    }

    /// A pass that still records what was found.
    pub fn pass_with(w: impl Serialize) -> Self {
        Outcome {
            status: Status::Pass,
            witness: Some(to_value(w)),
        }
    }

    pub fn fail(w: impl Serialize) -> Self {
        Outcome {
            status: Status::Fail,
            witness: Some(to_value(w)),
        }
    }

    pub fn skip(reason: &str) -> Self {
        Outcome {
            status: Status::Skip,
            witness: Some(json!({ "reason": reason })),
        }
    }

    /// Pass when `ok`, otherwise fail with the lazily built witness.
    pub fn check<W: Serialize>(ok: bool, witness: impl FnOnce() -> W) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(witness())
        }
    }
}

fn to_value(w: impl Serialize) -> Value {
    serde_json::to_value(w).expect("witness types serialise to JSON")
}

/// Shared per-graph state. The oracle results are computed on first use so
/// that their cost lands on the check that needs them first.
pub struct Ctx<'a> {
    pub entry: &'a CorpusEntry,
    pub m: Metric,
    pub pc: bool,
    seed: u64,
    convex: OnceLock<Option<Vec<VertexSet>>>,
    copoints: OnceLock<Option<Vec<Copoint>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(entry: &'a CorpusEntry, seed: u64) -> Result<Self, HarnessError> {
        let m = Metric::new(entry.graph.clone())?;
        let pc = m.is_partial_cube_djokovic();
        Ok(Ctx {
            entry,
            m,
            pc,
            seed: seed ^ fnv1a(entry.id.as_bytes()),
            convex: OnceLock::new(),
            copoints: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn within_oracle(&self) -> bool {
        self.n() <= ORACLE_BOUND
    }

    /// Every convex set, when the graph is within the oracle bound.
    pub fn convex_sets(&self) -> Option<&[VertexSet]> {
        self.convex
            .get_or_init(|| self.m.convex_sets(ORACLE_BOUND).ok())
            .as_deref()
    }

    /// Copoints from the convex-set oracle, independent of any recogniser.
    pub fn copoints_generic(&self) -> Option<&[Copoint]> {
        self.copoints
            .get_or_init(|| {
                let family = self.convex_sets()?;
                let mut out: Vec<Copoint> = (0..self.n())
                    .flat_map(|x| self.m.copoints_at_in(family, x))
                    .collect();
                out.sort();
                Some(out)
            })
            .as_deref()
    }

    /// The pre-hull number from the oracle copoints.
    pub fn ph_generic(&self) -> Option<usize> {
        self.copoints_generic().map(Metric::pre_hull_number_of)
    }

    /// A reproducible stream per (graph, check).
    pub fn rng(&self, check: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(check.as_bytes()))
    }

    /// Every subset for small graphs, otherwise `SAMPLES` random ones of
    /// varying density.
    pub fn subsets(&self, check: &str) -> Vec<VertexSet> {
        let n = self.n();
        if n <= EXHAUSTIVE_SUBSETS_N {
            return (0..1u64 << n).map(|mask| VertexSet::from_mask(n, mask)).collect();
        }
        let mut rng = self.rng(check);
        (0..SAMPLES)
            .map(|_| {
                let p: f64 = rng.gen_range(0.05..0.6);
                VertexSet::from_vertices(n, (0..n).filter(|_| rng.gen_bool(p)))
            })
            .collect()
    }

    /// Every convex set for small graphs, otherwise hulls of sampled subsets.
    pub fn convex_sample(&self, check: &str, exhaustive_up_to: usize) -> Vec<VertexSet> {
        if self.n() <= exhaustive_up_to {
            if let Some(family) = self.convex_sets() {
                return family.to_vec();
            }
        }
        let mut out: Vec<VertexSet> = self.subsets(check).iter().map(|s| self.m.hull(s)).collect();
        out.sort();
        out.dedup();
        out
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub type GraphCheck = fn(&Ctx) -> Outcome;

/// Theorem checks, in report order.
pub const THEOREM_CHECKS: &[(&str, GraphCheck)] = &[
    ("recognizers", theorems::recognizers),
    ("att_convex_theorem", theorems::att_convex_theorem),
    ("ph1_implies_pc", theorems::ph1_implies_pc),
    ("tree_ph0", theorems::tree_ph0),
    ("copoints_halfspaces", theorems::copoints_halfspaces),
    ("ph_leq1_consistency", theorems::ph_leq1_consistency),
    ("gated_subgraph", theorems::gated_subgraph),
    ("expansion_duality", theorems::expansion_duality),
    ("expansion_pc", theorems::expansion_pc),
];

/// Property suites: invariants quantified over subsets, copoints and
/// convex sets of each graph.
pub const PROPERTY_CHECKS: &[(&str, GraphCheck)] = &[
    ("prop_hull_laws", properties::hull_laws),
    ("prop_attaching_independence", properties::attaching_independence),
    ("prop_ph_stability_forms", properties::ph_stability_forms),
    ("prop_interval_convexity", properties::interval_convexity),
    ("prop_boundary_lemma", properties::boundary_lemma),
    ("prop_copoint_oracle", properties::copoint_oracle),
    ("prop_max_convex_halfspace", properties::max_convex_halfspace),
    ("prop_polytope_lemma", properties::polytope_lemma),
    ("prop_att_heredity", properties::att_heredity),
    ("prop_half_space_restriction", properties::half_space_restriction),
];

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub theorems: bool,
    pub properties: bool,
    pub global: bool,
}

impl Default for Selection {
    fn default() -> Self {
        Selection {
            theorems: true,
            properties: true,
            global: true,
        }
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Runs the selected per-graph checks over one entry.
pub fn run_graph_checks(entry: &CorpusEntry, seed: u64, checks: &[(&str, GraphCheck)]) -> Vec<CheckResult> {
    let provenance = entry.provenance.to_string();
    let ctx = match Ctx::new(entry, seed) {
        Ok(ctx) => ctx,
        Err(e) => {
            return checks
                .iter()
                .map(|(name, _)| CheckResult {
                    graph_id: entry.id.clone(),
                    provenance: provenance.clone(),
                    check: name.to_string(),
                    status: Status::Skip,
                    witness: Some(json!({ "reason": e.to_string() })),
                    millis: 0.0,
                })
                .collect()
        }
    };
    checks
        .iter()
        .map(|(name, f)| {
            let (out, millis) = timed(|| f(&ctx));
            CheckResult {
                graph_id: entry.id.clone(),
                provenance: provenance.clone(),
                check: name.to_string(),
                status: out.status,
                witness: out.witness,
                millis,
            }
        })
        .collect()
}

/// Runs every selected check over an already built corpus.
pub fn verify_corpus(corpus: &Corpus, selection: Selection) -> VerificationReport {
    let mut checks: Vec<(&str, GraphCheck)> = Vec::new();
    if selection.theorems {
        checks.extend_from_slice(THEOREM_CHECKS);
    }
    if selection.properties {
        checks.extend_from_slice(PROPERTY_CHECKS);
    }
    let seed = corpus.params.seed;
    let mut results: Vec<CheckResult> = corpus
        .entries
        .par_iter()
        .flat_map_iter(|e| run_graph_checks(e, seed, &checks))
        .collect();
    if selection.global {
        results.extend(global::run_all(corpus));
    }
    VerificationReport::new(corpus.params.clone(), corpus.entries.len(), results)
}

pub fn run_verification(params: &CorpusParams) -> Result<VerificationReport, HarnessError> {
    let corpus = enumerate_corpus(params)?;
    Ok(verify_corpus(&corpus, Selection::default()))
}

/// Wraps a global check's outcome as a report row.
pub(crate) fn global_result(
    graph_id: String,
    provenance: String,
    check: &str,
    f: impl FnOnce() -> Outcome,
) -> CheckResult {
    let (out, millis) = timed(f);
    CheckResult {
        graph_id,
        provenance,
        check: check.to_string(),
        status: out.status,
        witness: out.witness,
        millis,
    }
}
