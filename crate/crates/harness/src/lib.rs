//! Verification harness: builds the graph corpus, runs every theorem and
//! property check over it, and emits JSON/CSV reports.

pub mod checks;
pub mod corpus;
pub mod error;
pub mod report;

pub use checks::{run_verification, verify_corpus, Outcome, Selection};
pub use corpus::{enumerate_corpus, Corpus, CorpusEntry, CorpusParams, Provenance};
pub use error::HarnessError;
pub use report::{CheckResult, Counts, Status, VerificationReport};
