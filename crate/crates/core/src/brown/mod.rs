//! Hierarchical word clustering over bigram mutual information.
//!
//! One windowed agglomerative run records every merge it performs
//! ([`MergeHistory`]); clusterings of any size are then extracted by cutting
//! the replay, so a single expensive run serves every downstream consumer.
//! Words are encoded as the bit path from the merge-tree root down to their
//! cluster ([`PathTable`]), which is what the taggers consume as features.

mod counts;
mod engine;
mod history;
mod paths;
mod state;

pub use counts::{count_bigrams, BigramStats, UNK};
pub use engine::run_clustering;
pub use history::{Merge, MergeHistory};
pub use paths::{PathRow, PathTable};
pub use state::{average_mutual_information, ClusterState};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClusterError {
    #[error("corpus has no tokens")]
    EmptyCorpus,
    #[error("window size {window} too small (need at least 2)")]
    WindowTooSmall { window: usize },
    #[error("vocabulary of {vocab} word types cannot be clustered (need at least 2)")]
    VocabTooSmall { vocab: usize },
    #[error("cannot cut {leaves} leaves into {size} clusters")]
    BadSize { size: usize, leaves: usize },
    #[error("line {line}: {msg}")]
    BadLine { line: usize, msg: String },
}
