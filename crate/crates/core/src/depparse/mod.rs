//! Greedy transition-based dependency parsing (arc-standard system).
//!
//! Training projectivizes the gold trees, derives the static-oracle
//! transition sequence for each, and fits an averaged perceptron over
//! state-feature → transition decisions. Decoding filters to legal
//! transitions, which by construction makes every output a single-rooted
//! tree in at most 2n transitions.

mod oracle;
mod parse;
mod state;

pub use oracle::{oracle, projectivize};
pub use parse::{parse, train_parser, TaggedWord, Treebank};
pub use state::{ParserState, Transition};

use thiserror::Error;

use crate::conllu::ConlluSentence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("illegal transition: {0}")]
    IllegalTransition(String),
    #[error("tree is not projective")]
    NonProjective,
    #[error("malformed dependency tree: {0}")]
    BadTree(String),
}

/// A labeled dependency tree over tokens 1..n; head 0 is the virtual root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    heads: Vec<usize>,
    labels: Vec<String>,
}

impl DepTree {
    /// Validates the single-root, acyclic, in-range invariants.
    pub fn new(heads: Vec<usize>, labels: Vec<String>) -> Result<Self, ParseError> {
        let n = heads.len();
        if labels.len() != n {
            return Err(ParseError::BadTree(format!(
                "{n} heads but {} labels",
                labels.len()
            )));
        }
        let mut roots = 0;
        for (i, &h) in heads.iter().enumerate() {
            if h > n || h == i + 1 {
                return Err(ParseError::BadTree(format!("head {h} of token {}", i + 1)));
            }
            if h == 0 {
                roots += 1;
                if labels[i] != "root" {
                    return Err(ParseError::BadTree(format!(
                        "token {} has head 0 but label {:?}",
                        i + 1,
                        labels[i]
                    )));
                }
            }
        }
        if roots != 1 {
            return Err(ParseError::BadTree(format!("{roots} roots")));
        }
        // every token must reach the root
        for start in 1..=n {
            let mut cur = start;
            let mut steps = 0;
            while cur != 0 {
                cur = heads[cur - 1];
                steps += 1;
                if steps > n {
                    return Err(ParseError::BadTree(format!("cycle through token {start}")));
                }
            }
        }
        Ok(DepTree { heads, labels })
    }

    pub fn from_conllu(sentence: &ConlluSentence) -> Result<Self, ParseError> {
        let mut heads = Vec::with_capacity(sentence.tokens.len());
        let mut labels = Vec::with_capacity(sentence.tokens.len());
        for tok in &sentence.tokens {
            match tok.head {
                Some(h) => heads.push(h),
                None => {
                    return Err(ParseError::BadTree(format!(
                        "token {} has no head annotation",
                        tok.id
                    )))
                }
            }
            labels.push(tok.deprel.clone());
        }
        DepTree::new(heads, labels)
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    /// Head of token `i` (1-based).
    pub fn head_of(&self, i: usize) -> usize {
        self.heads[i - 1]
    }

    pub fn label_of(&self, i: usize) -> &str {
        &self.labels[i - 1]
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Crossing-arc projectivity check (the virtual root arc participates).
    pub fn is_projective(&self) -> bool {
        let n = self.len();
        let arcs: Vec<(usize, usize)> = (1..=n)
            .map(|d| {
                let h = self.head_of(d);
                (h.min(d), h.max(d))
            })
            .collect();
        for (i, &(lo1, hi1)) in arcs.iter().enumerate() {
            for &(lo2, hi2) in &arcs[i + 1..] {
                if (lo1 < lo2 && lo2 < hi1 && hi1 < hi2) || (lo2 < lo1 && lo1 < hi2 && hi2 < hi1)
                {
                    return false;
                }
            }
        }
        true
    }
}
