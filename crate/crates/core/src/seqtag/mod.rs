//! Linear sequence labeling: feature extraction, Viterbi decoding, and
//! averaged-perceptron training, shared by the NER and POS taggers.
//!
//! The same weight container doubles as the dependency parser's transition
//! classifier; only the persistence record kind differs.

mod features;
mod lexicon;
mod model;
mod train;
mod viterbi;

pub use features::{extract_features, word_shape, FeatureVector};
pub use lexicon::{LexiconBuilder, MorphLexicon};
pub use model::{LinearModel, RecordKind};
pub use train::{tag, train, Example};
pub use viterbi::viterbi;

pub(crate) use model::AveragedWeights;

use std::collections::HashMap;

use thiserror::Error;

use crate::conllu::UPOS_TAGS;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TagError {
    #[error("position {position} out of range for sentence of {len} tokens")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid gold label sequence: {0}")]
    InvalidGold(String),
    #[error("model file line {line}: {msg}")]
    BadModelFile { line: usize, msg: String },
}

/// Labeling scheme: BIO entity spans or plain independent labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Bio,
    Plain,
}

/// A closed, ordered label inventory. Order matters: ties in decoding are
/// broken toward earlier labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    scheme: Scheme,
}

impl TagSet {
    pub fn new(labels: Vec<String>, scheme: Scheme) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        TagSet { labels, index, scheme }
    }

    /// BIO tags over PER/LOC/ORG. "O" comes first so that an all-zero model
    /// decodes to all-"O".
    pub fn ner() -> Self {
        let labels = ["O", "B-LOC", "I-LOC", "B-ORG", "I-ORG", "B-PER", "I-PER"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        TagSet::new(labels, Scheme::Bio)
    }

    /// The 17 universal POS tags.
    pub fn upos() -> Self {
        TagSet::new(UPOS_TAGS.iter().map(|s| s.to_string()).collect(), Scheme::Plain)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// For a BIO label, its (is_inside, entity type) split; `None` for "O"
    /// and for plain schemes.
    fn bio_parts(&self, i: usize) -> Option<(bool, &str)> {
        let label = &self.labels[i];
        label
            .strip_prefix("B-")
            .map(|t| (false, t))
            .or_else(|| label.strip_prefix("I-").map(|t| (true, t)))
    }

    /// May `next` follow `prev` (`None` = sequence start)? Only constrains
    /// BIO schemes: I-T needs an immediately preceding B-T or I-T.
    pub fn transition_allowed(&self, prev: Option<usize>, next: usize) -> bool {
        if self.scheme != Scheme::Bio {
            return true;
        }
        match self.bio_parts(next) {
            Some((true, t)) => match prev {
                Some(p) => matches!(self.bio_parts(p), Some((_, pt)) if pt == t),
                None => false,
            },
            _ => true,
        }
    }

    /// Is a label sequence valid under the scheme?
    pub fn sequence_valid(&self, labels: &[usize]) -> bool {
        let mut prev = None;
        for &l in labels {
            if !self.transition_allowed(prev, l) {
                return false;
            }
            prev = Some(l);
        }
        true
    }
}
