//! Trainable building blocks for Danish text processing.
//!
//! The crate covers the whole path from raw text to annotated output:
//!
//! * [`textseg`] — rule-based sentence splitting and tokenization that
//!   preserves byte offsets and spacing, so the original text can always be
//!   reconstructed.
//! * [`conllu`] — bit-exact reading and writing of the CoNLL-U format and of
//!   the `form/TAG` slashed-tag format.
//! * [`seqtag`] — a linear sequence labeler (averaged perceptron + Viterbi)
//!   used for both BIO named-entity tagging and UPOS tagging, plus a lemma
//!   and morphology lexicon.
//! * [`depparse`] — greedy arc-standard dependency parsing with a static
//!   oracle and training-time projectivization.
//! * [`brown`] — windowed agglomerative word clustering over bigram mutual
//!   information; one run records its full merge history, from which a
//!   clustering of any size can be cut.
//! * [`pipeline`] — glue running tokenize → tag → lemmatize → parse and
//!   producing CoNLL-U sentences.
//!
//! All numeric kernels are generic over a [`Scalar`] (any float type from
//! `num-traits`); the aliases below fix the shipped default to `f64`.

pub mod brown;
pub mod conllu;
pub mod depparse;
pub mod pipeline;
pub mod seqtag;
pub mod textseg;

mod scalar;
pub use scalar::Scalar;

/// Scalar type used by the shipped models and the CLI.
pub type Weight = f64;

/// Tagger model (NER or POS) over the default scalar.
pub type TaggerModel = seqtag::LinearModel<Weight>;

/// Transition classifier for the dependency parser over the default scalar.
pub type ParserModel = seqtag::LinearModel<Weight>;

/// Clustering merge record over the default scalar.
pub type ClusterHistory = brown::MergeHistory<Weight>;
