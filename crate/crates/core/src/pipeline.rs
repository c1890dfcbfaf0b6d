//! End-to-end composition: raw text in, annotated structures out.

use thiserror::Error;

use crate::brown::PathTable;
use crate::conllu::{canonical_feats, ConlluSentence, SlashedSentence};
use crate::depparse::{self, TaggedWord};
use crate::seqtag::{self, LinearModel, MorphLexicon, TagError};
use crate::textseg::Tokenizer;
use crate::Scalar;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Tag(#[from] TagError),
    #[error(transparent)]
    Parse(#[from] depparse::ParseError),
}

/// Tokenize and NER-tag text, one slashed sentence per input sentence.
pub fn ner_tag_text<W: Scalar>(
    text: &str,
    tokenizer: &Tokenizer,
    model: &LinearModel<W>,
    clusters: Option<&PathTable>,
) -> Result<Vec<SlashedSentence>, PipelineError> {
    let mut out = Vec::new();
    for sentence in tokenizer.tokenize(text) {
        let forms: Vec<&str> = sentence.tokens.iter().map(|t| t.form.as_str()).collect();
        let tags = seqtag::tag(model, clusters, &forms)?;
        out.push(SlashedSentence {
            pairs: forms
                .iter()
                .map(|f| f.to_string())
                .zip(tags)
                .collect(),
        });
    }
    Ok(out)
}

/// The full pipeline: tokenize, POS-tag, look up lemma and morphology,
/// parse, and assemble CoNLL-U sentences with `# text` comments and spacing
/// MISC entries derived from the tokenizer's offsets.
pub fn annotate_text<W: Scalar>(
    text: &str,
    tokenizer: &Tokenizer,
    pos_model: &LinearModel<W>,
    clusters: Option<&PathTable>,
    lexicon: &MorphLexicon,
    parser_model: &LinearModel<W>,
) -> Result<Vec<ConlluSentence>, PipelineError> {
    let mut out = Vec::new();
    for sentence in tokenizer.tokenize(text) {
        let forms: Vec<&str> = sentence.tokens.iter().map(|t| t.form.as_str()).collect();
        let tags = seqtag::tag(pos_model, clusters, &forms)?;
        let tagged: Vec<TaggedWord> = forms
            .iter()
            .zip(&tags)
            .map(|(f, t)| TaggedWord::new(f, t))
            .collect();
        let tree = depparse::parse(parser_model, &tagged);

        let mut conllu = ConlluSentence::from_spans(&sentence);
        for (i, tok) in conllu.tokens.iter_mut().enumerate() {
            let (lemma, feats) = lexicon.lookup(&forms[i], &tags[i]);
            tok.upos = tags[i].clone();
            tok.lemma = lemma;
            tok.feats = canonical_feats(&feats);
            tok.head = Some(tree.head_of(i + 1));
            tok.deprel = tree.label_of(i + 1).to_string();
        }
        out.push(conllu);
    }
    Ok(out)
}
