//! Reading and writing the two external data formats: ten-column CoNLL-U and
//! `form/TAG` slashed-tag lines.
//!
//! Emission is canonical — tab separators, LF line endings, `_` for empty
//! fields, one blank line after every sentence — so `emit ∘ parse` is the
//! identity on canonically formatted input and golden files can be compared
//! byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::textseg::SentenceSpan;

/// The 17 universal POS tags.
pub const UPOS_TAGS: [&str; 17] = [
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN",
    "PUNCT", "SCONJ", "SYM", "VERB", "X",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated fields, found {found}")]
    LineFieldCount { line: usize, found: usize },
    #[error("line {line}: token ids are not 1..n (saw id {id}, expected {expected})")]
    NonContiguousIds { line: usize, id: String, expected: usize },
    #[error("line {line}: head {head} outside 0..{n} (or equal to the token id)")]
    BadHead { line: usize, head: String, n: usize },
    #[error("line {line}: range and empty-node ids are not supported (id {id})")]
    UnsupportedId { line: usize, id: String },
    #[error("slashed item {item:?} has no tag separator")]
    MissingTag { item: String },
    #[error("invalid sentence: {0}")]
    InvariantViolation(String),
}

/// One CoNLL-U token row. `head == None` renders as `_` (not yet parsed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConlluToken {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    pub head: Option<usize>,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
}

impl ConlluToken {
    /// A bare token with everything but the form unset.
    pub fn new(id: usize, form: &str) -> Self {
        ConlluToken {
            id,
            form: form.to_string(),
            lemma: "_".into(),
            upos: "_".into(),
            xpos: "_".into(),
            feats: "_".into(),
            head: None,
            deprel: "_".into(),
            deps: "_".into(),
            misc: "_".into(),
        }
    }
}

/// A sentence: comment lines (stored verbatim, including `#`) plus token rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConlluSentence {
    pub comments: Vec<String>,
    pub tokens: Vec<ConlluToken>,
}

impl ConlluSentence {
    /// Build an unannotated sentence from tokenizer output, generating the
    /// `# text = …` comment and SpaceAfter/SpacesAfter MISC entries from the
    /// spacing metadata.
    pub fn from_spans(sent: &SentenceSpan) -> Self {
        let mut tokens = Vec::with_capacity(sent.tokens.len());
        for (i, span) in sent.tokens.iter().enumerate() {
            let mut tok = ConlluToken::new(i + 1, &span.form);
            tok.misc = misc_for_spacing(&span.trailing_whitespace);
            tokens.push(tok);
        }
        // comment text never spans lines
        let text = sent.text_trimmed().replace(['\n', '\r'], " ");
        ConlluSentence {
            comments: vec![format!("# text = {text}")],
            tokens,
        }
    }

    pub fn forms(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.form.clone()).collect()
    }

    fn validate(&self) -> Result<(), ConlluError> {
        let n = self.tokens.len();
        if n == 0 {
            return Err(ConlluError::InvariantViolation("sentence has no tokens".into()));
        }
        let mut roots = 0;
        let mut annotated = 0;
        for (i, tok) in self.tokens.iter().enumerate() {
            if tok.id != i + 1 {
                return Err(ConlluError::InvariantViolation(format!(
                    "token ids not consecutive at position {}",
                    i + 1
                )));
            }
            for (name, field) in [
                ("form", &tok.form),
                ("lemma", &tok.lemma),
                ("upos", &tok.upos),
                ("xpos", &tok.xpos),
                ("feats", &tok.feats),
                ("deprel", &tok.deprel),
                ("deps", &tok.deps),
                ("misc", &tok.misc),
            ] {
                if field.is_empty() {
                    return Err(ConlluError::InvariantViolation(format!(
                        "empty {name} field in token {} (use \"_\")",
                        tok.id
                    )));
                }
                if field.contains('\t') || field.contains('\n') {
                    return Err(ConlluError::InvariantViolation(format!(
                        "{name} field of token {} contains tab or newline",
                        tok.id
                    )));
                }
            }
            if !feats_sorted(&tok.feats) {
                return Err(ConlluError::InvariantViolation(format!(
                    "feats of token {} not sorted: {}",
                    tok.id, tok.feats
                )));
            }
            if tok.upos != "_" && !UPOS_TAGS.contains(&tok.upos.as_str()) {
                return Err(ConlluError::InvariantViolation(format!(
                    "upos {:?} of token {} is not a universal POS tag",
                    tok.upos, tok.id
                )));
            }
            if let Some(h) = tok.head {
                annotated += 1;
                if h > n || h == tok.id {
                    return Err(ConlluError::InvariantViolation(format!(
                        "head {h} of token {} out of range",
                        tok.id
                    )));
                }
                if h == 0 {
                    roots += 1;
                    if tok.deprel != "root" {
                        return Err(ConlluError::InvariantViolation(format!(
                            "token {} has head 0 but deprel {:?}",
                            tok.id, tok.deprel
                        )));
                    }
                }
            }
        }
        if annotated > 0 && (annotated != n || roots != 1) {
            return Err(ConlluError::InvariantViolation(format!(
                "parsed sentence must have all heads set and exactly one root (heads: {annotated}/{n}, roots: {roots})"
            )));
        }
        Ok(())
    }
}

/// Feats keys must be sorted; "_" is the empty set.
fn feats_sorted(feats: &str) -> bool {
    if feats == "_" {
        return true;
    }
    let keys: Vec<&str> = feats.split('|').map(|p| p.split('=').next().unwrap_or(p)).collect();
    keys.windows(2).all(|w| w[0] <= w[1])
}

/// Canonicalize a feats string: sort `Key=Value` pairs by key.
pub fn canonical_feats(feats: &str) -> String {
    if feats == "_" || feats.is_empty() {
        return "_".into();
    }
    let mut pairs: Vec<&str> = feats.split('|').collect();
    pairs.sort_by_key(|p| p.split('=').next().unwrap_or(p).to_string());
    pairs.join("|")
}

/// MISC value for a token followed by the given literal whitespace.
pub fn misc_for_spacing(trailing: &str) -> String {
    match trailing {
        " " => "_".into(),
        "" => "SpaceAfter=No".into(),
        ws => format!("SpacesAfter={}", escape_spaces(ws)),
    }
}

fn escape_spaces(ws: &str) -> String {
    let mut out = String::new();
    for c in ws.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            ' ' => out.push_str("\\s"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '\n' => out.push_str("\\n"),
            '|' => out.push_str("\\p"),
            other => out.push(other),
        }
    }
    out
}

/// Parse CoNLL-U text into sentences. Sentences are separated by blank
/// lines; comment lines are preserved verbatim.
pub fn parse_conllu(input: &str) -> Result<Vec<ConlluSentence>, ConlluError> {
    let mut sentences = Vec::new();
    let mut current = ConlluSentence::default();
    let mut expected_id = 1usize;
    let mut first_line = 0usize;

    for (lineno, line) in input.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() {
            if !current.tokens.is_empty() || !current.comments.is_empty() {
                finish_sentence(&mut sentences, &mut current, first_line)?;
                expected_id = 1;
            }
            continue;
        }
        if current.tokens.is_empty() && current.comments.is_empty() {
            first_line = lineno;
        }
        if line.starts_with('#') {
            current.comments.push(line.to_string());
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 10 {
            return Err(ConlluError::LineFieldCount { line: lineno, found: fields.len() });
        }
        let id_str = fields[0];
        if id_str.contains('-') || id_str.contains('.') {
            return Err(ConlluError::UnsupportedId { line: lineno, id: id_str.into() });
        }
        let id: usize = id_str.parse().map_err(|_| ConlluError::NonContiguousIds {
            line: lineno,
            id: id_str.into(),
            expected: expected_id,
        })?;
        if id != expected_id {
            return Err(ConlluError::NonContiguousIds {
                line: lineno,
                id: id_str.into(),
                expected: expected_id,
            });
        }
        expected_id += 1;
        let head = match fields[6] {
            "_" => None,
            h => Some(h.parse::<usize>().map_err(|_| ConlluError::BadHead {
                line: lineno,
                head: h.into(),
                n: 0,
            })?),
        };
        current.tokens.push(ConlluToken {
            id,
            form: fields[1].into(),
            lemma: fields[2].into(),
            upos: fields[3].into(),
            xpos: fields[4].into(),
            feats: fields[5].into(),
            head,
            deprel: fields[7].into(),
            deps: fields[8].into(),
            misc: fields[9].into(),
        });
    }
    if !current.tokens.is_empty() || !current.comments.is_empty() {
        finish_sentence(&mut sentences, &mut current, first_line)?;
    }
    Ok(sentences)
}

fn finish_sentence(
    sentences: &mut Vec<ConlluSentence>,
    current: &mut ConlluSentence,
    first_line: usize,
) -> Result<(), ConlluError> {
    let n = current.tokens.len();
    for tok in &current.tokens {
        if let Some(h) = tok.head {
            if h > n || h == tok.id {
                return Err(ConlluError::BadHead {
                    line: first_line + current.comments.len() + tok.id - 1,
                    head: h.to_string(),
                    n,
                });
            }
        }
    }
    sentences.push(std::mem::take(current));
    Ok(())
}

/// Emit sentences in canonical CoNLL-U form.
pub fn emit_conllu(sentences: &[ConlluSentence]) -> Result<String, ConlluError> {
    let mut out = String::new();
    for sent in sentences {
        sent.validate()?;
        for comment in &sent.comments {
            out.push_str(comment);
            out.push('\n');
        }
        for tok in &sent.tokens {
            let head = match tok.head {
                Some(h) => h.to_string(),
                None => "_".into(),
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                tok.id, tok.form, tok.lemma, tok.upos, tok.xpos, tok.feats, head, tok.deprel,
                tok.deps, tok.misc
            )
            .expect("write to string");
        }
        out.push('\n');
    }
    Ok(out)
}

/// One sentence of (form, BIO tag) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SlashedSentence {
    pub pairs: Vec<(String, String)>,
}

/// Render as `form/TAG` items joined by single spaces.
pub fn emit_slashed(sentence: &SlashedSentence) -> String {
    sentence
        .pairs
        .iter()
        .map(|(form, tag)| format!("{form}/{tag}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse one slashed-tag line. The tag is everything after the LAST slash,
/// so forms may themselves contain slashes.
pub fn parse_slashed(line: &str) -> Result<SlashedSentence, ConlluError> {
    let mut pairs = Vec::new();
    for item in line.split_whitespace() {
        match item.rfind('/') {
            Some(pos) => pairs.push((item[..pos].to_string(), item[pos + 1..].to_string())),
            None => return Err(ConlluError::MissingTag { item: item.into() }),
        }
    }
    Ok(SlashedSentence { pairs })
}
