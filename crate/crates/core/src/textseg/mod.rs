//! Sentence splitting and tokenization with exact offset bookkeeping.
//!
//! Tokens keep their byte span into the original text plus the literal
//! whitespace that followed them, so concatenating `form + trailing_whitespace`
//! over a sentence reproduces the covered input bytes exactly. That spacing
//! metadata later becomes `SpaceAfter=No` / `SpacesAfter=…` in CoNLL-U output.

use std::collections::BTreeSet;

/// One surface token: its form, byte span, and the whitespace after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSpan {
    pub form: String,
    /// Byte offset of the first byte of the form in the original text.
    pub start: usize,
    /// Byte offset one past the last byte of the form.
    pub end: usize,
    /// Literal whitespace between this token and the next (or end of input).
    pub trailing_whitespace: String,
}

impl TokenSpan {
    pub fn space_after(&self) -> bool {
        !self.trailing_whitespace.is_empty()
    }
}

/// A sentence as a run of tokens plus the exact input substring it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSpan {
    pub tokens: Vec<TokenSpan>,
    /// Covered substring, including the final token's trailing whitespace.
    pub text: String,
}

impl SentenceSpan {
    /// The sentence text without the final token's trailing whitespace,
    /// suitable for a `# text = …` comment.
    pub fn text_trimmed(&self) -> &str {
        let last = self.tokens.last().expect("sentence has tokens");
        &self.text[..self.text.len() - last.trailing_whitespace.len()]
    }
}

/// Abbreviations that stay single tokens and never close a sentence.
#[derive(Debug, Clone)]
pub struct AbbrevList {
    entries: BTreeSet<String>,
}

impl AbbrevList {
    /// The Danish list shipped with the crate.
    pub fn danish() -> Self {
        Self::from_text(include_str!("abbreviations_da.txt"))
    }

    /// One abbreviation per line; blank lines ignored.
    pub fn from_text(text: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect();
        AbbrevList { entries }
    }

    pub fn empty() -> Self {
        AbbrevList { entries: BTreeSet::new() }
    }

    pub fn contains(&self, s: &str) -> bool {
        self.entries.contains(s)
    }
}

impl Default for AbbrevList {
    fn default() -> Self {
        AbbrevList::danish()
    }
}

/// Rule-based tokenizer parameterized by an abbreviation list.
#[derive(Debug, Clone, Default)]
pub struct Tokenizer {
    abbrevs: AbbrevList,
}

impl Tokenizer {
    pub fn new(abbrevs: AbbrevList) -> Self {
        Tokenizer { abbrevs }
    }

    /// Split `text` into sentences of offset-tracked tokens.
    ///
    /// Every non-whitespace byte of the input ends up in exactly one token.
    /// Leading whitespace before the first token is not attributed to any
    /// token; apart from that, concatenating each token's form and trailing
    /// whitespace over all sentences reproduces the input.
    pub fn tokenize(&self, text: &str) -> Vec<SentenceSpan> {
        let ranges = self.split_sentences(text);
        let mut sentences = Vec::with_capacity(ranges.len());
        for (idx, &(lo, hi)) in ranges.iter().enumerate() {
            let mut tokens = self.tokenize_range(text, lo, hi);
            if tokens.is_empty() {
                continue;
            }
            // Trailing whitespace of the last token runs up to the next
            // sentence's first byte (or end of input).
            let next_start = ranges.get(idx + 1).map(|r| r.0).unwrap_or(text.len());
            let last = tokens.last_mut().unwrap();
            last.trailing_whitespace = text[last.end..next_start].to_string();
            let sent_start = tokens[0].start;
            sentences.push(SentenceSpan {
                text: text[sent_start..next_start].to_string(),
                tokens,
            });
        }
        sentences
    }

    /// Byte ranges of the sentences in `text`, ordered and non-overlapping.
    ///
    /// A run of `.`/`!`/`?` closes a sentence when followed by whitespace and
    /// then (skipping quotes or brackets) an uppercase letter, unless the
    /// chunk ending at the terminator is a known abbreviation or a digit
    /// ordinal like `1.`.
    pub fn split_sentences(&self, text: &str) -> Vec<(usize, usize)> {
        let mut ranges = Vec::new();
        let bytes = text.as_bytes();
        let mut sent_start = 0usize;
        let mut iter = text.char_indices().peekable();
        while let Some((i, c)) = iter.next() {
            if !is_terminator(c) {
                continue;
            }
            // extend over a run of terminators
            let mut end = i + c.len_utf8();
            while let Some(&(j, c2)) = iter.peek() {
                if is_terminator(c2) {
                    end = j + c2.len_utf8();
                    iter.next();
                } else {
                    break;
                }
            }
            if !self.closes_sentence(text, sent_start, end) {
                continue;
            }
            // require whitespace, then an uppercase letter (quotes/brackets allowed between)
            let rest = &text[end..];
            let mut chars = rest.chars();
            match chars.next() {
                Some(w) if w.is_whitespace() => {}
                _ => continue,
            }
            let upper_next = rest
                .chars()
                .find(|c| c.is_alphanumeric())
                .map(|c| c.is_uppercase())
                .unwrap_or(false);
            if !upper_next {
                continue;
            }
            ranges.push((sent_start, end));
            // skip whitespace to the start of the next sentence
            let mut next = end;
            while next < bytes.len() {
                let ch = text[next..].chars().next().unwrap();
                if ch.is_whitespace() {
                    next += ch.len_utf8();
                } else {
                    break;
                }
            }
            sent_start = next;
            while let Some(&(j, _)) = iter.peek() {
                if j < next {
                    iter.next();
                } else {
                    break;
                }
            }
        }
        if text[sent_start..].chars().any(|c| !c.is_whitespace()) {
            ranges.push((sent_start, text.len()));
        }
        ranges
    }

    /// Does the terminator run ending at byte `end` close a sentence, given
    /// the chunk it is attached to?
    fn closes_sentence(&self, text: &str, sent_start: usize, end: usize) -> bool {
        // the maximal non-whitespace chunk ending at `end`
        let mut chunk_start = end;
        for (i, c) in text[sent_start..end].char_indices().rev() {
            if c.is_whitespace() {
                break;
            }
            chunk_start = sent_start + i;
        }
        let chunk = &text[chunk_start..end];
        if self.abbrevs.contains(chunk) {
            return false;
        }
        // digit ordinals ("1.") do not close sentences
        if chunk.ends_with('.') && is_ordinal(chunk) {
            return false;
        }
        true
    }

    fn tokenize_range(&self, text: &str, lo: usize, hi: usize) -> Vec<TokenSpan> {
        let mut tokens: Vec<TokenSpan> = Vec::new();
        let slice = &text[lo..hi];
        let mut chunk_start = None;
        let push_chunk = |tokens: &mut Vec<TokenSpan>, start: usize, end: usize| {
            self.split_chunk(text, start, end, tokens);
        };
        for (i, c) in slice.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = chunk_start.take() {
                    push_chunk(&mut tokens, lo + s, lo + i);
                }
            } else if chunk_start.is_none() {
                chunk_start = Some(i);
            }
        }
        if let Some(s) = chunk_start {
            push_chunk(&mut tokens, lo + s, hi);
        }
        // trailing whitespace, within the range, for all but the last token
        for k in 0..tokens.len() {
            let end = tokens[k].end;
            let next_start = if k + 1 < tokens.len() { tokens[k + 1].start } else { end };
            tokens[k].trailing_whitespace = text[end..next_start].to_string();
        }
        tokens
    }

    /// Split one whitespace-delimited chunk into tokens: peel leading and
    /// trailing punctuation, keep abbreviations, numbers, and hyphenated
    /// words intact.
    fn split_chunk(&self, text: &str, start: usize, end: usize, out: &mut Vec<TokenSpan>) {
        let mut lo = start;
        let mut hi = end;
        // leading punctuation, one token per character
        while lo < hi {
            let c = text[lo..hi].chars().next().unwrap();
            if is_splittable_punct(c) && !self.keep_whole(&text[lo..hi]) {
                out.push(token_at(text, lo, lo + c.len_utf8()));
                lo += c.len_utf8();
            } else {
                break;
            }
        }
        // trailing punctuation, peeled right to left
        let mut tail: Vec<TokenSpan> = Vec::new();
        while lo < hi {
            let core = &text[lo..hi];
            if self.keep_whole(core) {
                break;
            }
            let c = core.chars().next_back().unwrap();
            if is_splittable_punct(c) && core.chars().count() > 1 {
                tail.push(token_at(text, hi - c.len_utf8(), hi));
                hi -= c.len_utf8();
            } else {
                break;
            }
        }
        if lo < hi {
            out.push(token_at(text, lo, hi));
        }
        out.extend(tail.into_iter().rev());
    }

    /// Chunks that stay single tokens even though they end in punctuation.
    fn keep_whole(&self, s: &str) -> bool {
        self.abbrevs.contains(s) || is_ordinal(s) || is_decimal_number(s)
    }
}

/// Tokenize with the built-in Danish abbreviation list.
pub fn tokenize(text: &str) -> Vec<SentenceSpan> {
    Tokenizer::default().tokenize(text)
}

fn token_at(text: &str, start: usize, end: usize) -> TokenSpan {
    TokenSpan {
        form: text[start..end].to_string(),
        start,
        end,
        trailing_whitespace: String::new(),
    }
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Punctuation we split off token edges. Hyphens stay so that forms like
/// "EU-siden" survive as one token.
fn is_splittable_punct(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace() && c != '-'
}

/// "1." style digit ordinals.
fn is_ordinal(s: &str) -> bool {
    s.ends_with('.')
        && s.len() > 1
        && s[..s.len() - 1].chars().all(|c| c.is_ascii_digit())
}

/// "3,5" / "3.5" style numbers (Danish decimal comma included).
fn is_decimal_number(s: &str) -> bool {
    let mut seen_sep = false;
    let mut seen_digit = false;
    for c in s.chars() {
        if c.is_ascii_digit() {
            seen_digit = true;
        } else if (c == ',' || c == '.') && !seen_sep && seen_digit {
            seen_sep = true;
            seen_digit = false;
        } else {
            return false;
        }
    }
    seen_sep && seen_digit
}
