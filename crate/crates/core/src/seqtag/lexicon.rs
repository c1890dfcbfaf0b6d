use std::collections::HashMap;

use super::TagError;

/// Lemma and morphological-feature lookup built from training data.
///
/// Stores the most frequent (lemma, feats) for each (form, UPOS) pair, with a
/// case-folded fallback on the form alone. Lookup is total: anything unseen
/// falls back to the lowercased form with empty features.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphLexicon {
    exact: HashMap<(String, String), (String, String)>,
    folded: HashMap<String, (String, String)>,
}

impl MorphLexicon {
    pub fn lookup(&self, form: &str, upos: &str) -> (String, String) {
        if let Some(hit) = self.exact.get(&(form.to_string(), upos.to_string())) {
            return hit.clone();
        }
        if let Some(hit) = self.folded.get(&form.to_lowercase()) {
            return hit.clone();
        }
        (form.to_lowercase(), "_".to_string())
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// Flat file: a header, `X form upos lemma feats` exact records, then
    /// `F form lemma feats` fallback records, tab-separated and sorted.
    pub fn save_to_string(&self) -> String {
        let mut out = String::from("morphlex-v1\n");
        let mut exact: Vec<_> = self.exact.iter().collect();
        exact.sort();
        for ((form, upos), (lemma, feats)) in exact {
            out.push_str(&format!("X\t{form}\t{upos}\t{lemma}\t{feats}\n"));
        }
        let mut folded: Vec<_> = self.folded.iter().collect();
        folded.sort();
        for (form, (lemma, feats)) in folded {
            out.push_str(&format!("F\t{form}\t{lemma}\t{feats}\n"));
        }
        out
    }

    pub fn load_from_str(text: &str) -> Result<Self, TagError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "morphlex-v1")) => {}
            _ => {
                return Err(TagError::BadModelFile {
                    line: 1,
                    msg: "missing morphlex-v1 header".into(),
                })
            }
        }
        let mut lex = MorphLexicon::default();
        for (lineno, line) in lines {
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match (fields.first().copied(), fields.len()) {
                (Some("X"), 5) => {
                    lex.exact.insert(
                        (fields[1].into(), fields[2].into()),
                        (fields[3].into(), fields[4].into()),
                    );
                }
                (Some("F"), 4) => {
                    lex.folded
                        .insert(fields[1].into(), (fields[2].into(), fields[3].into()));
                }
                _ => {
                    return Err(TagError::BadModelFile {
                        line: lineno,
                        msg: format!("bad lexicon record {line:?}"),
                    })
                }
            }
        }
        Ok(lex)
    }
}

/// Frequency accumulator producing a [`MorphLexicon`]. Ties break toward the
/// lexicographically smaller (lemma, feats) pair for reproducible builds.
#[derive(Debug, Default)]
pub struct LexiconBuilder {
    exact: HashMap<(String, String), HashMap<(String, String), u64>>,
    folded: HashMap<String, HashMap<(String, String), u64>>,
}

impl LexiconBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, form: &str, upos: &str, lemma: &str, feats: &str) {
        let value = (lemma.to_string(), feats.to_string());
        *self
            .exact
            .entry((form.to_string(), upos.to_string()))
            .or_default()
            .entry(value.clone())
            .or_insert(0) += 1;
        *self
            .folded
            .entry(form.to_lowercase())
            .or_default()
            .entry(value)
            .or_insert(0) += 1;
    }

    pub fn build(self) -> MorphLexicon {
        fn most_frequent(counts: HashMap<(String, String), u64>) -> (String, String) {
            let mut entries: Vec<_> = counts.into_iter().collect();
            entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            entries.into_iter().next().expect("non-empty counts").0
        }
        MorphLexicon {
            exact: self
                .exact
                .into_iter()
                .map(|(k, v)| (k, most_frequent(v)))
                .collect(),
            folded: self
                .folded
                .into_iter()
                .map(|(k, v)| (k, most_frequent(v)))
                .collect(),
        }
    }
}
