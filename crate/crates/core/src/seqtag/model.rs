use std::collections::HashMap;

use crate::Scalar;

use super::features::FeatureVector;
use super::{Scheme, TagError, TagSet};

/// Serialized label for the virtual start state in transition records.
const START: &str = "<start>";

/// Which flavor of emission records a model file carries: `E` for taggers
/// (feature → label weights), `P` for the parser's state-feature → transition
/// weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Tagger,
    Parser,
}

impl RecordKind {
    fn emission_char(self) -> char {
        match self {
            RecordKind::Tagger => 'E',
            RecordKind::Parser => 'P',
        }
    }
}

/// String-keyed feature weights plus label-transition weights.
///
/// Absent keys weigh zero. Models are immutable once trained; tagging only
/// reads, so sharing one model across threads is safe.
#[derive(Debug, Clone)]
pub struct LinearModel<W: Scalar> {
    tagset: TagSet,
    emissions: HashMap<String, Vec<W>>,
    /// `(labels + 1) × labels` matrix; the extra row is the start state.
    transitions: Vec<W>,
}

impl<W: Scalar> LinearModel<W> {
    pub fn zero(tagset: TagSet) -> Self {
        let l = tagset.len();
        LinearModel {
            tagset,
            emissions: HashMap::new(),
            transitions: vec![W::zero(); (l + 1) * l],
        }
    }

    pub(crate) fn from_parts(
        tagset: TagSet,
        emissions: HashMap<String, Vec<W>>,
        transitions: Vec<W>,
    ) -> Self {
        debug_assert_eq!(transitions.len(), (tagset.len() + 1) * tagset.len());
        LinearModel { tagset, emissions, transitions }
    }

    pub fn tagset(&self) -> &TagSet {
        &self.tagset
    }

    /// Summed emission weights of a feature multiset, per label.
    pub fn emission_scores(&self, feats: &FeatureVector) -> Vec<W> {
        let mut scores = vec![W::zero(); self.tagset.len()];
        for feat in feats {
            if let Some(row) = self.emissions.get(feat) {
                for (s, &w) in scores.iter_mut().zip(row) {
                    *s += w;
                }
            }
        }
        scores
    }

    pub fn emission_weight(&self, feat: &str, label: usize) -> W {
        self.emissions
            .get(feat)
            .map(|row| row[label])
            .unwrap_or_else(W::zero)
    }

    pub fn set_emission(&mut self, feat: &str, label: usize, weight: W) {
        let l = self.tagset.len();
        self.emissions
            .entry(feat.to_string())
            .or_insert_with(|| vec![W::zero(); l])[label] = weight;
    }

    pub fn transition(&self, prev: Option<usize>, next: usize) -> W {
        let l = self.tagset.len();
        let row = prev.unwrap_or(l);
        self.transitions[row * l + next]
    }

    pub fn set_transition(&mut self, prev: Option<usize>, next: usize, weight: W) {
        let l = self.tagset.len();
        let row = prev.unwrap_or(l);
        self.transitions[row * l + next] = weight;
    }

    /// Serialize to the flat model format: a header line
    /// `linmodel-v1 TAB scheme TAB labels`, then one record per nonzero
    /// weight, `kind TAB key TAB label TAB weight`, sorted for reproducible
    /// output. Weights use the scalar's shortest round-trip decimal form.
    pub fn save_to_string(&self, kind: RecordKind) -> String {
        let scheme = match self.tagset.scheme() {
            Scheme::Bio => "BIO",
            Scheme::Plain => "PLAIN",
        };
        let mut out = format!("linmodel-v1\t{scheme}\t{}\n", self.tagset.labels().join(" "));
        let mut keys: Vec<&String> = self.emissions.keys().collect();
        keys.sort();
        let kc = kind.emission_char();
        for key in keys {
            for (li, &w) in self.emissions[key].iter().enumerate() {
                if w != W::zero() {
                    out.push_str(&format!("{kc}\t{key}\t{}\t{w}\n", self.tagset.label(li)));
                }
            }
        }
        let l = self.tagset.len();
        for prev in 0..=l {
            let prev_name = if prev == l { START } else { self.tagset.label(prev) };
            for next in 0..l {
                let w = self.transitions[prev * l + next];
                if w != W::zero() {
                    out.push_str(&format!("T\t{prev_name}\t{}\t{w}\n", self.tagset.label(next)));
                }
            }
        }
        out
    }

    /// Parse a model file. Returns the model and the record kind it carried
    /// (a weightless model file reports `Tagger`).
    pub fn load_from_str(text: &str) -> Result<(Self, RecordKind), TagError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(TagError::BadModelFile {
            line: 1,
            msg: "empty model file".into(),
        })?;
        let hfields: Vec<&str> = header.split('\t').collect();
        if hfields.len() != 3 || hfields[0] != "linmodel-v1" {
            return Err(TagError::BadModelFile {
                line: 1,
                msg: format!("bad header {header:?}"),
            });
        }
        let scheme = match hfields[1] {
            "BIO" => Scheme::Bio,
            "PLAIN" => Scheme::Plain,
            other => {
                return Err(TagError::BadModelFile {
                    line: 1,
                    msg: format!("unknown scheme {other:?}"),
                })
            }
        };
        let labels: Vec<String> = hfields[2].split(' ').map(str::to_string).collect();
        let tagset = TagSet::new(labels, scheme);
        let l = tagset.len();
        let mut model = LinearModel::zero(tagset);
        let mut kind: Option<RecordKind> = None;

        for (lineno, line) in lines {
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(TagError::BadModelFile {
                    line: lineno,
                    msg: format!("expected 4 fields, found {}", fields.len()),
                });
            }
            let weight: W = fields[3].parse().map_err(|_| TagError::BadModelFile {
                line: lineno,
                msg: format!("bad weight {:?}", fields[3]),
            })?;
            let label_idx = |name: &str| {
                model.tagset.index_of(name).ok_or_else(|| TagError::BadModelFile {
                    line: lineno,
                    msg: format!("label {name:?} not in tagset"),
                })
            };
            match fields[0] {
                "E" | "P" => {
                    let this = if fields[0] == "E" { RecordKind::Tagger } else { RecordKind::Parser };
                    match kind {
                        Some(k) if k != this => {
                            return Err(TagError::BadModelFile {
                                line: lineno,
                                msg: "mixed E and P records".into(),
                            })
                        }
                        _ => kind = Some(this),
                    }
                    let li = label_idx(fields[2])?;
                    model.set_emission(fields[1], li, weight);
                }
                "T" => {
                    let prev = if fields[1] == START {
                        None
                    } else {
                        Some(label_idx(fields[1])?)
                    };
                    let next = label_idx(fields[2])?;
                    let row = prev.unwrap_or(l);
                    model.transitions[row * l + next] = weight;
                }
                other => {
                    return Err(TagError::BadModelFile {
                        line: lineno,
                        msg: format!("unknown record kind {other:?}"),
                    })
                }
            }
        }
        Ok((model, kind.unwrap_or(RecordKind::Tagger)))
    }
}

/// Perceptron weights with lazily-maintained averages.
///
/// `now` counts processed examples; a weight's accumulated sum is settled
/// whenever the weight changes, so averaging costs nothing on the (common)
/// untouched rows.
pub(crate) struct AveragedWeights<W: Scalar> {
    labels: usize,
    rows: HashMap<String, AveragedRow<W>>,
    trans: Vec<W>,
    trans_acc: Vec<W>,
    trans_stamp: u64,
    now: u64,
}

struct AveragedRow<W> {
    w: Vec<W>,
    acc: Vec<W>,
    stamp: u64,
}

impl<W: Scalar> AveragedWeights<W> {
    pub fn new(labels: usize) -> Self {
        AveragedWeights {
            labels,
            rows: HashMap::new(),
            trans: vec![W::zero(); (labels + 1) * labels],
            trans_acc: vec![W::zero(); (labels + 1) * labels],
            trans_stamp: 0,
            now: 0,
        }
    }

    /// Advance the example counter.
    pub fn tick(&mut self) {
        self.now += 1;
    }

    pub fn score_into(&self, feats: &[String], out: &mut [W]) {
        out.fill(W::zero());
        for feat in feats {
            if let Some(row) = self.rows.get(feat) {
                for (s, &w) in out.iter_mut().zip(&row.w) {
                    *s += w;
                }
            }
        }
    }

    pub fn transition(&self, prev: Option<usize>, next: usize) -> W {
        let row = prev.unwrap_or(self.labels);
        self.trans[row * self.labels + next]
    }

    pub fn update_emission(&mut self, feat: &str, label: usize, delta: W) {
        let now = self.now;
        let labels = self.labels;
        if !self.rows.contains_key(feat) {
            self.rows.insert(
                feat.to_string(),
                AveragedRow {
                    w: vec![W::zero(); labels],
                    acc: vec![W::zero(); labels],
                    stamp: 0,
                },
            );
        }
        let row = self.rows.get_mut(feat).expect("row just ensured");
        let elapsed = W::from_f64_lossy((now - row.stamp) as f64);
        for (a, &w) in row.acc.iter_mut().zip(&row.w) {
            *a += w * elapsed;
        }
        row.stamp = now;
        row.w[label] += delta;
    }

    pub fn update_transition(&mut self, prev: Option<usize>, next: usize, delta: W) {
        let elapsed = W::from_f64_lossy((self.now - self.trans_stamp) as f64);
        for (a, &w) in self.trans_acc.iter_mut().zip(&self.trans) {
            *a += w * elapsed;
        }
        self.trans_stamp = self.now;
        let row = prev.unwrap_or(self.labels);
        self.trans[row * self.labels + next] += delta;
    }

    /// Averaged model over all processed examples; zero if none were.
    pub fn finalize(mut self, tagset: TagSet) -> LinearModel<W> {
        let total = self.now;
        if total == 0 {
            return LinearModel::zero(tagset);
        }
        let div = W::from_f64_lossy(total as f64);
        let mut emissions = HashMap::with_capacity(self.rows.len());
        for (feat, mut row) in self.rows.drain() {
            let elapsed = W::from_f64_lossy((total - row.stamp) as f64);
            let averaged: Vec<W> = row
                .acc
                .iter_mut()
                .zip(&row.w)
                .map(|(a, &w)| (*a + w * elapsed) / div)
                .collect();
            if averaged.iter().any(|&w| w != W::zero()) {
                emissions.insert(feat, averaged);
            }
        }
        let elapsed = W::from_f64_lossy((total - self.trans_stamp) as f64);
        let transitions: Vec<W> = self
            .trans_acc
            .iter()
            .zip(&self.trans)
            .map(|(&a, &w)| (a + w * elapsed) / div)
            .collect();
        LinearModel::from_parts(tagset, emissions, transitions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_round_trip() {
        let mut model: LinearModel<f64> = LinearModel::zero(TagSet::ner());
        model.set_emission("w0=danmark", 1, 1.25);
        model.set_emission("shape0=Xx", 0, -0.5);
        model.set_transition(None, 0, 0.125);
        model.set_transition(Some(1), 2, 2.0);
        let text = model.save_to_string(RecordKind::Tagger);
        let (loaded, kind) = LinearModel::<f64>::load_from_str(&text).unwrap();
        assert_eq!(kind, RecordKind::Tagger);
        assert_eq!(loaded.tagset(), model.tagset());
        assert_eq!(loaded.emission_weight("w0=danmark", 1), 1.25);
        assert_eq!(loaded.emission_weight("shape0=Xx", 0), -0.5);
        assert_eq!(loaded.transition(None, 0), 0.125);
        assert_eq!(loaded.transition(Some(1), 2), 2.0);
        // identity on re-save
        assert_eq!(loaded.save_to_string(RecordKind::Tagger), text);
    }

    #[test]
    fn zero_weights_are_not_written() {
        let mut model: LinearModel<f64> = LinearModel::zero(TagSet::upos());
        model.set_emission("w0=hej", 3, 0.0);
        let text = model.save_to_string(RecordKind::Tagger);
        assert_eq!(text.lines().count(), 1, "only the header: {text}");
    }

    #[test]
    fn parser_kind_round_trips() {
        let ts = TagSet::new(vec!["SHIFT".into(), "LA:nsubj".into()], Scheme::Plain);
        let mut model: LinearModel<f64> = LinearModel::zero(ts);
        model.set_emission("s0p=VERB", 0, 3.0);
        let text = model.save_to_string(RecordKind::Parser);
        assert!(text.lines().nth(1).unwrap().starts_with("P\t"));
        let (_, kind) = LinearModel::<f64>::load_from_str(&text).unwrap();
        assert_eq!(kind, RecordKind::Parser);
    }

    #[test]
    fn malformed_files_report_lines() {
        assert!(matches!(
            LinearModel::<f64>::load_from_str("not a model"),
            Err(TagError::BadModelFile { line: 1, .. })
        ));
        let text = "linmodel-v1\tBIO\tO B-LOC\nE\tw0=a\tB-LOC\tnan-ish\n";
        match LinearModel::<f64>::load_from_str(text) {
            Err(TagError::BadModelFile { line: 2, .. }) => {}
            other => panic!("expected line-2 error, got {other:?}"),
        }
    }

    #[test]
    fn averaging_matches_direct_computation() {
        // one label-2 weight set to 1 at step 0 and to 3 after step 2 of 4:
        // values held per step: 1,1,3,3 → average 2
        let mut avg: AveragedWeights<f64> = AveragedWeights::new(3);
        avg.update_emission("f", 2, 1.0);
        avg.tick();
        avg.tick();
        avg.update_emission("f", 2, 2.0);
        avg.tick();
        avg.tick();
        let model = avg.finalize(TagSet::new(
            vec!["a".into(), "b".into(), "c".into()],
            Scheme::Plain,
        ));
        assert_eq!(model.emission_weight("f", 2), 2.0);
    }
}
