use crate::Scalar;

use super::features::FeatureVector;
use super::model::LinearModel;
use super::{TagError, TagSet};

/// Anything that can score positions and label transitions. Implemented by
/// the finished model and by the trainer's working weights.
pub(crate) trait SequenceScorer<W: Scalar> {
    fn tagset(&self) -> &TagSet;
    fn emissions_into(&self, feats: &FeatureVector, out: &mut [W]);
    fn transition_score(&self, prev: Option<usize>, next: usize) -> W;
}

impl<W: Scalar> SequenceScorer<W> for LinearModel<W> {
    fn tagset(&self) -> &TagSet {
        self.tagset()
    }

    fn emissions_into(&self, feats: &FeatureVector, out: &mut [W]) {
        let scores = self.emission_scores(feats);
        out.copy_from_slice(&scores);
    }

    fn transition_score(&self, prev: Option<usize>, next: usize) -> W {
        self.transition(prev, next)
    }
}

/// Highest-scoring label sequence under emission plus first-order transition
/// scores, with a virtual start state. For BIO tagsets, transitions into
/// `I-T` from anything but `B-T`/`I-T` are hard-forbidden, so the output is
/// always BIO-valid. Ties resolve toward earlier labels.
pub fn viterbi<W: Scalar>(
    model: &LinearModel<W>,
    features: &[FeatureVector],
) -> Result<Vec<String>, TagError> {
    let indices = viterbi_indices(model, features)?;
    Ok(indices
        .into_iter()
        .map(|i| model.tagset().label(i).to_string())
        .collect())
}

pub(crate) fn viterbi_indices<W: Scalar, M: SequenceScorer<W>>(
    scorer: &M,
    features: &[FeatureVector],
) -> Result<Vec<usize>, TagError> {
    if features.is_empty() {
        return Err(TagError::EmptyInput);
    }
    let tagset = scorer.tagset();
    let l = tagset.len();
    let n = features.len();
    let mut dp = vec![W::neg_infinity(); n * l];
    let mut bp = vec![0usize; n * l];
    let mut em = vec![W::zero(); l];

    scorer.emissions_into(&features[0], &mut em);
    for y in 0..l {
        if tagset.transition_allowed(None, y) {
            dp[y] = em[y] + scorer.transition_score(None, y);
        }
    }
    for i in 1..n {
        scorer.emissions_into(&features[i], &mut em);
        for y in 0..l {
            let mut best = W::neg_infinity();
            let mut best_prev = 0usize;
            for prev in 0..l {
                if !tagset.transition_allowed(Some(prev), y) {
                    continue;
                }
                let cand = dp[(i - 1) * l + prev] + scorer.transition_score(Some(prev), y);
                if cand > best {
                    best = cand;
                    best_prev = prev;
                }
            }
            dp[i * l + y] = best + em[y];
            bp[i * l + y] = best_prev;
        }
    }

    let mut last = 0usize;
    let mut best = W::neg_infinity();
    for y in 0..l {
        let score = dp[(n - 1) * l + y];
        if score > best {
            best = score;
            last = y;
        }
    }
    let mut labels = vec![0usize; n];
    labels[n - 1] = last;
    for i in (1..n).rev() {
        labels[i - 1] = bp[i * l + labels[i]];
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqtag::{Scheme, TagSet};

    fn feats_of(words: &[&str]) -> Vec<FeatureVector> {
        words.iter().map(|w| vec![format!("w0={w}")]).collect()
    }

    #[test]
    fn empty_input_is_an_error() {
        let model: LinearModel<f64> = LinearModel::zero(TagSet::ner());
        assert_eq!(viterbi(&model, &[]).unwrap_err(), TagError::EmptyInput);
    }

    #[test]
    fn all_zero_model_yields_first_label() {
        let model: LinearModel<f64> = LinearModel::zero(TagSet::ner());
        let out = viterbi(&model, &feats_of(&["i", "danmark", "."])).unwrap();
        assert_eq!(out, vec!["O", "O", "O"]);
    }

    #[test]
    fn strong_emission_wins_and_bio_holds() {
        let mut model: LinearModel<f64> = LinearModel::zero(TagSet::ner());
        let b_loc = model.tagset().index_of("B-LOC").unwrap();
        model.set_emission("w0=danmark", b_loc, 100.0);
        let out = viterbi(&model, &feats_of(&["i", "danmark", "."])).unwrap();
        assert_eq!(out, vec!["O", "B-LOC", "O"]);
    }

    #[test]
    fn decode_is_never_bio_invalid_even_when_pushed() {
        // huge weight toward I-LOC everywhere: first token cannot take it,
        // so the decoder must route through B-LOC or place O first
        let mut model: LinearModel<f64> = LinearModel::zero(TagSet::ner());
        let i_loc = model.tagset().index_of("I-LOC").unwrap();
        for w in ["a", "b", "c"] {
            model.set_emission(&format!("w0={w}"), i_loc, 50.0);
        }
        let out = viterbi(&model, &feats_of(&["a", "b", "c"])).unwrap();
        let ts = TagSet::ner();
        let idx: Vec<usize> = out.iter().map(|l| ts.index_of(l).unwrap()).collect();
        assert!(ts.sequence_valid(&idx), "invalid decode: {out:?}");
        assert!(out.iter().filter(|l| *l == "I-LOC").count() >= 2);
    }

    #[test]
    fn transitions_shift_the_decision() {
        let labels = TagSet::new(vec!["a".into(), "b".into()], Scheme::Plain);
        let mut model: LinearModel<f64> = LinearModel::zero(labels);
        // per-token emissions prefer "a", but the transition structure pays
        // more for staying on "b" after a forced "b" start
        model.set_transition(None, 1, 3.0);
        model.set_transition(Some(1), 1, 2.0);
        model.set_emission("w0=x", 0, 1.0);
        let out = viterbi(&model, &feats_of(&["x", "x"])).unwrap();
        assert_eq!(out, vec!["b", "b"]);
    }
}
