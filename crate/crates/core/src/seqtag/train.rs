use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::brown::PathTable;
use crate::Scalar;

use super::features::{extract_features, FeatureVector};
use super::model::{AveragedWeights, LinearModel};
use super::viterbi::{viterbi_indices, SequenceScorer};
use super::{Scheme, TagError, TagSet};

/// One training sentence: surface forms and their gold labels.
pub type Example = (Vec<String>, Vec<String>);

struct TrainScorer<'a, W: Scalar> {
    weights: &'a AveragedWeights<W>,
    tagset: &'a TagSet,
}

impl<W: Scalar> SequenceScorer<W> for TrainScorer<'_, W> {
    fn tagset(&self) -> &TagSet {
        self.tagset
    }

    fn emissions_into(&self, feats: &FeatureVector, out: &mut [W]) {
        self.weights.score_into(feats, out);
    }

    fn transition_score(&self, prev: Option<usize>, next: usize) -> W {
        self.weights.transition(prev, next)
    }
}

/// Averaged structured perceptron over whole label sequences.
///
/// Each epoch visits the examples in a freshly shuffled order drawn from a
/// seeded generator; on a mismatch the gold structure's features gain one and
/// the predicted structure's lose one. The returned weights are the running
/// average over all processed examples, which is what makes single-epoch toy
/// fits stable. Deterministic given (examples, epochs, seed).
///
/// `on_epoch` receives (epoch index, token accuracy of that pass).
pub fn train<W: Scalar>(
    examples: &[Example],
    tagset: &TagSet,
    clusters: Option<&PathTable>,
    epochs: usize,
    seed: u64,
    mut on_epoch: impl FnMut(usize, f64),
) -> Result<LinearModel<W>, TagError> {
    // validate and index the gold labels up front
    let mut gold_indices: Vec<Vec<usize>> = Vec::with_capacity(examples.len());
    for (forms, labels) in examples {
        if forms.len() != labels.len() {
            return Err(TagError::InvalidGold(format!(
                "{} forms but {} labels",
                forms.len(),
                labels.len()
            )));
        }
        let mut idx = Vec::with_capacity(labels.len());
        for label in labels {
            match tagset.index_of(label) {
                Some(i) => idx.push(i),
                None => {
                    return Err(TagError::InvalidGold(format!(
                        "label {label:?} outside the tagset"
                    )))
                }
            }
        }
        if tagset.scheme() == Scheme::Bio && !tagset.sequence_valid(&idx) {
            return Err(TagError::InvalidGold(format!(
                "BIO-invalid gold sequence {labels:?}"
            )));
        }
        gold_indices.push(idx);
    }

    let features: Vec<Vec<FeatureVector>> = examples
        .iter()
        .map(|(forms, _)| {
            (0..forms.len())
                .map(|i| extract_features(forms, i, clusters).expect("position in range"))
                .collect()
        })
        .collect();

    let mut weights: AveragedWeights<W> = AveragedWeights::new(tagset.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let one = W::one();

    for epoch in 0..epochs {
        order.shuffle(&mut rng);
        let mut correct = 0usize;
        let mut total = 0usize;
        for &ex in &order {
            let feats = &features[ex];
            let gold = &gold_indices[ex];
            if feats.is_empty() {
                weights.tick();
                continue;
            }
            let pred = {
                let scorer = TrainScorer { weights: &weights, tagset };
                viterbi_indices(&scorer, feats).expect("non-empty input")
            };
            total += gold.len();
            correct += gold.iter().zip(&pred).filter(|(g, p)| g == p).count();
            if pred != *gold {
                for (i, fv) in feats.iter().enumerate() {
                    if gold[i] != pred[i] {
                        for feat in fv {
                            weights.update_emission(feat, gold[i], one);
                            weights.update_emission(feat, pred[i], -one);
                        }
                    }
                    let prev_gold = if i == 0 { None } else { Some(gold[i - 1]) };
                    let prev_pred = if i == 0 { None } else { Some(pred[i - 1]) };
                    if (prev_gold, gold[i]) != (prev_pred, pred[i]) {
                        weights.update_transition(prev_gold, gold[i], one);
                        weights.update_transition(prev_pred, pred[i], -one);
                    }
                }
            }
            weights.tick();
        }
        on_epoch(epoch, if total == 0 { 0.0 } else { correct as f64 / total as f64 });
    }

    Ok(weights.finalize(tagset.clone()))
}

/// Extract features and decode one sentence. Output length always equals
/// input length.
pub fn tag<W: Scalar, S: AsRef<str>>(
    model: &LinearModel<W>,
    clusters: Option<&PathTable>,
    forms: &[S],
) -> Result<Vec<String>, TagError> {
    if forms.is_empty() {
        return Err(TagError::EmptyInput);
    }
    let feats: Vec<FeatureVector> = (0..forms.len())
        .map(|i| extract_features(forms, i, clusters).expect("position in range"))
        .collect();
    super::viterbi(model, &feats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(sent: &str, labels: &str) -> Example {
        (
            sent.split_whitespace().map(str::to_string).collect(),
            labels.split_whitespace().map(str::to_string).collect(),
        )
    }

    #[test]
    fn zero_epochs_gives_zero_model() {
        let examples = vec![example("Hej Danmark", "O B-LOC")];
        let model: LinearModel<f64> =
            train(&examples, &TagSet::ner(), None, 0, 1, |_, _| {}).unwrap();
        assert_eq!(model.emission_weight("w0=danmark", 1), 0.0);
        let text = model.save_to_string(crate::seqtag::RecordKind::Tagger);
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn invalid_gold_is_rejected() {
        let bad_label = vec![example("Hej", "B-MISC")];
        assert!(matches!(
            train::<f64>(&bad_label, &TagSet::ner(), None, 1, 1, |_, _| {}),
            Err(TagError::InvalidGold(_))
        ));
        let bad_bio = vec![example("Hej du", "O I-LOC")];
        assert!(matches!(
            train::<f64>(&bad_bio, &TagSet::ner(), None, 1, 1, |_, _| {}),
            Err(TagError::InvalidGold(_))
        ));
        let bad_len = vec![example("Hej du", "O")];
        assert!(matches!(
            train::<f64>(&bad_len, &TagSet::ner(), None, 1, 1, |_, _| {}),
            Err(TagError::InvalidGold(_))
        ));
    }

    #[test]
    fn same_seed_same_model_bytes() {
        let examples = vec![
            example("Mette bor i Danmark", "B-PER O O B-LOC"),
            example("Danske Bank ligger i København", "B-ORG I-ORG O O B-LOC"),
            example("han rejser til Jylland", "O O O B-LOC"),
        ];
        let run = || -> String {
            let model: LinearModel<f64> =
                train(&examples, &TagSet::ner(), None, 5, 42, |_, _| {}).unwrap();
            model.save_to_string(crate::seqtag::RecordKind::Tagger)
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn fits_a_separable_toy_corpus() {
        let examples = vec![
            example("Mette bor i Danmark", "B-PER O O B-LOC"),
            example("Lars arbejder hos Danske Bank", "B-PER O O B-ORG I-ORG"),
            example("hun flyver til København i dag", "O O O B-LOC O O"),
            example("Danmark ligger i Europa", "B-LOC O O B-LOC"),
            example("Nanna kender Lars", "B-PER O B-PER"),
        ];
        let model: LinearModel<f64> =
            train(&examples, &TagSet::ner(), None, 20, 7, |_, _| {}).unwrap();
        let mut correct = 0;
        let mut total = 0;
        for (forms, labels) in &examples {
            let pred = tag(&model, None, forms).unwrap();
            assert_eq!(pred.len(), forms.len());
            total += labels.len();
            correct += pred.iter().zip(labels).filter(|(p, g)| p == g).count();
        }
        assert!(correct as f64 / total as f64 >= 0.99, "{correct}/{total}");
    }

    #[test]
    fn one_token_sentence_gets_one_label() {
        let examples = vec![example("Danmark", "B-LOC"), example("hej", "O")];
        let model: LinearModel<f64> =
            train(&examples, &TagSet::ner(), None, 10, 3, |_, _| {}).unwrap();
        assert_eq!(tag(&model, None, &["Danmark"]).unwrap(), vec!["B-LOC"]);
    }
}
