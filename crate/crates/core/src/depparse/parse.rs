use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::seqtag::{AveragedWeights, LinearModel, Scheme, TagSet};
use crate::Scalar;

use super::oracle::{oracle, projectivize};
use super::state::{ParserState, Transition};
use super::{DepTree, ParseError};

/// A token as the parser sees it: surface form plus UPOS tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedWord {
    pub form: String,
    pub upos: String,
}

impl TaggedWord {
    pub fn new(form: &str, upos: &str) -> Self {
        TaggedWord { form: form.to_string(), upos: upos.to_string() }
    }
}

/// Training data: tagged sentences with their gold trees.
pub type Treebank = Vec<(Vec<TaggedWord>, DepTree)>;

const NONE: &str = "<none>";
const ROOT: &str = "<root>";

/// Features of a parser state: words/tags of the top two stack items and
/// first two buffer items, their pairings, valency counts, dependent labels,
/// and the binned distance between the stack pair.
fn state_features(state: &ParserState, tokens: &[TaggedWord]) -> Vec<String> {
    let word = |t: Option<usize>| -> &str {
        match t {
            Some(0) => ROOT,
            Some(i) => &tokens[i - 1].form,
            None => NONE,
        }
    };
    let tag = |t: Option<usize>| -> &str {
        match t {
            Some(0) => ROOT,
            Some(i) => &tokens[i - 1].upos,
            None => NONE,
        }
    };
    let s0 = state.stack_nth(0);
    let s1 = state.stack_nth(1);
    let b0 = state.buffer_nth(0);
    let b1 = state.buffer_nth(1);

    let dep_info = |t: Option<usize>| -> (String, String, usize, usize) {
        match t {
            Some(i) => {
                let ll = state
                    .left_deps(i)
                    .first()
                    .and_then(|&d| state.dep_label(d))
                    .unwrap_or(NONE);
                let rl = state
                    .right_deps(i)
                    .last()
                    .and_then(|&d| state.dep_label(d))
                    .unwrap_or(NONE);
                (
                    ll.to_string(),
                    rl.to_string(),
                    state.left_deps(i).len().min(5),
                    state.right_deps(i).len().min(5),
                )
            }
            None => (NONE.into(), NONE.into(), 0, 0),
        }
    };
    let (s0ll, s0rl, s0nl, s0nr) = dep_info(s0);
    let (s1ll, s1rl, s1nl, s1nr) = dep_info(s1);
    let dist = match (s1, s0) {
        (Some(a), Some(b)) => (b - a).min(5).to_string(),
        _ => NONE.into(),
    };

    vec![
        format!("s0w={}", word(s0)),
        format!("s0p={}", tag(s0)),
        format!("s0wp={}|{}", word(s0), tag(s0)),
        format!("s1w={}", word(s1)),
        format!("s1p={}", tag(s1)),
        format!("s1wp={}|{}", word(s1), tag(s1)),
        format!("b0w={}", word(b0)),
        format!("b0p={}", tag(b0)),
        format!("b0wp={}|{}", word(b0), tag(b0)),
        format!("b1w={}", word(b1)),
        format!("b1p={}", tag(b1)),
        format!("s1w|s0w={}|{}", word(s1), word(s0)),
        format!("s1p|s0p={}|{}", tag(s1), tag(s0)),
        format!("s0w|b0w={}|{}", word(s0), word(b0)),
        format!("s0p|b0p={}|{}", tag(s0), tag(b0)),
        format!("s1p|s0p|b0p={}|{}|{}", tag(s1), tag(s0), tag(b0)),
        format!("s0p|b0p|b1p={}|{}|{}", tag(s0), tag(b0), tag(b1)),
        format!("s1w|s0p={}|{}", word(s1), tag(s0)),
        format!("s1p|s0w={}|{}", tag(s1), word(s0)),
        format!("s0ll={s0ll}"),
        format!("s0rl={s0rl}"),
        format!("s1ll={s1ll}"),
        format!("s1rl={s1rl}"),
        format!("s0v={s0nl}|{s0nr}"),
        format!("s1v={s1nl}|{s1nr}"),
        format!("dist={dist}"),
    ]
}

/// The transition inventory for a set of relation labels: SHIFT first, then
/// LEFT-ARC and RIGHT-ARC per label in sorted order. "dep" is always
/// present as the unknown-label fallback, "root" only as a RIGHT-ARC.
fn transition_inventory(labels: &BTreeSet<String>) -> TagSet {
    let mut names = vec![Transition::Shift.to_string()];
    for l in labels {
        if l != "root" {
            names.push(Transition::LeftArc(l.clone()).to_string());
        }
    }
    for l in labels {
        names.push(Transition::RightArc(l.clone()).to_string());
    }
    TagSet::new(names, Scheme::Plain)
}

fn decode_transitions(tagset: &TagSet) -> Result<Vec<Transition>, ParseError> {
    tagset.labels().iter().map(|l| l.parse()).collect()
}

/// Greedy parse: at each state take the highest-scoring legal transition.
/// Always terminates in exactly 2n transitions and always yields a
/// well-formed single-rooted tree, whatever the model weights.
pub fn parse<W: Scalar>(model: &LinearModel<W>, tokens: &[TaggedWord]) -> DepTree {
    let n = tokens.len();
    if n == 0 {
        return DepTree { heads: Vec::new(), labels: Vec::new() };
    }
    let transitions = decode_transitions(model.tagset()).expect("model labels are transitions");
    let mut state = ParserState::new(n);
    let mut steps = 0usize;
    while !state.is_terminal() {
        let feats = state_features(&state, tokens);
        let scores = model.emission_scores(&feats);
        let mut best: Option<(W, usize)> = None;
        for (i, t) in transitions.iter().enumerate() {
            if !state.is_legal(t) {
                continue;
            }
            match best {
                Some((s, _)) if s >= scores[i] => {}
                _ => best = Some((scores[i], i)),
            }
        }
        let (_, idx) = best.expect("legality filtering guarantees progress");
        state.apply(&transitions[idx]).expect("legal transition applies");
        steps += 1;
        assert!(steps <= 2 * n, "parse exceeded 2n transitions");
    }
    state.into_tree().expect("terminal state is a tree")
}

/// Train the transition classifier: projectivize the gold trees, derive the
/// oracle sequences, and run an averaged perceptron over the decisions.
/// Deterministic given (treebank, epochs, seed).
pub fn train_parser<W: Scalar>(
    treebank: &Treebank,
    epochs: usize,
    seed: u64,
    mut on_epoch: impl FnMut(usize, f64),
) -> Result<LinearModel<W>, ParseError> {
    let mut labels: BTreeSet<String> = BTreeSet::new();
    labels.insert("dep".into());
    labels.insert("root".into());
    for (_, tree) in treebank {
        for l in tree.labels() {
            labels.insert(l.clone());
        }
    }
    let tagset = transition_inventory(&labels);
    let transitions = decode_transitions(&tagset)?;

    // oracle sequences over projectivized gold
    let mut examples: Vec<(usize, Vec<Transition>)> = Vec::with_capacity(treebank.len());
    for (i, (tokens, tree)) in treebank.iter().enumerate() {
        if tokens.len() != tree.len() {
            return Err(ParseError::BadTree(format!(
                "{} tokens but {} tree nodes",
                tokens.len(),
                tree.len()
            )));
        }
        if tree.is_empty() {
            continue;
        }
        let projective = projectivize(tree);
        examples.push((i, oracle(&projective)?));
    }

    let mut weights: AveragedWeights<W> = AveragedWeights::new(tagset.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let one = W::one();
    let mut scores = vec![W::zero(); tagset.len()];

    for epoch in 0..epochs {
        order.shuffle(&mut rng);
        let mut correct = 0usize;
        let mut total = 0usize;
        for &e in &order {
            let (sent, gold_seq) = &examples[e];
            let tokens = &treebank[*sent].0;
            let mut state = ParserState::new(tokens.len());
            for gold in gold_seq {
                let gold_idx = tagset
                    .index_of(&gold.to_string())
                    .expect("gold transition in inventory");
                let feats = state_features(&state, tokens);
                weights.score_into(&feats, &mut scores);
                let mut pred: Option<(W, usize)> = None;
                for (i, t) in transitions.iter().enumerate() {
                    if !state.is_legal(t) {
                        continue;
                    }
                    match pred {
                        Some((s, _)) if s >= scores[i] => {}
                        _ => pred = Some((scores[i], i)),
                    }
                }
                let (_, pred_idx) = pred.expect("gold transition is legal");
                total += 1;
                if pred_idx == gold_idx {
                    correct += 1;
                } else {
                    for f in &feats {
                        weights.update_emission(f, gold_idx, one);
                        weights.update_emission(f, pred_idx, -one);
                    }
                }
                state.apply(gold).expect("oracle transitions replay");
            }
            weights.tick();
        }
        on_epoch(epoch, if total == 0 { 0.0 } else { correct as f64 / total as f64 });
    }

    Ok(weights.finalize(tagset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(pairs: &[(&str, &str)]) -> Vec<TaggedWord> {
        pairs.iter().map(|&(f, p)| TaggedWord::new(f, p)).collect()
    }

    fn tree(heads: &[usize], labels: &[&str]) -> DepTree {
        DepTree::new(heads.to_vec(), labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn toy_treebank() -> Treebank {
        vec![
            (
                words(&[("hun", "PRON"), ("sover", "VERB"), (".", "PUNCT")]),
                tree(&[2, 0, 2], &["nsubj", "root", "punct"]),
            ),
            (
                words(&[("Nanna", "PROPN"), ("ser", "VERB"), ("huset", "NOUN"), (".", "PUNCT")]),
                tree(&[2, 0, 2, 2], &["nsubj", "root", "obj", "punct"]),
            ),
            (
                words(&[("den", "DET"), ("store", "ADJ"), ("hund", "NOUN"), ("sover", "VERB")]),
                tree(&[3, 3, 4, 0], &["det", "amod", "nsubj", "root"]),
            ),
        ]
    }

    #[test]
    fn one_token_parse_is_rooted() {
        let model: LinearModel<f64> =
            train_parser(&toy_treebank(), 0, 1, |_, _| {}).unwrap();
        let out = parse(&model, &words(&[("hej", "INTJ")]));
        assert_eq!(out.heads(), &[0]);
        assert_eq!(out.label_of(1), "root");
    }

    #[test]
    fn zero_epochs_zero_model_still_parses_well_formed() {
        let model: LinearModel<f64> =
            train_parser(&toy_treebank(), 0, 1, |_, _| {}).unwrap();
        let out = parse(&model, &words(&[("a", "X"), ("b", "X"), ("c", "X"), ("d", "X")]));
        assert_eq!(out.len(), 4);
        assert!(out.heads().iter().filter(|&&h| h == 0).count() == 1);
    }

    #[test]
    fn fits_toy_treebank() {
        let bank = toy_treebank();
        let model: LinearModel<f64> = train_parser(&bank, 20, 5, |_, _| {}).unwrap();
        let mut arcs = 0usize;
        let mut got = 0usize;
        for (tokens, gold) in &bank {
            let out = parse(&model, tokens);
            for d in 1..=gold.len() {
                arcs += 1;
                if out.head_of(d) == gold.head_of(d) && out.label_of(d) == gold.label_of(d) {
                    got += 1;
                }
            }
        }
        assert!(got as f64 / arcs as f64 >= 0.95, "{got}/{arcs}");
    }

    #[test]
    fn determinism() {
        let bank = toy_treebank();
        let a: LinearModel<f64> = train_parser(&bank, 5, 9, |_, _| {}).unwrap();
        let b: LinearModel<f64> = train_parser(&bank, 5, 9, |_, _| {}).unwrap();
        assert_eq!(
            a.save_to_string(crate::seqtag::RecordKind::Parser),
            b.save_to_string(crate::seqtag::RecordKind::Parser)
        );
    }
}
