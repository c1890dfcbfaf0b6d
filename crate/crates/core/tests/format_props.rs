//! Property tests for the text formats and the tokenizer's reconstruction
//! guarantees.

use proptest::prelude::*;

use dansk::brown::{PathRow, PathTable};
use dansk::conllu::{
    emit_conllu, emit_slashed, parse_conllu, parse_slashed, ConlluSentence, ConlluToken,
    SlashedSentence,
};
use dansk::textseg::tokenize;

fn form_strategy() -> impl Strategy<Value = String> {
    "[a-zæøåA-Z0-9,.!?()-]{1,8}"
}

fn text_strategy() -> impl Strategy<Value = String> {
    // words, punctuation, and whitespace in plausible proportions
    proptest::collection::vec(
        prop_oneof![
            4 => "[a-zæøåA-ZÆØÅ]{1,10}",
            1 => "[,.!?():;\"-]{1,3}",
            2 => Just(" ".to_string()),
            1 => Just("\n".to_string()),
            1 => "[0-9]{1,4}",
        ],
        0..40,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #[test]
    fn tokenize_round_trips_all_bytes_after_leading_whitespace(text in text_strategy()) {
        let sentences = tokenize(&text);
        let mut rebuilt = String::new();
        for sent in &sentences {
            let mut sent_text = String::new();
            for tok in &sent.tokens {
                prop_assert!(!tok.form.is_empty());
                prop_assert!(!tok.form.chars().any(char::is_whitespace));
                prop_assert_eq!(&text[tok.start..tok.end], tok.form.as_str());
                sent_text.push_str(&tok.form);
                sent_text.push_str(&tok.trailing_whitespace);
            }
            prop_assert_eq!(&sent_text, &sent.text);
            rebuilt.push_str(&sent_text);
        }
        let lead = text.len() - text.trim_start().len();
        prop_assert_eq!(&text[lead..], rebuilt.as_str());
    }

    #[test]
    fn tokenize_is_idempotent_on_its_own_forms(text in text_strategy()) {
        for sent in tokenize(&text) {
            let forms: Vec<String> = sent.tokens.iter().map(|t| t.form.clone()).collect();
            let rejoined = forms.join(" ");
            let again: Vec<String> = tokenize(&rejoined)
                .iter()
                .flat_map(|s| s.tokens.iter().map(|t| t.form.clone()))
                .collect();
            prop_assert_eq!(forms, again);
        }
    }

    #[test]
    fn slashed_round_trip(pairs in proptest::collection::vec(
        (form_strategy(), "[A-Z-]{1,6}"), 0..12)) {
        let sent = SlashedSentence { pairs };
        let line = emit_slashed(&sent);
        let back = parse_slashed(&line).unwrap();
        prop_assert_eq!(back, sent);
    }

    #[test]
    fn paths_file_round_trip(entries in proptest::collection::btree_map(
        "[a-zæøå0-9]{1,8}", ("[01]{0,12}", 0u64..1_000_000), 0..50)) {
        let rows: Vec<PathRow> = entries
            .into_iter()
            .map(|(word, (path, count))| PathRow { path, word, count })
            .collect();
        let table = PathTable::from_rows(rows);
        let text = table.to_file_string();
        let back = PathTable::read_from(&text).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert_eq!(back.to_file_string(), text);
    }
}

/// Random but invariant-respecting CoNLL-U sentences.
fn sentence_strategy() -> impl Strategy<Value = ConlluSentence> {
    let token = (form_strategy(), form_strategy(), proptest::bool::ANY);
    (proptest::collection::vec(token, 1..9), proptest::bool::ANY, any::<u64>()).prop_map(
        |(tokens, annotated, seed)| {
            let n = tokens.len();
            // deterministic pseudo-random head assignment: attach each token
            // to a previously placed one
            let mut order: Vec<usize> = (1..=n).collect();
            let mut state = seed;
            let mut next = move |bound: usize| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize % bound
            };
            for i in (1..n).rev() {
                let j = next(i + 1);
                order.swap(i, j);
            }
            let mut heads = vec![0usize; n];
            for (k, &tok) in order.iter().enumerate() {
                heads[tok - 1] = if k == 0 { 0 } else { order[next(k)] };
            }
            let toks: Vec<ConlluToken> = tokens
                .into_iter()
                .enumerate()
                .map(|(i, (form, lemma, spaced))| {
                    let mut t = ConlluToken::new(i + 1, &form);
                    t.lemma = lemma;
                    t.upos = "NOUN".into();
                    t.feats = if spaced { "Gender=Com|Number=Sing".into() } else { "_".into() };
                    if annotated {
                        t.head = Some(heads[i]);
                        t.deprel = if heads[i] == 0 { "root".into() } else { "dep".into() };
                    }
                    t.misc = if spaced { "_".into() } else { "SpaceAfter=No".into() };
                    t
                })
                .collect();
            ConlluSentence {
                comments: vec![format!("# sent_id = {seed}")],
                tokens: toks,
            }
        },
    )
}

proptest! {
    #[test]
    fn conllu_round_trip_on_valid_sentences(sentences in proptest::collection::vec(sentence_strategy(), 1..6)) {
        let text = emit_conllu(&sentences).unwrap();
        let parsed = parse_conllu(&text).unwrap();
        prop_assert_eq!(&parsed, &sentences);
        let again = emit_conllu(&parsed).unwrap();
        prop_assert_eq!(again, text);
    }
}
