//! Golden-file fidelity for the vendored CoNLL-U sample.

use dansk::conllu::{emit_conllu, parse_conllu};

const SAMPLE: &str = include_str!("data/sample.conllu");

#[test]
fn sample_parses_to_one_sentence_of_23_tokens() {
    let sentences = parse_conllu(SAMPLE).unwrap();
    assert_eq!(sentences.len(), 1);
    let sent = &sentences[0];
    assert_eq!(sent.tokens.len(), 23);
    assert_eq!(sent.comments.len(), 1);
    assert!(sent.comments[0].starts_with("# text = Derfor presser"));

    let t2 = &sent.tokens[1];
    assert_eq!(t2.form, "presser");
    assert_eq!(t2.lemma, "presse");
    assert_eq!(t2.upos, "VERB");
    assert_eq!(t2.head, Some(0));
    assert_eq!(t2.deprel, "root");

    let t9 = &sent.tokens[8];
    assert_eq!(t9.form, "amerikanerne");
    assert_eq!(t9.lemma, "amerikaner");
    assert_eq!(t9.feats, "Definite=Def|Gender=Com|Number=Plur");

    let t23 = &sent.tokens[22];
    assert_eq!(t23.form, ".");
    assert_eq!(t23.upos, "PUNCT");
    assert_eq!(t23.misc, "SpacesAfter=\\n");
}

#[test]
fn sample_round_trips_byte_identically() {
    let sentences = parse_conllu(SAMPLE).unwrap();
    let emitted = emit_conllu(&sentences).unwrap();
    assert_eq!(emitted, SAMPLE);
}

#[test]
fn sample_tree_is_projective_and_oracle_replays_it() {
    let sentences = parse_conllu(SAMPLE).unwrap();
    let tree = dansk::depparse::DepTree::from_conllu(&sentences[0]).unwrap();
    assert!(tree.is_projective());
    assert_eq!(tree.head_of(1), 2);
    assert_eq!(tree.label_of(1), "advmod");

    let seq = dansk::depparse::oracle(&tree).unwrap();
    let mut state = dansk::depparse::ParserState::new(tree.len());
    for t in &seq {
        state.apply(t).unwrap();
    }
    let replayed = state.into_tree().unwrap();
    assert_eq!(replayed.head_of(1), 2);
    assert_eq!(replayed.label_of(1), "advmod");
    assert_eq!(replayed, tree);
}
