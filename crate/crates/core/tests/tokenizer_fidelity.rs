//! The tokenizer must reproduce the vendored sample's segmentation exactly,
//! including where spacing metadata says two tokens were adjacent.

use dansk::conllu::{misc_for_spacing, parse_conllu, ConlluSentence};
use dansk::textseg::tokenize;

const SAMPLE: &str = include_str!("data/sample.conllu");
const SENTENCE: &str = include_str!("data/sample_sentence.txt");

#[test]
fn sample_sentence_tokenizes_to_the_23_gold_forms() {
    let gold = &parse_conllu(SAMPLE).unwrap()[0];
    let sentences = tokenize(SENTENCE);
    assert_eq!(sentences.len(), 1);
    let tokens = &sentences[0].tokens;
    assert_eq!(tokens.len(), 23);
    for (tok, gold_tok) in tokens.iter().zip(&gold.tokens) {
        assert_eq!(tok.form, gold_tok.form, "form mismatch at id {}", gold_tok.id);
        let gold_no_space = gold_tok.misc.contains("SpaceAfter=No");
        assert_eq!(
            !tok.space_after(),
            gold_no_space,
            "spacing mismatch at id {} ({:?})",
            gold_tok.id,
            tok.form
        );
    }
    // "på" is followed directly by the comma
    assert_eq!(tokens[4].form, "på");
    assert!(!tokens[4].space_after());
    // the final period carries the file's trailing newline
    assert_eq!(tokens[22].trailing_whitespace, "\n");
    assert_eq!(misc_for_spacing(&tokens[22].trailing_whitespace), "SpacesAfter=\\n");
}

#[test]
fn generated_comment_and_misc_match_the_sample() {
    let gold = &parse_conllu(SAMPLE).unwrap()[0];
    let sentences = tokenize(SENTENCE);
    let generated = ConlluSentence::from_spans(&sentences[0]);
    assert_eq!(generated.comments, gold.comments);
    for (gen, gold_tok) in generated.tokens.iter().zip(&gold.tokens) {
        assert_eq!(gen.misc, gold_tok.misc, "misc mismatch at id {}", gold_tok.id);
        assert_eq!(gen.form, gold_tok.form);
    }
}

#[test]
fn ner_example_sentence_final_tokens() {
    let text = "En stor reform skal derfor blandt andet styrke tilliden til politikere og \
                medier, genopbygge tilliden til Skat og mindske de økonomiske forskelle i \
                Danmark.\n";
    let sentences = tokenize(text);
    assert_eq!(sentences.len(), 1);
    let tokens = &sentences[0].tokens;
    assert_eq!(tokens.len(), 26);
    let n = tokens.len();
    assert_eq!(tokens[n - 2].form, "Danmark");
    assert_eq!(tokens[n - 1].form, ".");
    assert!(!tokens[n - 2].space_after());
    assert_eq!(tokens[12].form, "medier");
    assert_eq!(tokens[13].form, ",");
    assert!(!tokens[12].space_after());
}
