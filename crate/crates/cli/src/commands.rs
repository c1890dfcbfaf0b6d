use std::io::Write;
use std::path::{Path, PathBuf};

use dansk::brown::{count_bigrams, run_clustering};
use dansk::conllu::{emit_conllu, emit_slashed, parse_conllu, parse_slashed, ConlluSentence};
use dansk::depparse::{train_parser, DepTree, TaggedWord, Treebank};
use dansk::seqtag::{self, Example, LexiconBuilder, RecordKind, TagSet};
use dansk::{pipeline, ClusterHistory, Weight};

use crate::artifacts::{
    build_tokenizer, load_clusters, load_lexicon, load_model, read_input, write_output,
};
use crate::config::FileConfig;
use crate::{Failure, Task};

/// Trailing-newline normalization: input with and without one must produce
/// identical output.
fn normalized(mut text: String) -> String {
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

pub fn ner(
    input: &Path,
    config: Option<PathBuf>,
    model: Option<PathBuf>,
    clusters: Option<PathBuf>,
    abbreviations: Option<PathBuf>,
) -> Result<(), Failure> {
    let file_config = FileConfig::load_opt(config.as_ref())?;
    let model_path = model.or(file_config.ner_model);
    let model = load_model(model_path.as_ref(), "NER model", "--model", RecordKind::Tagger)?;
    let clusters = load_clusters(clusters.or(file_config.clusters).as_ref())?;
    let tokenizer = build_tokenizer(abbreviations.or(file_config.abbreviations).as_ref())?;

    let text = normalized(read_input(input)?);
    let sentences = pipeline::ner_tag_text(&text, &tokenizer, &model, clusters.as_ref())
        .map_err(|e| Failure::Data(e.to_string()))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for sentence in &sentences {
        writeln!(out, "{}", emit_slashed(sentence))
            .map_err(|e| Failure::Data(format!("cannot write output: {e}")))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn pipe(
    input: &Path,
    config: Option<PathBuf>,
    pos_model: Option<PathBuf>,
    parser_model: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    clusters: Option<PathBuf>,
    abbreviations: Option<PathBuf>,
) -> Result<(), Failure> {
    let file_config = FileConfig::load_opt(config.as_ref())?;
    let pos = load_model(
        pos_model.or(file_config.pos_model).as_ref(),
        "POS model",
        "--pos-model",
        RecordKind::Tagger,
    )?;
    let parser = load_model(
        parser_model.or(file_config.parser_model).as_ref(),
        "parser model",
        "--parser-model",
        RecordKind::Parser,
    )?;
    let lexicon = load_lexicon(lexicon.or(file_config.lexicon).as_ref())?;
    let clusters = load_clusters(clusters.or(file_config.clusters).as_ref())?;
    let tokenizer = build_tokenizer(abbreviations.or(file_config.abbreviations).as_ref())?;

    let text = normalized(read_input(input)?);
    let annotated =
        pipeline::annotate_text(&text, &tokenizer, &pos, clusters.as_ref(), &lexicon, &parser)
            .map_err(|e| Failure::Data(e.to_string()))?;
    let rendered = emit_conllu(&annotated).map_err(|e| Failure::Data(e.to_string()))?;
    print!("{rendered}");
    Ok(())
}

pub fn cluster(
    corpus: &Path,
    window: usize,
    sizes: &[usize],
    output: &Path,
    min_count: u64,
) -> Result<(), Failure> {
    if window < 2 {
        return Err(Failure::Config(format!("window must be at least 2, got {window}")));
    }
    if sizes.is_empty() {
        return Err(Failure::Config("no --sizes requested".into()));
    }
    let text = read_input(corpus)?;
    let sentences: Vec<Vec<String>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    let stats = count_bigrams(&sentences, min_count)
        .map_err(|e| Failure::Data(format!("{}: {e}", corpus.display())))?;
    eprintln!(
        "counted {} tokens, {} types after min-count {min_count}",
        stats.total_tokens(),
        stats.vocab_len()
    );
    for &size in sizes {
        if size < 1 || size > stats.vocab_len() {
            return Err(Failure::Config(format!(
                "cannot cut {} word types into {size} clusters",
                stats.vocab_len()
            )));
        }
    }
    let history: ClusterHistory = run_clustering(&stats, window)
        .map_err(|e| Failure::Config(e.to_string()))?;
    eprintln!("clustering done: {} merges recorded", history.merges().len());
    for &size in sizes {
        let table = history.cut(size).map_err(|e| Failure::Config(e.to_string()))?;
        let path = PathBuf::from(format!("{}-{size}.paths", output.display()));
        write_output(&path, &table.to_file_string(), "paths file")?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn train(
    task: Task,
    data: &Path,
    output: &Path,
    epochs: usize,
    seed: u64,
    config: Option<PathBuf>,
    clusters: Option<PathBuf>,
    lexicon: Option<PathBuf>,
) -> Result<(), Failure> {
    let file_config = FileConfig::load_opt(config.as_ref())?;
    let clusters = load_clusters(clusters.or(file_config.clusters).as_ref())?;
    let text = read_input(data)?;
    let on_epoch = |epoch: usize, accuracy: f64| {
        eprintln!("epoch {}: training accuracy {accuracy:.4}", epoch + 1);
    };

    match task {
        Task::Ner => {
            let examples = read_ner_training(&text, data)?;
            let model = seqtag::train::<Weight>(
                &examples,
                &TagSet::ner(),
                clusters.as_ref(),
                epochs,
                seed,
                on_epoch,
            )
            .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
            write_output(output, &model.save_to_string(RecordKind::Tagger), "model")?;
        }
        Task::Pos => {
            let sentences = parse_conllu(&text)
                .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
            let examples: Vec<Example> = sentences
                .iter()
                .map(|s| {
                    (
                        s.tokens.iter().map(|t| t.form.clone()).collect(),
                        s.tokens.iter().map(|t| t.upos.clone()).collect(),
                    )
                })
                .collect();
            let model = seqtag::train::<Weight>(
                &examples,
                &TagSet::upos(),
                clusters.as_ref(),
                epochs,
                seed,
                on_epoch,
            )
            .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
            write_output(output, &model.save_to_string(RecordKind::Tagger), "model")?;
            if let Some(lexicon_path) = lexicon.or(file_config.lexicon) {
                let mut builder = LexiconBuilder::new();
                for sent in &sentences {
                    for tok in &sent.tokens {
                        builder.add(&tok.form, &tok.upos, &tok.lemma, &tok.feats);
                    }
                }
                write_output(&lexicon_path, &builder.build().save_to_string(), "lexicon")?;
                eprintln!("wrote lexicon {}", lexicon_path.display());
            }
        }
        Task::Parse => {
            let sentences = parse_conllu(&text)
                .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
            let mut bank: Treebank = Vec::with_capacity(sentences.len());
            for sent in &sentences {
                let tokens: Vec<TaggedWord> = sent
                    .tokens
                    .iter()
                    .map(|t| TaggedWord::new(&t.form, &t.upos))
                    .collect();
                let tree = DepTree::from_conllu(sent)
                    .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
                bank.push((tokens, tree));
            }
            let model = train_parser::<Weight>(&bank, epochs, seed, on_epoch)
                .map_err(|e| Failure::Data(format!("{}: {e}", data.display())))?;
            write_output(output, &model.save_to_string(RecordKind::Parser), "model")?;
        }
    }
    eprintln!("wrote model {}", output.display());
    Ok(())
}

/// NER training data in either accepted layout, detected from the first
/// non-blank line: CoNLL-U when it starts with `#` or contains a tab,
/// slashed-tag lines otherwise.
fn read_ner_training(text: &str, source: &Path) -> Result<Vec<Example>, Failure> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.starts_with('#') || first.contains('\t') {
        let sentences =
            parse_conllu(text).map_err(|e| Failure::Data(format!("{}: {e}", source.display())))?;
        Ok(sentences.iter().map(ner_example_from_conllu).collect())
    } else {
        let mut examples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let slashed = parse_slashed(line).map_err(|e| {
                Failure::Data(format!("{}:{}: {e}", source.display(), lineno + 1))
            })?;
            let (forms, tags) = slashed.pairs.into_iter().unzip();
            examples.push((forms, tags));
        }
        Ok(examples)
    }
}

/// The NER tag of a CoNLL-U token lives in MISC as `NE=<tag>`; absent means "O".
fn ner_example_from_conllu(sentence: &ConlluSentence) -> Example {
    let forms = sentence.tokens.iter().map(|t| t.form.clone()).collect();
    let tags = sentence
        .tokens
        .iter()
        .map(|t| {
            t.misc
                .split('|')
                .find_map(|pair| pair.strip_prefix("NE="))
                .unwrap_or("O")
                .to_string()
        })
        .collect();
    (forms, tags)
}
