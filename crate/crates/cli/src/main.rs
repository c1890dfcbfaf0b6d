//! Danish text-processing command line: named-entity tagging, the full
//! tokenize/tag/parse pipeline, word clustering, and model training.

mod artifacts;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Command failure, split by exit status: data/I-O problems exit 1,
/// configuration and usage problems exit 2.
#[derive(Debug)]
pub enum Failure {
    Data(String),
    Config(String),
}

#[derive(Parser)]
#[command(name = "dansk", version, about = "Danish text processing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tag named entities; reads raw text, writes slashed-tag lines
    Ner {
        /// Input file, or `-` for standard input
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Flat key = value configuration file
        #[arg(long)]
        config: Option<PathBuf>,
        /// NER model file
        #[arg(long)]
        model: Option<PathBuf>,
        /// Cluster paths file for cluster features
        #[arg(long)]
        clusters: Option<PathBuf>,
        /// Abbreviation list for the tokenizer
        #[arg(long)]
        abbreviations: Option<PathBuf>,
    },
    /// Run the full pipeline; reads raw text, writes CoNLL-U
    Pipe {
        /// Input file, or `-` for standard input
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// POS tagger model file
        #[arg(long)]
        pos_model: Option<PathBuf>,
        /// Dependency parser model file
        #[arg(long)]
        parser_model: Option<PathBuf>,
        /// Morphological lexicon file
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        clusters: Option<PathBuf>,
        #[arg(long)]
        abbreviations: Option<PathBuf>,
    },
    /// Induce word clusters; writes one paths file per requested size
    Cluster {
        /// Corpus file (one sentence per line, tokens space-separated), or `-`
        corpus: PathBuf,
        /// Working window: the number of simultaneously active clusters
        #[arg(long)]
        window: usize,
        /// Comma-separated clustering sizes to extract, e.g. 100,2500
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Output prefix; files are named <prefix>-<size>.paths
        #[arg(long)]
        output: PathBuf,
        /// Replace words rarer than this by <unk> before clustering
        #[arg(long, default_value_t = 10)]
        min_count: u64,
    },
    /// Train a model and write it to --output
    Train {
        /// What to train
        task: Task,
        /// Training data: CoNLL-U for pos/parse, slashed-tag lines or
        /// CoNLL-U with `NE=` MISC entries for ner
        data: PathBuf,
        /// Where to write the model
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long, default_value_t = 10)]
        epochs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cluster paths file, used as features by ner/pos
        #[arg(long)]
        clusters: Option<PathBuf>,
        /// For `pos`: also build a lemma/feature lexicon and write it here
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Task {
    Ner,
    Pos,
    Parse,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ner { input, config, model, clusters, abbreviations } => {
            commands::ner(&input, config, model, clusters, abbreviations)
        }
        Command::Pipe {
            input,
            config,
            pos_model,
            parser_model,
            lexicon,
            clusters,
            abbreviations,
        } => commands::pipe(
            &input,
            config,
            pos_model,
            parser_model,
            lexicon,
            clusters,
            abbreviations,
        ),
        Command::Cluster { corpus, window, sizes, output, min_count } => {
            commands::cluster(&corpus, window, &sizes, &output, min_count)
        }
        Command::Train { task, data, output, epochs, seed, config, clusters, lexicon } => {
            commands::train(task, &data, &output, epochs, seed, config, clusters, lexicon)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Data(msg)) => {
            eprintln!("dansk: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("dansk: {msg}");
            ExitCode::from(2)
        }
    }
}
