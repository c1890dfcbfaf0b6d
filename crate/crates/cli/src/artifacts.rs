//! Loading and saving the file artifacts: models, lexicons, cluster paths,
//! abbreviation lists, and the input text itself.

use std::io::Read;
use std::path::{Path, PathBuf};

use dansk::brown::PathTable;
use dansk::seqtag::{LinearModel, MorphLexicon, RecordKind};
use dansk::textseg::{AbbrevList, Tokenizer};
use dansk::Weight;

use crate::Failure;

/// Read the input argument: a file path, or standard input for `-`.
pub fn read_input(arg: &Path) -> Result<String, Failure> {
    if arg == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Data(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Failure::Data(format!("cannot read {}: {e}", arg.display())))
    }
}

/// A configured artifact path must exist before we try to read it.
fn existing(path: Option<&PathBuf>, what: &str, hint: &str) -> Result<PathBuf, Failure> {
    let path = path.ok_or_else(|| {
        Failure::Config(format!("no {what} configured; pass {hint} or set it in the config file"))
    })?;
    if !path.exists() {
        return Err(Failure::Config(format!("{what} not found: {}", path.display())));
    }
    Ok(path.clone())
}

fn read_artifact(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Data(format!("cannot read {what} {}: {e}", path.display())))
}

pub fn load_model(
    path: Option<&PathBuf>,
    what: &str,
    hint: &str,
    expected: RecordKind,
) -> Result<LinearModel<Weight>, Failure> {
    let path = existing(path, what, hint)?;
    let text = read_artifact(&path, what)?;
    let (model, kind) = LinearModel::load_from_str(&text)
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    // a weight-free model file carries no kind marker; accept it for either
    if kind != expected && text.lines().count() > 1 {
        return Err(Failure::Data(format!(
            "{}: model records do not match its use as a {what}",
            path.display()
        )));
    }
    Ok(model)
}

pub fn load_clusters(path: Option<&PathBuf>) -> Result<Option<PathTable>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => {
            let p = existing(Some(p), "cluster paths file", "--clusters")?;
            let text = read_artifact(&p, "cluster paths file")?;
            PathTable::read_from(&text)
                .map(Some)
                .map_err(|e| Failure::Data(format!("{}: {e}", p.display())))
        }
    }
}

pub fn load_lexicon(path: Option<&PathBuf>) -> Result<MorphLexicon, Failure> {
    let path = existing(path, "morphological lexicon", "--lexicon")?;
    let text = read_artifact(&path, "morphological lexicon")?;
    MorphLexicon::load_from_str(&text)
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn build_tokenizer(abbrev_path: Option<&PathBuf>) -> Result<Tokenizer, Failure> {
    match abbrev_path {
        None => Ok(Tokenizer::default()),
        Some(p) => {
            let p = existing(Some(p), "abbreviation list", "--abbreviations")?;
            let text = read_artifact(&p, "abbreviation list")?;
            Ok(Tokenizer::new(AbbrevList::from_text(&text)))
        }
    }
}

pub fn write_output(path: &Path, content: &str, what: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::Data(format!("cannot write {what} {}: {e}", path.display())))
}
