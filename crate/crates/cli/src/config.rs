use std::path::{Path, PathBuf};

use crate::Failure;

/// Pipeline configuration: paths to the artifacts the commands consume.
/// Loaded from a flat `key = value` file; command-line flags override.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    pub abbreviations: Option<PathBuf>,
    pub clusters: Option<PathBuf>,
    pub ner_model: Option<PathBuf>,
    pub pos_model: Option<PathBuf>,
    pub parser_model: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        if !path.exists() {
            return Err(Failure::Config(format!(
                "config file not found: {}",
                path.display()
            )));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = FileConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Failure::Config(format!(
                    "{}:{}: expected `key = value`, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let value = PathBuf::from(value.trim());
            match key.trim() {
                "abbreviations" => config.abbreviations = Some(value),
                "clusters" => config.clusters = Some(value),
                "ner_model" => config.ner_model = Some(value),
                "pos_model" => config.pos_model = Some(value),
                "parser_model" => config.parser_model = Some(value),
                "lexicon" => config.lexicon = Some(value),
                other => {
                    return Err(Failure::Config(format!(
                        "{}:{}: unknown config key {other:?}",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(config)
    }

    pub fn load_opt(path: Option<&PathBuf>) -> Result<Self, Failure> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(FileConfig::default()),
        }
    }
}
