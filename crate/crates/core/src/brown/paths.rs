use std::collections::HashMap;
use std::io::{self, Write};

use super::ClusterError;

/// One line of a paths file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRow {
    /// Bit string of '0'/'1' characters; empty at a one-cluster cut.
    pub path: String,
    pub word: String,
    pub count: u64,
}

/// Word-to-bit-path table, the distributable artifact of a clustering run.
///
/// Rows are kept sorted by (path, word), which is also the file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathTable {
    rows: Vec<PathRow>,
    index: HashMap<String, usize>,
}

impl PathTable {
    pub fn from_rows(mut rows: Vec<PathRow>) -> Self {
        rows.sort_by(|a, b| a.path.cmp(&b.path).then_with(|| a.word.cmp(&b.word)));
        let index = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.word.clone(), i))
            .collect();
        PathTable { rows, index }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PathRow> {
        self.rows.iter()
    }

    pub fn path_of(&self, word: &str) -> Option<&str> {
        self.index.get(word).map(|&i| self.rows[i].path.as_str())
    }

    pub fn count_of(&self, word: &str) -> Option<u64> {
        self.index.get(word).map(|&i| self.rows[i].count)
    }

    /// `path TAB word TAB count`, one row per line, sorted by path then word.
    pub fn write_to<S: Write>(&self, sink: &mut S) -> io::Result<()> {
        for row in &self.rows {
            writeln!(sink, "{}\t{}\t{}", row.path, row.word, row.count)?;
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to vec");
        String::from_utf8(buf).expect("paths are utf-8")
    }

    pub fn read_from(text: &str) -> Result<Self, ClusterError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(ClusterError::BadLine {
                    line: lineno,
                    msg: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            if !fields[0].chars().all(|c| c == '0' || c == '1') {
                return Err(ClusterError::BadLine {
                    line: lineno,
                    msg: format!("path {:?} is not a bit string", fields[0]),
                });
            }
            let count: u64 = fields[2].parse().map_err(|_| ClusterError::BadLine {
                line: lineno,
                msg: format!("bad count {:?}", fields[2]),
            })?;
            rows.push(PathRow {
                path: fields[0].to_string(),
                word: fields[1].to_string(),
                count,
            });
        }
        Ok(PathTable::from_rows(rows))
    }
}
