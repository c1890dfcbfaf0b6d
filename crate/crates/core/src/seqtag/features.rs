use crate::brown::PathTable;

use super::TagError;

/// Sparse feature multiset for one token position.
pub type FeatureVector = Vec<String>;

const PAD_LEFT: &str = "<s>";
const PAD_RIGHT: &str = "</s>";
const CLUSTER_PREFIXES: [usize; 4] = [4, 6, 10, 20];

/// Orthographic shape of a form: uppercase → `X`, lowercase → `x`,
/// digit → `d`, anything else kept as-is. The compressed shape collapses
/// adjacent identical shape characters.
pub fn word_shape(form: &str) -> (String, String) {
    let mut full = String::with_capacity(form.len());
    let mut compressed = String::new();
    for c in form.chars() {
        let s = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_numeric() {
            'd'
        } else {
            c
        };
        full.push(s);
        if compressed.chars().next_back() != Some(s) {
            compressed.push(s);
        }
    }
    (full, compressed)
}

/// Features for position `i`: lowercased unigrams over a ±2 window, affixes
/// of the focus word up to length 4, shapes of the focus word and both
/// neighbors, every token n-gram of order 2..5 inside the window that covers
/// position `i`, and (when a cluster table is given) bit-path prefixes for
/// the focus word and both neighbors. Out-of-range positions contribute
/// padding symbols. Deterministic for a given sentence, position, and table.
pub fn extract_features<S: AsRef<str>>(
    forms: &[S],
    i: usize,
    clusters: Option<&PathTable>,
) -> Result<FeatureVector, TagError> {
    let len = forms.len();
    if i >= len {
        return Err(TagError::PositionOutOfRange { position: i, len });
    }
    let word = |off: i64| -> String {
        let pos = i as i64 + off;
        if pos < 0 {
            PAD_LEFT.to_string()
        } else if pos >= len as i64 {
            PAD_RIGHT.to_string()
        } else {
            forms[pos as usize].as_ref().to_lowercase()
        }
    };
    let mut feats: FeatureVector = Vec::with_capacity(40);

    for off in -2..=2i64 {
        feats.push(format!("w{}={}", offset_name(off), word(off)));
    }

    let focus = word(0);
    let chars: Vec<char> = focus.chars().collect();
    for k in 1..=4.min(chars.len()) {
        let pre: String = chars[..k].iter().collect();
        let suf: String = chars[chars.len() - k..].iter().collect();
        feats.push(format!("pre{k}={pre}"));
        feats.push(format!("suf{k}={suf}"));
    }

    for off in -1..=1i64 {
        let pos = i as i64 + off;
        let (full, compressed) = if pos < 0 {
            (PAD_LEFT.to_string(), PAD_LEFT.to_string())
        } else if pos >= len as i64 {
            (PAD_RIGHT.to_string(), PAD_RIGHT.to_string())
        } else {
            word_shape(forms[pos as usize].as_ref())
        };
        feats.push(format!("fshape{}={}", offset_name(off), full));
        feats.push(format!("shape{}={}", offset_name(off), compressed));
    }

    for a in -2..=0i64 {
        for b in 0..=2i64 {
            let order = b - a + 1;
            if !(2..=5).contains(&order) {
                continue;
            }
            let mut name = String::new();
            let mut value = String::new();
            for off in a..=b {
                name.push('w');
                name.push_str(&offset_name(off));
                if off > a {
                    value.push('_');
                }
                value.push_str(&word(off));
            }
            feats.push(format!("{name}={value}"));
        }
    }

    if let Some(table) = clusters {
        for off in -1..=1i64 {
            let pos = i as i64 + off;
            if pos < 0 || pos >= len as i64 {
                continue;
            }
            let lower = forms[pos as usize].as_ref().to_lowercase();
            let path = table
                .path_of(&lower)
                .or_else(|| table.path_of(crate::brown::UNK));
            if let Some(path) = path {
                for &plen in &CLUSTER_PREFIXES {
                    let cut = path
                        .char_indices()
                        .nth(plen)
                        .map(|(b, _)| b)
                        .unwrap_or(path.len());
                    feats.push(format!("bc{plen}_{}={}", offset_name(off), &path[..cut]));
                }
            }
        }
    }

    Ok(feats)
}

fn offset_name(off: i64) -> String {
    if off > 0 {
        format!("+{off}")
    } else {
        off.to_string()
    }
}
