use std::collections::HashMap;

use super::ClusterError;

/// Reserved type that absorbs words below the frequency threshold.
pub const UNK: &str = "<unk>";

/// Exact unigram and adjacent-bigram counts over a tokenized corpus.
///
/// Bigrams are counted over adjacent token pairs within a sentence; sentence
/// boundaries break adjacency. The vocabulary is ordered by descending
/// frequency (ties lexicographic), which is also the order in which the
/// clustering engine introduces words.
#[derive(Debug, Clone)]
pub struct BigramStats {
    vocab: Vec<String>,
    unigram: Vec<u64>,
    index: HashMap<String, usize>,
    /// For each word, (successor, count), sorted by successor.
    successors: Vec<Vec<(usize, u64)>>,
    /// For each word, (predecessor, count), sorted by predecessor.
    predecessors: Vec<Vec<(usize, u64)>>,
    total_tokens: u64,
    total_pairs: u64,
}

impl BigramStats {
    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn vocab_len(&self) -> usize {
        self.vocab.len()
    }

    pub fn unigram(&self, word: usize) -> u64 {
        self.unigram[word]
    }

    pub fn unigram_counts(&self) -> &[u64] {
        &self.unigram
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    pub fn successors(&self, word: usize) -> &[(usize, u64)] {
        &self.successors[word]
    }

    pub fn predecessors(&self, word: usize) -> &[(usize, u64)] {
        &self.predecessors[word]
    }

    pub fn bigram(&self, left: usize, right: usize) -> u64 {
        match self.successors[left].binary_search_by_key(&right, |&(w, _)| w) {
            Ok(pos) => self.successors[left][pos].1,
            Err(_) => 0,
        }
    }

    /// Total outgoing bigram mass of a word (occurrences that have a successor).
    pub fn out_mass(&self, word: usize) -> u64 {
        self.successors[word].iter().map(|&(_, c)| c).sum()
    }

    /// Total incoming bigram mass of a word.
    pub fn in_mass(&self, word: usize) -> u64 {
        self.predecessors[word].iter().map(|&(_, c)| c).sum()
    }
}

/// Count a tokenized corpus. Words with frequency below `min_count` are
/// replaced by [`UNK`] before any counting of bigrams.
pub fn count_bigrams<S: AsRef<str>>(
    sentences: &[Vec<S>],
    min_count: u64,
) -> Result<BigramStats, ClusterError> {
    let mut raw: HashMap<&str, u64> = HashMap::new();
    let mut total_tokens = 0u64;
    for sent in sentences {
        for tok in sent {
            *raw.entry(tok.as_ref()).or_insert(0) += 1;
            total_tokens += 1;
        }
    }
    if total_tokens == 0 {
        return Err(ClusterError::EmptyCorpus);
    }

    let mut counts: HashMap<&str, u64> = HashMap::new();
    for (&word, &c) in &raw {
        if c < min_count {
            *counts.entry(UNK).or_insert(0) += c;
        } else {
            *counts.entry(word).or_insert(0) += c;
        }
    }

    let mut vocab: Vec<(&str, u64)> = counts.into_iter().collect();
    vocab.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let index: HashMap<String, usize> = vocab
        .iter()
        .enumerate()
        .map(|(i, &(w, _))| (w.to_string(), i))
        .collect();
    let unigram: Vec<u64> = vocab.iter().map(|&(_, c)| c).collect();
    let n = vocab.len();

    let word_id = |w: &str| -> usize {
        if raw[w] < min_count {
            index[UNK]
        } else {
            index[w]
        }
    };

    let mut bigrams: HashMap<(usize, usize), u64> = HashMap::new();
    let mut total_pairs = 0u64;
    for sent in sentences {
        for pair in sent.windows(2) {
            let a = word_id(pair[0].as_ref());
            let b = word_id(pair[1].as_ref());
            *bigrams.entry((a, b)).or_insert(0) += 1;
            total_pairs += 1;
        }
    }

    let mut successors: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut predecessors: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for (&(a, b), &c) in &bigrams {
        successors[a].push((b, c));
        predecessors[b].push((a, c));
    }
    for list in successors.iter_mut().chain(predecessors.iter_mut()) {
        list.sort_unstable();
    }

    Ok(BigramStats {
        vocab: vocab.into_iter().map(|(w, _)| w.to_string()).collect(),
        unigram,
        index,
        successors,
        predecessors,
        total_tokens,
        total_pairs,
    })
}
