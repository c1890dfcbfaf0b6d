use crate::Scalar;

use super::counts::BigramStats;

/// An explicit clustering of (a subset of) the vocabulary, with the
/// cluster-level bigram counts it induces.
///
/// This is the reference representation the mutual-information objective is
/// defined on; the clustering engine keeps its own incremental tables but
/// must agree with computations done through this type.
#[derive(Debug, Clone)]
pub struct ClusterState {
    members: Vec<Vec<usize>>,
    counts: Vec<Vec<u64>>,
    total: u64,
}

impl ClusterState {
    /// Build a state from a partition of word indices. Bigrams with an
    /// endpoint outside the partition are ignored.
    pub fn from_partition(stats: &BigramStats, members: Vec<Vec<usize>>) -> Self {
        let k = members.len();
        let mut cluster_of = vec![usize::MAX; stats.vocab_len()];
        for (c, ws) in members.iter().enumerate() {
            for &w in ws {
                cluster_of[w] = c;
            }
        }
        let mut counts = vec![vec![0u64; k]; k];
        let mut total = 0u64;
        for (c, ws) in members.iter().enumerate() {
            for &w in ws {
                for &(v, n) in stats.successors(w) {
                    let d = cluster_of[v];
                    if d != usize::MAX {
                        counts[c][d] += n;
                        total += n;
                    }
                }
            }
        }
        ClusterState { members, counts, total }
    }

    pub fn num_clusters(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn pair_count(&self, left: usize, right: usize) -> u64 {
        self.counts[left][right]
    }

    pub fn total_pairs(&self) -> u64 {
        self.total
    }

    /// The state with clusters `a` and `b` merged (used by the exhaustive
    /// merge oracle in tests).
    pub fn merge_pair(&self, a: usize, b: usize) -> ClusterState {
        assert!(a != b);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let keep: Vec<usize> = (0..self.members.len()).filter(|&i| i != a && i != b).collect();
        let mut members: Vec<Vec<usize>> = keep.iter().map(|&i| self.members[i].clone()).collect();
        let mut merged = self.members[a].clone();
        merged.extend_from_slice(&self.members[b]);
        merged.sort_unstable();
        members.push(merged);
        let k = members.len();
        let mut counts = vec![vec![0u64; k]; k];
        let old = |i: usize| -> usize {
            if i + 1 == k {
                usize::MAX
            } else {
                keep[i]
            }
        };
        for i in 0..k {
            for j in 0..k {
                let rows: &[usize] = if old(i) == usize::MAX { &[a, b] } else { &[keep[i]] };
                let cols: &[usize] = if old(j) == usize::MAX { &[a, b] } else { &[keep[j]] };
                for &r in rows {
                    for &c in cols {
                        counts[i][j] += self.counts[r][c];
                    }
                }
            }
        }
        ClusterState { members, counts, total: self.total }
    }
}

/// Average mutual information of the cluster-level bigram distribution:
/// the sum over ordered cluster pairs with nonzero count of
/// `p(c,d) · log2(p(c,d) / (p_left(c) · p_right(d)))`, where probabilities
/// are normalized by the state's total pair mass and the marginals are the
/// row and column sums. Returns 0 for empty pair mass.
pub fn average_mutual_information<W: Scalar>(state: &ClusterState) -> W {
    let k = state.num_clusters();
    if state.total == 0 || k == 0 {
        return W::zero();
    }
    let total = W::from_f64_lossy(state.total as f64);
    let mut row = vec![0u64; k];
    let mut col = vec![0u64; k];
    for i in 0..k {
        for j in 0..k {
            row[i] += state.counts[i][j];
            col[j] += state.counts[i][j];
        }
    }
    let mut ami = W::zero();
    for i in 0..k {
        for j in 0..k {
            let c = state.counts[i][j];
            if c == 0 {
                continue;
            }
            let p = W::from_f64_lossy(c as f64) / total;
            let pl = W::from_f64_lossy(row[i] as f64) / total;
            let pr = W::from_f64_lossy(col[j] as f64) / total;
            ami += p * (p / (pl * pr)).log2();
        }
    }
    ami
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brown::count_bigrams;

    fn sents(s: &[&str]) -> Vec<Vec<String>> {
        s.iter()
            .map(|line| line.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn single_cluster_has_zero_ami() {
        let stats = count_bigrams(&sents(&["a b a b a b"]), 1).unwrap();
        let all: Vec<usize> = (0..stats.vocab_len()).collect();
        let state = ClusterState::from_partition(&stats, vec![all]);
        let ami: f64 = average_mutual_information(&state);
        assert_eq!(ami, 0.0);
    }

    #[test]
    fn hand_computed_two_cluster_ami() {
        // corpus "a b a b a b": p(a,b)=3/5, p(b,a)=2/5
        // AMI = 0.6·log2(0.6/0.36) + 0.4·log2(0.4/0.16) ≈ 0.9709505944546686
        let stats = count_bigrams(&sents(&["a b a b a b"]), 1).unwrap();
        let a = stats.index_of("a").unwrap();
        let b = stats.index_of("b").unwrap();
        let state = ClusterState::from_partition(&stats, vec![vec![a], vec![b]]);
        let ami: f64 = average_mutual_information(&state);
        assert!((ami - 0.970_950_594_454_668_6).abs() < 1e-12, "ami = {ami}");
    }

    #[test]
    fn alternating_corpus_ami_approaches_one_bit() {
        for (n, expect_at_least) in [(10usize, 0.99), (100, 0.9999), (1000, 0.999_999)] {
            let toks = vec!["a", "b"].repeat(n / 2).join(" ");
            let stats = count_bigrams(&sents(&[&toks]), 1).unwrap();
            let a = stats.index_of("a").unwrap();
            let b = stats.index_of("b").unwrap();
            let state = ClusterState::from_partition(&stats, vec![vec![a], vec![b]]);
            let ami: f64 = average_mutual_information(&state);
            assert!(ami > expect_at_least && ami <= 1.0, "n={n}: ami = {ami}");
        }
    }

    #[test]
    fn ami_zero_iff_factorized() {
        // "a a b b a" yields each of the four cluster pairs exactly once, so
        // the bigram distribution factorizes and AMI must be exactly zero.
        let stats = count_bigrams(&sents(&["a a b b a"]), 1).unwrap();
        let a = stats.index_of("a").unwrap();
        let b = stats.index_of("b").unwrap();
        let factorized = ClusterState::from_partition(&stats, vec![vec![a], vec![b]]);
        assert_eq!(factorized.pair_count(0, 0) + factorized.pair_count(1, 1), 2);
        let ami: f64 = average_mutual_information(&factorized);
        assert_eq!(ami, 0.0);

        // a dependent distribution is strictly positive
        let stats2 = count_bigrams(&sents(&["a b a b a b"]), 1).unwrap();
        let a2 = stats2.index_of("a").unwrap();
        let b2 = stats2.index_of("b").unwrap();
        let dependent = ClusterState::from_partition(&stats2, vec![vec![a2], vec![b2]]);
        let ami2: f64 = average_mutual_information(&dependent);
        assert!(ami2 > 0.0);
    }
}
