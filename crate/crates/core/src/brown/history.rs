use crate::Scalar;

use super::paths::{PathRow, PathTable};
use super::ClusterError;

/// One recorded merge. `left` was created or seeded before `right`; ids
/// number clusters in creation order, leaves (vocabulary indices) first,
/// merged clusters from `num_leaves()` upward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge<W> {
    pub left: usize,
    pub right: usize,
    pub merged: usize,
    /// Change in average mutual information caused by this merge
    /// (non-positive up to rounding).
    pub ami_delta: W,
}

/// The full record of a clustering run: every word type in introduction
/// order plus the ordered merges. Replaying the first `k` merges over the
/// full leaf set yields a partition into `num_leaves() - k` clusters, so one
/// history provides a clustering of every size.
#[derive(Debug, Clone)]
pub struct MergeHistory<W> {
    leaves: Vec<String>,
    leaf_counts: Vec<u64>,
    merges: Vec<Merge<W>>,
}

impl<W: Scalar> MergeHistory<W> {
    pub(crate) fn new(leaves: Vec<String>, leaf_counts: Vec<u64>, merges: Vec<Merge<W>>) -> Self {
        debug_assert_eq!(merges.len() + 1, leaves.len().max(1));
        MergeHistory { leaves, leaf_counts, merges }
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn leaf_count(&self, leaf: usize) -> u64 {
        self.leaf_counts[leaf]
    }

    pub fn merges(&self) -> &[Merge<W>] {
        &self.merges
    }

    /// Leaf indices of each cluster after replaying down to `m` clusters.
    /// Clusters are sorted by smallest member; members are sorted.
    pub fn partition(&self, m: usize) -> Result<Vec<Vec<usize>>, ClusterError> {
        let cluster_of = self.cluster_assignment(m)?;
        let mut groups: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for (leaf, &c) in cluster_of.iter().enumerate() {
            groups.entry(c).or_default().push(leaf);
        }
        let mut clusters: Vec<Vec<usize>> = groups.into_values().collect();
        clusters.sort_by_key(|ws| ws[0]);
        Ok(clusters)
    }

    /// For each leaf, the id of its cluster after replaying down to `m`.
    pub fn cluster_assignment(&self, m: usize) -> Result<Vec<usize>, ClusterError> {
        let v = self.num_leaves();
        if m < 1 || m > v {
            return Err(ClusterError::BadSize { size: m, leaves: v });
        }
        let mut parent: Vec<usize> = (0..2 * v.max(1)).collect();
        for merge in &self.merges[..v - m] {
            parent[merge.left] = merge.merged;
            parent[merge.right] = merge.merged;
        }
        let mut cluster_of = Vec::with_capacity(v);
        for leaf in 0..v {
            let mut id = leaf;
            while parent[id] != id {
                id = parent[id];
            }
            cluster_of.push(id);
        }
        Ok(cluster_of)
    }

    /// Cut the replay at `m` clusters and assign bit paths from the merge
    /// tree above the cut: at each merge node the earlier-created child gets
    /// '0', the later '1'. All words in one cut cluster share one path.
    pub fn cut(&self, m: usize) -> Result<PathTable, ClusterError> {
        let cluster_of = self.cluster_assignment(m)?;
        let v = self.num_leaves();
        let split = v - m;

        let mut path: Vec<Option<String>> = vec![None; 2 * v];
        if let Some(root) = self.merges.last() {
            path[root.merged] = Some(String::new());
        } else {
            // single leaf, no merges
            path[0] = Some(String::new());
        }
        for merge in self.merges[split..].iter().rev() {
            let base = path[merge.merged].clone().expect("parent path assigned");
            path[merge.left] = Some(format!("{base}0"));
            path[merge.right] = Some(format!("{base}1"));
        }

        let rows: Vec<PathRow> = (0..v)
            .map(|leaf| PathRow {
                path: path[cluster_of[leaf]].clone().expect("cut cluster path assigned"),
                word: self.leaves[leaf].clone(),
                count: self.leaf_counts[leaf],
            })
            .collect();
        Ok(PathTable::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brown::{count_bigrams, run_clustering};

    fn sents(s: &[&str]) -> Vec<Vec<String>> {
        s.iter()
            .map(|line| line.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    fn toy_history() -> MergeHistory<f64> {
        let corpus = sents(&["a b a b c d c d", "b a d c b a", "e a b e c d"]);
        let stats = count_bigrams(&corpus, 1).unwrap();
        run_clustering(&stats, 3).unwrap()
    }

    #[test]
    fn cut_at_one_gives_empty_paths() {
        let history = toy_history();
        let table = history.cut(1).unwrap();
        assert!(table.iter().all(|r| r.path.is_empty()));
    }

    #[test]
    fn cut_at_leaves_gives_distinct_paths() {
        let history = toy_history();
        let table = history.cut(history.num_leaves()).unwrap();
        let mut paths: Vec<&str> = table.iter().map(|r| r.path.as_str()).collect();
        paths.sort_unstable();
        let before = paths.len();
        paths.dedup();
        assert_eq!(paths.len(), before);
    }

    #[test]
    fn bad_size_is_rejected() {
        let history = toy_history();
        assert!(matches!(history.cut(0), Err(ClusterError::BadSize { .. })));
        let v = history.num_leaves();
        assert!(matches!(history.cut(v + 1), Err(ClusterError::BadSize { .. })));
    }

    #[test]
    fn coarser_cut_unites_exactly_two_clusters() {
        let history = toy_history();
        for m in 2..=history.num_leaves() {
            let fine = history.partition(m).unwrap();
            let coarse = history.partition(m - 1).unwrap();
            assert_eq!(fine.len(), m);
            assert_eq!(coarse.len(), m - 1);
            // every fine cluster is contained in exactly one coarse cluster
            for fc in &fine {
                let found = coarse
                    .iter()
                    .filter(|cc| fc.iter().all(|w| cc.contains(w)))
                    .count();
                assert_eq!(found, 1, "fine cluster {fc:?} not nested in {coarse:?}");
            }
        }
    }

    #[test]
    fn paths_are_prefix_free_at_every_cut() {
        let history = toy_history();
        for m in 1..=history.num_leaves() {
            let table = history.cut(m).unwrap();
            let mut distinct: Vec<&str> =
                table.iter().map(|r| r.path.as_str()).collect();
            distinct.sort_unstable();
            distinct.dedup();
            assert_eq!(distinct.len(), m);
            for a in &distinct {
                for b in &distinct {
                    if a != b {
                        assert!(!b.starts_with(a), "{a} is a prefix of {b}");
                    }
                }
            }
        }
    }
}
