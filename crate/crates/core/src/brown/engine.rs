use crate::Scalar;

use super::counts::BigramStats;
use super::history::{Merge, MergeHistory};
use super::ClusterError;

/// Run the windowed agglomerative clustering and record every merge.
///
/// The most frequent `window` word types are seeded as singleton clusters;
/// each remaining type is then introduced in frequency order and the pair of
/// active clusters whose merge loses the least mutual information is merged,
/// keeping the active set at `window` clusters. Once the vocabulary is
/// exhausted the active clusters are merged down to one. Deterministic:
/// equal-loss candidates are resolved toward the smallest (left id, right id)
/// pair, where ids number clusters in creation order (leaves first).
pub fn run_clustering<W: Scalar>(
    stats: &BigramStats,
    window: usize,
) -> Result<MergeHistory<W>, ClusterError> {
    if window < 2 {
        return Err(ClusterError::WindowTooSmall { window });
    }
    let v = stats.vocab_len();
    if v < 2 {
        return Err(ClusterError::VocabTooSmall { vocab: v });
    }

    let mut engine: Engine<W> = Engine::seed(stats, window.min(v));
    for w in window.min(v)..v {
        engine.insert(w);
        engine.merge_best();
    }
    while engine.active() > 1 {
        engine.merge_best();
    }

    Ok(MergeHistory::new(
        stats.vocab().to_vec(),
        stats.unigram_counts().to_vec(),
        engine.merges,
    ))
}

/// Incremental clustering state.
///
/// All probabilities are normalized by the full corpus pair count, and
/// cluster marginals are the members' total outgoing/incoming bigram mass
/// over the whole corpus. Marginals therefore never move when a new word is
/// introduced, which is what makes the cached merge-delta table updatable in
/// O(active²) per step instead of being rebuilt. Once every word has been
/// introduced this objective coincides exactly with the mutual information
/// of the active clustering.
struct Engine<'a, W: Scalar> {
    stats: &'a BigramStats,
    norm: W,
    word_out: Vec<u64>,
    word_in: Vec<u64>,
    /// Creation id of each active slot (leaves: vocab index; merged: v + k).
    ids: Vec<usize>,
    /// Pairwise cluster bigram counts, `cnt[i][j]` = mass of (slot i → slot j).
    cnt: Vec<Vec<u64>>,
    out: Vec<u64>,
    inm: Vec<u64>,
    /// Sum of all objective terms involving a slot.
    s: Vec<W>,
    /// Cached merge deltas, symmetric.
    l: Vec<Vec<W>>,
    /// Union-find over creation ids, pointing dead clusters at their merge.
    parent: Vec<usize>,
    id_to_slot: Vec<usize>,
    /// Bigram mass among introduced words.
    introduced_mass: u64,
    next_id: usize,
    merges: Vec<Merge<W>>,
}

impl<'a, W: Scalar> Engine<'a, W> {
    fn seed(stats: &'a BigramStats, seeds: usize) -> Self {
        let v = stats.vocab_len();
        let word_out: Vec<u64> = (0..v).map(|w| stats.out_mass(w)).collect();
        let word_in: Vec<u64> = (0..v).map(|w| stats.in_mass(w)).collect();
        let mut cnt = vec![vec![0u64; seeds]; seeds];
        let mut introduced_mass = 0u64;
        for w in 0..seeds {
            for &(succ, c) in stats.successors(w) {
                if succ < seeds {
                    cnt[w][succ] += c;
                    introduced_mass += c;
                }
            }
        }
        let mut engine = Engine {
            stats,
            norm: W::from_f64_lossy(stats.total_pairs() as f64),
            out: (0..seeds).map(|w| word_out[w]).collect(),
            inm: (0..seeds).map(|w| word_in[w]).collect(),
            word_out,
            word_in,
            ids: (0..seeds).collect(),
            cnt,
            s: vec![W::zero(); seeds],
            l: vec![vec![W::zero(); seeds]; seeds],
            parent: (0..2 * v - 1).collect(),
            id_to_slot: vec![usize::MAX; 2 * v - 1],
            introduced_mass,
            next_id: v,
            merges: Vec::with_capacity(v - 1),
        };
        for (slot, &id) in engine.ids.iter().enumerate() {
            engine.id_to_slot[id] = slot;
        }
        for i in 0..seeds {
            engine.s[i] = engine.s_scratch(i);
        }
        for i in 0..seeds {
            for j in i + 1..seeds {
                let lij = engine.l_scratch(i, j);
                engine.l[i][j] = lij;
                engine.l[j][i] = lij;
            }
        }
        engine
    }

    fn active(&self) -> usize {
        self.ids.len()
    }

    /// One objective term. Zero-count pairs contribute nothing; a nonzero
    /// count implies nonzero marginals, so the logarithm is always finite.
    #[inline]
    fn q(&self, count: u64, out: u64, inm: u64) -> W {
        if count == 0 {
            W::zero()
        } else {
            let c = W::from_f64_lossy(count as f64);
            let denom = W::from_f64_lossy(out as f64) * W::from_f64_lossy(inm as f64);
            (c / self.norm) * ((c * self.norm) / denom).log2()
        }
    }

    fn s_scratch(&self, i: usize) -> W {
        let a = self.active();
        let mut total = W::zero();
        for j in 0..a {
            total += self.q(self.cnt[i][j], self.out[i], self.inm[j]);
            total += self.q(self.cnt[j][i], self.out[j], self.inm[i]);
        }
        total - self.q(self.cnt[i][i], self.out[i], self.inm[i])
    }

    /// Merge delta of (i, j), computed from scratch in O(active).
    fn l_scratch(&self, i: usize, j: usize) -> W {
        let a = self.active();
        let ou = self.out[i] + self.out[j];
        let iu = self.inm[i] + self.inm[j];
        let cu = self.cnt[i][i] + self.cnt[i][j] + self.cnt[j][i] + self.cnt[j][j];
        let mut added = self.q(cu, ou, iu);
        for d in 0..a {
            if d == i || d == j {
                continue;
            }
            added += self.q(self.cnt[i][d] + self.cnt[j][d], ou, self.inm[d]);
            added += self.q(self.cnt[d][i] + self.cnt[d][j], self.out[d], iu);
        }
        let removed = self.s[i] + self.s[j]
            - self.q(self.cnt[i][j], self.out[i], self.inm[j])
            - self.q(self.cnt[j][i], self.out[j], self.inm[i]);
        added - removed
    }

    fn slot_of_word(&mut self, word: usize) -> usize {
        // path-compressing find over creation ids
        let mut id = word;
        while self.parent[id] != id {
            self.parent[id] = self.parent[self.parent[id]];
            id = self.parent[id];
        }
        self.id_to_slot[id]
    }

    /// Introduce vocabulary word `w` as a fresh singleton cluster.
    fn insert(&mut self, w: usize) {
        let a = self.active();
        // bigram mass between w and each active cluster
        let mut x_row = vec![0u64; a]; // cnt(x -> slot)
        let mut x_col = vec![0u64; a]; // cnt(slot -> x)
        let mut self_cnt = 0u64;
        for k in 0..self.stats.successors(w).len() {
            let (v, c) = self.stats.successors(w)[k];
            if v == w {
                self_cnt = c;
            } else if v < w {
                x_row[self.slot_of_word(v)] += c;
            }
        }
        for k in 0..self.stats.predecessors(w).len() {
            let (v, c) = self.stats.predecessors(w)[k];
            if v < w {
                x_col[self.slot_of_word(v)] += c;
            }
        }
        self.introduced_mass +=
            x_row.iter().sum::<u64>() + x_col.iter().sum::<u64>() + self_cnt;

        let out_x = self.word_out[w];
        let in_x = self.word_in[w];

        // contribution of x to each existing cluster's terms
        let sigma: Vec<W> = (0..a)
            .map(|c| {
                self.q(x_col[c], self.out[c], in_x) + self.q(x_row[c], out_x, self.inm[c])
            })
            .collect();
        for i in 0..a {
            for j in i + 1..a {
                let cu_x = x_col[i] + x_col[j];
                let cx_u = x_row[i] + x_row[j];
                let ou = self.out[i] + self.out[j];
                let iu = self.inm[i] + self.inm[j];
                let delta =
                    self.q(cu_x, ou, in_x) + self.q(cx_u, out_x, iu) - sigma[i] - sigma[j];
                self.l[i][j] += delta;
                self.l[j][i] = self.l[i][j];
            }
            self.s[i] += sigma[i];
        }

        // append the new slot
        for (i, row) in self.cnt.iter_mut().enumerate() {
            row.push(x_col[i]);
        }
        x_row.push(self_cnt);
        self.cnt.push(x_row);
        self.out.push(out_x);
        self.inm.push(in_x);
        self.ids.push(w);
        self.id_to_slot[w] = a;
        self.s.push(W::zero());
        self.s[a] = self.s_scratch(a);
        for row in self.l.iter_mut() {
            row.push(W::zero());
        }
        self.l.push(vec![W::zero(); a + 1]);
        for c in 0..a {
            let lc = self.l_scratch(a, c);
            self.l[a][c] = lc;
            self.l[c][a] = lc;
        }
    }

    /// Merge the best candidate pair and contract the tables.
    fn merge_best(&mut self) {
        let a = self.active();
        debug_assert!(a >= 2);
        let mut best = W::neg_infinity();
        for i in 0..a {
            for j in i + 1..a {
                if self.l[i][j] > best {
                    best = self.l[i][j];
                }
            }
        }
        // treat near-equal deltas as ties and resolve by creation ids
        let tol = W::from_f64_lossy(1e-12) * (W::one() + best.abs());
        let mut chosen: Option<(usize, usize, usize, usize)> = None;
        for i in 0..a {
            for j in i + 1..a {
                if self.l[i][j] >= best - tol {
                    let lo = self.ids[i].min(self.ids[j]);
                    let hi = self.ids[i].max(self.ids[j]);
                    match chosen {
                        Some((clo, chi, _, _)) if (clo, chi) <= (lo, hi) => {}
                        _ => chosen = Some((lo, hi, i, j)),
                    }
                }
            }
        }
        let (left_id, right_id, pa, pb) = chosen.expect("at least one candidate pair");
        let new_id = self.next_id;
        self.next_id += 1;

        let delta = if self.introduced_mass > 0 {
            self.l[pa][pb] * self.norm / W::from_f64_lossy(self.introduced_mass as f64)
        } else {
            W::zero()
        };
        self.merges.push(Merge {
            left: left_id,
            right: right_id,
            merged: new_id,
            ami_delta: delta,
        });

        // per-cluster correction from replacing a and b by their union
        let in_m = self.inm[pa] + self.inm[pb];
        let out_m = self.out[pa] + self.out[pb];
        let keep: Vec<usize> = (0..a).filter(|&i| i != pa && i != pb).collect();
        let sigma: Vec<W> = keep
            .iter()
            .map(|&c| {
                self.q(self.cnt[c][pa] + self.cnt[c][pb], self.out[c], in_m)
                    + self.q(self.cnt[pa][c] + self.cnt[pb][c], out_m, self.inm[c])
                    - self.q(self.cnt[c][pa], self.out[c], self.inm[pa])
                    - self.q(self.cnt[pa][c], self.out[pa], self.inm[c])
                    - self.q(self.cnt[c][pb], self.out[c], self.inm[pb])
                    - self.q(self.cnt[pb][c], self.out[pb], self.inm[c])
            })
            .collect();

        let k = keep.len();
        let mut new_cnt = vec![vec![0u64; k + 1]; k + 1];
        let mut new_l = vec![vec![W::zero(); k + 1]; k + 1];
        let mut new_s = vec![W::zero(); k + 1];
        for (ni, &i) in keep.iter().enumerate() {
            for (nj, &j) in keep.iter().enumerate() {
                new_cnt[ni][nj] = self.cnt[i][j];
            }
            new_cnt[ni][k] = self.cnt[i][pa] + self.cnt[i][pb];
            new_cnt[k][ni] = self.cnt[pa][i] + self.cnt[pb][i];
            new_s[ni] = self.s[i] + sigma[ni];
        }
        new_cnt[k][k] =
            self.cnt[pa][pa] + self.cnt[pa][pb] + self.cnt[pb][pa] + self.cnt[pb][pb];

        for (ni, &i) in keep.iter().enumerate() {
            for (nj, &j) in keep.iter().enumerate().skip(ni + 1) {
                let ou = self.out[i] + self.out[j];
                let iu = self.inm[i] + self.inm[j];
                let cu_m = self.cnt[i][pa] + self.cnt[i][pb] + self.cnt[j][pa] + self.cnt[j][pb];
                let cm_u = self.cnt[pa][i] + self.cnt[pb][i] + self.cnt[pa][j] + self.cnt[pb][j];
                let tau = self.q(cu_m, ou, in_m) + self.q(cm_u, out_m, iu)
                    - self.q(self.cnt[i][pa] + self.cnt[j][pa], ou, self.inm[pa])
                    - self.q(self.cnt[pa][i] + self.cnt[pa][j], self.out[pa], iu)
                    - self.q(self.cnt[i][pb] + self.cnt[j][pb], ou, self.inm[pb])
                    - self.q(self.cnt[pb][i] + self.cnt[pb][j], self.out[pb], iu);
                let v = self.l[i][j] + tau - sigma[ni] - sigma[nj];
                new_l[ni][nj] = v;
                new_l[nj][ni] = v;
            }
        }

        // install contracted tables
        let old_ids = std::mem::take(&mut self.ids);
        self.id_to_slot[old_ids[pa]] = usize::MAX;
        self.id_to_slot[old_ids[pb]] = usize::MAX;
        self.parent[old_ids[pa]] = new_id;
        self.parent[old_ids[pb]] = new_id;
        let mut ids: Vec<usize> = keep.iter().map(|&i| old_ids[i]).collect();
        ids.push(new_id);
        for (slot, &id) in ids.iter().enumerate() {
            self.id_to_slot[id] = slot;
        }
        self.ids = ids;
        self.cnt = new_cnt;
        self.l = new_l;
        self.s = new_s;
        let mut out: Vec<u64> = keep.iter().map(|&i| self.out[i]).collect();
        out.push(out_m);
        self.out = out;
        let mut inm: Vec<u64> = keep.iter().map(|&i| self.inm[i]).collect();
        inm.push(in_m);
        self.inm = inm;

        // fresh terms for the merged cluster
        self.s[k] = self.s_scratch(k);
        for c in 0..k {
            let lc = self.l_scratch(k, c);
            self.l[k][c] = lc;
            self.l[c][k] = lc;
        }
    }
}
