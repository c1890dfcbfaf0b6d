use super::state::{ParserState, Transition};
use super::{DepTree, ParseError};

/// Static oracle: the transition sequence that reconstructs a projective
/// gold tree exactly. LEFT-ARC fires as soon as the second-top's head is the
/// top; RIGHT-ARC waits until the top has collected all its dependents.
pub fn oracle(tree: &DepTree) -> Result<Vec<Transition>, ParseError> {
    if !tree.is_projective() {
        return Err(ParseError::NonProjective);
    }
    let n = tree.len();
    let mut gold_deps = vec![0usize; n + 1];
    for d in 1..=n {
        gold_deps[tree.head_of(d)] += 1;
    }
    let mut state = ParserState::new(n);
    let mut transitions = Vec::with_capacity(2 * n);
    while !state.is_terminal() {
        let t = if state.stack_len() >= 2 {
            let top = state.stack_nth(0).expect("stack depth checked");
            let second = state.stack_nth(1).expect("stack depth checked");
            if second != 0 && tree.head_of(second) == top {
                Transition::LeftArc(tree.label_of(second).to_string())
            } else if top != 0
                && tree.head_of(top) == second
                && state.dep_count(top) == gold_deps[top]
            {
                Transition::RightArc(tree.label_of(top).to_string())
            } else if state.buffer_len() > 0 {
                Transition::Shift
            } else {
                return Err(ParseError::NonProjective);
            }
        } else {
            Transition::Shift
        };
        state.apply(&t)?;
        transitions.push(t);
    }
    Ok(transitions)
}

/// Re-attach every non-projective arc to its nearest ancestor under which it
/// becomes projective, repeating until the whole tree is projective. Labels
/// are preserved; projective input comes back unchanged.
pub fn projectivize(tree: &DepTree) -> DepTree {
    let mut heads: Vec<usize> = tree.heads().to_vec();
    let n = heads.len();
    loop {
        // non-projective arcs by the dominance test, shortest span first
        let mut bad: Option<(usize, usize)> = None; // (span, dependent)
        for d in 1..=n {
            let h = heads[d - 1];
            if !arc_dominates(&heads, h, d) {
                let span = h.max(d) - h.min(d);
                if bad.map_or(true, |b| (span, d) < b) {
                    bad = Some((span, d));
                }
            }
        }
        let Some((_, d)) = bad else { break };
        // lift: try each ancestor of the current head, nearest first; the
        // sentence root always qualifies, so this terminates
        let mut anc = heads[heads[d - 1] - 1];
        loop {
            let mut trial = heads.clone();
            trial[d - 1] = anc;
            if anc != 0 && arc_dominates(&trial, anc, d) {
                heads = trial;
                break;
            }
            debug_assert_ne!(anc, 0, "lift walked past the sentence root");
            anc = heads[anc - 1];
        }
    }
    DepTree::new(heads, tree.labels().to_vec()).expect("lifting preserves tree shape")
}

/// Dominance form of arc projectivity: every token strictly between `h` and
/// `d` is a descendant of `h`. Arcs from the virtual root trivially qualify.
fn arc_dominates(heads: &[usize], h: usize, d: usize) -> bool {
    if h == 0 {
        return true;
    }
    let (lo, hi) = (h.min(d), h.max(d));
    'tokens: for k in lo + 1..hi {
        if k == h {
            continue;
        }
        // walk k's head chain; hitting h means k is a descendant
        let mut cur = k;
        let mut steps = 0;
        while cur != 0 {
            cur = heads[cur - 1];
            if cur == h {
                continue 'tokens;
            }
            steps += 1;
            if steps > heads.len() {
                return false;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dep_labels(heads: &[usize]) -> Vec<String> {
        heads
            .iter()
            .map(|&h| if h == 0 { "root".into() } else { "dep".into() })
            .collect()
    }

    fn tree(heads: &[usize]) -> DepTree {
        DepTree::new(heads.to_vec(), dep_labels(heads)).unwrap()
    }

    /// All valid trees over `n` tokens (brute force).
    fn all_trees(n: usize) -> Vec<DepTree> {
        let mut out = Vec::new();
        let mut heads = vec![0usize; n];
        fn rec(heads: &mut Vec<usize>, pos: usize, n: usize, out: &mut Vec<DepTree>) {
            if pos == n {
                if let Ok(t) = DepTree::new(heads.clone(), {
                    heads
                        .iter()
                        .map(|&h| if h == 0 { "root".into() } else { "dep".into() })
                        .collect()
                }) {
                    out.push(t);
                }
                return;
            }
            for h in 0..=n {
                heads[pos] = h;
                rec(heads, pos + 1, n, out);
            }
        }
        rec(&mut heads, 0, n, &mut out);
        out
    }

    #[test]
    fn chain_tree_oracle_replays() {
        // every token headed by the next: 1←2←3, root 3
        let t = tree(&[2, 3, 0]);
        let seq = oracle(&t).unwrap();
        let mut state = ParserState::new(3);
        for tr in &seq {
            state.apply(tr).unwrap();
        }
        assert_eq!(state.into_tree().unwrap(), t);
    }

    #[test]
    fn non_projective_is_rejected() {
        let t = tree(&[0, 4, 1, 1]);
        assert_eq!(oracle(&t).unwrap_err(), ParseError::NonProjective);
    }

    #[test]
    fn oracle_replay_identity_on_all_projective_4_token_trees() {
        for t in all_trees(4) {
            if !t.is_projective() {
                continue;
            }
            let seq = oracle(&t).unwrap();
            assert_eq!(seq.len(), 8);
            let mut state = ParserState::new(4);
            for tr in &seq {
                state.apply(tr).unwrap();
            }
            assert_eq!(state.into_tree().unwrap(), t);
        }
    }

    #[test]
    fn projective_input_is_a_fixed_point() {
        let t = tree(&[2, 0, 2, 3]);
        assert_eq!(projectivize(&t), t);
    }

    #[test]
    fn dominance_test_agrees_with_crossing_detector() {
        for t in all_trees(4) {
            let any_bad = (1..=t.len()).any(|d| !arc_dominates(t.heads(), t.head_of(d), d));
            assert_eq!(any_bad, !t.is_projective(), "heads {:?}", t.heads());
        }
    }

    #[test]
    fn all_non_projective_4_token_trees_become_projective() {
        let mut non_proj = 0;
        let mut single_crossing_one_head_changed = 0;
        for t in all_trees(4) {
            if t.is_projective() {
                continue;
            }
            non_proj += 1;
            let fixed = projectivize(&t);
            assert!(fixed.is_projective(), "{:?} -> {:?}", t.heads(), fixed.heads());
            assert_eq!(fixed.labels().len(), t.labels().len());
            let changed = t
                .heads()
                .iter()
                .zip(fixed.heads())
                .filter(|(a, b)| a != b)
                .count();
            if crossing_pairs(&t) == 1 {
                assert_eq!(changed, 1, "single-crossing tree {:?}", t.heads());
                single_crossing_one_head_changed += 1;
            }
        }
        // enumeration size cross-checked externally
        assert_eq!(non_proj, 34);
        assert_eq!(single_crossing_one_head_changed, 22);
    }

    fn crossing_pairs(t: &DepTree) -> usize {
        let arcs: Vec<(usize, usize)> = (1..=t.len())
            .map(|d| {
                let h = t.head_of(d);
                (h.min(d), h.max(d))
            })
            .collect();
        let mut c = 0;
        for (i, &(lo1, hi1)) in arcs.iter().enumerate() {
            for &(lo2, hi2) in &arcs[i + 1..] {
                if (lo1 < lo2 && lo2 < hi1 && hi1 < hi2) || (lo2 < lo1 && lo1 < hi2 && hi2 < hi1)
                {
                    c += 1;
                }
            }
        }
        c
    }
}
