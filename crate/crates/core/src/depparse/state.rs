use std::fmt;

use super::{DepTree, ParseError};

/// Arc-standard transition. Arc labels carry exactly one relation name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transition {
    Shift,
    LeftArc(String),
    RightArc(String),
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Shift => write!(f, "SH"),
            Transition::LeftArc(l) => write!(f, "LA:{l}"),
            Transition::RightArc(l) => write!(f, "RA:{l}"),
        }
    }
}

impl std::str::FromStr for Transition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        if s == "SH" {
            Ok(Transition::Shift)
        } else if let Some(l) = s.strip_prefix("LA:") {
            Ok(Transition::LeftArc(l.to_string()))
        } else if let Some(l) = s.strip_prefix("RA:") {
            Ok(Transition::RightArc(l.to_string()))
        } else {
            Err(ParseError::IllegalTransition(format!("unknown transition {s:?}")))
        }
    }
}

/// Parser configuration: a stack (virtual root 0 pre-loaded at the bottom),
/// a buffer of upcoming tokens, and the arcs assigned so far.
#[derive(Debug, Clone)]
pub struct ParserState {
    stack: Vec<usize>,
    /// Next unshifted token; the buffer is `next..=n`.
    next: usize,
    n: usize,
    heads: Vec<Option<usize>>,
    labels: Vec<Option<String>>,
    left_deps: Vec<Vec<usize>>,
    right_deps: Vec<Vec<usize>>,
}

impl ParserState {
    pub fn new(n: usize) -> Self {
        ParserState {
            stack: vec![0],
            next: 1,
            n,
            heads: vec![None; n],
            labels: vec![None; n],
            left_deps: vec![Vec::new(); n + 1],
            right_deps: vec![Vec::new(); n + 1],
        }
    }

    pub fn buffer_len(&self) -> usize {
        self.n + 1 - self.next
    }

    pub fn stack_len(&self) -> usize {
        self.stack.len()
    }

    /// k-th item from the top of the stack (0 = top).
    pub fn stack_nth(&self, k: usize) -> Option<usize> {
        self.stack.iter().rev().nth(k).copied()
    }

    /// k-th item from the front of the buffer (0 = front).
    pub fn buffer_nth(&self, k: usize) -> Option<usize> {
        let pos = self.next + k;
        (pos <= self.n).then_some(pos)
    }

    pub fn head_assigned(&self, token: usize) -> Option<usize> {
        self.heads[token - 1]
    }

    /// Dependents assigned so far, for the oracle and the feature extractor.
    pub fn left_deps(&self, token: usize) -> &[usize] {
        &self.left_deps[token]
    }

    pub fn right_deps(&self, token: usize) -> &[usize] {
        &self.right_deps[token]
    }

    pub fn dep_count(&self, token: usize) -> usize {
        self.left_deps[token].len() + self.right_deps[token].len()
    }

    pub fn dep_label(&self, token: usize) -> Option<&str> {
        self.labels[token - 1].as_deref()
    }

    pub fn is_terminal(&self) -> bool {
        self.buffer_len() == 0 && self.stack.len() == 1
    }

    /// May `t` be applied here? Beyond the structural preconditions this
    /// keeps the virtual root clean: only the final transition may attach to
    /// it, and only with the "root" relation, so decoding with any model
    /// yields a well-formed single-rooted tree.
    pub fn is_legal(&self, t: &Transition) -> bool {
        match t {
            Transition::Shift => self.buffer_len() > 0,
            Transition::LeftArc(l) => {
                self.stack.len() >= 2 && self.stack[self.stack.len() - 2] != 0 && l != "root"
            }
            Transition::RightArc(l) => {
                if self.stack.len() < 2 {
                    return false;
                }
                if self.stack[self.stack.len() - 2] == 0 {
                    self.buffer_len() == 0 && self.stack.len() == 2 && l == "root"
                } else {
                    l != "root"
                }
            }
        }
    }

    /// Arc-standard semantics: LEFT-ARC attaches second-top ← top and pops
    /// second-top; RIGHT-ARC attaches second-top → top and pops top; SHIFT
    /// moves the buffer front onto the stack.
    pub fn apply(&mut self, t: &Transition) -> Result<(), ParseError> {
        if !self.is_legal(t) {
            return Err(ParseError::IllegalTransition(format!(
                "{t} in state with stack depth {} and {} buffered tokens",
                self.stack.len(),
                self.buffer_len()
            )));
        }
        match t {
            Transition::Shift => {
                self.stack.push(self.next);
                self.next += 1;
            }
            Transition::LeftArc(label) => {
                let top = self.stack[self.stack.len() - 1];
                let second = self.stack.remove(self.stack.len() - 2);
                self.attach(second, top, label);
            }
            Transition::RightArc(label) => {
                let top = self.stack.pop().expect("stack depth checked");
                let second = self.stack[self.stack.len() - 1];
                self.attach(top, second, label);
            }
        }
        Ok(())
    }

    fn attach(&mut self, dependent: usize, head: usize, label: &str) {
        self.heads[dependent - 1] = Some(head);
        self.labels[dependent - 1] = Some(label.to_string());
        if dependent < head {
            self.left_deps[head].push(dependent);
        } else {
            self.right_deps[head].push(dependent);
        }
    }

    /// The finished tree; only valid in the terminal state.
    pub fn into_tree(self) -> Result<DepTree, ParseError> {
        if !self.is_terminal() {
            return Err(ParseError::IllegalTransition(
                "state is not terminal".into(),
            ));
        }
        let heads: Vec<usize> = self
            .heads
            .into_iter()
            .map(|h| h.expect("terminal state has all heads"))
            .collect();
        let labels: Vec<String> = self
            .labels
            .into_iter()
            .map(|l| l.expect("terminal state has all labels"))
            .collect();
        DepTree::new(heads, labels)
    }
}
