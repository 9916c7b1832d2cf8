//! Tree-side constructions: game automata, regular trees, acceptance games,
//! the tagged construction for comeager sections, path transducers, formula
//! rewriters and the non-regular witness machinery.

pub mod games;
pub mod path;
pub mod rewrite;
pub mod witness;

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Letter};
use crate::det::{MullerFamily, StateId};
use crate::error::{Error, Result};
use crate::expr::{Dir, TransitionExpr};

/// Atom of a tree transition expression.
pub type TreeAtom = (Dir, StateId);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameOp {
    And,
    Or,
}

/// One transition of a game automaton: `(L, left) op (R, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameMove {
    pub op: GameOp,
    pub left: StateId,
    pub right: StateId,
}

/// Tree automaton whose every transition is a single binary operator over
/// the two directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameAutomaton {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    /// `delta[state][letter]`, total.
    pub delta: Vec<Vec<GameMove>>,
    pub muller: MullerFamily,
}

impl GameAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Vec<GameMove>>,
        muller: MullerFamily,
    ) -> Result<GameAutomaton> {
        let a = GameAutomaton { alphabet, n_states: delta.len(), initial, delta, muller };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.n_states {
            return Err(Error::StateOutOfRange { state: self.initial, size: self.n_states });
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return Err(Error::NotTotal { state: q, letter: row.len() });
            }
            for m in row {
                if m.left >= self.n_states || m.right >= self.n_states {
                    return Err(Error::StateOutOfRange {
                        state: m.left.max(m.right),
                        size: self.n_states,
                    });
                }
            }
        }
        Ok(())
    }

    /// Every game automaton is an alternating tree automaton.
    pub fn to_alternating(&self) -> AltMullerTreeAutomaton {
        let delta = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let l = TransitionExpr::Atom((Dir::L, m.left));
                        let r = TransitionExpr::Atom((Dir::R, m.right));
                        match m.op {
                            GameOp::And => TransitionExpr::and(vec![l, r]),
                            GameOp::Or => TransitionExpr::or(vec![l, r]),
                        }
                    })
                    .collect()
            })
            .collect();
        AltMullerTreeAutomaton {
            alphabet: self.alphabet.clone(),
            n_states: self.n_states,
            initial: self.initial,
            delta,
            muller: self.muller.clone(),
        }
    }

    /// Deterministic automata are game automata with conjunctions only.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|m| m.op == GameOp::And))
    }
}

/// Alternating Muller tree automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltMullerTreeAutomaton {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    pub delta: Vec<Vec<TransitionExpr<TreeAtom>>>,
    pub muller: MullerFamily,
}

impl AltMullerTreeAutomaton {
    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.n_states {
            return Err(Error::StateOutOfRange { state: self.initial, size: self.n_states });
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return Err(Error::NotTotal { state: q, letter: row.len() });
            }
            for e in row {
                for (_, s) in e.atoms() {
                    if s >= self.n_states {
                        return Err(Error::StateOutOfRange { state: s, size: self.n_states });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn expr(&self, q: StateId, a: Letter) -> &TransitionExpr<TreeAtom> {
        &self.delta[q][a]
    }
}

/// Regular infinite tree: the unfolding of a finite labeled graph in which
/// every node has a left and a right successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularTree {
    pub alphabet: Alphabet,
    pub labels: Vec<Letter>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub root: usize,
}

impl RegularTree {
    pub fn new(
        alphabet: Alphabet,
        labels: Vec<Letter>,
        left: Vec<usize>,
        right: Vec<usize>,
        root: usize,
    ) -> Result<RegularTree> {
        let t = RegularTree { alphabet, labels, left, right, root };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if n == 0 || self.left.len() != n || self.right.len() != n || self.root >= n {
            return Err(Error::Other("malformed regular tree".into()));
        }
        for (&l, &r) in self.left.iter().zip(&self.right) {
            if l >= n || r >= n {
                return Err(Error::Other("regular tree child out of range".into()));
            }
        }
        for &l in &self.labels {
            if l >= self.alphabet.len() {
                return Err(Error::LetterOutOfRange { letter: l, size: self.alphabet.len() });
            }
        }
        Ok(())
    }

    pub fn n_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn child(&self, v: usize, d: Dir) -> usize {
        match d {
            Dir::L => self.left[v],
            Dir::R => self.right[v],
        }
    }

    /// Uniformly labeled one-node tree.
    pub fn constant(alphabet: Alphabet, label: Letter) -> Result<RegularTree> {
        RegularTree::new(alphabet, vec![label], vec![0], vec![0], 0)
    }

    /// Graph node reached by a direction word from the root.
    pub fn node_at(&self, path: &[Dir]) -> usize {
        path.iter().fold(self.root, |v, &d| self.child(v, d))
    }
}

/// Finite labeled tree prefix: prefix-closed domain where every vertex has
/// zero or two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePrefix {
    pub alphabet: Alphabet,
    pub map: BTreeMap<Vec<Dir>, Letter>,
}

impl TreePrefix {
    pub fn new(alphabet: Alphabet, map: BTreeMap<Vec<Dir>, Letter>) -> Result<TreePrefix> {
        let p = TreePrefix { alphabet, map };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (v, &l) in &self.map {
            if l >= self.alphabet.len() {
                return Err(Error::LetterOutOfRange { letter: l, size: self.alphabet.len() });
            }
            if !v.is_empty() {
                let mut parent = v.clone();
                parent.pop();
                if !self.map.contains_key(&parent) {
                    return Err(Error::Other("tree prefix not prefix-closed".into()));
                }
            }
            let mut l_child = v.clone();
            l_child.push(Dir::L);
            let mut r_child = v.clone();
            r_child.push(Dir::R);
            let has_l = self.map.contains_key(&l_child);
            let has_r = self.map.contains_key(&r_child);
            if has_l != has_r {
                return Err(Error::Other(
                    "tree prefix vertex with exactly one child".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn is_leaf(&self, v: &[Dir]) -> bool {
        let mut c = v.to_vec();
        c.push(Dir::L);
        !self.map.contains_key(&c)
    }

    /// The extension order on tree prefixes: the larger prefix contains the
    /// smaller one and every leaf of the smaller is internal in the larger.
    pub fn extends(&self, smaller: &TreePrefix) -> bool {
        if self.map.is_empty() {
            return false;
        }
        for (v, l) in &smaller.map {
            if self.map.get(v) != Some(l) {
                return false;
            }
        }
        smaller
            .map
            .keys()
            .filter(|v| smaller.is_leaf(v))
            .all(|v| !self.is_leaf(v))
    }
}
