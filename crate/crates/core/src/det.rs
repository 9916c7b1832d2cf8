//! Deterministic word automata: Muller and parity acceptance.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::lasso::LassoWord;

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

/// An extensionally stored Muller family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MullerFamily {
    sets: BTreeSet<StateSet>,
}

impl MullerFamily {
    pub fn new(sets: impl IntoIterator<Item = StateSet>) -> MullerFamily {
        MullerFamily { sets: sets.into_iter().collect() }
    }

    pub fn empty() -> MullerFamily {
        MullerFamily::default()
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.sets.contains(set)
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateSet> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn insert(&mut self, set: StateSet) {
        self.sets.insert(set);
    }

    /// All nonempty subsets of `0..n` not in the family.
    pub fn complement_within(&self, n: usize) -> MullerFamily {
        assert!(n <= 20);
        let mut out = BTreeSet::new();
        for mask in 1usize..(1 << n) {
            let set: StateSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !self.sets.contains(&set) {
                out.insert(set);
            }
        }
        MullerFamily { sets: out }
    }

    fn check(&self, n_states: usize) -> Result<()> {
        for set in &self.sets {
            if set.is_empty() {
                return Err(Error::InvalidAutomaton("empty set in Muller family".into()));
            }
            if let Some(&max) = set.iter().next_back() {
                if max >= n_states {
                    return Err(Error::StateOutOfRange { state: max, size: n_states });
                }
            }
        }
        Ok(())
    }
}

impl FromIterator<StateSet> for MullerFamily {
    fn from_iter<T: IntoIterator<Item = StateSet>>(iter: T) -> Self {
        MullerFamily::new(iter)
    }
}

/// Total deterministic automaton with a Muller condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetMullerAutomaton {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    /// `delta[state][letter]`, total.
    pub delta: Vec<Vec<StateId>>,
    pub muller: MullerFamily,
}

impl DetMullerAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Vec<StateId>>,
        muller: MullerFamily,
    ) -> Result<DetMullerAutomaton> {
        let a = DetMullerAutomaton { alphabet, n_states: delta.len(), initial, delta, muller };
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
            for &t in row {
                if t >= self.n_states {
                    return Err(Error::StateOutOfRange { state: t, size: self.n_states });
                }
            }
        }
        self.muller.check(self.n_states)
    }

    pub fn step(&self, q: StateId, a: Letter) -> StateId {
        self.delta[q][a]
    }

    /// States visited infinitely often on `u v^ω`.
    pub fn inf_set(&self, w: &LassoWord) -> StateSet {
        let mut q = self.initial;
        for &a in &w.prefix {
            q = self.step(q, a);
        }
        // run one cycle to find where the loop closes, then collect it
        let entry = q;
        let mut seen_states = vec![entry];
        loop {
            for &a in &w.cycle {
                q = self.step(q, a);
            }
            if let Some(i) = seen_states.iter().position(|&s| s == q) {
                // states on the periodic part: replay from occurrence i
                let mut inf = BTreeSet::new();
                let mut s = seen_states[i];
                loop {
                    for &a in &w.cycle {
                        inf.insert(self.step(s, a));
                        s = self.step(s, a);
                    }
                    if s == seen_states[i] {
                        break;
                    }
                }
                return inf;
            }
            seen_states.push(q);
        }
    }

    pub fn accepts_lasso(&self, w: &LassoWord) -> Result<bool> {
        w.check_alphabet(&self.alphabet)?;
        Ok(self.muller.contains(&self.inf_set(w)))
    }

    /// Same automaton; deterministic classes are total by construction.
    pub fn completed(&self) -> DetMullerAutomaton {
        self.clone()
    }

    /// Complement by flipping the Muller family (same transition structure).
    pub fn complemented(&self) -> Result<DetMullerAutomaton> {
        if self.n_states > 20 {
            return Err(Error::BudgetExceeded { budget: 1 << 20 });
        }
        Ok(DetMullerAutomaton {
            muller: self.muller.complement_within(self.n_states),
            ..self.clone()
        })
    }
}

/// How a product combines the two projected inf-sets.
pub enum ProductCond<'a> {
    /// Accept iff both components accept.
    Intersection,
    /// Accept iff either component accepts.
    Union,
    /// Arbitrary combinator over the projected inf-sets.
    Custom(&'a dyn Fn(&StateSet, &StateSet) -> bool),
}

/// Reachable product of two total deterministic Muller automata.
///
/// The product's Muller family is materialized extensionally, so the
/// reachable product must stay small (at most 16 states).
pub fn product_det(
    a: &DetMullerAutomaton,
    b: &DetMullerAutomaton,
    cond: ProductCond,
) -> Result<DetMullerAutomaton> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch("product of different alphabets".into()));
    }
    let mut ids: Vec<(StateId, StateId)> = vec![(a.initial, b.initial)];
    let mut index = std::collections::HashMap::new();
    index.insert((a.initial, b.initial), 0usize);
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let (qa, qb) = ids[i];
        let mut row = Vec::with_capacity(a.alphabet.len());
        for l in a.alphabet.letters() {
            let t = (a.step(qa, l), b.step(qb, l));
            let id = *index.entry(t).or_insert_with(|| {
                ids.push(t);
                ids.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let n = ids.len();
    if n > 16 {
        return Err(Error::BudgetExceeded { budget: 1 << 16 });
    }
    let accepts = |sa: &StateSet, sb: &StateSet| -> bool {
        match &cond {
            ProductCond::Intersection => a.muller.contains(sa) && b.muller.contains(sb),
            ProductCond::Union => a.muller.contains(sa) || b.muller.contains(sb),
            ProductCond::Custom(f) => f(sa, sb),
        }
    };
    let mut family = MullerFamily::empty();
    for mask in 1usize..(1 << n) {
        let set: StateSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sa: StateSet = set.iter().map(|&i| ids[i].0).collect();
        let sb: StateSet = set.iter().map(|&i| ids[i].1).collect();
        if accepts(&sa, &sb) {
            family.insert(set);
        }
    }
    DetMullerAutomaton::new(a.alphabet.clone(), 0, delta, family)
}

/// Total deterministic parity automaton; a run accepts iff the maximum
/// priority visited infinitely often is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpa {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    pub delta: Vec<Vec<StateId>>,
    pub priority: Vec<u32>,
}

impl Dpa {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Vec<StateId>>,
        priority: Vec<u32>,
    ) -> Result<Dpa> {
        let d = Dpa { alphabet, n_states: delta.len(), initial, delta, priority };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.n_states {
            return Err(Error::StateOutOfRange { state: self.initial, size: self.n_states });
        }
        if self.priority.len() != self.n_states {
            return Err(Error::InvalidAutomaton("priority vector length mismatch".into()));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return Err(Error::NotTotal { state: q, letter: row.len() });
            }
            for &t in row {
                if t >= self.n_states {
                    return Err(Error::StateOutOfRange { state: t, size: self.n_states });
                }
            }
        }
        Ok(())
    }

    pub fn step(&self, q: StateId, a: Letter) -> StateId {
        self.delta[q][a]
    }

    pub fn inf_set(&self, w: &LassoWord) -> StateSet {
        // same structure as the Muller case
        let tmp = DetMullerAutomaton {
            alphabet: self.alphabet.clone(),
            n_states: self.n_states,
            initial: self.initial,
            delta: self.delta.clone(),
            muller: MullerFamily::empty(),
        };
        tmp.inf_set(w)
    }

    pub fn accepts_lasso(&self, w: &LassoWord) -> Result<bool> {
        w.check_alphabet(&self.alphabet)?;
        let inf = self.inf_set(w);
        let max = inf.iter().map(|&q| self.priority[q]).max().unwrap();
        Ok(max % 2 == 0)
    }

    pub fn completed(&self) -> Dpa {
        self.clone()
    }
}

/// Restricts to reachable states and quotients by priority-respecting
/// bisimulation. Language-preserving size reduction for pipelines.
pub fn dpa_reduce(d: &Dpa) -> Dpa {
    let succ = |q: usize| -> Vec<usize> {
        let mut out = d.delta[q].clone();
        out.sort_unstable();
        out.dedup();
        out
    };
    let reach = crate::scc::reachable(d.n_states, &[d.initial], &succ);
    let keep: Vec<usize> = (0..d.n_states).filter(|&q| reach[q]).collect();
    let mut old_block = vec![usize::MAX; d.n_states];
    // partition by priority, refine by per-letter successor blocks
    let mut prios: Vec<u32> = keep.iter().map(|&q| d.priority[q]).collect();
    prios.sort_unstable();
    prios.dedup();
    for &q in &keep {
        old_block[q] = prios.binary_search(&d.priority[q]).unwrap();
    }
    loop {
        let mut next_of: std::collections::HashMap<(usize, Vec<usize>), usize> =
            std::collections::HashMap::new();
        let mut next = vec![usize::MAX; d.n_states];
        for &q in &keep {
            let sig: Vec<usize> = d.delta[q].iter().map(|&t| old_block[t]).collect();
            let k = next_of.len();
            let id = *next_of.entry((old_block[q], sig)).or_insert(k);
            next[q] = id;
        }
        if keep.iter().all(|&q| next[q] == old_block[q]) {
            break;
        }
        old_block = next;
    }
    let n_blocks = keep.iter().map(|&q| old_block[q]).max().map_or(0, |m| m + 1);
    let rep: Vec<usize> = (0..n_blocks)
        .map(|b| keep.iter().copied().find(|&q| old_block[q] == b).unwrap())
        .collect();
    Dpa {
        alphabet: d.alphabet.clone(),
        n_states: n_blocks,
        initial: old_block[d.initial],
        delta: rep
            .iter()
            .map(|&q| d.delta[q].iter().map(|&t| old_block[t]).collect())
            .collect(),
        priority: rep.iter().map(|&q| d.priority[q]).collect(),
    }
}

/// Reads a parity condition as the Muller family it denotes:
/// `F = { S : max priority over S is even }`, enumerated over all nonempty
/// state sets. Only sensible at desk scale.
pub fn dpa_to_detmuller(d: &Dpa) -> Result<DetMullerAutomaton> {
    if d.n_states > 16 {
        return Err(Error::BudgetExceeded { budget: 1 << 16 });
    }
    let n = d.n_states;
    let mut family = MullerFamily::empty();
    for mask in 1usize..(1 << n) {
        let set: StateSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let max = set.iter().map(|&q| d.priority[q]).max().unwrap();
        if max % 2 == 0 {
            family.insert(set);
        }
    }
    DetMullerAutomaton::new(d.alphabet.clone(), d.initial, d.delta.clone(), family)
}
