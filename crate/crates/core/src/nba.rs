//! Nondeterministic Büchi automata over word alphabets.


use crate::alphabet::{Alphabet, Letter};
use crate::det::{StateId, StateSet};
use crate::error::{Error, Result};
use crate::lasso::LassoWord;
use crate::scc;

/// Büchi automaton; transitions may be partial (missing means reject).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nba {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateSet,
    /// `transitions[state][letter]` is the successor set.
    pub transitions: Vec<Vec<StateSet>>,
    pub accepting: StateSet,
}

impl Nba {
    pub fn new(
        alphabet: Alphabet,
        initial: StateSet,
        transitions: Vec<Vec<StateSet>>,
        accepting: StateSet,
    ) -> Result<Nba> {
        let a = Nba { alphabet, n_states: transitions.len(), initial, transitions, accepting };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial.is_empty() {
            return Err(Error::InvalidAutomaton("empty initial set".into()));
        }
        let check = |s: &StateSet| -> Result<()> {
            if let Some(&max) = s.iter().next_back() {
                if max >= self.n_states {
                    return Err(Error::StateOutOfRange { state: max, size: self.n_states });
                }
            }
            Ok(())
        };
        check(&self.initial)?;
        check(&self.accepting)?;
        for (q, row) in self.transitions.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return Err(Error::NotTotal { state: q, letter: row.len() });
            }
            for s in row {
                check(s)?;
            }
        }
        Ok(())
    }

    pub fn succ(&self, q: StateId, a: Letter) -> &StateSet {
        &self.transitions[q][a]
    }

    /// Successors of a macrostate.
    pub fn succ_set(&self, s: &StateSet, a: Letter) -> StateSet {
        s.iter().flat_map(|&q| self.succ(q, a).iter().copied()).collect()
    }

    pub fn is_total(&self) -> bool {
        self.transitions.iter().all(|row| row.iter().all(|s| !s.is_empty()))
    }

    /// Adds a non-accepting sink for every missing edge; language unchanged.
    /// Idempotent on total automata.
    pub fn completed(&self) -> Nba {
        if self.is_total() {
            return self.clone();
        }
        let sink = self.n_states;
        let mut transitions = self.transitions.clone();
        for row in &mut transitions {
            for s in row.iter_mut() {
                if s.is_empty() {
                    s.insert(sink);
                }
            }
        }
        transitions.push(vec![[sink].into_iter().collect(); self.alphabet.len()]);
        Nba {
            alphabet: self.alphabet.clone(),
            n_states: self.n_states + 1,
            initial: self.initial.clone(),
            transitions,
            accepting: self.accepting.clone(),
        }
    }

    /// Membership of `u v^ω`: accepting cycle search in the product of the
    /// automaton with the lasso graph.
    pub fn accepts_lasso(&self, w: &LassoWord) -> Result<bool> {
        w.check_alphabet(&self.alphabet)?;
        let len = w.len();
        let node = |pos: usize, q: StateId| pos * self.n_states + q;
        let n = len * self.n_states;
        let succ = |v: usize| -> Vec<usize> {
            let (pos, q) = (v / self.n_states, v % self.n_states);
            let next = w.advance(pos);
            self.succ(q, w.at(pos)).iter().map(|&t| node(next, t)).collect()
        };
        let starts: Vec<usize> = self.initial.iter().map(|&q| node(0, q)).collect();
        let reach = scc::reachable(n, &starts, &succ);
        for comp in scc::tarjan_scc(n, &succ) {
            if !comp.iter().any(|&v| reach[v]) {
                continue;
            }
            let nontrivial =
                comp.len() > 1 || succ(comp[0]).contains(&comp[0]);
            if !nontrivial {
                continue;
            }
            if comp.iter().any(|&v| self.accepting.contains(&(v % self.n_states))) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Does the automaton accept anything at all?
    pub fn is_nonempty(&self) -> bool {
        let succ = |q: usize| -> Vec<usize> {
            let mut out: Vec<usize> = Vec::new();
            for row in &self.transitions[q] {
                out.extend(row.iter().copied());
            }
            out.sort_unstable();
            out.dedup();
            out
        };
        let starts: Vec<usize> = self.initial.iter().copied().collect();
        let reach = scc::reachable(self.n_states, &starts, &succ);
        for comp in scc::tarjan_scc(self.n_states, &succ) {
            if !comp.iter().any(|&v| reach[v]) {
                continue;
            }
            let nontrivial = comp.len() > 1 || succ(comp[0]).contains(&comp[0]);
            if nontrivial && comp.iter().any(|&q| self.accepting.contains(&q)) {
                return true;
            }
        }
        false
    }

    /// A witness lasso if the language is nonempty.
    pub fn witness(&self) -> Option<LassoWord> {
        // breadth-first to an accepting state on a cycle, then close the cycle
        for cand in LassoWord::enumerate(self.alphabet.len().min(4), 0) {
            let _ = cand; // placeholder: enumeration not used
        }
        // simple search: explore (state) graph remembering letters
        let succ_l = |q: usize| -> Vec<(Letter, usize)> {
            let mut out = Vec::new();
            for (l, row) in self.transitions[q].iter().enumerate() {
                for &t in row {
                    out.push((l, t));
                }
            }
            out
        };
        // shortest path letters from initial to each state
        let mut from_init: Vec<Option<Vec<Letter>>> = vec![None; self.n_states];
        let mut queue: std::collections::VecDeque<usize> = Default::default();
        for &q in &self.initial {
            from_init[q] = Some(vec![]);
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            for (l, t) in succ_l(q) {
                if from_init[t].is_none() {
                    let mut p = from_init[q].clone().unwrap();
                    p.push(l);
                    from_init[t] = Some(p);
                    queue.push_back(t);
                }
            }
        }
        for &acc in &self.accepting {
            let Some(prefix) = from_init[acc].clone() else { continue };
            // cycle acc -> acc
            let mut back: Vec<Option<Vec<Letter>>> = vec![None; self.n_states];
            let mut queue: std::collections::VecDeque<usize> = Default::default();
            for (l, t) in succ_l(acc) {
                if back[t].is_none() {
                    back[t] = Some(vec![l]);
                    queue.push_back(t);
                }
            }
            if let Some(c) = back[acc].clone() {
                return Some(LassoWord::new(prefix, c));
            }
            while let Some(q) = queue.pop_front() {
                for (l, t) in succ_l(q) {
                    if back[t].is_none() {
                        let mut p = back[q].clone().unwrap();
                        p.push(l);
                        back[t] = Some(p);
                        queue.push_back(t);
                        if t == acc {
                            return Some(LassoWord::new(prefix, back[acc].clone().unwrap()));
                        }
                    }
                }
            }
        }
        None
    }

    /// Language union (disjoint sum).
    pub fn union(&self, other: &Nba) -> Result<Nba> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch("union of different alphabets".into()));
        }
        let off = self.n_states;
        let mut transitions = self.transitions.clone();
        for row in &other.transitions {
            transitions.push(
                row.iter()
                    .map(|s| s.iter().map(|&q| q + off).collect())
                    .collect(),
            );
        }
        let initial: StateSet = self
            .initial
            .iter()
            .copied()
            .chain(other.initial.iter().map(|&q| q + off))
            .collect();
        let accepting: StateSet = self
            .accepting
            .iter()
            .copied()
            .chain(other.accepting.iter().map(|&q| q + off))
            .collect();
        Nba::new(self.alphabet.clone(), initial, transitions, accepting)
    }

    /// Language intersection (two-phase flag product).
    pub fn intersection(&self, other: &Nba) -> Result<Nba> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch("intersection of different alphabets".into()));
        }
        let nb = other.n_states;
        let id = |q1: usize, q2: usize, f: usize| (q1 * nb + q2) * 2 + f;
        let n = self.n_states * nb * 2;
        let mut transitions = vec![vec![StateSet::new(); self.alphabet.len()]; n];
        for q1 in 0..self.n_states {
            for q2 in 0..nb {
                for f in 0..2 {
                    for l in self.alphabet.letters() {
                        let mut out = StateSet::new();
                        for &t1 in self.succ(q1, l) {
                            for &t2 in other.succ(q2, l) {
                                // flag 0: waiting for an accepting state of self
                                // flag 1: waiting for an accepting state of other
                                let nf = match f {
                                    0 if self.accepting.contains(&t1) => 1,
                                    1 if other.accepting.contains(&t2) => 0,
                                    _ => f,
                                };
                                out.insert(id(t1, t2, nf));
                            }
                        }
                        transitions[id(q1, q2, f)][l] = out;
                    }
                }
            }
        }
        let initial: StateSet = self
            .initial
            .iter()
            .flat_map(|&q1| other.initial.iter().map(move |&q2| id(q1, q2, 0)))
            .collect();
        // accept when flipping from 1 back to 0 happens infinitely often
        let accepting: StateSet = (0..self.n_states)
            .flat_map(|q1| {
                let acc2 = &other.accepting;
                acc2.iter().map(move |&q2| id(q1, q2, 1))
            })
            .collect();
        Nba::new(self.alphabet.clone(), initial, transitions, accepting)
    }

    /// Drops unreachable states and states from which no accepting cycle is
    /// reachable. Keeps at least one (possibly dead) initial state so the
    /// result is well formed even for the empty language.
    pub fn trimmed(&self) -> Nba {
        let succ = |q: usize| -> Vec<usize> {
            let mut out: Vec<usize> = Vec::new();
            for row in &self.transitions[q] {
                out.extend(row.iter().copied());
            }
            out.sort_unstable();
            out.dedup();
            out
        };
        let starts: Vec<usize> = self.initial.iter().copied().collect();
        let reach = scc::reachable(self.n_states, &starts, &succ);
        // states on accepting cycles
        let mut live_seed: Vec<usize> = Vec::new();
        for comp in scc::tarjan_scc(self.n_states, &succ) {
            let nontrivial = comp.len() > 1 || succ(comp[0]).contains(&comp[0]);
            if nontrivial && comp.iter().any(|&q| self.accepting.contains(&q)) {
                live_seed.extend(comp.iter().copied());
            }
        }
        // co-reachability: states reaching live_seed
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); self.n_states];
        for q in 0..self.n_states {
            for t in succ(q) {
                pred[t].push(q);
            }
        }
        let co = scc::reachable(self.n_states, &live_seed, &|q| pred[q].clone());
        let keep: Vec<usize> = (0..self.n_states)
            .filter(|&q| reach[q] && co[q])
            .collect();
        if keep.is_empty() {
            // empty language: single initial dead state
            return Nba {
                alphabet: self.alphabet.clone(),
                n_states: 1,
                initial: [0].into_iter().collect(),
                transitions: vec![vec![StateSet::new(); self.alphabet.len()]],
                accepting: StateSet::new(),
            };
        }
        let mut newid = vec![usize::MAX; self.n_states];
        for (i, &q) in keep.iter().enumerate() {
            newid[q] = i;
        }
        let transitions: Vec<Vec<StateSet>> = keep
            .iter()
            .map(|&q| {
                self.transitions[q]
                    .iter()
                    .map(|s| s.iter().filter(|&&t| newid[t] != usize::MAX).map(|&t| newid[t]).collect())
                    .collect()
            })
            .collect();
        let initial: StateSet = self
            .initial
            .iter()
            .filter(|&&q| newid[q] != usize::MAX)
            .map(|&q| newid[q])
            .collect();
        let initial = if initial.is_empty() {
            // initial cannot reach acceptance; keep state 0 as dead initial
            [0].into_iter().collect()
        } else {
            initial
        };
        let accepting: StateSet = self
            .accepting
            .iter()
            .filter(|&&q| newid[q] != usize::MAX)
            .map(|&q| newid[q])
            .collect();
        Nba {
            alphabet: self.alphabet.clone(),
            n_states: keep.len(),
            initial,
            transitions,
            accepting,
        }
    }

    /// Trims and quotients by forward bisimulation. Cheap state reduction
    /// pass for the pipeline; not a minimization.
    pub fn reduced(&self) -> Nba {
        let t = self.trimmed();
        // coarsest partition where equivalent states agree on acceptance and
        // per-letter successor blocks
        let n = t.n_states;
        let mut block = vec![0usize; n];
        for q in 0..n {
            block[q] = t.accepting.contains(&q) as usize;
        }
        loop {
            let mut sig: Vec<(usize, Vec<Vec<usize>>)> = Vec::with_capacity(n);
            for q in 0..n {
                let per_letter: Vec<Vec<usize>> = t
                    .transitions[q]
                    .iter()
                    .map(|s| {
                        let mut bs: Vec<usize> = s.iter().map(|&w| block[w]).collect();
                        bs.sort_unstable();
                        bs.dedup();
                        bs
                    })
                    .collect();
                sig.push((block[q], per_letter));
            }
            let mut next_of: std::collections::HashMap<&(usize, Vec<Vec<usize>>), usize> =
                std::collections::HashMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let k = next_of.len();
                let id = *next_of.entry(&sig[q]).or_insert(k);
                next[q] = id;
            }
            if next == block {
                break;
            }
            block = next;
        }
        let n_blocks = block.iter().copied().max().map_or(0, |m| m + 1);
        let rep: Vec<usize> = (0..n_blocks)
            .map(|b| (0..n).find(|&q| block[q] == b).unwrap())
            .collect();
        let transitions: Vec<Vec<StateSet>> = rep
            .iter()
            .map(|&q| {
                t.transitions[q]
                    .iter()
                    .map(|s| s.iter().map(|&w| block[w]).collect())
                    .collect()
            })
            .collect();
        Nba {
            alphabet: t.alphabet.clone(),
            n_states: n_blocks,
            initial: t.initial.iter().map(|&q| block[q]).collect(),
            transitions,
            accepting: t.accepting.iter().map(|&q| block[q]).collect(),
        }
    }

    /// Relabels letters via an index map `new letter -> old letter`; used for
    /// track reordering. `new_alphabet.len()` must equal the map length.
    pub fn remap_letters(&self, new_alphabet: Alphabet, old_of_new: &[Letter]) -> Nba {
        assert_eq!(new_alphabet.len(), old_of_new.len());
        let transitions = self
            .transitions
            .iter()
            .map(|row| old_of_new.iter().map(|&ol| row[ol].clone()).collect())
            .collect();
        Nba {
            alphabet: new_alphabet,
            n_states: self.n_states,
            initial: self.initial.clone(),
            transitions,
            accepting: self.accepting.clone(),
        }
    }

    /// Existential projection: drops one track, unioning the two letter
    /// variants pointwise.
    pub fn project_track(&self, track: usize) -> Result<Nba> {
        let tracks = self
            .alphabet
            .track_names()
            .ok_or_else(|| Error::AlphabetMismatch("projection needs a track alphabet".into()))?
            .to_vec();
        assert!(track < tracks.len());
        let mut rest = tracks.clone();
        rest.remove(track);
        let new_alphabet = Alphabet::tracks(rest)?;
        let embed = |nl: Letter, bit: bool| -> Letter {
            // rebuild the old letter from the new letter's bits plus `bit`
            let mut bits = Vec::with_capacity(tracks.len());
            let mut k = 0;
            for i in 0..tracks.len() {
                if i == track {
                    bits.push(bit);
                } else {
                    bits.push(new_alphabet.bit(nl, k));
                    k += 1;
                }
            }
            self.alphabet.letter_from_bits(&bits)
        };
        let transitions = self
            .transitions
            .iter()
            .map(|row| {
                new_alphabet
                    .letters()
                    .map(|nl| {
                        let mut s = row[embed(nl, false)].clone();
                        s.extend(row[embed(nl, true)].iter().copied());
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(Nba {
            alphabet: new_alphabet,
            n_states: self.n_states,
            initial: self.initial.clone(),
            transitions,
            accepting: self.accepting.clone(),
        })
    }

    /// Lifts the automaton to a larger track set (the new tracks are
    /// unconstrained). `super_tracks` must contain the current tracks.
    pub fn cylindrify(&self, super_tracks: &[String]) -> Result<Nba> {
        let tracks = self
            .alphabet
            .track_names()
            .ok_or_else(|| Error::AlphabetMismatch("cylindrify needs a track alphabet".into()))?;
        let positions: Vec<usize> = tracks
            .iter()
            .map(|t| {
                super_tracks
                    .iter()
                    .position(|s| s == t)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("missing track `{t}`")))
            })
            .collect::<Result<_>>()?;
        let new_alphabet = Alphabet::tracks(super_tracks.to_vec())?;
        let old_of_new: Vec<Letter> = new_alphabet
            .letters()
            .map(|nl| {
                let bits: Vec<bool> = positions.iter().map(|&p| new_alphabet.bit(nl, p)).collect();
                self.alphabet.letter_from_bits(&bits)
            })
            .collect();
        Ok(self.remap_letters(new_alphabet, &old_of_new))
    }
}
