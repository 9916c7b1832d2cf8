//! Büchi determinization via compact Safra trees with stable node names,
//! emitting parity priorities, plus the complementation built on it.
//!
//! Tree nodes carry macrostates; names are kept compact (1..k in seniority
//! order, the root oldest). Each transition moves the labels, spawns a
//! youngest child per node that meets the accepting set, steals states from
//! younger siblings, deletes empty nodes (a bad event for the oldest such
//! name) and collapses nodes whose children cover them (a good event). The
//! parity priority of the transition is decided by the oldest name with an
//! event; priorities are emitted max-even.

use std::collections::HashMap;

use crate::det::{Dpa, StateSet};
use crate::error::{Error, Result};
use crate::nba::Nba;

type Mask = u32;

/// One node of a Safra tree; vectors are indexed by node slot, children are
/// listed oldest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
struct Tree {
    /// Node labels in seniority order (slot 0 = oldest = root).
    labels: Vec<Mask>,
    /// Parent slot per node; root has none.
    parents: Vec<Option<usize>>,
}

fn mask_of(set: &StateSet) -> Mask {
    set.iter().fold(0, |m, &q| m | (1 << q))
}

struct Safra<'a> {
    nba: &'a Nba,
    acc_mask: Mask,
    /// Conversion constant: max-even priority = `c` minus the min-parity
    /// event value.
    c: u32,
}

impl Safra<'_> {
    fn new(nba: &Nba) -> Safra<'_> {
        let c = 4 * nba.n_states as u32 + 4;
        Safra { nba, acc_mask: mask_of(&nba.accepting), c }
    }

    fn delta_mask(&self, m: Mask, a: usize) -> Mask {
        let mut out = 0;
        for q in 0..self.nba.n_states {
            if m >> q & 1 == 1 {
                out |= mask_of(self.nba.succ(q, a));
            }
        }
        out
    }

    fn initial(&self) -> Tree {
        Tree { labels: vec![mask_of(&self.nba.initial)], parents: vec![None] }
    }

    /// One determinization step; returns the successor tree (empty if the
    /// macro-run dies) and the emitted max-even priority.
    fn step(&self, t: &Tree, a: usize) -> (Tree, u32) {
        let n_old = t.labels.len();
        // move
        let mut labels: Vec<Mask> = t.labels.iter().map(|&m| self.delta_mask(m, a)).collect();
        let mut parents = t.parents.clone();
        // spawn youngest children for old nodes meeting the accepting set
        for v in 0..n_old {
            let hit = labels[v] & self.acc_mask;
            if hit != 0 {
                labels.push(hit);
                parents.push(Some(v));
            }
        }
        let n_all = labels.len();
        // horizontal steal: older siblings keep contested states. Children
        // in seniority order; subtraction applies to whole subtrees.
        let tmp = Tree { labels: labels.clone(), parents: parents.clone() };
        let order: Vec<usize> = (0..n_all).collect();
        for &v in &order {
            let mut seen: Mask = 0;
            for w in tmp_children(&parents, n_all, v) {
                let sub = tmp.subtree_with(&parents, w);
                for s in sub {
                    labels[s] &= !seen;
                }
                seen |= labels[w];
            }
        }
        // deaths
        let mut dead = vec![false; n_all];
        for v in 0..n_all {
            if labels[v] == 0 {
                dead[v] = true;
            }
        }
        let death_rank = (0..n_all).find(|&v| dead[v]);
        // vertical merge, top-down: a live node covered by its children
        // flashes and drops its descendants
        let mut green_rank: Option<usize> = None;
        let mut drop = vec![false; n_all];
        let mut stack = vec![0usize];
        if dead[0] {
            stack.clear();
        }
        while let Some(v) = stack.pop() {
            if dead[v] || drop[v] {
                continue;
            }
            let kids: Vec<usize> = tmp_children(&parents, n_all, v)
                .into_iter()
                .filter(|&w| !dead[w])
                .collect();
            if kids.is_empty() {
                continue;
            }
            let union = kids.iter().fold(0 as Mask, |m, &w| m | labels[w]);
            if union == labels[v] {
                green_rank = Some(green_rank.map_or(v, |g| g.min(v)));
                // drop all strict descendants
                let mut below: Vec<usize> = kids.clone();
                while let Some(w) = below.pop() {
                    drop[w] = true;
                    below.extend(tmp_children(&parents, n_all, w));
                }
            } else {
                stack.extend(kids);
            }
        }
        // event priority in min-parity terms, then converted
        let ev_min = match (death_rank, green_rank) {
            (None, None) => self.c - 1, // weakest odd after conversion
            (d, g) => {
                let dv = d.map(|r| 2 * (r as u32 + 1) - 1).unwrap_or(u32::MAX);
                let gv = g.map(|r| 2 * (r as u32 + 1)).unwrap_or(u32::MAX);
                dv.min(gv)
            }
        };
        let priority = self.c - ev_min;
        // keep live, undropped nodes in seniority order
        let keep: Vec<usize> = (0..n_all).filter(|&v| !dead[v] && !drop[v]).collect();
        let mut newid = vec![usize::MAX; n_all];
        for (i, &v) in keep.iter().enumerate() {
            newid[v] = i;
        }
        let tree = Tree {
            labels: keep.iter().map(|&v| labels[v]).collect(),
            parents: keep
                .iter()
                .map(|&v| {
                    let mut p = parents[v];
                    // ancestors survive whenever the node does
                    while let Some(pp) = p {
                        if newid[pp] != usize::MAX {
                            return Some(newid[pp]);
                        }
                        p = parents[pp];
                    }
                    None
                })
                .collect(),
        };
        (tree, priority)
    }
}

fn tmp_children(parents: &[Option<usize>], n: usize, v: usize) -> Vec<usize> {
    (0..n).filter(|&w| parents[w] == Some(v)).collect()
}

impl Tree {
    fn subtree_with(&self, parents: &[Option<usize>], v: usize) -> Vec<usize> {
        let n = parents.len();
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend(tmp_children(parents, n, out[i]));
            i += 1;
        }
        out
    }
}

/// Determinizes a Büchi automaton into a parity automaton with the same
/// language. `budget` caps the number of constructed states.
pub fn determinize(nba: &Nba, budget: usize) -> Result<Dpa> {
    nba.validate()?;
    let reduced = nba.reduced();
    let nba = &reduced;
    if nba.n_states > 16 {
        return Err(Error::BudgetExceeded { budget: 16 });
    }
    let safra = Safra::new(nba);
    // DPA states are (tree, priority of the incoming transition)
    let weakest = 1u32; // c - (c - 1)
    let mut ids: HashMap<(Tree, u32), usize> = HashMap::new();
    let mut back: Vec<(Tree, u32)> = Vec::new();
    let start = (safra.initial(), weakest);
    ids.insert(start.clone(), 0);
    back.push(start);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < back.len() {
        let (tree, _) = back[i].clone();
        let mut row = Vec::with_capacity(nba.alphabet.len());
        for a in nba.alphabet.letters() {
            let key = if tree.labels.is_empty() {
                // dead macro-run: stay dead with the weakest odd priority
                (tree.clone(), weakest)
            } else {
                let (t2, p) = safra.step(&tree, a);
                if t2.labels.is_empty() {
                    (t2, weakest)
                } else {
                    (t2, p)
                }
            };
            let id = *ids.entry(key.clone()).or_insert_with(|| {
                back.push(key);
                back.len() - 1
            });
            row.push(id);
            if back.len() > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
        delta.push(row);
        i += 1;
    }
    let priority: Vec<u32> = back.iter().map(|(_, p)| *p).collect();
    let dpa = Dpa::new(nba.alphabet.clone(), 0, delta, priority)?;
    Ok(crate::det::dpa_reduce(&dpa))
}

/// Embeds a parity automaton back into a Büchi automaton: guess a point and
/// an even bound from which the maximum priority seen equals that bound.
pub fn dpa_to_nba(d: &Dpa) -> Result<Nba> {
    d.validate()?;
    let evens: Vec<u32> = {
        let mut e: Vec<u32> = d.priority.iter().copied().filter(|p| p % 2 == 0).collect();
        e.sort_unstable();
        e.dedup();
        e
    };
    let n = d.n_states;
    let mode_id = |q: usize, pi: usize| n + pi * n + q;
    let n_states = n + evens.len() * n;
    let mut transitions = vec![vec![StateSet::new(); d.alphabet.len()]; n_states];
    for q in 0..n {
        for a in d.alphabet.letters() {
            let t = d.step(q, a);
            transitions[q][a].insert(t);
            for (pi, &p) in evens.iter().enumerate() {
                if d.priority[t] <= p {
                    transitions[q][a].insert(mode_id(t, pi));
                }
            }
        }
    }
    for (pi, &p) in evens.iter().enumerate() {
        for q in 0..n {
            if d.priority[q] > p {
                continue;
            }
            for a in d.alphabet.letters() {
                let t = d.step(q, a);
                if d.priority[t] <= p {
                    transitions[mode_id(q, pi)][a].insert(mode_id(t, pi));
                }
            }
        }
    }
    let accepting: StateSet = evens
        .iter()
        .enumerate()
        .flat_map(|(pi, &p)| {
            (0..n).filter(move |&q| d.priority[q] == p).map(move |q| mode_id(q, pi))
        })
        .collect();
    let nba = Nba::new(
        d.alphabet.clone(),
        [d.initial].into_iter().collect(),
        transitions,
        accepting,
    )?;
    Ok(nba.trimmed())
}

/// Büchi complementation: determinize, shift priorities, embed back.
pub fn complement_nba(nba: &Nba, budget: usize) -> Result<Nba> {
    let d = determinize(nba, budget)?;
    let comp = Dpa::new(
        d.alphabet.clone(),
        d.initial,
        d.delta.clone(),
        d.priority.iter().map(|&p| p + 1).collect(),
    )?;
    Ok(dpa_to_nba(&comp)?.reduced())
}
