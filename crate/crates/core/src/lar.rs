//! Latest-appearance-record reduction of Muller conditions to parity.
//!
//! Records are full permutations of the state set with a hit position, so
//! this is only for small automata; the game solver uses the leaner
//! Zielonka-tree monitor instead.

use std::collections::HashMap;

use crate::alt::{AltMullerAutomaton, AltParityAutomaton};
use crate::det::{DetMullerAutomaton, Dpa, MullerFamily, StateId, StateSet};
use crate::error::{Error, Result};
use crate::expr::TransitionExpr;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Record {
    /// Most recently visited state first.
    perm: Vec<StateId>,
    /// Previous position of the state just moved to the front.
    hit: usize,
}

impl Record {
    fn initial(n: usize, q0: StateId) -> Record {
        let mut perm: Vec<StateId> = (0..n).collect();
        perm.retain(|&q| q != q0);
        perm.insert(0, q0);
        Record { perm, hit: 0 }
    }

    fn advance(&self, q: StateId) -> Record {
        let pos = self.perm.iter().position(|&x| x == q).unwrap();
        let mut perm = self.perm.clone();
        perm.remove(pos);
        perm.insert(0, q);
        Record { perm, hit: pos }
    }

    /// Max-parity priority: even iff the hit prefix is in the family.
    fn priority(&self, family: &MullerFamily) -> u32 {
        let prefix: StateSet = self.perm[..=self.hit].iter().copied().collect();
        let base = 2 * (self.hit as u32 + 1);
        if family.contains(&prefix) {
            base
        } else {
            base + 1
        }
    }
}

const MAX_LAR_STATES: usize = 7;

/// Deterministic Muller to deterministic parity, preserving the language.
pub fn lar_det(a: &DetMullerAutomaton) -> Result<Dpa> {
    if a.n_states > MAX_LAR_STATES {
        return Err(Error::BudgetExceeded { budget: MAX_LAR_STATES });
    }
    let mut ids: HashMap<Record, usize> = HashMap::new();
    let mut recs: Vec<Record> = Vec::new();
    let r0 = Record::initial(a.n_states, a.initial);
    ids.insert(r0.clone(), 0);
    recs.push(r0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < recs.len() {
        let rec = recs[i].clone();
        let q = rec.perm[0];
        let mut row = Vec::with_capacity(a.alphabet.len());
        for l in a.alphabet.letters() {
            let next = rec.advance(a.step(q, l));
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                recs.push(next);
                recs.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let priority: Vec<u32> = recs.iter().map(|r| r.priority(&a.muller)).collect();
    Dpa::new(a.alphabet.clone(), 0, delta, priority)
}

/// Alternating Muller to alternating parity: the record rides along every
/// play, updated by the atom it resolves to.
pub fn lar_alt(a: &AltMullerAutomaton) -> Result<AltParityAutomaton> {
    if a.n_states > MAX_LAR_STATES {
        return Err(Error::BudgetExceeded { budget: MAX_LAR_STATES });
    }
    let mut ids: HashMap<Record, usize> = HashMap::new();
    let mut recs: Vec<Record> = Vec::new();
    let r0 = Record::initial(a.n_states, a.initial);
    ids.insert(r0.clone(), 0);
    recs.push(r0);
    let mut delta: Vec<Vec<TransitionExpr<usize>>> = Vec::new();
    let mut i = 0;
    while i < recs.len() {
        let rec = recs[i].clone();
        let q = rec.perm[0];
        let mut row = Vec::with_capacity(a.alphabet.len());
        for l in a.alphabet.letters() {
            // allocate record ids for every atom target first, then relabel
            let src = a.expr(q, l);
            let mut target_id: HashMap<StateId, usize> = HashMap::new();
            for q2 in src.atoms() {
                let next = rec.advance(q2);
                let id = *ids.entry(next.clone()).or_insert_with(|| {
                    recs.push(next);
                    recs.len() - 1
                });
                target_id.insert(q2, id);
            }
            row.push(src.map_atoms(&|q2: &StateId| target_id[q2]));
        }
        delta.push(row);
        i += 1;
    }
    let priority: Vec<u32> = recs.iter().map(|r| r.priority(&a.muller)).collect();
    Ok(AltParityAutomaton {
        alphabet: a.alphabet.clone(),
        n_states: recs.len(),
        initial: 0,
        delta,
        priority,
    })
}
