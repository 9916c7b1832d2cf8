//! Alternating Muller automata over words.

use crate::alphabet::{Alphabet, Letter};
use crate::det::{MullerFamily, StateId};
use crate::error::{Error, Result};
use crate::expr::TransitionExpr;
use crate::game::{acceptance_arena_word, solve_muller};
use crate::lasso::LassoWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltMullerAutomaton {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    /// `delta[state][letter]`, always defined.
    pub delta: Vec<Vec<TransitionExpr<StateId>>>,
    pub muller: MullerFamily,
}

impl AltMullerAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Vec<TransitionExpr<StateId>>>,
        muller: MullerFamily,
    ) -> Result<AltMullerAutomaton> {
        let a = AltMullerAutomaton { alphabet, n_states: delta.len(), initial, delta, muller };
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
            for e in row {
                for atom in e.atoms() {
                    if atom >= self.n_states {
                        return Err(Error::StateOutOfRange { state: atom, size: self.n_states });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn expr(&self, q: StateId, a: Letter) -> &TransitionExpr<StateId> {
        &self.delta[q][a]
    }

    /// True if every transition is a single atom (a deterministic automaton
    /// written in alternating form).
    pub fn is_deterministic_shaped(&self) -> bool {
        self.delta
            .iter()
            .all(|row| row.iter().all(|e| matches!(e, TransitionExpr::Atom(_))))
    }

    /// True if no conjunction occurs (purely nondeterministic).
    pub fn is_nondeterministic_shaped(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|e| e.is_and_free()))
    }

    /// Acceptance of `u v^ω` via the acceptance game on the finite arena.
    pub fn accepts_lasso(&self, w: &LassoWord) -> Result<bool> {
        let game = acceptance_arena_word(self, w)?;
        let solved = solve_muller(&game.arena)?;
        Ok(solved.exists_wins_initial())
    }
}

/// Alternating automaton with a parity condition; internal vehicle for
/// Muller-to-parity reductions of alternating automata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltParityAutomaton {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub initial: StateId,
    pub delta: Vec<Vec<TransitionExpr<StateId>>>,
    pub priority: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::StateSet;

    /// "Infinitely many 1s" written with atom-only expressions.
    pub fn alt_inf_ones() -> AltMullerAutomaton {
        let alphabet = Alphabet::binary();
        let delta = vec![
            vec![TransitionExpr::Atom(0), TransitionExpr::Atom(1)],
            vec![TransitionExpr::Atom(0), TransitionExpr::Atom(1)],
        ];
        let muller = MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]);
        AltMullerAutomaton::new(alphabet, 0, delta, muller).unwrap()
    }

    #[test]
    fn deterministic_shape_detection() {
        let a = alt_inf_ones();
        assert!(a.is_deterministic_shaped());
        assert!(a.is_nondeterministic_shaped());
    }
}
