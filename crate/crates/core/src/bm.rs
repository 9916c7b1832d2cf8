//! The alternating prefix-extension game on a word language, played against
//! the machine.
//!
//! The machine's moves come from the solved acceptance game of the tagged
//! construction over the one-letter alphabet: a session walks that game,
//! translating each letter-and-tag choice into extending the word or
//! handing the turn over. The universal player moves first. After the
//! scripted rounds the machine finishes the play against itself and reports
//! the state inf-set of the cycle it commits to.

use std::collections::BTreeSet;

use crate::alphabet::Letter;
use crate::category::{decide_comeager, untag_id, ComeagerGame};
use crate::det::{DetMullerAutomaton, StateId};
use crate::error::{Error, Result};
use crate::game::{Player, WordPos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmOutcome {
    /// Moves actually played, in order.
    pub rounds: Vec<(Player, Vec<Letter>)>,
    /// States of the language automaton visited infinitely often on the
    /// committed cycle.
    pub inf_states: BTreeSet<StateId>,
    /// Winner of the committed play.
    pub winner: Player,
    /// Whether the language is comeager (the machine wins the existential
    /// seat exactly on comeager languages).
    pub comeager: bool,
}

pub struct BmSession {
    aut: DetMullerAutomaton,
    game: ComeagerGame,
    comeager: bool,
    machine: Player,
    pos: usize,
    mem_e: usize,
    mem_a: usize,
    rounds: Vec<(Player, Vec<Letter>)>,
    next_seat: Player,
}

impl BmSession {
    pub fn new(aut: &DetMullerAutomaton, human: Player) -> Result<BmSession> {
        let (comeager, game) = decide_comeager(aut)?;
        let start = game.game.arena.initial;
        let mut s = BmSession {
            aut: aut.clone(),
            comeager,
            machine: human.opponent(),
            pos: start,
            mem_e: game.solved.exists_strategy.initial_memory,
            mem_a: game.solved.forall_strategy.initial_memory,
            game,
            rounds: Vec::new(),
            next_seat: Player::Forall,
        };
        s.absorb(start);
        Ok(s)
    }

    pub fn next_seat(&self) -> Player {
        self.next_seat
    }

    pub fn machine_seat(&self) -> Player {
        self.machine
    }

    fn absorb(&mut self, pos: usize) {
        self.mem_e = self.game.solved.exists_strategy.absorb(self.mem_e, pos);
        self.mem_a = self.game.solved.forall_strategy.absorb(self.mem_a, pos);
    }

    fn goto(&mut self, pos: usize) {
        self.pos = pos;
        self.absorb(pos);
    }

    /// Current `(state, tag)` of the tagged automaton.
    fn here(&self) -> (StateId, Player) {
        match &self.game.game.positions[self.pos] {
            WordPos::State(_, id) => untag_id(*id),
            _ => unreachable!("session parks on state positions"),
        }
    }

    /// Plays one letter for the seat currently in charge; `hand_over` ends
    /// the current extension.
    fn step_letter(&mut self, letter: Letter, hand_over: bool) -> Result<()> {
        if letter >= self.aut.alphabet.len() {
            return Err(Error::LetterOutOfRange { letter, size: self.aut.alphabet.len() });
        }
        let (_, r) = self.here();
        let r2 = if hand_over { r.opponent() } else { r };
        let k = 2 * letter + if r2 == Player::Forall { 1 } else { 0 };
        // state -> expression -> chosen atom -> next state
        let expr = self.game.game.arena.edges[self.pos][0];
        self.goto(expr);
        let atom = self.game.game.arena.edges[self.pos][k];
        self.goto(atom);
        let next = self.game.game.arena.edges[self.pos][0];
        self.goto(next);
        Ok(())
    }

    /// The human extends the word by a nonempty letter sequence.
    pub fn human_move(&mut self, letters: &[Letter]) -> Result<()> {
        if self.next_seat == self.machine {
            return Err(Error::Other("it is the machine's turn".into()));
        }
        if letters.is_empty() {
            return Err(Error::Other("a move must strictly extend the word".into()));
        }
        for (i, &l) in letters.iter().enumerate() {
            self.step_letter(l, i + 1 == letters.len())?;
        }
        self.rounds.push((self.machine.opponent(), letters.to_vec()));
        self.next_seat = self.machine;
        Ok(())
    }

    /// The machine extends the word following its strategy; losing seats
    /// fall back to a one-letter extension.
    pub fn machine_move(&mut self) -> Result<Vec<Letter>> {
        if self.next_seat != self.machine {
            return Err(Error::Other("it is the human's turn".into()));
        }
        let strat = match self.machine {
            Player::Exists => self.game.solved.exists_strategy.clone(),
            Player::Forall => self.game.solved.forall_strategy.clone(),
        };
        let mut letters = Vec::new();
        for _ in 0..10_000 {
            // consult the strategy at the expression position
            let expr = self.game.game.arena.edges[self.pos][0];
            self.goto(expr);
            let mem = match self.machine {
                Player::Exists => self.mem_e,
                Player::Forall => self.mem_a,
            };
            let k = match strat.choose(mem, self.pos) {
                Some(target) => match &self.game.game.positions[target] {
                    WordPos::Expr(_, _, path) => *path.last().unwrap(),
                    _ => unreachable!(),
                },
                // losing position: extend once and hand over
                None => 1 - if self.machine == Player::Forall { 1 } else { 0 },
            };
            let letter = k / 2;
            let tag = if k % 2 == 1 { Player::Forall } else { Player::Exists };
            letters.push(letter);
            let atom = self.game.game.arena.edges[self.pos][k];
            self.goto(atom);
            let next = self.game.game.arena.edges[self.pos][0];
            self.goto(next);
            if tag != self.machine {
                self.rounds.push((self.machine, letters.clone()));
                self.next_seat = self.machine.opponent();
                return Ok(letters);
            }
        }
        Err(Error::Other("machine strategy failed to hand over".into()))
    }

    /// Ends the session: the machine finishes the play with both seats'
    /// strategies and reports the committed cycle.
    pub fn finish(mut self) -> BmOutcome {
        let mut seen: Vec<(usize, usize, usize)> = Vec::new();
        let mut states: Vec<StateId> = Vec::new();
        let cycle_from = loop {
            let key = (self.pos, self.mem_e, self.mem_a);
            if let Some(i) = seen.iter().position(|&k| k == key) {
                break i;
            }
            seen.push(key);
            if let WordPos::State(_, id) = &self.game.game.positions[self.pos] {
                states.push(*id);
            }
            // advance one game position with the owner's strategy
            let owner = self.game.game.arena.owner[self.pos];
            let (strat, mem) = match owner {
                Player::Exists => (&self.game.solved.exists_strategy, self.mem_e),
                Player::Forall => (&self.game.solved.forall_strategy, self.mem_a),
            };
            let next = strat
                .choose(mem, self.pos)
                .unwrap_or(self.game.game.arena.edges[self.pos][0]);
            let next = if self.game.game.arena.edges[self.pos].contains(&next) {
                next
            } else {
                self.game.game.arena.edges[self.pos][0]
            };
            self.goto(next);
        };
        // tagged states on the committed cycle
        let mut b_inf: BTreeSet<StateId> = BTreeSet::new();
        for (i, &(pos, _, _)) in seen.iter().enumerate() {
            if i >= cycle_from {
                if let WordPos::State(_, id) = &self.game.game.positions[pos] {
                    b_inf.insert(*id);
                }
            }
        }
        let winner = if self.game.b.muller.contains(&b_inf) {
            Player::Exists
        } else {
            Player::Forall
        };
        let inf_states = b_inf.iter().map(|&id| untag_id(id).0).collect();
        let _ = states;
        BmOutcome {
            rounds: self.rounds,
            inf_states,
            winner,
            comeager: self.comeager,
        }
    }
}

/// Replays a script. Lines for the human seat are played in order; lines
/// recorded for the machine seat must match what the machine actually
/// plays. The session ends when the script runs out (possibly mid-game) or
/// after `max_rounds` moves.
pub fn run_script(
    aut: &DetMullerAutomaton,
    human: Player,
    script: &[(Player, Vec<Letter>)],
    max_rounds: usize,
) -> Result<BmOutcome> {
    let mut session = BmSession::new(aut, human)?;
    let mut cursor = 0usize;
    for _ in 0..max_rounds {
        if session.next_seat() == human {
            let Some((seat, letters)) = script.get(cursor) else { break };
            cursor += 1;
            if *seat != human {
                return Err(Error::Other(format!(
                    "script line {cursor} belongs to {seat}, expected the human seat {human}"
                )));
            }
            session.human_move(letters)?;
        } else {
            let played = session.machine_move()?;
            if let Some((seat, letters)) = script.get(cursor) {
                if *seat == session.machine_seat() {
                    cursor += 1;
                    if *letters != played {
                        return Err(Error::Other(format!(
                            "replay mismatch at line {cursor}: machine played {played:?}, \
                             script says {letters:?}"
                        )));
                    }
                }
            }
        }
    }
    Ok(session.finish())
}
