//! From a total deterministic Muller automaton over a product alphabet to
//! the alternating automaton recognizing the words whose section language is
//! comeager, plus the closed-language comeagerness decision.
//!
//! The construction doubles the state set with a player tag. In state
//! `(q, r)` on a parameter letter, player `r` picks the quantified letter
//! `b` and the next tag `r'`; the successor is `(delta(q, a, b), r')`. A
//! play whose tag eventually stays universal is accepting; a play switching
//! tags forever is accepting iff the projected state inf-set is accepting
//! in the input automaton.

use crate::alt::AltMullerAutomaton;
use crate::det::{DetMullerAutomaton, MullerFamily, StateId, StateSet};
use crate::error::{Error, Result};
use crate::expr::TransitionExpr;
use crate::game::{acceptance_arena_word, solve_muller, Player, SolvedMuller, WordAcceptanceArena};
use crate::lasso::LassoWord;
use crate::nba::Nba;

/// Tagged state ids: `(q, E)` is `2q`, `(q, A)` is `2q + 1`.
pub fn tag_id(q: StateId, r: Player) -> StateId {
    2 * q + if r == Player::Forall { 1 } else { 0 }
}

pub fn untag_id(id: StateId) -> (StateId, Player) {
    (id / 2, if id % 2 == 1 { Player::Forall } else { Player::Exists })
}

/// The Muller family of the tagged construction: a set accepts when its
/// tags are all universal, or both tags occur and the projected set is
/// accepting in the base family.
pub(crate) fn tagged_family(n_base: usize, base: &MullerFamily) -> MullerFamily {
    let n_b = 2 * n_base;
    let mut family = MullerFamily::empty();
    for mask in 1usize..(1 << n_b) {
        let set: StateSet = (0..n_b).filter(|i| mask >> i & 1 == 1).collect();
        let has_e = set.iter().any(|&i| i % 2 == 0);
        let has_a = set.iter().any(|&i| i % 2 == 1);
        let ok = if !has_e {
            true
        } else if has_a {
            let proj: StateSet = set.iter().map(|&i| i / 2).collect();
            base.contains(&proj)
        } else {
            false
        };
        if ok {
            family.insert(set);
        }
    }
    family
}

/// Builds the alternating Muller automaton over the parameter alphabet from
/// a total deterministic Muller automaton over the product alphabet. The
/// trailing `quantified` tracks (all of them when `n_param_tracks` is 0) are
/// resolved inside the transitions; the output has exactly twice the states
/// of the input.
pub fn build_b_word(
    a: &DetMullerAutomaton,
    n_param_tracks: usize,
) -> Result<AltMullerAutomaton> {
    a.validate()?;
    if a.n_states > 8 {
        return Err(Error::BudgetExceeded { budget: 8 });
    }
    let split = a.alphabet.factor(n_param_tracks)?;
    let n_b = 2 * a.n_states;
    let mut delta: Vec<Vec<TransitionExpr<StateId>>> = Vec::with_capacity(n_b);
    for id in 0..n_b {
        let (q, r) = untag_id(id);
        let mut row = Vec::with_capacity(split.param.len());
        for pa in split.param.letters() {
            let mut atoms = Vec::new();
            for qb in split.quantified.letters() {
                let target = a.step(q, split.combine(pa, qb));
                for r2 in [Player::Exists, Player::Forall] {
                    atoms.push(TransitionExpr::Atom(tag_id(target, r2)));
                }
            }
            let expr = if r == Player::Exists {
                TransitionExpr::or(atoms)
            } else {
                TransitionExpr::and(atoms)
            };
            row.push(expr);
        }
        delta.push(row);
    }
    let family = tagged_family(a.n_states, &a.muller);
    AltMullerAutomaton::new(split.param, tag_id(a.initial, Player::Forall), delta, family)
}

/// Solved closed-language game: the acceptance game of the tagged automaton
/// over the one-letter alphabet on its unique word.
#[derive(Debug, Clone)]
pub struct ComeagerGame {
    pub b: AltMullerAutomaton,
    pub game: WordAcceptanceArena,
    pub solved: SolvedMuller,
}

/// Decides whether the language of a total deterministic Muller automaton is
/// topologically large, returning the solved game for strategy extraction.
pub fn decide_comeager(a: &DetMullerAutomaton) -> Result<(bool, ComeagerGame)> {
    let b = build_b_word(a, 0)?;
    let w = LassoWord::new(vec![], vec![0]);
    let game = acceptance_arena_word(&b, &w)?;
    let solved = solve_muller(&game.arena)?;
    let verdict = solved.exists_wins_initial();
    Ok((verdict, ComeagerGame { b, game, solved }))
}

/// Category-quantifier elimination at the automaton level: the language of
/// the result is the set of parameter words whose section language is
/// comeager.
pub fn eliminate_category(
    a: &DetMullerAutomaton,
    n_param_tracks: usize,
    budget: usize,
) -> Result<Nba> {
    let b = build_b_word(a, n_param_tracks)?;
    crate::dealt::dealternate(&b, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::measure;

    fn unary_det(delta: Vec<Vec<usize>>, fam: MullerFamily) -> DetMullerAutomaton {
        DetMullerAutomaton::new(Alphabet::binary(), 0, delta, fam).unwrap()
    }

    #[test]
    fn b_size_and_shape() {
        let a = unary_det(
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([[1].into_iter().collect::<StateSet>()]),
        );
        let b = build_b_word(&a, 0).unwrap();
        assert_eq!(b.n_states, 2 * a.n_states);
        assert_eq!(b.initial, tag_id(a.initial, Player::Forall));
        // one-state input over a two-letter quantified alphabet gives a
        // four-atom disjunction from an existential tag
        let one = unary_det(
            vec![vec![0, 0]],
            MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
        );
        let b1 = build_b_word(&one, 0).unwrap();
        match b1.expr(tag_id(0, Player::Exists), 0) {
            TransitionExpr::Or(cs) => assert_eq!(cs.len(), 4),
            e => panic!("expected disjunction, got {e:?}"),
        }
        match b1.expr(tag_id(0, Player::Forall), 0) {
            TransitionExpr::And(cs) => assert_eq!(cs.len(), 4),
            e => panic!("expected conjunction, got {e:?}"),
        }
    }

    #[test]
    fn b_family_cases() {
        let a = unary_det(
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([[0, 1].into_iter().collect::<StateSet>()]),
        );
        let b = build_b_word(&a, 0).unwrap();
        // all-universal set accepted
        assert!(b.muller.contains(&[tag_id(0, Player::Forall)].into_iter().collect()));
        // all-existential set rejected
        assert!(!b.muller.contains(&[tag_id(0, Player::Exists)].into_iter().collect()));
        // mixed tags accepted iff projection accepted
        assert!(b.muller.contains(
            &[tag_id(0, Player::Exists), tag_id(1, Player::Forall)].into_iter().collect()
        ));
        assert!(!b.muller.contains(
            &[tag_id(0, Player::Exists), tag_id(0, Player::Forall)].into_iter().collect()
        ));
    }

    #[test]
    fn comeager_pins() {
        // full language
        let full = unary_det(
            vec![vec![0, 0]],
            MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
        );
        assert!(decide_comeager(&full).unwrap().0);
        // only 0^ω: second letter kills
        let only_zero = unary_det(
            vec![vec![0, 1], vec![1, 1]],
            MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
        );
        assert!(!decide_comeager(&only_zero).unwrap().0);
        // infinitely many 1s
        let inf_ones = unary_det(
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([
                [1].into_iter().collect::<StateSet>(),
                [0, 1].into_iter().collect(),
            ]),
        );
        assert!(decide_comeager(&inf_ones).unwrap().0);
        assert!(measure::decide_measure_one(&inf_ones).unwrap());
    }

    #[test]
    fn staiger_agreement_small_battery() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4usize);
            let delta: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            let mut fam = MullerFamily::empty();
            for mask in 1usize..(1 << n) {
                if rng.gen_bool(0.5) {
                    fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            let a = unary_det(delta, fam);
            let rep = measure::staiger_crosscheck(&a).unwrap();
            assert!(rep.agree(), "mismatch on {a:?}: {rep:?}");
        }
    }

    #[test]
    fn tag_switch_cycles_contain_both_tags() {
        // structural sanity on the acceptance arena of a sample automaton
        let a = unary_det(
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([[1].into_iter().collect::<StateSet>()]),
        );
        let b = build_b_word(&a, 0).unwrap();
        let w = LassoWord::new(vec![], vec![0]);
        let game = acceptance_arena_word(&b, &w).unwrap();
        let arena = &game.arena;
        // every edge that changes the tag of the underlying state leads to a
        // region from which both tags recur or the play stops switching; as a
        // cheap structural check, verify that any cycle of the arena that
        // contains a tag switch also contains states with both tags
        let n = arena.n_positions;
        let state_tag = |v: usize| -> Option<usize> {
            match &game.positions[v] {
                crate::game::WordPos::State(_, q) => Some(q % 2),
                _ => None,
            }
        };
        let succ = |v: usize| arena.edges[v].clone();
        for comp in crate::scc::tarjan_scc(n, &succ) {
            if comp.len() < 2 {
                continue;
            }
            let tags: std::collections::BTreeSet<usize> =
                comp.iter().filter_map(|&v| state_tag(v)).collect();
            let states: Vec<usize> = comp.iter().filter_map(|&v| state_tag(v)).collect();
            if tags.len() == 1 && states.len() > 1 {
                // single-tag strongly connected component: no switch inside
                continue;
            }
            if tags.len() == 2 {
                assert!(comp.iter().filter_map(|&v| state_tag(v)).any(|t| t == 0));
                assert!(comp.iter().filter_map(|&v| state_tag(v)).any(|t| t == 1));
            }
        }
    }
}
