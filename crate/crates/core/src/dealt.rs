//! Alternation removal for Muller word automata.
//!
//! The construction summarizes finite words by game profiles. Reading `w`
//! from state `q`, an existential strategy confines the universal player to
//! an *outcome set*: a set of pairs `(end state, states visited along that
//! branch)`. The profile of `w` maps each state to the antichain of
//! subset-minimal achievable outcome sets. Profiles compose, so they form a
//! finite semigroup; membership of `u v^ω` depends only on
//! `(profile(u), profile(v))` and is decided by a small Muller game played
//! on the profile structure. A Büchi automaton then guesses a linked pair
//! `(s, e)` with an accepting pair game and checks the factorization, block
//! by block. Budgets make blowups an explicit error instead of a hang.
//!
//! Visited-state masks are quotiented by the coarsest congruence of the
//! acceptance family under union, which keeps profile counts small without
//! changing any pair-game verdict.

use std::collections::HashMap;

use crate::alt::AltMullerAutomaton;
use crate::det::{MullerFamily, StateSet};
use crate::error::{Error, Result};
use crate::game::{solve_muller, Arena, Condition, Player};
use crate::nba::Nba;

type Mask = u32;
/// `(end state, visited mask)`.
type Entry = (usize, Mask);
/// Sorted, deduplicated.
type OutcomeSet = Vec<Entry>;
/// Antichain of outcome sets under inclusion, sorted for canonicity.
type Chain = Vec<OutcomeSet>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Profile(Vec<Chain>);

fn is_subset(a: &OutcomeSet, b: &OutcomeSet) -> bool {
    a.iter().all(|e| b.binary_search(e).is_ok())
}

/// Keeps the inclusion-minimal outcome sets.
fn prune(mut sets: Vec<OutcomeSet>) -> Chain {
    sets.sort();
    sets.dedup();
    let keep: Vec<OutcomeSet> = sets
        .iter()
        .filter(|s| !sets.iter().any(|o| *o != **s && is_subset(o, s)))
        .cloned()
        .collect();
    keep
}

/// Coarsest union-congruence of the family on visited masks: two masks are
/// identified when they complete to family members in exactly the same
/// ways. Collapsing to a representative is sound for every pair game.
struct MaskQuotient {
    rep: Vec<Mask>,
}

impl MaskQuotient {
    fn new(n_states: usize, family: &MullerFamily) -> MaskQuotient {
        let total = 1usize << n_states;
        let in_family = |m: Mask| -> bool {
            let set: StateSet = (0..n_states).filter(|i| m >> i & 1 == 1).collect();
            !set.is_empty() && family.contains(&set)
        };
        // signature of m: membership of m | t for every t
        let mut sig_to_rep: HashMap<Vec<bool>, Mask> = HashMap::new();
        let mut rep = vec![0 as Mask; total];
        for m in 0..total {
            let sig: Vec<bool> = (0..total).map(|t| in_family(m as Mask | t as Mask)).collect();
            let r = *sig_to_rep.entry(sig).or_insert(m as Mask);
            rep[m] = r;
        }
        MaskQuotient { rep }
    }

    fn of(&self, m: Mask) -> Mask {
        self.rep[m as usize]
    }
}

struct Ctx<'a> {
    b: &'a AltMullerAutomaton,
    quot: MaskQuotient,
    entry_budget: usize,
}

impl Ctx<'_> {
    #[cfg(test)]
    fn unit(&self) -> Profile {
        Profile(
            (0..self.b.n_states)
                .map(|q| vec![vec![(q, self.quot.of(0))]])
                .collect(),
        )
    }

    fn letter(&self, a: usize) -> Profile {
        let chains = (0..self.b.n_states)
            .map(|q| {
                let sets = self
                    .b
                    .expr(q, a)
                    .minimal_models()
                    .into_iter()
                    .map(|model| {
                        let mut o: OutcomeSet = model
                            .into_iter()
                            .map(|t| (t, self.quot.of(1 << t)))
                            .collect();
                        o.sort();
                        o.dedup();
                        o
                    })
                    .collect();
                prune(sets)
            })
            .collect();
        Profile(chains)
    }

    fn compose(&self, p1: &Profile, p2: &Profile) -> Result<Profile> {
        let mut chains = Vec::with_capacity(self.b.n_states);
        for q in 0..self.b.n_states {
            let mut results: Vec<OutcomeSet> = Vec::new();
            for o1 in &p1.0[q] {
                // fold the entries of o1, choosing a continuation per entry
                let mut partials: Vec<OutcomeSet> = vec![Vec::new()];
                for &(q1, s1) in o1 {
                    let mut next: Vec<OutcomeSet> = Vec::new();
                    for part in &partials {
                        for o2 in &p2.0[q1] {
                            let mut merged = part.clone();
                            for &(q2, s2) in o2 {
                                merged.push((q2, self.quot.of(s1 | s2)));
                            }
                            merged.sort();
                            merged.dedup();
                            next.push(merged);
                        }
                    }
                    partials = prune(next);
                    let size: usize = partials.iter().map(|p| p.len()).sum();
                    if size > self.entry_budget {
                        return Err(Error::BudgetExceeded { budget: self.entry_budget });
                    }
                }
                results.extend(partials);
            }
            chains.push(prune(results));
        }
        Ok(Profile(chains))
    }

    /// Decides the pair game: does the existential player win the infinite
    /// composition `s e e e ...` from the initial state?
    fn pair_accepts(&self, s: &Profile, e: &Profile) -> Result<bool> {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum P {
            Start,
            StartOutcome(usize),
            State(usize),
            Outcome(usize, usize),
            Emit(usize, usize, usize, usize),
        }
        let mut ids: HashMap<P, usize> = HashMap::new();
        let mut back: Vec<P> = Vec::new();
        let mut intern = |p: P, back: &mut Vec<P>| -> usize {
            if let Some(&id) = ids.get(&p) {
                id
            } else {
                let id = back.len();
                ids.insert(p.clone(), id);
                back.push(p);
                id
            }
        };
        let q0 = self.b.initial;
        let start = intern(P::Start, &mut back);
        debug_assert_eq!(start, 0);
        let mut owner = Vec::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut relevant: Vec<Option<usize>> = Vec::new();
        let mut i = 0;
        while i < back.len() {
            let pos = back[i].clone();
            let (own, rel, succs) = match pos {
                P::Start => {
                    let ts = (0..s.0[q0].len())
                        .map(|oi| intern(P::StartOutcome(oi), &mut back))
                        .collect();
                    (Player::Exists, None, ts)
                }
                P::StartOutcome(oi) => {
                    let ts = s.0[q0][oi]
                        .iter()
                        .map(|&(q1, _)| intern(P::State(q1), &mut back))
                        .collect();
                    (Player::Forall, None, ts)
                }
                P::State(q) => {
                    let ts = (0..e.0[q].len())
                        .map(|oi| intern(P::Outcome(q, oi), &mut back))
                        .collect();
                    (Player::Exists, None, ts)
                }
                P::Outcome(q, oi) => {
                    let ts = (0..e.0[q][oi].len())
                        .map(|ei| intern(P::Emit(q, oi, ei, 0), &mut back))
                        .collect();
                    (Player::Forall, None, ts)
                }
                P::Emit(q, oi, ei, k) => {
                    let (q2, mask) = e.0[q][oi][ei];
                    let elems: Vec<usize> =
                        (0..self.b.n_states).filter(|i| mask >> i & 1 == 1).collect();
                    let label = elems.get(k).copied();
                    let t = if k + 1 < elems.len() {
                        intern(P::Emit(q, oi, ei, k + 1), &mut back)
                    } else {
                        intern(P::State(q2), &mut back)
                    };
                    (Player::Exists, label, vec![t])
                }
            };
            owner.push(own);
            relevant.push(rel);
            edges.push(succs);
            i += 1;
        }
        let arena = Arena {
            n_positions: back.len(),
            owner,
            edges,
            initial: 0,
            condition: Condition::Muller {
                relevant,
                n_labels: self.b.n_states,
                family: self.b.muller.clone(),
                accept_empty: false,
            },
        };
        Ok(solve_muller(&arena)?.exists_wins_initial())
    }
}

/// Translates an alternating Muller automaton into an equivalent Büchi
/// automaton. `budget` caps the number of constructed states.
pub fn dealternate(b: &AltMullerAutomaton, budget: usize) -> Result<Nba> {
    b.validate()?;
    if b.n_states > 16 {
        return Err(Error::BudgetExceeded { budget: 16 });
    }
    let ctx = Ctx {
        b,
        quot: MaskQuotient::new(b.n_states, &b.muller),
        entry_budget: 200_000,
    };
    let n_letters = b.alphabet.len();
    let letters: Vec<Profile> = (0..n_letters).map(|a| ctx.letter(a)).collect();

    // semigroup of word profiles, closed under right-composition
    let mut ids: HashMap<Profile, usize> = HashMap::new();
    let mut elems: Vec<Profile> = Vec::new();
    // right-multiplication table [elem][letter]
    let mut step: Vec<Vec<usize>> = Vec::new();
    for p in &letters {
        if !ids.contains_key(p) {
            ids.insert(p.clone(), elems.len());
            elems.push(p.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(n_letters);
        for a in 0..n_letters {
            let prod = ctx.compose(&elems[i], &letters[a])?;
            let id = *ids.entry(prod.clone()).or_insert_with(|| {
                elems.push(prod);
                elems.len() - 1
            });
            row.push(id);
        }
        step.push(row);
        if elems.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        i += 1;
    }
    let n_elems = elems.len();

    // full product table, for idempotents and linkage
    let mut prod_table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut product = |x: usize, y: usize,
                       ids: &mut HashMap<Profile, usize>,
                       elems: &mut Vec<Profile>|
     -> Result<usize> {
        if let Some(&r) = prod_table.get(&(x, y)) {
            return Ok(r);
        }
        let p = ctx.compose(&elems[x], &elems[y])?;
        let id = match ids.get(&p) {
            Some(&id) => id,
            None => {
                // composing two word profiles is a word profile, hence
                // already in the closure
                return Err(Error::Other("semigroup closure incomplete".into()));
            }
        };
        prod_table.insert((x, y), id);
        Ok(id)
    };
    let mut idempotents = Vec::new();
    for eidx in 0..n_elems {
        if product(eidx, eidx, &mut ids, &mut elems)? == eidx {
            idempotents.push(eidx);
        }
    }
    // accepting linked pairs, with the game cached per (initial row, e)
    let mut game_cache: HashMap<(Chain, usize), bool> = HashMap::new();
    let mut accepting: HashMap<usize, Vec<usize>> = HashMap::new(); // s -> accepting e's
    for &eidx in &idempotents {
        for sidx in 0..n_elems {
            if product(sidx, eidx, &mut ids, &mut elems)? != sidx {
                continue;
            }
            let key = (elems[sidx].0[b.initial].clone(), eidx);
            let verdict = match game_cache.get(&key) {
                Some(&v) => v,
                None => {
                    let v = ctx.pair_accepts(&elems[sidx], &elems[eidx])?;
                    game_cache.insert(key, v);
                    v
                }
            };
            if verdict {
                accepting.entry(sidx).or_default().push(eidx);
            }
        }
    }

    // Büchi assembly: prefix component tracks the profile of the word read
    // so far; loop components check blocks of profile e.
    // state encoding: 0 = fresh prefix (unit), 1 + r = prefix at profile r,
    // then per accepting idempotent e: loop states (e, unit) and (e, v)
    let looping: Vec<usize> = {
        let mut es: Vec<usize> = accepting.values().flatten().copied().collect();
        es.sort_unstable();
        es.dedup();
        es
    };
    let loop_base = 1 + n_elems;
    let per_loop = 1 + n_elems; // (e, unit) then (e, v)
    let n_states = loop_base + looping.len() * per_loop;
    if n_states > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let loop_id = |li: usize, v: Option<usize>| -> usize {
        loop_base + li * per_loop + match v {
            None => 0,
            Some(r) => 1 + r,
        }
    };
    let mut transitions = vec![vec![StateSet::new(); n_letters]; n_states];
    let letter_elem: Vec<usize> = letters.iter().map(|p| ids[p]).collect();
    // prefix moves
    for a in 0..n_letters {
        transitions[0][a].insert(1 + letter_elem[a]);
    }
    for r in 0..n_elems {
        for a in 0..n_letters {
            transitions[1 + r][a].insert(1 + step[r][a]);
        }
    }
    // loop entries and block tracking
    let enter = |s_state: usize, es: &[usize], a: usize, looping: &[usize]| -> Vec<usize> {
        let mut ts = Vec::new();
        for &e in es {
            let li = looping.binary_search(&e).unwrap();
            let v = letter_elem[a];
            ts.push(loop_id(li, Some(v)));
            if v == e {
                ts.push(loop_id(li, None));
            }
        }
        let _ = s_state;
        ts
    };
    for (sidx, es) in &accepting {
        for a in 0..n_letters {
            let ts = enter(1 + sidx, es, a, &looping);
            for t in ts {
                transitions[1 + sidx][a].insert(t);
            }
        }
    }
    for (li, &e) in looping.iter().enumerate() {
        for a in 0..n_letters {
            // from (e, unit): start a new block
            let v = letter_elem[a];
            transitions[loop_id(li, None)][a].insert(loop_id(li, Some(v)));
            if v == e {
                transitions[loop_id(li, None)][a].insert(loop_id(li, None));
            }
            for r in 0..n_elems {
                let v2 = step[r][a];
                transitions[loop_id(li, Some(r))][a].insert(loop_id(li, Some(v2)));
                if v2 == e {
                    transitions[loop_id(li, Some(r))][a].insert(loop_id(li, None));
                }
            }
        }
    }
    let accepting_states: StateSet = (0..looping.len()).map(|li| loop_id(li, None)).collect();
    let nba = Nba::new(
        b.alphabet.clone(),
        [0].into_iter().collect(),
        transitions,
        accepting_states,
    )?;
    Ok(nba.trimmed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::expr::TransitionExpr;
    use crate::lasso::LassoWord;
    use crate::DEFAULT_STATE_BUDGET;

    fn check_against_game(b: &AltMullerAutomaton, max_lasso: usize) {
        let nba = dealternate(b, DEFAULT_STATE_BUDGET).unwrap();
        for w in LassoWord::enumerate(b.alphabet.len(), max_lasso) {
            assert_eq!(
                nba.accepts_lasso(&w).unwrap(),
                b.accepts_lasso(&w).unwrap(),
                "lasso {w:?} on {b:?}"
            );
        }
    }

    #[test]
    fn deterministic_embedded() {
        let alphabet = Alphabet::binary();
        let delta = vec![
            vec![TransitionExpr::Atom(0), TransitionExpr::Atom(1)],
            vec![TransitionExpr::Atom(0), TransitionExpr::Atom(1)],
        ];
        let muller = MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]);
        let b = AltMullerAutomaton::new(alphabet, 0, delta, muller).unwrap();
        check_against_game(&b, 5);
    }

    #[test]
    fn purely_universal_two_states() {
        // from state 0 both copies must accept: conjunction of staying and
        // moving to 1; state 1 must see letter 1 eventually again
        let alphabet = Alphabet::binary();
        let delta = vec![
            vec![
                TransitionExpr::and(vec![TransitionExpr::Atom(0), TransitionExpr::Atom(1)]),
                TransitionExpr::Atom(0),
            ],
            vec![TransitionExpr::Atom(1), TransitionExpr::Atom(0)],
        ];
        let muller = MullerFamily::new([
            [0].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]);
        let b = AltMullerAutomaton::new(alphabet, 0, delta, muller).unwrap();
        check_against_game(&b, 5);
    }

    #[test]
    fn random_alternating_agree_with_game() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for round in 0..25 {
            let n = rng.gen_range(1..=3usize);
            let alphabet = Alphabet::binary();
            let delta: Vec<Vec<TransitionExpr<usize>>> = (0..n)
                .map(|_| {
                    (0..2)
                        .map(|_| random_expr(&mut rng, n, 2))
                        .collect()
                })
                .collect();
            let mut fam = MullerFamily::empty();
            for mask in 1usize..(1 << n) {
                if rng.gen_bool(0.5) {
                    fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            let b = AltMullerAutomaton::new(alphabet, 0, delta, fam).unwrap();
            let _ = round;
            check_against_game(&b, 4);
        }
    }

    pub fn random_expr(
        rng: &mut rand_chacha::ChaCha8Rng,
        n_states: usize,
        depth: usize,
    ) -> TransitionExpr<usize> {
        use rand::Rng;
        if depth == 0 || rng.gen_bool(0.4) {
            TransitionExpr::Atom(rng.gen_range(0..n_states))
        } else {
            let k = rng.gen_range(2..=3);
            let children: Vec<_> = (0..k).map(|_| random_expr(rng, n_states, depth - 1)).collect();
            if rng.gen_bool(0.5) {
                TransitionExpr::and(children)
            } else {
                TransitionExpr::or(children)
            }
        }
    }

    #[test]
    fn profiles_form_a_monoid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let n = rng.gen_range(1..=3usize);
            let alphabet = Alphabet::binary();
            let delta: Vec<Vec<TransitionExpr<usize>>> = (0..n)
                .map(|_| (0..2).map(|_| random_expr(&mut rng, n, 2)).collect())
                .collect();
            let mut fam = MullerFamily::empty();
            for mask in 1usize..(1 << n) {
                if rng.gen_bool(0.5) {
                    fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            let b = AltMullerAutomaton::new(alphabet, 0, delta, fam).unwrap();
            let ctx = Ctx {
                b: &b,
                quot: MaskQuotient::new(b.n_states, &b.muller),
                entry_budget: 100_000,
            };
            let u = ctx.unit();
            let x = ctx.letter(0);
            let y = ctx.letter(1);
            assert_eq!(ctx.compose(&u, &x).unwrap(), x);
            assert_eq!(ctx.compose(&x, &u).unwrap(), x);
            let xy = ctx.compose(&x, &y).unwrap();
            let yx = ctx.compose(&y, &x).unwrap();
            assert_eq!(
                ctx.compose(&xy, &x).unwrap(),
                ctx.compose(&x, &yx).unwrap()
            );
        }
    }

    #[test]
    fn b_construction_roundtrip() {
        use crate::category::build_b_word;
        use crate::det::DetMullerAutomaton;
        // two-state deterministic over two tracks, quantify the second
        let alphabet = Alphabet::tracks(["X", "Y"]).unwrap();
        let delta = vec![vec![0, 1, 0, 1], vec![1, 0, 1, 1]];
        let fam = MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]);
        let a = DetMullerAutomaton::new(alphabet, 0, delta, fam).unwrap();
        let b = build_b_word(&a, 1).unwrap();
        check_against_game(&b, 4);
    }
}
