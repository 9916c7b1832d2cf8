//! Acceptance games of tree automata on regular trees, and the tagged
//! construction for deciding comeagerness of game-automaton languages.

use std::collections::HashMap;

use crate::category::{tag_id, tagged_family, untag_id};

use crate::error::{Error, Result};
use crate::expr::{Dir, TransitionExpr};
use crate::game::{solve_muller, Arena, Condition, Player};
use crate::tree::{AltMullerTreeAutomaton, GameAutomaton, GameOp, RegularTree, TreeAtom};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum TreeGamePos {
    State(usize, usize),
    Expr(usize, usize, Vec<usize>),
}

/// Acceptance game of an alternating Muller tree automaton on a regular
/// tree, as a finite Muller arena (finite because the tree is a finite
/// graph).
pub fn acceptance_arena_tree(a: &AltMullerTreeAutomaton, t: &RegularTree) -> Result<Arena> {
    a.validate()?;
    t.validate()?;
    if a.alphabet != t.alphabet {
        return Err(Error::AlphabetMismatch("automaton and tree disagree".into()));
    }
    let mut ids: HashMap<TreeGamePos, usize> = HashMap::new();
    let mut back: Vec<TreeGamePos> = Vec::new();
    let mut intern = |p: TreeGamePos, back: &mut Vec<TreeGamePos>| -> usize {
        if let Some(&id) = ids.get(&p) {
            id
        } else {
            let id = back.len();
            ids.insert(p.clone(), id);
            back.push(p);
            id
        }
    };
    let start = intern(TreeGamePos::State(t.root, a.initial), &mut back);
    let mut owner = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut relevant = Vec::new();
    let mut i = 0;
    while i < back.len() {
        let pos = back[i].clone();
        let (own, rel, succs) = match &pos {
            TreeGamePos::State(v, q) => {
                let e = intern(TreeGamePos::Expr(*v, *q, Vec::new()), &mut back);
                (Player::Exists, Some(*q), vec![e])
            }
            TreeGamePos::Expr(v, q, path) => {
                let mut node = a.expr(*q, t.labels[*v]);
                for &k in path {
                    node = match node {
                        TransitionExpr::And(cs) | TransitionExpr::Or(cs) => &cs[k],
                        TransitionExpr::Atom(_) => unreachable!(),
                    };
                }
                match node {
                    TransitionExpr::Atom((d, q2)) => {
                        let s =
                            intern(TreeGamePos::State(t.child(*v, *d), *q2), &mut back);
                        (Player::Exists, None, vec![s])
                    }
                    TransitionExpr::Or(cs) => {
                        let ts = (0..cs.len())
                            .map(|k| {
                                let mut p2 = path.clone();
                                p2.push(k);
                                intern(TreeGamePos::Expr(*v, *q, p2), &mut back)
                            })
                            .collect();
                        (Player::Exists, None, ts)
                    }
                    TransitionExpr::And(cs) => {
                        let ts = (0..cs.len())
                            .map(|k| {
                                let mut p2 = path.clone();
                                p2.push(k);
                                intern(TreeGamePos::Expr(*v, *q, p2), &mut back)
                            })
                            .collect();
                        (Player::Forall, None, ts)
                    }
                }
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
        initial: start,
        condition: Condition::Muller {
            relevant,
            n_labels: a.n_states,
            family: a.muller.clone(),
            accept_empty: false,
        },
    };
    arena.validate()?;
    Ok(arena)
}

/// Membership of a regular tree in the language of an alternating Muller
/// tree automaton.
pub fn tree_membership(a: &AltMullerTreeAutomaton, t: &RegularTree) -> Result<bool> {
    let arena = acceptance_arena_tree(a, t)?;
    Ok(solve_muller(&arena)?.exists_wins_initial())
}

pub fn tree_membership_game(a: &GameAutomaton, t: &RegularTree) -> Result<bool> {
    tree_membership(&a.to_alternating(), t)
}

/// The tree-side tagged construction. In state `(q, r)` on a parameter
/// letter, player `r` picks the quantified letter and the next tag; then
/// the owner of the underlying game transition resolves the direction. The
/// acceptance family is the word-case one.
pub fn build_b_tree(a: &GameAutomaton, n_param_tracks: usize) -> Result<AltMullerTreeAutomaton> {
    a.validate()?;
    if a.n_states > 8 {
        return Err(Error::BudgetExceeded { budget: 8 });
    }
    let split = a.alphabet.factor(n_param_tracks)?;
    let n_b = 2 * a.n_states;
    let mut delta: Vec<Vec<TransitionExpr<TreeAtom>>> = Vec::with_capacity(n_b);
    for id in 0..n_b {
        let (q, r) = untag_id(id);
        let mut row = Vec::with_capacity(split.param.len());
        for pa in split.param.letters() {
            let mut choices = Vec::new();
            for qb in split.quantified.letters() {
                let mv = a.delta[q][split.combine(pa, qb)];
                for r2 in [Player::Exists, Player::Forall] {
                    let l = TransitionExpr::Atom((Dir::L, tag_id(mv.left, r2)));
                    let rr = TransitionExpr::Atom((Dir::R, tag_id(mv.right, r2)));
                    let dir_expr = match mv.op {
                        GameOp::And => TransitionExpr::and(vec![l, rr]),
                        GameOp::Or => TransitionExpr::or(vec![l, rr]),
                    };
                    choices.push(dir_expr);
                }
            }
            let expr = if r == Player::Exists {
                TransitionExpr::or(choices)
            } else {
                TransitionExpr::and(choices)
            };
            row.push(expr);
        }
        delta.push(row);
    }
    let out = AltMullerTreeAutomaton {
        alphabet: split.param,
        n_states: n_b,
        initial: tag_id(a.initial, Player::Forall),
        delta,
        muller: tagged_family(a.n_states, &a.muller),
    };
    out.validate()?;
    Ok(out)
}

/// Comeagerness of the language of a total game automaton, via the
/// acceptance game of the tagged construction over the one-letter alphabet
/// on the only input tree.
pub fn decide_comeager_tree(a: &GameAutomaton) -> Result<bool> {
    let b = build_b_tree(a, 0)?;
    let unary = RegularTree::constant(b.alphabet.clone(), 0)?;
    tree_membership(&b, &unary)
}
