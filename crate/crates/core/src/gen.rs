//! Seeded random instances for the cross-check suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::alt::AltMullerAutomaton;
use crate::det::{DetMullerAutomaton, MullerFamily, StateSet};
use crate::expr::TransitionExpr;
use crate::lasso::LassoWord;
use crate::tree::RegularTree;

pub fn random_family(rng: &mut ChaCha8Rng, n: usize, density: f64) -> MullerFamily {
    let mut fam = MullerFamily::empty();
    for mask in 1usize..(1 << n) {
        if rng.gen_bool(density) {
            fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect::<StateSet>());
        }
    }
    fam
}

pub fn random_det_muller(
    rng: &mut ChaCha8Rng,
    alphabet: Alphabet,
    max_states: usize,
) -> DetMullerAutomaton {
    let n = rng.gen_range(1..=max_states);
    let delta: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let fam = random_family(rng, n, 0.5);
    DetMullerAutomaton::new(alphabet, 0, delta, fam).unwrap()
}

pub fn random_expr(rng: &mut ChaCha8Rng, n_states: usize, depth: usize) -> TransitionExpr<usize> {
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

pub fn random_alt_muller(
    rng: &mut ChaCha8Rng,
    alphabet: Alphabet,
    max_states: usize,
) -> AltMullerAutomaton {
    let n = rng.gen_range(1..=max_states);
    let delta: Vec<Vec<TransitionExpr<usize>>> = (0..n)
        .map(|_| (0..alphabet.len()).map(|_| random_expr(rng, n, 2)).collect())
        .collect();
    let fam = random_family(rng, n, 0.5);
    AltMullerAutomaton::new(alphabet, 0, delta, fam).unwrap()
}

pub fn random_lasso(rng: &mut ChaCha8Rng, n_letters: usize, max_total: usize) -> LassoWord {
    let total = rng.gen_range(1..=max_total);
    let cyc_len = rng.gen_range(1..=total);
    let pre_len = total - cyc_len;
    LassoWord::new(
        (0..pre_len).map(|_| rng.gen_range(0..n_letters)).collect(),
        (0..cyc_len).map(|_| rng.gen_range(0..n_letters)).collect(),
    )
}

pub fn random_regular_tree(
    rng: &mut ChaCha8Rng,
    alphabet: Alphabet,
    max_nodes: usize,
) -> RegularTree {
    let n = rng.gen_range(1..=max_nodes);
    RegularTree::new(
        alphabet.clone(),
        (0..n).map(|_| rng.gen_range(0..alphabet.len())).collect(),
        (0..n).map(|_| rng.gen_range(0..n)).collect(),
        (0..n).map(|_| rng.gen_range(0..n)).collect(),
        0,
    )
    .unwrap()
}
