//! The non-regular witness: a labeled tree prefix organized in depth blocks
//! whose 1-labels thin out so fast that almost every path sees only
//! finitely many, while every region still has 1s further down.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::expr::Dir;
use crate::scc;
use crate::tree::{RegularTree, TreePrefix};
use crate::Rational;

/// The minimal growth function with `f(0) = 0` and
/// `f(n) > n + sum of the earlier values`; returns `f(0..=n)`.
pub fn minimal_growth(n: usize) -> Vec<u64> {
    let mut f = vec![0u64];
    for k in 1..=n {
        let sum: u64 = f.iter().sum();
        f.push(k as u64 + sum + 1);
    }
    f
}

/// Witness prefix and its bookkeeping.
#[derive(Debug, Clone)]
pub struct WitnessTree {
    pub prefix: TreePrefix,
    pub growth: Vec<u64>,
    /// Certified value of the partial series `sum 2^{-(f(k+1) - f(k))}`.
    pub partial_sum: Rational,
}

/// Builds the labeled prefix up to depth `f(n)`. A vertex at a block
/// boundary depth `f(m)` (for `m >= 1`) is labeled 1 exactly when its last
/// `f(m) - f(m-1)` steps all go left; every other vertex is labeled 0. A
/// random path therefore sees a 1 at boundary `m` with probability
/// `2^{-(f(m) - f(m-1))}`, and the partial series certifies the premise
/// that those events happen finitely often almost surely.
pub fn witness_u1_tree(n_blocks: usize) -> Result<WitnessTree> {
    if n_blocks < 1 {
        return Err(Error::Other("need at least one block".into()));
    }
    let growth = minimal_growth(n_blocks);
    let depth = growth[n_blocks];
    if depth > 12 {
        return Err(Error::BudgetExceeded { budget: 1 << 13 });
    }
    let alphabet = Alphabet::binary();
    let mut map: BTreeMap<Vec<Dir>, usize> = BTreeMap::new();
    let boundaries: Vec<u64> = growth.clone();
    let mut frontier: Vec<Vec<Dir>> = vec![vec![]];
    map.insert(vec![], 0);
    for d in 0..depth {
        let mut next = Vec::new();
        for v in frontier {
            for dir in [Dir::L, Dir::R] {
                let mut c = v.clone();
                c.push(dir);
                let cd = d + 1;
                let label = match boundaries.iter().position(|&b| b == cd) {
                    Some(m) if m >= 1 => {
                        let span = (growth[m] - growth[m - 1]) as usize;
                        c.iter().rev().take(span).all(|&x| x == Dir::L)
                    }
                    _ => false,
                };
                map.insert(c.clone(), label as usize);
                next.push(c);
            }
        }
        frontier = next;
    }
    let prefix = TreePrefix::new(alphabet, map)?;
    let mut partial_sum = Rational::zero();
    for k in 0..n_blocks {
        let gap = (growth[k + 1] - growth[k]) as u32;
        partial_sum += Rational::new(1.into(), num::BigInt::from(2).pow(gap));
    }
    Ok(WitnessTree { prefix, growth, partial_sum })
}

impl WitnessTree {
    /// Every vertex shallow enough to have a full next block below it has a
    /// 1-labeled strict descendant inside the prefix.
    pub fn ones_are_dense(&self) -> bool {
        let n = self.growth.len() - 1;
        if n < 1 {
            return true;
        }
        let safe_depth = self.growth[n - 1] as usize;
        for (v, _) in &self.prefix.map {
            if v.len() >= safe_depth {
                continue;
            }
            // the first boundary whose all-left run starts at or below v
            let m = (1..self.growth.len())
                .find(|&m| self.growth[m - 1] as usize >= v.len())
                .unwrap();
            let mut w = v.clone();
            while (w.len() as u64) < self.growth[m - 1] {
                w.push(Dir::R);
            }
            while (w.len() as u64) < self.growth[m] {
                w.push(Dir::L);
            }
            match self.prefix.map.get(&w) {
                Some(&1) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Whether a random path of the regular tree almost surely sees 1-labeled
/// vertices infinitely often: every recurrent class of the unfolding's
/// graph must contain a 1.
pub fn regular_tree_infinitely_ones(t: &RegularTree) -> Result<bool> {
    t.validate()?;
    let succ = |v: usize| -> Vec<usize> {
        let mut out = vec![t.left[v], t.right[v]];
        out.sort_unstable();
        out.dedup();
        out
    };
    let reach = scc::reachable(t.n_nodes(), &[t.root], &succ);
    Ok(scc::bottom_sccs(t.n_nodes(), &succ)
        .into_iter()
        .filter(|c| c.iter().any(|&v| reach[v]))
        .all(|c| c.iter().any(|&v| t.labels[v] == 1)))
}

/// Every node of the graph reaches a 1-labeled node.
pub fn every_node_reaches_one(t: &RegularTree) -> Result<bool> {
    t.validate()?;
    let n = t.n_nodes();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        pred[t.left[v]].push(v);
        pred[t.right[v]].push(v);
    }
    let ones: Vec<usize> = (0..n).filter(|&v| t.labels[v] == 1).collect();
    let can = scc::reachable(n, &ones, &|v| pred[v].clone());
    Ok(can.iter().all(|&b| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn growth_pins() {
        let f = minimal_growth(3);
        assert_eq!(f, vec![0, 2, 5, 11]);
        // each value truly is minimal for the constraint
        for n in 1..=3usize {
            let sum: u64 = f[..n].iter().sum();
            assert!(f[n] > n as u64 + sum);
            assert!(f[n] - 1 <= n as u64 + sum);
        }
    }

    #[test]
    fn partial_sum_pin() {
        let w = witness_u1_tree(3).unwrap();
        assert_eq!(w.partial_sum, rat(25, 64));
        assert!(w.partial_sum <= Rational::one());
    }

    #[test]
    fn prefix_structure() {
        let w = witness_u1_tree(3).unwrap();
        // the prefix is a complete tree of depth f(3)
        let depth = w.growth[3] as usize;
        assert_eq!(w.prefix.map.len(), (1usize << (depth + 1)) - 1);
        // boundary-1 labels: the all-left vertex at depth 2 is labeled 1
        assert_eq!(w.prefix.map[&vec![Dir::L, Dir::L]], 1);
        assert_eq!(w.prefix.map[&vec![Dir::L, Dir::R]], 0);
        // a depth-5 vertex ending in three lefts is labeled 1
        let v = vec![Dir::R, Dir::R, Dir::L, Dir::L, Dir::L];
        assert_eq!(w.prefix.map[&v], 1);
        assert!(w.ones_are_dense());
    }

    #[test]
    fn infinitely_ones_pins() {
        use crate::tree::games::tests::{all_ones_tree, all_zeros_tree};
        assert!(regular_tree_infinitely_ones(&all_ones_tree()).unwrap());
        assert!(!regular_tree_infinitely_ones(&all_zeros_tree()).unwrap());
        // root 0 whose two children are the 1-labeled self-loop node
        let t = RegularTree::new(
            Alphabet::binary(),
            vec![0, 1],
            vec![1, 1],
            vec![1, 1],
            0,
        )
        .unwrap();
        assert!(regular_tree_infinitely_ones(&t).unwrap());
        assert!(every_node_reaches_one(&t).unwrap());
    }

    #[test]
    fn accepted_regular_trees_recur() {
        use crate::tree::games::tests::path_recurrent_ones;
        use crate::tree::games::tree_membership_game;
        use rand::{Rng, SeedableRng};
        let l_automaton = path_recurrent_ones();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let mut accepted = 0;
        for _ in 0..60 {
            let nodes = rng.gen_range(1..=5usize);
            let t = RegularTree::new(
                Alphabet::binary(),
                (0..nodes).map(|_| rng.gen_range(0..2)).collect(),
                (0..nodes).map(|_| rng.gen_range(0..nodes)).collect(),
                (0..nodes).map(|_| rng.gen_range(0..nodes)).collect(),
                0,
            )
            .unwrap();
            if tree_membership_game(&l_automaton, &t).unwrap() {
                accepted += 1;
                assert!(regular_tree_infinitely_ones(&t).unwrap(), "tree {t:?}");
            }
        }
        assert!(accepted > 0, "battery never hit the language");
    }
}
