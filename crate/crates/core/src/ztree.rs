//! Zielonka trees and the deterministic parity monitor they induce.
//!
//! For a Muller family over a small universe, the tree's leaves form the
//! state space of a deterministic automaton that reads universe elements and
//! emits priorities such that the maximum priority emitted infinitely often
//! is even iff the set of elements read infinitely often is in the family.

use std::collections::BTreeSet;

use crate::det::MullerFamily;

type ElemSet = BTreeSet<usize>;

#[derive(Debug, Clone)]
struct Node {
    label: ElemSet,
    children: Vec<usize>,
    parent: Option<usize>,
    depth: u32,
}

#[derive(Debug, Clone)]
pub struct ZtMonitor {
    nodes: Vec<Node>,
    leaves: Vec<usize>,
    /// Per-node emitted priority, already shifted above [`NEUTRAL`].
    node_priority: Vec<u32>,
}

/// Priority emitted for steps that touch no relevant element. Odd, and
/// dominated by every monitor priority.
pub const NEUTRAL: u32 = 1;

impl ZtMonitor {
    /// Builds the tree for `family` over the universe `0..n` (n <= 16).
    pub fn new(n: usize, family: &MullerFamily) -> ZtMonitor {
        assert!(n <= 16, "Zielonka tree universe too large");
        let universe: ElemSet = (0..n).collect();
        let mut nodes = vec![Node {
            label: universe,
            children: Vec::new(),
            parent: None,
            depth: 0,
        }];
        let mut todo = vec![0usize];
        while let Some(v) = todo.pop() {
            let label = nodes[v].label.clone();
            let inside = family.contains(&label);
            for child_label in maximal_flipped_subsets(&label, inside, family) {
                let id = nodes.len();
                nodes.push(Node {
                    label: child_label,
                    children: Vec::new(),
                    parent: Some(v),
                    depth: nodes[v].depth + 1,
                });
                nodes[v].children.push(id);
                todo.push(id);
            }
        }
        let height = nodes.iter().map(|nd| nd.depth).max().unwrap_or(0);
        let node_priority = nodes
            .iter()
            .map(|nd| {
                let base = 2 * (height - nd.depth) + 2 + NEUTRAL + 1;
                // parity: even iff the label is in the family
                if family.contains(&nd.label) {
                    base & !1
                } else {
                    base | 1
                }
            })
            .collect();
        let leaves = nodes
            .iter()
            .enumerate()
            .filter(|(_, nd)| nd.children.is_empty())
            .map(|(i, _)| i)
            .collect();
        ZtMonitor { nodes, leaves, node_priority }
    }

    pub fn n_states(&self) -> usize {
        self.leaves.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn max_priority(&self) -> u32 {
        self.node_priority.iter().copied().max().unwrap_or(NEUTRAL)
    }

    /// Reads `elem` from monitor state `state` (a leaf index); returns the
    /// successor state and the emitted priority.
    pub fn step(&self, state: usize, elem: usize) -> (usize, u32) {
        let leaf = self.leaves[state];
        // deepest ancestor-or-self whose label contains elem
        let mut v = leaf;
        let anchor = loop {
            if self.nodes[v].label.contains(&elem) {
                break v;
            }
            v = self.nodes[v].parent.expect("element outside the universe");
        };
        let prio = self.node_priority[anchor];
        if anchor == leaf {
            return (state, prio);
        }
        // child of the anchor lying on the current branch
        let mut c = leaf;
        while self.nodes[c].parent != Some(anchor) {
            c = self.nodes[c].parent.unwrap();
        }
        let idx = self.nodes[anchor].children.iter().position(|&x| x == c).unwrap();
        let next_child =
            self.nodes[anchor].children[(idx + 1) % self.nodes[anchor].children.len()];
        // descend first-child to a leaf
        let mut d = next_child;
        while let Some(&first) = self.nodes[d].children.first() {
            d = first;
        }
        let new_state = self.leaves.iter().position(|&x| x == d).unwrap();
        (new_state, prio)
    }
}

/// Maximal nonempty subsets of `label` whose family membership differs from
/// `inside`.
fn maximal_flipped_subsets(label: &ElemSet, inside: bool, family: &MullerFamily) -> Vec<ElemSet> {
    let elems: Vec<usize> = label.iter().copied().collect();
    let n = elems.len();
    let mut flipped: Vec<ElemSet> = Vec::new();
    for mask in 1usize..(1 << n) {
        if mask == (1 << n) - 1 && n > 0 {
            continue; // proper subsets only
        }
        let set: ElemSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
        if family.contains(&set) != inside {
            flipped.push(set);
        }
    }
    flipped
        .iter()
        .filter(|s| !flipped.iter().any(|o| *o != **s && s.is_subset(o)))
        .cloned()
        .collect()
}
