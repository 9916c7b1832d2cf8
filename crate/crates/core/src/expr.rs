//! Positive boolean transition expressions.

use std::fmt;

/// Direction into a binary tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::L => "L",
            Dir::R => "R",
        })
    }
}

/// Positive boolean formula over atoms of type `A`.
///
/// `A` is a state id for word automata and a `(Dir, state)` pair for tree
/// automata. No negation; `And`/`Or` have at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TransitionExpr<A> {
    Atom(A),
    And(Vec<TransitionExpr<A>>),
    Or(Vec<TransitionExpr<A>>),
}

impl<A: Clone + Ord> TransitionExpr<A> {
    /// `And` of the children, flattening the degenerate cases.
    pub fn and(children: Vec<TransitionExpr<A>>) -> TransitionExpr<A> {
        Self::nary(children, true)
    }

    /// `Or` of the children, flattening the degenerate cases.
    pub fn or(children: Vec<TransitionExpr<A>>) -> TransitionExpr<A> {
        Self::nary(children, false)
    }

    fn nary(mut children: Vec<TransitionExpr<A>>, conj: bool) -> TransitionExpr<A> {
        assert!(!children.is_empty(), "empty transition expression");
        if children.len() == 1 {
            children.pop().unwrap()
        } else if conj {
            TransitionExpr::And(children)
        } else {
            TransitionExpr::Or(children)
        }
    }

    pub fn atoms(&self) -> Vec<A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_atoms(&self, out: &mut Vec<A>) {
        match self {
            TransitionExpr::Atom(a) => out.push(a.clone()),
            TransitionExpr::And(cs) | TransitionExpr::Or(cs) => {
                for c in cs {
                    c.collect_atoms(out);
                }
            }
        }
    }

    /// Evaluates the expression with the given atom valuation.
    pub fn eval(&self, truth: &impl Fn(&A) -> bool) -> bool {
        match self {
            TransitionExpr::Atom(a) => truth(a),
            TransitionExpr::And(cs) => cs.iter().all(|c| c.eval(truth)),
            TransitionExpr::Or(cs) => cs.iter().any(|c| c.eval(truth)),
        }
    }

    /// Subset-minimal models: the antichain of atom sets the existential
    /// player can confine a play to by resolving the disjunctions.
    pub fn minimal_models(&self) -> Vec<Vec<A>> {
        let atoms = self.atoms();
        let n = atoms.len();
        assert!(n <= 20, "transition expression with too many atoms");
        let mut models: Vec<u32> = Vec::new();
        for mask in 0..(1u32 << n) {
            let holds = self.eval(&|a: &A| {
                let i = atoms.binary_search(a).unwrap();
                mask >> i & 1 == 1
            });
            if holds {
                models.push(mask);
            }
        }
        // keep subset-minimal masks
        let minimal: Vec<u32> = models
            .iter()
            .copied()
            .filter(|&m| !models.iter().any(|&o| o != m && o & m == o))
            .collect();
        minimal
            .into_iter()
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| atoms[i].clone())
                    .collect()
            })
            .collect()
    }

    /// Applies a function to every atom, keeping the shape.
    pub fn map_atoms<B: Clone + Ord>(&self, f: &impl Fn(&A) -> B) -> TransitionExpr<B> {
        match self {
            TransitionExpr::Atom(a) => TransitionExpr::Atom(f(a)),
            TransitionExpr::And(cs) => {
                TransitionExpr::And(cs.iter().map(|c| c.map_atoms(f)).collect())
            }
            TransitionExpr::Or(cs) => {
                TransitionExpr::Or(cs.iter().map(|c| c.map_atoms(f)).collect())
            }
        }
    }

    /// True if no `And` node occurs.
    pub fn is_and_free(&self) -> bool {
        match self {
            TransitionExpr::Atom(_) => true,
            TransitionExpr::And(_) => false,
            TransitionExpr::Or(cs) => cs.iter().all(|c| c.is_and_free()),
        }
    }
}
