//! Formula AST shared by the word and tree logics.
//!
//! Variables are interned: every binder introduces a fresh id, so shadowing
//! is resolved at parse time and rewriters can mint capture-free variables.

use crate::error::{Error, Result};

pub type VarId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub sort: Sort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    True,
    False,
    /// `x < y` on word positions.
    Less(VarId, VarId),
    /// `x in X`.
    In(VarId, VarId),
    /// Tree atoms: `succL(x, y)`, `succR(x, y)`.
    SuccL(VarId, VarId),
    SuccR(VarId, VarId),
    /// Unboundedness predicate over a `{0,1,R}` word encoded by two tracks.
    UPred(VarId, VarId),
    /// Abstract tree predicate: almost every path meets the set finitely
    /// often.
    U1Pred(VarId),
    Not(Box<Node>),
    Or(Box<Node>, Box<Node>),
    And(Box<Node>, Box<Node>),
    ForallFo(VarId, Box<Node>),
    ExistsFo(VarId, Box<Node>),
    ForallSo(VarId, Box<Node>),
    ExistsSo(VarId, Box<Node>),
    /// Category quantifier.
    Cat(VarId, Box<Node>),
    /// Measure quantifier.
    Meas1(VarId, Box<Node>),
    /// Path-restricted variants over trees.
    CatPath(VarId, Box<Node>),
    Meas1Path(VarId, Box<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub vars: Vec<VarInfo>,
    pub root: Node,
}

impl Node {
    pub fn implies(a: Node, b: Node) -> Node {
        Node::Or(Box::new(Node::Not(Box::new(a))), Box::new(b))
    }

    pub fn and_all(mut parts: Vec<Node>) -> Node {
        let Some(mut acc) = parts.pop() else { return Node::True };
        while let Some(p) = parts.pop() {
            acc = Node::And(Box::new(p), Box::new(acc));
        }
        acc
    }

    /// Applies `f` to every node bottom-up, counting is easier on the result.
    pub fn count_nodes(&self) -> usize {
        1 + match self {
            Node::Not(a) => a.count_nodes(),
            Node::Or(a, b) | Node::And(a, b) => a.count_nodes() + b.count_nodes(),
            Node::ForallFo(_, a)
            | Node::ExistsFo(_, a)
            | Node::ForallSo(_, a)
            | Node::ExistsSo(_, a)
            | Node::Cat(_, a)
            | Node::Meas1(_, a)
            | Node::CatPath(_, a)
            | Node::Meas1Path(_, a) => a.count_nodes(),
            _ => 0,
        }
    }

    pub fn count_matching(&self, pred: &impl Fn(&Node) -> bool) -> usize {
        let here = pred(self) as usize;
        here + match self {
            Node::Not(a) => a.count_matching(pred),
            Node::Or(a, b) | Node::And(a, b) => {
                a.count_matching(pred) + b.count_matching(pred)
            }
            Node::ForallFo(_, a)
            | Node::ExistsFo(_, a)
            | Node::ForallSo(_, a)
            | Node::ExistsSo(_, a)
            | Node::Cat(_, a)
            | Node::Meas1(_, a)
            | Node::CatPath(_, a)
            | Node::Meas1Path(_, a) => a.count_matching(pred),
            _ => 0,
        }
    }
}

impl Formula {
    pub fn fresh_var(&mut self, base: &str, sort: Sort) -> VarId {
        let mut name = base.to_string();
        let mut k = 0;
        while self.vars.iter().any(|v| v.name == name) {
            k += 1;
            name = format!("{base}{k}");
        }
        self.vars.push(VarInfo { name, sort });
        self.vars.len() - 1
    }

    /// Free variables, sorted by name.
    pub fn free_vars(&self) -> Vec<VarId> {
        let mut bound = vec![false; self.vars.len()];
        let mut free = vec![false; self.vars.len()];
        collect_free(&self.root, &mut bound, &mut free);
        let mut out: Vec<VarId> = (0..self.vars.len()).filter(|&v| free[v]).collect();
        out.sort_by(|&a, &b| self.vars[a].name.cmp(&self.vars[b].name));
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Word formulas must not contain tree atoms or path quantifiers, and
    /// conversely.
    pub fn check_word(&self) -> Result<()> {
        let offending = self.root.count_matching(&|n| {
            matches!(
                n,
                Node::SuccL(..)
                    | Node::SuccR(..)
                    | Node::CatPath(..)
                    | Node::Meas1Path(..)
                    | Node::U1Pred(..)
            )
        });
        if offending > 0 {
            return Err(Error::MixedSorts("tree construct in a word formula".into()));
        }
        Ok(())
    }

    pub fn check_tree(&self) -> Result<()> {
        let offending = self
            .root
            .count_matching(&|n| matches!(n, Node::Less(..) | Node::UPred(..)));
        if offending > 0 {
            return Err(Error::MixedSorts("word construct in a tree formula".into()));
        }
        Ok(())
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        pretty(&self.root, &self.vars, &mut s, 0);
        s
    }
}

fn collect_free(n: &Node, bound: &mut Vec<bool>, free: &mut Vec<bool>) {
    let var = |v: usize, bound: &Vec<bool>, free: &mut Vec<bool>| {
        if !bound[v] {
            free[v] = true;
        }
    };
    match n {
        Node::True | Node::False => {}
        Node::Less(a, b) | Node::In(a, b) | Node::SuccL(a, b) | Node::SuccR(a, b)
        | Node::UPred(a, b) => {
            var(*a, bound, free);
            var(*b, bound, free);
        }
        Node::U1Pred(a) => var(*a, bound, free),
        Node::Not(a) => collect_free(a, bound, free),
        Node::Or(a, b) | Node::And(a, b) => {
            collect_free(a, bound, free);
            collect_free(b, bound, free);
        }
        Node::ForallFo(v, a)
        | Node::ExistsFo(v, a)
        | Node::ForallSo(v, a)
        | Node::ExistsSo(v, a)
        | Node::Cat(v, a)
        | Node::Meas1(v, a)
        | Node::CatPath(v, a)
        | Node::Meas1Path(v, a) => {
            let was = bound[*v];
            bound[*v] = true;
            collect_free(a, bound, free);
            bound[*v] = was;
        }
    }
}

fn pretty(n: &Node, vars: &[VarInfo], out: &mut String, prec: u8) {
    // precedence: 0 body, 1 or, 2 and, 3 unary
    let name = |v: VarId| vars[v].name.clone();
    match n {
        Node::True => out.push_str("true"),
        Node::False => out.push_str("false"),
        Node::Less(a, b) => out.push_str(&format!("{} < {}", name(*a), name(*b))),
        Node::In(a, b) => out.push_str(&format!("{} in {}", name(*a), name(*b))),
        Node::SuccL(a, b) => out.push_str(&format!("succL({}, {})", name(*a), name(*b))),
        Node::SuccR(a, b) => out.push_str(&format!("succR({}, {})", name(*a), name(*b))),
        Node::UPred(a, b) => out.push_str(&format!("U({}, {})", name(*a), name(*b))),
        Node::U1Pred(a) => out.push_str(&format!("U1({})", name(*a))),
        Node::Not(a) => {
            out.push('~');
            pretty(a, vars, out, 3);
        }
        Node::Or(a, b) => {
            let wrap = prec > 1;
            if wrap {
                out.push('(');
            }
            pretty(a, vars, out, 2);
            out.push_str(" | ");
            pretty(b, vars, out, 1);
            if wrap {
                out.push(')');
            }
        }
        Node::And(a, b) => {
            let wrap = prec > 2;
            if wrap {
                out.push('(');
            }
            pretty(a, vars, out, 3);
            out.push_str(" & ");
            pretty(b, vars, out, 2);
            if wrap {
                out.push(')');
            }
        }
        Node::ForallFo(v, a)
        | Node::ExistsFo(v, a)
        | Node::ForallSo(v, a)
        | Node::ExistsSo(v, a)
        | Node::Cat(v, a)
        | Node::Meas1(v, a)
        | Node::CatPath(v, a)
        | Node::Meas1Path(v, a) => {
            let kw = match n {
                Node::ForallFo(..) => "all1",
                Node::ExistsFo(..) => "ex1",
                Node::ForallSo(..) => "all2",
                Node::ExistsSo(..) => "ex2",
                Node::Cat(..) => "cat",
                Node::Meas1(..) => "meas1",
                Node::CatPath(..) => "catpath",
                Node::Meas1Path(..) => "meas1path",
                _ => unreachable!(),
            };
            let wrap = prec > 0;
            if wrap {
                out.push('(');
            }
            out.push_str(&format!("{kw} {}. ", name(*v)));
            pretty(a, vars, out, 0);
            if wrap {
                out.push(')');
            }
        }
    }
}
