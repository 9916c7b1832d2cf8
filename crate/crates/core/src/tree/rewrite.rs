//! Quantifier rewriters over tree formulas: eliminating the path-category
//! quantifier into plain second-order syntax, unfolding the path-measure
//! quantifier through the path transducer, expressing it with the abstract
//! finite-intersection predicate, and interpreting word formulas on the
//! leftmost branch.
//!
//! All outputs are syntax; none of them is compiled (tree compilation is
//! out of scope), so the rewriters are checked structurally.

use crate::error::{Error, Result};
use crate::formula::{Formula, Node, Sort, VarId};

/// `x` is the root: it has no parent.
fn is_root(f: &mut Formula, x: VarId) -> Node {
    let y = f.fresh_var("y", Sort::First);
    Node::Not(Box::new(Node::ExistsFo(
        y,
        Box::new(Node::Or(Box::new(Node::SuccL(y, x)), Box::new(Node::SuccR(y, x)))),
    )))
}

/// `v` is an ancestor-or-self of `w`: every parent-closed set containing
/// `w` contains `v`.
fn prefix_leq(f: &mut Formula, v: VarId, w: VarId) -> Node {
    let z = f.fresh_var("Z", Sort::Second);
    let a = f.fresh_var("a", Sort::First);
    let b = f.fresh_var("b", Sort::First);
    let parent_closed = Node::ForallFo(
        a,
        Box::new(Node::ForallFo(
            b,
            Box::new(Node::implies(
                Node::And(
                    Box::new(Node::In(b, z)),
                    Box::new(Node::Or(
                        Box::new(Node::SuccL(a, b)),
                        Box::new(Node::SuccR(a, b)),
                    )),
                ),
                Node::In(a, z),
            )),
        )),
    );
    Node::ForallSo(
        z,
        Box::new(Node::implies(
            Node::And(Box::new(Node::In(w, z)), Box::new(parent_closed)),
            Node::In(v, z),
        )),
    )
}

fn prefix_strict(f: &mut Formula, v: VarId, w: VarId) -> Node {
    let le = prefix_leq(f, v, w);
    let ge = prefix_leq(f, w, v);
    Node::And(Box::new(le), Box::new(Node::Not(Box::new(ge))))
}

/// `P` is a path: contains the root, is parent-closed, and has exactly one
/// child of each member.
fn is_path(f: &mut Formula, p: VarId) -> Node {
    let r = f.fresh_var("r", Sort::First);
    let root_in = {
        let rooted = is_root(f, r);
        Node::ForallFo(r, Box::new(Node::implies(rooted, Node::In(r, p))))
    };
    let a = f.fresh_var("a", Sort::First);
    let b = f.fresh_var("b", Sort::First);
    let parent_closed = Node::ForallFo(
        a,
        Box::new(Node::ForallFo(
            b,
            Box::new(Node::implies(
                Node::And(
                    Box::new(Node::In(b, p)),
                    Box::new(Node::Or(
                        Box::new(Node::SuccL(a, b)),
                        Box::new(Node::SuccR(a, b)),
                    )),
                ),
                Node::In(a, p),
            )),
        )),
    );
    let y = f.fresh_var("y", Sort::First);
    let zl = f.fresh_var("zl", Sort::First);
    let zr = f.fresh_var("zr", Sort::First);
    let one_child = Node::ForallFo(
        y,
        Box::new(Node::implies(
            Node::In(y, p),
            Node::ExistsFo(
                zl,
                Box::new(Node::ExistsFo(
                    zr,
                    Box::new(Node::and_all(vec![
                        Node::SuccL(y, zl),
                        Node::SuccR(y, zr),
                        Node::Or(
                            Box::new(Node::And(
                                Box::new(Node::In(zl, p)),
                                Box::new(Node::Not(Box::new(Node::In(zr, p)))),
                            )),
                            Box::new(Node::And(
                                Box::new(Node::Not(Box::new(Node::In(zl, p)))),
                                Box::new(Node::In(zr, p)),
                            )),
                        ),
                    ])),
                )),
            ),
        )),
    );
    Node::and_all(vec![root_in, parent_closed, one_child])
}

/// Infinitely many members of `p` lie in `x`: every member has a strictly
/// deeper member of `p` inside `x`.
fn meets_infinitely(f: &mut Formula, p: VarId, x: VarId) -> Node {
    let v = f.fresh_var("v", Sort::First);
    let w = f.fresh_var("w", Sort::First);
    let strict = prefix_strict(f, v, w);
    Node::ForallFo(
        v,
        Box::new(Node::implies(
            Node::In(v, p),
            Node::ExistsFo(
                w,
                Box::new(Node::and_all(vec![Node::In(w, p), strict, Node::In(w, x)])),
            ),
        )),
    )
}

/// The path determined by `x`: `y` is a member iff its unique successor in
/// the path goes left exactly when `y` is in `x`.
fn f_map(f: &mut Formula, x: VarId, yvar: VarId) -> Node {
    let pathness = is_path(f, yvar);
    let y = f.fresh_var("y", Sort::First);
    let z = f.fresh_var("z", Sort::First);
    let step = Node::ForallFo(
        y,
        Box::new(Node::implies(
            Node::In(y, yvar),
            Node::ExistsFo(
                z,
                Box::new(Node::And(
                    Box::new(Node::SuccL(y, z)),
                    Box::new(Node::And(
                        Box::new(Node::implies(Node::In(z, yvar), Node::In(y, x))),
                        Box::new(Node::implies(Node::In(y, x), Node::In(z, yvar))),
                    )),
                )),
            ),
        )),
    );
    Node::And(Box::new(pathness), Box::new(step))
}

fn map_children(n: &Node, f: &mut Formula, rw: &impl Fn(&Node, &mut Formula) -> Node) -> Node {
    match n {
        Node::Not(a) => Node::Not(Box::new(rw(a, f))),
        Node::Or(a, b) => Node::Or(Box::new(rw(a, f)), Box::new(rw(b, f))),
        Node::And(a, b) => Node::And(Box::new(rw(a, f)), Box::new(rw(b, f))),
        Node::ForallFo(v, a) => Node::ForallFo(*v, Box::new(rw(a, f))),
        Node::ExistsFo(v, a) => Node::ExistsFo(*v, Box::new(rw(a, f))),
        Node::ForallSo(v, a) => Node::ForallSo(*v, Box::new(rw(a, f))),
        Node::ExistsSo(v, a) => Node::ExistsSo(*v, Box::new(rw(a, f))),
        Node::Cat(v, a) => Node::Cat(*v, Box::new(rw(a, f))),
        Node::Meas1(v, a) => Node::Meas1(*v, Box::new(rw(a, f))),
        Node::CatPath(v, a) => Node::CatPath(*v, Box::new(rw(a, f))),
        Node::Meas1Path(v, a) => Node::Meas1Path(*v, Box::new(rw(a, f))),
        other => other.clone(),
    }
}

/// Eliminates every path-category quantifier: a comeager set of paths
/// contains all paths meeting some everywhere-dense vertex set infinitely
/// often.
pub fn rewrite_category_path(f: &Formula) -> Formula {
    let mut out = Formula { vars: f.vars.clone(), root: Node::True };
    fn rw(n: &Node, f: &mut Formula) -> Node {
        if let Node::CatPath(p, body) = n {
            let body = rw(body, f);
            let x = f.fresh_var("X", Sort::Second);
            let dense = {
                let v = f.fresh_var("v", Sort::First);
                let w = f.fresh_var("w", Sort::First);
                let le = prefix_leq(f, v, w);
                Node::ForallFo(
                    v,
                    Box::new(Node::ExistsFo(
                        w,
                        Box::new(Node::And(Box::new(le), Box::new(Node::In(w, x)))),
                    )),
                )
            };
            let pathness = is_path(f, *p);
            let meets = meets_infinitely(f, *p, x);
            return Node::ExistsSo(
                x,
                Box::new(Node::And(
                    Box::new(dense),
                    Box::new(Node::ForallSo(
                        *p,
                        Box::new(Node::implies(
                            Node::And(Box::new(pathness), Box::new(meets)),
                            body,
                        )),
                    )),
                )),
            );
        }
        map_children(n, f, &rw)
    }
    out.root = rw(&f.root, &mut out);
    out
}

/// Unfolds every path-measure quantifier through the measure-preserving
/// path transducer: quantify a random labeled tree and pick out its path.
pub fn rewrite_measure_path(f: &Formula) -> Formula {
    let mut out = Formula { vars: f.vars.clone(), root: Node::True };
    fn rw(n: &Node, f: &mut Formula) -> Node {
        if let Node::Meas1Path(y, body) = n {
            let body = rw(body, f);
            let x = f.fresh_var("X", Sort::Second);
            let fxy = f_map(f, x, *y);
            return Node::Meas1(
                x,
                Box::new(Node::ExistsSo(
                    *y,
                    Box::new(Node::And(Box::new(fxy), Box::new(body))),
                )),
            );
        }
        map_children(n, f, &rw)
    }
    out.root = rw(&f.root, &mut out);
    out
}

/// Expresses every path-measure quantifier with the abstract predicate
/// `U1(Y)` ("almost every path meets `Y` only finitely often"): almost all
/// paths satisfy the body iff some `U1` set screens the exceptions.
pub fn rewrite_u1(f: &Formula) -> Formula {
    let mut out = Formula { vars: f.vars.clone(), root: Node::True };
    fn rw(n: &Node, f: &mut Formula) -> Node {
        if let Node::Meas1Path(p, body) = n {
            let body = rw(body, f);
            let y = f.fresh_var("Y", Sort::Second);
            let pathness = is_path(f, *p);
            let meets_inf = meets_infinitely(f, *p, y);
            return Node::ExistsSo(
                y,
                Box::new(Node::And(
                    Box::new(Node::U1Pred(y)),
                    Box::new(Node::ForallSo(
                        *p,
                        Box::new(Node::implies(
                            Node::And(
                                Box::new(pathness),
                                Box::new(Node::Not(Box::new(meets_inf))),
                            ),
                            body,
                        )),
                    )),
                )),
            );
        }
        map_children(n, f, &rw)
    }
    out.root = rw(&f.root, &mut out);
    out
}

/// Interprets a word formula on the leftmost branch of the tree: positions
/// become the vertices without a right step, order becomes the ancestor
/// relation, and the measure quantifier carries over vertex-wise.
pub fn interpret_s1s_in_s2s(f: &Formula) -> Result<Formula> {
    f.check_word()?;
    if f.root.count_matching(&|n| matches!(n, Node::UPred(..))) > 0 {
        return Err(Error::UndecidableFragment(
            "the unboundedness predicate has no branch interpretation here".into(),
        ));
    }
    let mut out = Formula { vars: f.vars.clone(), root: Node::True };
    // x lies on the leftmost branch: every left-closed set containing the
    // root contains x
    fn on_left_branch(f: &mut Formula, x: VarId) -> Node {
        let z = f.fresh_var("Z", Sort::Second);
        let r = f.fresh_var("r", Sort::First);
        let a = f.fresh_var("a", Sort::First);
        let b = f.fresh_var("b", Sort::First);
        let rooted = is_root(f, r);
        let has_root = Node::ForallFo(r, Box::new(Node::implies(rooted, Node::In(r, z))));
        let left_closed = Node::ForallFo(
            a,
            Box::new(Node::ForallFo(
                b,
                Box::new(Node::implies(
                    Node::And(Box::new(Node::In(a, z)), Box::new(Node::SuccL(a, b))),
                    Node::In(b, z),
                )),
            )),
        );
        Node::ForallSo(
            z,
            Box::new(Node::implies(
                Node::And(Box::new(has_root), Box::new(left_closed)),
                Node::In(x, z),
            )),
        )
    }
    fn rw(n: &Node, f: &mut Formula) -> Node {
        match n {
            Node::Less(x, y) => prefix_strict(f, *x, *y),
            Node::ForallFo(v, a) => {
                let body = rw(a, f);
                let guard = on_left_branch(f, *v);
                Node::ForallFo(*v, Box::new(Node::implies(guard, body)))
            }
            Node::ExistsFo(v, a) => {
                let body = rw(a, f);
                let guard = on_left_branch(f, *v);
                Node::ExistsFo(*v, Box::new(Node::And(Box::new(guard), Box::new(body))))
            }
            other => map_children(other, f, &rw),
        }
    }
    out.root = rw(&f.root, &mut out);
    out.check_tree()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn count(f: &Formula, pred: impl Fn(&Node) -> bool) -> usize {
        f.root.count_matching(&pred)
    }

    #[test]
    fn catpath_rewrites_to_plain_syntax() {
        let f = parse("catpath P. true").unwrap();
        let g = rewrite_category_path(&f);
        assert_eq!(count(&g, |n| matches!(n, Node::CatPath(..))), 0);
        assert_eq!(count(&g, |n| matches!(n, Node::Meas1(..) | Node::Meas1Path(..))), 0);
        assert!(g.is_closed());
        g.check_tree().unwrap();
        // nesting under negation is homomorphic
        let f2 = parse("~ catpath P. true").unwrap();
        let g2 = rewrite_category_path(&f2);
        assert_eq!(g2.root.count_nodes(), g.root.count_nodes() + 1);
    }

    #[test]
    fn measure_path_shape() {
        let f = parse("meas1path P. true").unwrap();
        let g = rewrite_measure_path(&f);
        assert_eq!(count(&g, |n| matches!(n, Node::Meas1Path(..))), 0);
        assert_eq!(count(&g, |n| matches!(n, Node::Meas1(..))), 1);
        // identity without the quantifier
        let f2 = parse("succL(x, y)").unwrap();
        assert_eq!(rewrite_measure_path(&f2).root, f2.root);
        // double nesting gets independent fresh tree variables
        let f3 = parse("meas1path P. meas1path Q. true").unwrap();
        let g3 = rewrite_measure_path(&f3);
        assert_eq!(count(&g3, |n| matches!(n, Node::Meas1(..))), 2);
        let fresh: Vec<&str> = g3
            .vars
            .iter()
            .filter(|v| v.name.starts_with('X'))
            .map(|v| v.name.as_str())
            .collect();
        assert!(fresh.len() >= 2);
        let mut dedup = fresh.clone();
        dedup.dedup();
        assert_eq!(fresh.len(), dedup.len());
    }

    #[test]
    fn u1_shape() {
        let f = parse("meas1path P. true").unwrap();
        let g = rewrite_u1(&f);
        assert_eq!(count(&g, |n| matches!(n, Node::U1Pred(..))), 1);
        assert_eq!(count(&g, |n| matches!(n, Node::Meas1Path(..) | Node::Meas1(..))), 0);
        assert!(g.is_closed());
    }

    #[test]
    fn interpretation_shapes() {
        let f = parse("ex1 x. ex1 y. x < y").unwrap();
        let g = interpret_s1s_in_s2s(&f).unwrap();
        g.check_tree().unwrap();
        assert_eq!(count(&g, |n| matches!(n, Node::Less(..))), 0);
        assert!(count(&g, |n| matches!(n, Node::SuccL(..))) > 0);
        // second-order structure carries over, with the measure quantifier kept
        let f2 = parse("meas1 X. ex1 x. x in X").unwrap();
        let g2 = interpret_s1s_in_s2s(&f2).unwrap();
        assert_eq!(count(&g2, |n| matches!(n, Node::Meas1(..))), 1);
        // tree atoms are rejected on the way in
        assert!(interpret_s1s_in_s2s(&parse("succL(x, y)").unwrap()).is_err());
    }
}
