//! Concrete syntax for formulas.
//!
//! Keywords `all1/ex1` bind first-order variables, `all2/ex2/cat/meas1/
//! catpath/meas1path` bind second-order ones. Connectives `&`, `|`, `->`,
//! `~`; atoms `x < y`, `x in X`, `succL(x,y)`, `succR(x,y)`, `U(X1,XR)`,
//! `true`, `false`; `inf-many(x in X)` abbreviates "arbitrarily late
//! positions of X". Quantifier bodies extend as far right as possible.
//! Shadowed names resolve to the innermost binder.

use crate::error::{Error, Result};
use crate::formula::{Formula, Node, Sort, VarId, VarInfo};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Kw(&'static str),
    LPar,
    RPar,
    Comma,
    Dot,
    Amp,
    Pipe,
    Arrow,
    Tilde,
    Less,
}

const KEYWORDS: &[&str] = &[
    "all1", "ex1", "all2", "ex2", "cat", "meas1", "catpath", "meas1path", "in", "succL",
    "succR", "U", "U1", "true", "false", "inf-many",
];

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let cs: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push((Tok::LPar, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RPar, i));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, i));
                i += 1;
            }
            '.' => {
                out.push((Tok::Dot, i));
                i += 1;
            }
            '&' => {
                out.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                out.push((Tok::Pipe, i));
                i += 1;
            }
            '~' => {
                out.push((Tok::Tilde, i));
                i += 1;
            }
            '<' => {
                out.push((Tok::Less, i));
                i += 1;
            }
            '-' => {
                if cs.get(i + 1) == Some(&'>') {
                    out.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(Error::Parse { at: format!("offset {i}"), msg: "stray '-'".into() });
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < cs.len()
                    && (cs[i].is_alphanumeric()
                        || cs[i] == '_'
                        || (cs[i] == '-' && cs.get(i + 1) == Some(&'m')))
                {
                    // the one dashed keyword is inf-many
                    i += 1;
                }
                let word: String = cs[start..i].iter().collect();
                if let Some(kw) = KEYWORDS.iter().find(|&&k| k == word) {
                    out.push((Tok::Kw(kw), start));
                } else {
                    out.push((Tok::Ident(word), start));
                }
            }
            _ => {
                return Err(Error::Parse {
                    at: format!("offset {i}"),
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<VarInfo>,
    /// Innermost-first scope stack of (name, id).
    scope: Vec<(String, VarId)>,
    /// Free variables by name.
    free: Vec<(String, VarId)>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> String {
        self.toks
            .get(self.pos)
            .map(|(_, o)| format!("offset {o}"))
            .unwrap_or_else(|| "end of input".into())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse { at: self.at(), msg: format!("expected {what}") })
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(Error::Parse { at: self.at(), msg: format!("expected {what}") }),
        }
    }

    /// Looks a name up, creating a free variable of the given sort if new.
    fn var(&mut self, name: &str, sort: Sort) -> Result<VarId> {
        if let Some((_, id)) = self.scope.iter().rev().find(|(n, _)| n == name) {
            let id = *id;
            if self.vars[id].sort != sort {
                return Err(Error::Parse {
                    at: self.at(),
                    msg: format!("variable `{name}` used with mixed sorts"),
                });
            }
            return Ok(id);
        }
        if let Some((_, id)) = self.free.iter().find(|(n, _)| n == name) {
            let id = *id;
            if self.vars[id].sort != sort {
                return Err(Error::Parse {
                    at: self.at(),
                    msg: format!("free variable `{name}` used with mixed sorts"),
                });
            }
            return Ok(id);
        }
        let id = self.vars.len();
        self.vars.push(VarInfo { name: name.to_string(), sort });
        self.free.push((name.to_string(), id));
        Ok(id)
    }

    fn bind(&mut self, name: String, sort: Sort) -> VarId {
        let id = self.vars.len();
        self.vars.push(VarInfo { name: name.clone(), sort });
        self.scope.push((name, id));
        id
    }

    fn formula(&mut self) -> Result<Node> {
        let lhs = self.or_expr()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Node::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Node> {
        let mut lhs = self.and_expr()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let rhs = self.and_expr()?;
            lhs = Node::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self, kw: &str) -> Result<Node> {
        let sort = match kw {
            "all1" | "ex1" => Sort::First,
            _ => Sort::Second,
        };
        let name = self.ident("a variable after the quantifier")?;
        self.expect(Tok::Dot, "`.` after the bound variable")?;
        let id = self.bind(name, sort);
        let body = self.formula()?;
        self.scope.pop();
        Ok(match kw {
            "all1" => Node::ForallFo(id, Box::new(body)),
            "ex1" => Node::ExistsFo(id, Box::new(body)),
            "all2" => Node::ForallSo(id, Box::new(body)),
            "ex2" => Node::ExistsSo(id, Box::new(body)),
            "cat" => Node::Cat(id, Box::new(body)),
            "meas1" => Node::Meas1(id, Box::new(body)),
            "catpath" => Node::CatPath(id, Box::new(body)),
            "meas1path" => Node::Meas1Path(id, Box::new(body)),
            _ => unreachable!(),
        })
    }

    fn unary(&mut self) -> Result<Node> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Node::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Kw(kw))
                if matches!(
                    kw,
                    "all1" | "ex1" | "all2" | "ex2" | "cat" | "meas1" | "catpath" | "meas1path"
                ) =>
            {
                self.pos += 1;
                self.quantifier(kw)
            }
            Some(Tok::Kw("true")) => {
                self.pos += 1;
                Ok(Node::True)
            }
            Some(Tok::Kw("false")) => {
                self.pos += 1;
                Ok(Node::False)
            }
            Some(Tok::Kw(kw)) if kw == "succL" || kw == "succR" => {
                self.pos += 1;
                self.expect(Tok::LPar, "`(`")?;
                let x = self.ident("a first-order variable")?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.ident("a first-order variable")?;
                self.expect(Tok::RPar, "`)`")?;
                let xv = self.var(&x, Sort::First)?;
                let yv = self.var(&y, Sort::First)?;
                Ok(if kw == "succL" { Node::SuccL(xv, yv) } else { Node::SuccR(xv, yv) })
            }
            Some(Tok::Kw("U")) => {
                self.pos += 1;
                self.expect(Tok::LPar, "`(`")?;
                let x = self.ident("a set variable")?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.ident("a set variable")?;
                self.expect(Tok::RPar, "`)`")?;
                if x == y {
                    return Err(Error::Parse {
                        at: self.at(),
                        msg: "U needs two distinct set variables".into(),
                    });
                }
                let xv = self.var(&x, Sort::Second)?;
                let yv = self.var(&y, Sort::Second)?;
                Ok(Node::UPred(xv, yv))
            }
            Some(Tok::Kw("U1")) => {
                self.pos += 1;
                self.expect(Tok::LPar, "`(`")?;
                let x = self.ident("a set variable")?;
                self.expect(Tok::RPar, "`)`")?;
                let xv = self.var(&x, Sort::Second)?;
                Ok(Node::U1Pred(xv))
            }
            Some(Tok::Kw("inf-many")) => {
                // inf-many(x in X)  ==  all1 b. ex1 x. (b < x & x in X)
                self.pos += 1;
                self.expect(Tok::LPar, "`(`")?;
                let x = self.ident("a first-order variable")?;
                self.expect(Tok::Kw("in"), "`in`")?;
                let set = self.ident("a set variable")?;
                self.expect(Tok::RPar, "`)`")?;
                let setv = self.var(&set, Sort::Second)?;
                let b = self.bind(format!("_bound_{x}"), Sort::First);
                let xv = self.bind(x, Sort::First);
                self.scope.pop();
                self.scope.pop();
                Ok(Node::ForallFo(
                    b,
                    Box::new(Node::ExistsFo(
                        xv,
                        Box::new(Node::And(
                            Box::new(Node::Less(b, xv)),
                            Box::new(Node::In(xv, setv)),
                        )),
                    )),
                ))
            }
            Some(Tok::LPar) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RPar, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Less) => {
                        self.pos += 1;
                        let y = self.ident("a first-order variable")?;
                        let xv = self.var(&name, Sort::First)?;
                        let yv = self.var(&y, Sort::First)?;
                        Ok(Node::Less(xv, yv))
                    }
                    Some(Tok::Kw("in")) => {
                        self.pos += 1;
                        let set = self.ident("a set variable")?;
                        let xv = self.var(&name, Sort::First)?;
                        let sv = self.var(&set, Sort::Second)?;
                        Ok(Node::In(xv, sv))
                    }
                    _ => Err(Error::Parse {
                        at: self.at(),
                        msg: format!("expected `<` or `in` after `{name}`"),
                    }),
                }
            }
            _ => Err(Error::Parse { at: self.at(), msg: "expected a formula".into() }),
        }
    }
}

/// Parses the concrete syntax; free variables keep their source names.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, vars: Vec::new(), scope: Vec::new(), free: Vec::new() };
    let root = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse { at: p.at(), msg: "trailing input".into() });
    }
    Ok(Formula { vars: p.vars, root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbounded_set_example() {
        let f = parse("ex2 X. all1 x. (x in X -> ex1 y. (x < y & y in X))").unwrap();
        assert!(f.is_closed());
        assert!(f.check_word().is_ok());
    }

    #[test]
    fn free_variables_and_sorts() {
        let f = parse("x in X").unwrap();
        let free = f.free_vars();
        assert_eq!(free.len(), 2);
        let names: Vec<&str> = free.iter().map(|&v| f.vars[v].name.as_str()).collect();
        assert_eq!(names, ["X", "x"]);
        assert_eq!(f.vars[free[1]].sort, Sort::First);
        assert_eq!(f.vars[free[0]].sort, Sort::Second);
    }

    #[test]
    fn shadowing_resolves_innermost() {
        let f = parse("cat X. meas1 X. all1 x. x in X").unwrap();
        // the inner binder owns the occurrence
        match &f.root {
            Node::Cat(outer, inner) => match inner.as_ref() {
                Node::Meas1(mid, body) => {
                    assert_ne!(outer, mid);
                    match body.as_ref() {
                        Node::ForallFo(_, atom) => match atom.as_ref() {
                            Node::In(_, set) => assert_eq!(set, mid),
                            other => panic!("unexpected {other:?}"),
                        },
                        other => panic!("unexpected {other:?}"),
                    }
                }
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_sort_rejected() {
        assert!(parse("x in X & X < x").is_err());
        assert!(parse("U(X, X)").is_err());
    }

    #[test]
    fn pretty_round_trips() {
        for text in [
            "ex2 X. all1 x. (x in X -> ex1 y. (x < y & y in X))",
            "cat X. ex1 x. x in X",
            "~(x in X) | true",
            "U(X1, XR) & false",
            "meas1 X. inf-many(x in X)",
        ] {
            let f = parse(text).unwrap();
            let printed = f.pretty();
            let again = parse(&printed).unwrap();
            assert_eq!(again.pretty(), printed, "{text} -> {printed}");
        }
    }

    #[test]
    fn errors_carry_location() {
        let err = parse("x in").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("expected"), "{msg}");
    }
}
