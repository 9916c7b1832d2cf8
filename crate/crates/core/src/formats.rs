//! Text formats: automata (`.oaut`), lassos, regular trees (`.rtree`) and
//! play transcripts.
//!
//! An automaton file has header lines `kind:`, `alphabet:`, `states:`,
//! `initial:`, one acceptance line (`buchi:`, `parity:` or `muller:`), and
//! one line per transition `q -a-> expr` where the expression uses infix
//! `&`, `|`, parentheses and atoms `q3` or `(L,q3)`. Track letters print as
//! bit strings, symbolic letters by name, the unary letter as `.`.

use crate::alphabet::{Alphabet, Letter};
use crate::alt::AltMullerAutomaton;
use crate::det::{DetMullerAutomaton, Dpa, MullerFamily, StateSet};
use crate::error::{Error, Result};
use crate::expr::{Dir, TransitionExpr};
use crate::game::Player;
use crate::lasso::LassoWord;
use crate::nba::Nba;
use crate::tree::{AltMullerTreeAutomaton, GameAutomaton, GameMove, GameOp, RegularTree};

#[derive(Debug, Clone)]
pub enum AnyAutomaton {
    Nba(Nba),
    Dpa(Dpa),
    DetMuller(DetMullerAutomaton),
    AltMuller(AltMullerAutomaton),
    Game(GameAutomaton),
    AltTree(AltMullerTreeAutomaton),
}

impl AnyAutomaton {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyAutomaton::Nba(_) => "nba",
            AnyAutomaton::Dpa(_) => "dpa",
            AnyAutomaton::DetMuller(_) => "detmuller",
            AnyAutomaton::AltMuller(_) => "altmuller",
            AnyAutomaton::Game(_) => "game",
            AnyAutomaton::AltTree(_) => "alttree",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AnyAutomaton::Nba(a) => &a.alphabet,
            AnyAutomaton::Dpa(a) => &a.alphabet,
            AnyAutomaton::DetMuller(a) => &a.alphabet,
            AnyAutomaton::AltMuller(a) => &a.alphabet,
            AnyAutomaton::Game(a) => &a.alphabet,
            AnyAutomaton::AltTree(a) => &a.alphabet,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { at: format!("line {}", line + 1), msg: msg.into() }
}

// --- expressions -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    State(usize),
    Dir(Dir, usize),
}

fn parse_expr(text: &str, line: usize) -> Result<TransitionExpr<Atom>> {
    struct P<'a> {
        cs: Vec<char>,
        pos: usize,
        line: usize,
        _t: std::marker::PhantomData<&'a ()>,
    }
    impl P<'_> {
        fn skip(&mut self) {
            while self.pos < self.cs.len() && self.cs[self.pos].is_whitespace() {
                self.pos += 1;
            }
        }
        fn or_expr(&mut self) -> Result<TransitionExpr<Atom>> {
            let mut parts = vec![self.and_expr()?];
            loop {
                self.skip();
                if self.pos < self.cs.len() && self.cs[self.pos] == '|' {
                    self.pos += 1;
                    parts.push(self.and_expr()?);
                } else {
                    break;
                }
            }
            Ok(TransitionExpr::or(parts))
        }
        fn and_expr(&mut self) -> Result<TransitionExpr<Atom>> {
            let mut parts = vec![self.primary()?];
            loop {
                self.skip();
                if self.pos < self.cs.len() && self.cs[self.pos] == '&' {
                    self.pos += 1;
                    parts.push(self.primary()?);
                } else {
                    break;
                }
            }
            Ok(TransitionExpr::and(parts))
        }
        fn primary(&mut self) -> Result<TransitionExpr<Atom>> {
            self.skip();
            if self.pos >= self.cs.len() {
                return Err(parse_err(self.line, "expected an expression"));
            }
            match self.cs[self.pos] {
                '(' => {
                    // either a parenthesized expression or a (dir, state) atom
                    let save = self.pos;
                    self.pos += 1;
                    self.skip();
                    if self.pos < self.cs.len()
                        && (self.cs[self.pos] == 'L' || self.cs[self.pos] == 'R')
                    {
                        let d = if self.cs[self.pos] == 'L' { Dir::L } else { Dir::R };
                        let after = self.pos + 1;
                        // require "," next for an atom, else treat as expr
                        let mut j = after;
                        while j < self.cs.len() && self.cs[j].is_whitespace() {
                            j += 1;
                        }
                        if j < self.cs.len() && self.cs[j] == ',' {
                            self.pos = j + 1;
                            self.skip();
                            if self.pos >= self.cs.len() || self.cs[self.pos] != 'q' {
                                return Err(parse_err(self.line, "expected `q<id>`"));
                            }
                            self.pos += 1;
                            let id = self.number()?;
                            self.skip();
                            if self.pos >= self.cs.len() || self.cs[self.pos] != ')' {
                                return Err(parse_err(self.line, "expected `)`"));
                            }
                            self.pos += 1;
                            return Ok(TransitionExpr::Atom(Atom::Dir(d, id)));
                        }
                        self.pos = save;
                    }
                    self.pos = save + 1;
                    let e = self.or_expr()?;
                    self.skip();
                    if self.pos >= self.cs.len() || self.cs[self.pos] != ')' {
                        return Err(parse_err(self.line, "expected `)`"));
                    }
                    self.pos += 1;
                    Ok(e)
                }
                'q' => {
                    self.pos += 1;
                    Ok(TransitionExpr::Atom(Atom::State(self.number()?)))
                }
                c => Err(parse_err(self.line, format!("unexpected `{c}` in expression"))),
            }
        }
        fn number(&mut self) -> Result<usize> {
            let start = self.pos;
            while self.pos < self.cs.len() && self.cs[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(parse_err(self.line, "expected a number"));
            }
            let s: String = self.cs[start..self.pos].iter().collect();
            s.parse().map_err(|_| parse_err(self.line, "bad number"))
        }
    }
    let mut p = P { cs: text.chars().collect(), pos: 0, line, _t: std::marker::PhantomData };
    let e = p.or_expr()?;
    p.skip();
    if p.pos != p.cs.len() {
        return Err(parse_err(line, "trailing expression input"));
    }
    Ok(e)
}

fn write_expr_word(e: &TransitionExpr<usize>, out: &mut String, prec: u8) {
    match e {
        TransitionExpr::Atom(q) => out.push_str(&format!("q{q}")),
        TransitionExpr::And(cs) => {
            let wrap = prec > 1;
            if wrap {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" & ");
                }
                write_expr_word(c, out, 2);
            }
            if wrap {
                out.push(')');
            }
        }
        TransitionExpr::Or(cs) => {
            let wrap = prec > 0;
            if wrap {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                write_expr_word(c, out, 1);
            }
            if wrap {
                out.push(')');
            }
        }
    }
}

fn write_expr_tree(e: &TransitionExpr<(Dir, usize)>, out: &mut String, prec: u8) {
    match e {
        TransitionExpr::Atom((d, q)) => out.push_str(&format!("({d},q{q})")),
        TransitionExpr::And(cs) => {
            let wrap = prec > 1;
            if wrap {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" & ");
                }
                write_expr_tree(c, out, 2);
            }
            if wrap {
                out.push(')');
            }
        }
        TransitionExpr::Or(cs) => {
            let wrap = prec > 0;
            if wrap {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                write_expr_tree(c, out, 1);
            }
            if wrap {
                out.push(')');
            }
        }
    }
}

fn to_word_expr(e: &TransitionExpr<Atom>, line: usize) -> Result<TransitionExpr<usize>> {
    match e {
        TransitionExpr::Atom(Atom::State(q)) => Ok(TransitionExpr::Atom(*q)),
        TransitionExpr::Atom(Atom::Dir(..)) => {
            Err(parse_err(line, "directional atom in a word automaton"))
        }
        TransitionExpr::And(cs) => Ok(TransitionExpr::And(
            cs.iter().map(|c| to_word_expr(c, line)).collect::<Result<_>>()?,
        )),
        TransitionExpr::Or(cs) => Ok(TransitionExpr::Or(
            cs.iter().map(|c| to_word_expr(c, line)).collect::<Result<_>>()?,
        )),
    }
}

fn to_tree_expr(e: &TransitionExpr<Atom>, line: usize) -> Result<TransitionExpr<(Dir, usize)>> {
    match e {
        TransitionExpr::Atom(Atom::Dir(d, q)) => Ok(TransitionExpr::Atom((*d, *q))),
        TransitionExpr::Atom(Atom::State(_)) => {
            Err(parse_err(line, "bare state atom in a tree automaton"))
        }
        TransitionExpr::And(cs) => Ok(TransitionExpr::And(
            cs.iter().map(|c| to_tree_expr(c, line)).collect::<Result<_>>()?,
        )),
        TransitionExpr::Or(cs) => Ok(TransitionExpr::Or(
            cs.iter().map(|c| to_tree_expr(c, line)).collect::<Result<_>>()?,
        )),
    }
}

// --- automata --------------------------------------------------------------

struct Header {
    kind: String,
    alphabet: Alphabet,
    n_states: usize,
    initial: Vec<usize>,
    buchi: Option<StateSet>,
    parity: Option<Vec<(usize, u32)>>,
    muller: Option<MullerFamily>,
    transitions: Vec<(usize, Letter, TransitionExpr<Atom>)>,
}

fn parse_sets(text: &str, line: usize) -> Result<MullerFamily> {
    let mut fam = MullerFamily::empty();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let inner = part
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .ok_or_else(|| parse_err(line, "family sets use `{i,j}`"))?;
        let set: StateSet = inner
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse().map_err(|_| parse_err(line, "bad state id")))
            .collect::<Result<_>>()?;
        fam.insert(set);
    }
    Ok(fam)
}

pub fn parse_oaut(text: &str) -> Result<AnyAutomaton> {
    let mut h = Header {
        kind: String::new(),
        alphabet: Alphabet::unary(),
        n_states: 0,
        initial: Vec::new(),
        buchi: None,
        parity: None,
        muller: None,
        transitions: Vec::new(),
    };
    let mut have_alphabet = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("kind:") {
            h.kind = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            let mut toks = rest.split_whitespace();
            match toks.next() {
                Some("tracks") => {
                    h.alphabet = Alphabet::tracks(toks.map(|s| s.to_string()))?;
                }
                Some("symbols") => {
                    h.alphabet = Alphabet::symbols(toks.map(|s| s.to_string()))?;
                }
                _ => return Err(parse_err(ln, "alphabet needs `tracks ...` or `symbols ...`")),
            }
            have_alphabet = true;
        } else if let Some(rest) = line.strip_prefix("states:") {
            h.n_states =
                rest.trim().parse().map_err(|_| parse_err(ln, "bad state count"))?;
        } else if let Some(rest) = line.strip_prefix("initial:") {
            h.initial = rest
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| parse_err(ln, "bad initial id")))
                .collect::<Result<_>>()?;
        } else if let Some(rest) = line.strip_prefix("buchi:") {
            h.buchi = Some(
                rest.split_whitespace()
                    .map(|s| s.parse().map_err(|_| parse_err(ln, "bad accepting id")))
                    .collect::<Result<_>>()?,
            );
        } else if let Some(rest) = line.strip_prefix("parity:") {
            let mut v = Vec::new();
            for tok in rest.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let (id, pr) =
                    tok.split_once(':').ok_or_else(|| parse_err(ln, "parity uses `id:prio`"))?;
                v.push((
                    id.trim().parse().map_err(|_| parse_err(ln, "bad id"))?,
                    pr.trim().parse().map_err(|_| parse_err(ln, "bad priority"))?,
                ));
            }
            h.parity = Some(v);
        } else if let Some(rest) = line.strip_prefix("muller:") {
            h.muller = Some(parse_sets(rest, ln)?);
        } else if line.contains("->") {
            // q -a-> expr
            let (lhs, rhs) =
                line.split_once("->").ok_or_else(|| parse_err(ln, "bad transition"))?;
            let lhs = lhs.trim();
            let q_part = lhs
                .split_once('-')
                .ok_or_else(|| parse_err(ln, "transition needs `q -a->`"))?;
            let q: usize = q_part
                .0
                .trim()
                .strip_prefix('q')
                .unwrap_or(q_part.0.trim())
                .parse()
                .map_err(|_| parse_err(ln, "bad source state"))?;
            if !have_alphabet {
                return Err(parse_err(ln, "alphabet must come before transitions"));
            }
            let letter = h.alphabet.parse_letter(q_part.1.trim())?;
            let expr = parse_expr(rhs.trim(), ln)?;
            h.transitions.push((q, letter, expr));
        } else {
            return Err(parse_err(ln, format!("unrecognized line `{line}`")));
        }
    }
    build_automaton(h)
}

fn build_automaton(h: Header) -> Result<AnyAutomaton> {
    let n = h.n_states;
    let k = h.alphabet.len();
    let single = |e: &TransitionExpr<Atom>, kindmsg: &str| -> Result<usize> {
        match e {
            TransitionExpr::Atom(Atom::State(q)) => Ok(*q),
            _ => Err(Error::Parse {
                at: kindmsg.into(),
                msg: "deterministic automata need single-atom transitions".into(),
            }),
        }
    };
    match h.kind.as_str() {
        "nba" => {
            let mut transitions = vec![vec![StateSet::new(); k]; n];
            for (q, a, e) in &h.transitions {
                let we = to_word_expr(e, 0)?;
                if !we.is_and_free() {
                    return Err(Error::Parse {
                        at: "nba".into(),
                        msg: "conjunction in a nondeterministic transition".into(),
                    });
                }
                for atom in we.atoms() {
                    transitions[*q][*a].insert(atom);
                }
            }
            let acc = h.buchi.ok_or_else(|| Error::Parse {
                at: "nba".into(),
                msg: "missing `buchi:` line".into(),
            })?;
            Ok(AnyAutomaton::Nba(Nba::new(
                h.alphabet,
                h.initial.into_iter().collect(),
                transitions,
                acc,
            )?))
        }
        "dpa" => {
            let mut delta = vec![vec![usize::MAX; k]; n];
            for (q, a, e) in &h.transitions {
                delta[*q][*a] = single(e, "dpa")?;
            }
            if delta.iter().any(|row| row.iter().any(|&t| t == usize::MAX)) {
                return Err(Error::Parse { at: "dpa".into(), msg: "missing transitions".into() });
            }
            let mut priority = vec![0u32; n];
            for (id, p) in h.parity.ok_or_else(|| Error::Parse {
                at: "dpa".into(),
                msg: "missing `parity:` line".into(),
            })? {
                priority[id] = p;
            }
            let initial = *h.initial.first().ok_or_else(|| Error::Parse {
                at: "dpa".into(),
                msg: "missing initial state".into(),
            })?;
            Ok(AnyAutomaton::Dpa(Dpa::new(h.alphabet, initial, delta, priority)?))
        }
        "detmuller" => {
            let mut delta = vec![vec![usize::MAX; k]; n];
            for (q, a, e) in &h.transitions {
                delta[*q][*a] = single(e, "detmuller")?;
            }
            if delta.iter().any(|row| row.iter().any(|&t| t == usize::MAX)) {
                return Err(Error::Parse {
                    at: "detmuller".into(),
                    msg: "missing transitions".into(),
                });
            }
            let fam = h.muller.ok_or_else(|| Error::Parse {
                at: "detmuller".into(),
                msg: "missing `muller:` line".into(),
            })?;
            let initial = *h.initial.first().ok_or_else(|| Error::Parse {
                at: "detmuller".into(),
                msg: "missing initial state".into(),
            })?;
            Ok(AnyAutomaton::DetMuller(DetMullerAutomaton::new(
                h.alphabet, initial, delta, fam,
            )?))
        }
        "altmuller" => {
            let mut delta: Vec<Vec<Option<TransitionExpr<usize>>>> = vec![vec![None; k]; n];
            for (q, a, e) in &h.transitions {
                delta[*q][*a] = Some(to_word_expr(e, 0)?);
            }
            let delta: Vec<Vec<TransitionExpr<usize>>> = delta
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| {
                            e.ok_or_else(|| Error::Parse {
                                at: "altmuller".into(),
                                msg: "missing transitions".into(),
                            })
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let fam = h.muller.ok_or_else(|| Error::Parse {
                at: "altmuller".into(),
                msg: "missing `muller:` line".into(),
            })?;
            let initial = *h.initial.first().ok_or_else(|| Error::Parse {
                at: "altmuller".into(),
                msg: "missing initial state".into(),
            })?;
            Ok(AnyAutomaton::AltMuller(AltMullerAutomaton::new(
                h.alphabet, initial, delta, fam,
            )?))
        }
        "game" => {
            let mut delta: Vec<Vec<Option<GameMove>>> = vec![vec![None; k]; n];
            for (q, a, e) in &h.transitions {
                let te = to_tree_expr(e, 0)?;
                let mv = match &te {
                    TransitionExpr::And(cs) | TransitionExpr::Or(cs) if cs.len() == 2 => {
                        let op = if matches!(te, TransitionExpr::And(_)) {
                            GameOp::And
                        } else {
                            GameOp::Or
                        };
                        match (&cs[0], &cs[1]) {
                            (
                                TransitionExpr::Atom((Dir::L, l)),
                                TransitionExpr::Atom((Dir::R, r)),
                            ) => GameMove { op, left: *l, right: *r },
                            _ => {
                                return Err(Error::NotGameAutomaton(
                                    "transitions must be `(L,qi) op (R,qj)`".into(),
                                ))
                            }
                        }
                    }
                    _ => {
                        return Err(Error::NotGameAutomaton(
                            "transitions must be a single binary operator".into(),
                        ))
                    }
                };
                delta[*q][*a] = Some(mv);
            }
            let delta: Vec<Vec<GameMove>> = delta
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| {
                            e.ok_or_else(|| Error::Parse {
                                at: "game".into(),
                                msg: "missing transitions".into(),
                            })
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let fam = h.muller.ok_or_else(|| Error::Parse {
                at: "game".into(),
                msg: "missing `muller:` line".into(),
            })?;
            let initial = *h.initial.first().ok_or_else(|| Error::Parse {
                at: "game".into(),
                msg: "missing initial state".into(),
            })?;
            Ok(AnyAutomaton::Game(GameAutomaton::new(h.alphabet, initial, delta, fam)?))
        }
        "alttree" => {
            let mut delta: Vec<Vec<Option<TransitionExpr<(Dir, usize)>>>> =
                vec![vec![None; k]; n];
            for (q, a, e) in &h.transitions {
                delta[*q][*a] = Some(to_tree_expr(e, 0)?);
            }
            let delta: Vec<Vec<TransitionExpr<(Dir, usize)>>> = delta
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| {
                            e.ok_or_else(|| Error::Parse {
                                at: "alttree".into(),
                                msg: "missing transitions".into(),
                            })
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let fam = h.muller.ok_or_else(|| Error::Parse {
                at: "alttree".into(),
                msg: "missing `muller:` line".into(),
            })?;
            let initial = *h.initial.first().ok_or_else(|| Error::Parse {
                at: "alttree".into(),
                msg: "missing initial state".into(),
            })?;
            let a = AltMullerTreeAutomaton {
                alphabet: h.alphabet,
                n_states: delta.len(),
                initial,
                delta,
                muller: fam,
            };
            a.validate()?;
            Ok(AnyAutomaton::AltTree(a))
        }
        other => Err(Error::Parse {
            at: "header".into(),
            msg: format!("unknown kind `{other}`"),
        }),
    }
}

fn write_alphabet(a: &Alphabet, out: &mut String) {
    if let Some(tracks) = a.track_names() {
        out.push_str("alphabet: tracks");
        for t in tracks {
            out.push(' ');
            out.push_str(t);
        }
    } else {
        out.push_str("alphabet: symbols");
        for s in a.symbol_names().unwrap() {
            out.push(' ');
            out.push_str(s);
        }
    }
    out.push('\n');
}

fn write_family(f: &MullerFamily, out: &mut String) {
    out.push_str("muller:");
    let mut first = true;
    for set in f.iter() {
        if first {
            out.push(' ');
            first = false;
        } else {
            out.push(';');
        }
        out.push('{');
        let ids: Vec<String> = set.iter().map(|q| q.to_string()).collect();
        out.push_str(&ids.join(","));
        out.push('}');
    }
    out.push('\n');
}

pub fn write_oaut(a: &AnyAutomaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("kind: {}\n", a.kind()));
    write_alphabet(a.alphabet(), &mut out);
    match a {
        AnyAutomaton::Nba(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            let ids: Vec<String> = x.initial.iter().map(|q| q.to_string()).collect();
            out.push_str(&format!("initial: {}\n", ids.join(" ")));
            let ids: Vec<String> = x.accepting.iter().map(|q| q.to_string()).collect();
            out.push_str(&format!("buchi: {}\n", ids.join(" ")));
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    let succ = x.succ(q, a2);
                    if succ.is_empty() {
                        continue;
                    }
                    let parts: Vec<TransitionExpr<usize>> =
                        succ.iter().map(|&t| TransitionExpr::Atom(t)).collect();
                    let mut e = String::new();
                    write_expr_word(&TransitionExpr::or(parts), &mut e, 0);
                    out.push_str(&format!("q{q} -{}-> {e}\n", x.alphabet.letter_name(a2)));
                }
            }
        }
        AnyAutomaton::Dpa(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            out.push_str(&format!("initial: {}\n", x.initial));
            let ps: Vec<String> =
                x.priority.iter().enumerate().map(|(q, p)| format!("{q}:{p}")).collect();
            out.push_str(&format!("parity: {}\n", ps.join(",")));
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    out.push_str(&format!(
                        "q{q} -{}-> q{}\n",
                        x.alphabet.letter_name(a2),
                        x.step(q, a2)
                    ));
                }
            }
        }
        AnyAutomaton::DetMuller(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            out.push_str(&format!("initial: {}\n", x.initial));
            write_family(&x.muller, &mut out);
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    out.push_str(&format!(
                        "q{q} -{}-> q{}\n",
                        x.alphabet.letter_name(a2),
                        x.step(q, a2)
                    ));
                }
            }
        }
        AnyAutomaton::AltMuller(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            out.push_str(&format!("initial: {}\n", x.initial));
            write_family(&x.muller, &mut out);
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    let mut e = String::new();
                    write_expr_word(x.expr(q, a2), &mut e, 0);
                    out.push_str(&format!("q{q} -{}-> {e}\n", x.alphabet.letter_name(a2)));
                }
            }
        }
        AnyAutomaton::Game(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            out.push_str(&format!("initial: {}\n", x.initial));
            write_family(&x.muller, &mut out);
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    let mv = x.delta[q][a2];
                    let op = match mv.op {
                        GameOp::And => "&",
                        GameOp::Or => "|",
                    };
                    out.push_str(&format!(
                        "q{q} -{}-> (L,q{}) {op} (R,q{})\n",
                        x.alphabet.letter_name(a2),
                        mv.left,
                        mv.right
                    ));
                }
            }
        }
        AnyAutomaton::AltTree(x) => {
            out.push_str(&format!("states: {}\n", x.n_states));
            out.push_str(&format!("initial: {}\n", x.initial));
            write_family(&x.muller, &mut out);
            for q in 0..x.n_states {
                for a2 in x.alphabet.letters() {
                    let mut e = String::new();
                    write_expr_tree(x.expr(q, a2), &mut e, 0);
                    out.push_str(&format!("q{q} -{}-> {e}\n", x.alphabet.letter_name(a2)));
                }
            }
        }
    }
    out
}

// --- lassos ----------------------------------------------------------------

/// `1 0 $ 1 1` reads as prefix `1 0` and cycle `1 1`.
pub fn parse_lasso(text: &str, alphabet: &Alphabet) -> Result<LassoWord> {
    let (u, v) = text.split_once('$').ok_or_else(|| Error::Parse {
        at: text.into(),
        msg: "lasso needs `$` between prefix and cycle".into(),
    })?;
    let parse_part = |part: &str| -> Result<Vec<Letter>> {
        part.split_whitespace().map(|t| alphabet.parse_letter(t)).collect()
    };
    let prefix = parse_part(u)?;
    let cycle = parse_part(v)?;
    if cycle.is_empty() {
        return Err(Error::Parse { at: text.into(), msg: "empty lasso cycle".into() });
    }
    Ok(LassoWord::new(prefix, cycle))
}

pub fn write_lasso(w: &LassoWord, alphabet: &Alphabet) -> String {
    let names = |v: &[Letter]| -> String {
        v.iter().map(|&l| alphabet.letter_name(l)).collect::<Vec<_>>().join(" ")
    };
    if w.prefix.is_empty() {
        format!("$ {}", names(&w.cycle))
    } else {
        format!("{} $ {}", names(&w.prefix), names(&w.cycle))
    }
}

// --- regular trees ----------------------------------------------------------

/// One line per node: `node <id> <label> L=<id> R=<id>`; the first node is
/// the root. An optional `alphabet:` line fixes the labels, binary tracks
/// otherwise... symbols by name.
pub fn parse_rtree(text: &str) -> Result<RegularTree> {
    let mut alphabet = Alphabet::binary();
    let mut rows: Vec<(usize, String, usize, usize)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            let mut toks = rest.split_whitespace();
            match toks.next() {
                Some("tracks") => alphabet = Alphabet::tracks(toks.map(|s| s.to_string()))?,
                Some("symbols") => alphabet = Alphabet::symbols(toks.map(|s| s.to_string()))?,
                _ => return Err(parse_err(ln, "bad alphabet line")),
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "node" {
            return Err(parse_err(ln, "expected `node <id> <label> L=<id> R=<id>`"));
        }
        let id: usize = toks[1].parse().map_err(|_| parse_err(ln, "bad node id"))?;
        let l: usize = toks[3]
            .strip_prefix("L=")
            .ok_or_else(|| parse_err(ln, "expected `L=<id>`"))?
            .parse()
            .map_err(|_| parse_err(ln, "bad left child"))?;
        let r: usize = toks[4]
            .strip_prefix("R=")
            .ok_or_else(|| parse_err(ln, "expected `R=<id>`"))?
            .parse()
            .map_err(|_| parse_err(ln, "bad right child"))?;
        rows.push((id, toks[2].to_string(), l, r));
    }
    if rows.is_empty() {
        return Err(Error::Parse { at: "tree".into(), msg: "no nodes".into() });
    }
    let n = rows.iter().map(|r| r.0).max().unwrap() + 1;
    let root = rows[0].0;
    let mut labels = vec![usize::MAX; n];
    let mut left = vec![0usize; n];
    let mut right = vec![0usize; n];
    for (id, label, l, r) in rows {
        labels[id] = alphabet.parse_letter(&label)?;
        left[id] = l;
        right[id] = r;
    }
    if labels.iter().any(|&l| l == usize::MAX) {
        return Err(Error::Parse { at: "tree".into(), msg: "missing node ids".into() });
    }
    RegularTree::new(alphabet, labels, left, right, root)
}

pub fn write_rtree(t: &RegularTree) -> String {
    let mut out = String::new();
    write_alphabet(&t.alphabet, &mut out);
    // root first, then the rest in id order
    let mut order: Vec<usize> = vec![t.root];
    order.extend((0..t.n_nodes()).filter(|&v| v != t.root));
    for v in order {
        out.push_str(&format!(
            "node {v} {} L={} R={}\n",
            t.alphabet.letter_name(t.labels[v]),
            t.left[v],
            t.right[v]
        ));
    }
    out
}

// --- transcripts -------------------------------------------------------------

/// `E: 1 0 1` / `A: 0`, comments with `#`.
pub fn parse_transcript(text: &str, alphabet: &Alphabet) -> Result<Vec<(Player, Vec<Letter>)>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (seat, rest) = line.split_once(':').ok_or_else(|| parse_err(ln, "missing seat"))?;
        let player = match seat.trim() {
            "E" => Player::Exists,
            "A" => Player::Forall,
            other => return Err(parse_err(ln, format!("unknown seat `{other}`"))),
        };
        let letters: Vec<Letter> = rest
            .split_whitespace()
            .map(|t| alphabet.parse_letter(t))
            .collect::<Result<_>>()?;
        out.push((player, letters));
    }
    Ok(out)
}

pub fn write_transcript(moves: &[(Player, Vec<Letter>)], alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for (seat, letters) in moves {
        let parts: Vec<String> = letters.iter().map(|&l| alphabet.letter_name(l)).collect();
        out.push_str(&format!("{seat}: {}\n", parts.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nba_round_trip() {
        let text = "\
kind: nba
alphabet: tracks X
states: 2
initial: 0
buchi: 1
q0 -0-> q0
q0 -1-> q0 | q1
q1 -1-> q1
";
        let a = parse_oaut(text).unwrap();
        let AnyAutomaton::Nba(nba) = &a else { panic!() };
        assert_eq!(nba.n_states, 2);
        assert!(nba.succ(0, 1).contains(&1));
        let printed = write_oaut(&a);
        let again = parse_oaut(&printed).unwrap();
        let AnyAutomaton::Nba(nba2) = &again else { panic!() };
        assert_eq!(nba, nba2);
    }

    #[test]
    fn detmuller_and_game_round_trip() {
        let text = "\
kind: detmuller
alphabet: symbols 0 1 R
states: 2
initial: 0
muller: {0};{0,1}
q0 -0-> q0
q0 -1-> q1
q0 -R-> q0
q1 -0-> q0
q1 -1-> q1
q1 -R-> q1
";
        let a = parse_oaut(text).unwrap();
        let printed = write_oaut(&a);
        let AnyAutomaton::DetMuller(x) = &a else { panic!() };
        let AnyAutomaton::DetMuller(y) = &parse_oaut(&printed).unwrap().clone() else {
            panic!()
        };
        assert_eq!(x, &y.clone());

        let game = "\
kind: game
alphabet: tracks X
states: 2
initial: 0
muller: {1}
q0 -0-> (L,q0) | (R,q1)
q0 -1-> (L,q1) & (R,q1)
q1 -0-> (L,q1) & (R,q1)
q1 -1-> (L,q1) & (R,q1)
";
        let g = parse_oaut(game).unwrap();
        let printed = write_oaut(&g);
        let AnyAutomaton::Game(gx) = &g else { panic!() };
        let AnyAutomaton::Game(gy) = parse_oaut(&printed).unwrap() else { panic!() };
        assert_eq!(gx, &gy);
    }

    #[test]
    fn altmuller_expressions() {
        let text = "\
kind: altmuller
alphabet: tracks X
states: 3
initial: 0
muller: {1};{1,2}
q0 -0-> (q1 & q2) | q0
q0 -1-> q1 & (q2 | q0)
q1 -0-> q1
q1 -1-> q1
q2 -0-> q2
q2 -1-> q2
";
        let a = parse_oaut(text).unwrap();
        let printed = write_oaut(&a);
        let again = parse_oaut(&printed).unwrap();
        assert_eq!(write_oaut(&again), printed);
    }

    #[test]
    fn lasso_format() {
        let alphabet = Alphabet::binary();
        let w = parse_lasso("1 0 $ 1 1", &alphabet).unwrap();
        assert_eq!(w.prefix, vec![1, 0]);
        assert_eq!(w.cycle, vec![1, 1]);
        assert_eq!(write_lasso(&w, &alphabet), "1 0 $ 1 1");
        let w = parse_lasso("$ 0", &alphabet).unwrap();
        assert!(w.prefix.is_empty());
        assert!(parse_lasso("1 0", &alphabet).is_err());
        assert!(parse_lasso("1 $", &alphabet).is_err());
        // multi-track letters are bit strings
        let two = Alphabet::tracks(["X", "Y"]).unwrap();
        let w = parse_lasso("10 $ 01 11", &two).unwrap();
        assert_eq!(w.prefix, vec![2]);
        assert_eq!(w.cycle, vec![1, 3]);
    }

    #[test]
    fn rtree_round_trip() {
        let text = "\
alphabet: symbols 0 1
node 0 0 L=0 R=1
node 1 1 L=1 R=1
";
        let t = parse_rtree(text).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.labels, vec![0, 1]);
        let printed = write_rtree(&t);
        assert_eq!(parse_rtree(&printed).unwrap(), t);
    }

    #[test]
    fn transcript_round_trip() {
        let alphabet = Alphabet::binary();
        let text = "# opening\nA: 0\nE: 1 0 1\nA: 0\n";
        let moves = parse_transcript(text, &alphabet).unwrap();
        assert_eq!(moves.len(), 3);
        assert_eq!(moves[1], (Player::Exists, vec![1, 0, 1]));
        let printed = write_transcript(&moves, &alphabet);
        assert_eq!(parse_transcript(&printed, &alphabet).unwrap(), moves);
    }
}
