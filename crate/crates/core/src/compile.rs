//! Compilation of word formulas to Büchi automata, and sentence decision.
//!
//! Bottom-up: atoms become two- or three-state automata over the tracks of
//! their variables, boolean connectives become automaton operations,
//! second-order quantifiers become projections, first-order variables ride
//! on singleton-constrained tracks, and the category quantifier runs the
//! two-player elimination. The measure quantifier is only decided outermost;
//! anywhere else the fragment is undecidable and compilation refuses.

use crate::alphabet::Alphabet;
use crate::category::eliminate_category;
use crate::det::dpa_to_detmuller;
use crate::det::StateSet;
use crate::error::{Error, Result};
use crate::formula::{Formula, Node, Sort, VarId};
use crate::measure;
use crate::nba::Nba;
use crate::safra::{complement_nba, determinize};

#[derive(Debug, Clone)]
pub struct CompiledLanguage {
    pub nba: Nba,
    /// Track names in canonical (sorted) order; also the automaton alphabet.
    pub tracks: Vec<String>,
    /// Human-readable notes about eliminations applied.
    pub provenance: Vec<String>,
}

struct Compiler<'a> {
    f: &'a Formula,
    budget: usize,
    provenance: Vec<String>,
}

fn universal_nba(tracks: Vec<String>) -> Result<Nba> {
    let alphabet = Alphabet::tracks(tracks)?;
    let transitions = vec![vec![[0].into_iter().collect::<StateSet>(); alphabet.len()]];
    Nba::new(alphabet, [0].into_iter().collect(), transitions, [0].into_iter().collect())
}

fn empty_nba(tracks: Vec<String>) -> Result<Nba> {
    let alphabet = Alphabet::tracks(tracks)?;
    let transitions = vec![vec![[0].into_iter().collect::<StateSet>(); alphabet.len()]];
    Nba::new(alphabet, [0].into_iter().collect(), transitions, StateSet::new())
}

/// "Track `t` carries exactly one 1."
fn singleton_nba(tracks: Vec<String>, t: &str) -> Result<Nba> {
    let alphabet = Alphabet::tracks(tracks)?;
    let ti = alphabet.track_names().unwrap().iter().position(|x| x == t).unwrap();
    let mut transitions = vec![vec![StateSet::new(); alphabet.len()]; 2];
    for l in alphabet.letters() {
        if alphabet.bit(l, ti) {
            transitions[0][l].insert(1);
        } else {
            transitions[0][l].insert(0);
            transitions[1][l].insert(1);
        }
    }
    Nba::new(alphabet, [0].into_iter().collect(), transitions, [1].into_iter().collect())
}

/// "Some position has a 1 on `x` and a 1 on `set`" (the membership atom
/// under the singleton convention).
fn in_nba(tracks: Vec<String>, x: &str, set: &str) -> Result<Nba> {
    let alphabet = Alphabet::tracks(tracks)?;
    let names = alphabet.track_names().unwrap();
    let xi = names.iter().position(|n| n == x).unwrap();
    let si = names.iter().position(|n| n == set).unwrap();
    let mut transitions = vec![vec![StateSet::new(); alphabet.len()]; 2];
    for l in alphabet.letters() {
        transitions[0][l].insert(0);
        if alphabet.bit(l, xi) && alphabet.bit(l, si) {
            transitions[0][l].insert(1);
        }
        transitions[1][l].insert(1);
    }
    Nba::new(alphabet, [0].into_iter().collect(), transitions, [1].into_iter().collect())
}

/// "Some 1 on `x` strictly before some 1 on `y`."
fn less_nba(tracks: Vec<String>, x: &str, y: &str) -> Result<Nba> {
    let alphabet = Alphabet::tracks(tracks)?;
    let names = alphabet.track_names().unwrap();
    let xi = names.iter().position(|n| n == x).unwrap();
    let yi = names.iter().position(|n| n == y).unwrap();
    let mut transitions = vec![vec![StateSet::new(); alphabet.len()]; 3];
    for l in alphabet.letters() {
        transitions[0][l].insert(0);
        if alphabet.bit(l, xi) {
            transitions[0][l].insert(1);
        }
        transitions[1][l].insert(1);
        if alphabet.bit(l, yi) {
            transitions[1][l].insert(2);
        }
        transitions[2][l].insert(2);
    }
    Nba::new(alphabet, [0].into_iter().collect(), transitions, [2].into_iter().collect())
}

fn merge_tracks(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl Compiler<'_> {
    fn name(&self, v: VarId) -> String {
        self.f.vars[v].name.clone()
    }

    fn align(&self, x: Nba, tracks: &[String]) -> Result<Nba> {
        if x.alphabet.track_names() == Some(tracks) {
            Ok(x)
        } else {
            x.cylindrify(tracks)
        }
    }

    fn go(&mut self, n: &Node) -> Result<(Nba, Vec<String>)> {
        match n {
            Node::True => Ok((universal_nba(vec![])?, vec![])),
            Node::False => Ok((empty_nba(vec![])?, vec![])),
            Node::Less(x, y) => {
                let tracks = merge_tracks(&[self.name(*x)], &[self.name(*y)]);
                Ok((less_nba(tracks.clone(), &self.name(*x), &self.name(*y))?, tracks))
            }
            Node::In(x, set) => {
                let tracks = merge_tracks(&[self.name(*x)], &[self.name(*set)]);
                Ok((in_nba(tracks.clone(), &self.name(*x), &self.name(*set))?, tracks))
            }
            Node::UPred(..) => Err(Error::UndecidableFragment(
                "U(...) only rewrites to a formula with a nested measure quantifier; \
                 it cannot be compiled"
                    .into(),
            )),
            Node::SuccL(..)
            | Node::SuccR(..)
            | Node::CatPath(..)
            | Node::Meas1Path(..)
            | Node::U1Pred(..) => {
                Err(Error::MixedSorts("tree construct in a word formula".into()))
            }
            Node::Meas1(_, _) => Err(Error::UndecidableFragment(
                "the measure quantifier is only decided outermost".into(),
            )),
            Node::Not(a) => {
                let (na, tr) = self.go(a)?;
                Ok((complement_nba(&na, self.budget)?, tr))
            }
            Node::Or(a, b) => {
                let (na, ta) = self.go(a)?;
                let (nb, tb) = self.go(b)?;
                let tracks = merge_tracks(&ta, &tb);
                let na = self.align(na, &tracks)?;
                let nb = self.align(nb, &tracks)?;
                Ok((na.union(&nb)?, tracks))
            }
            Node::And(a, b) => {
                let (na, ta) = self.go(a)?;
                let (nb, tb) = self.go(b)?;
                let tracks = merge_tracks(&ta, &tb);
                let na = self.align(na, &tracks)?;
                let nb = self.align(nb, &tracks)?;
                Ok((na.intersection(&nb)?.trimmed(), tracks))
            }
            Node::ExistsSo(v, a) => {
                let (na, tr) = self.go(a)?;
                self.project(na, tr, &self.name(*v))
            }
            Node::ForallSo(v, a) => {
                let (na, tr) = self.go(a)?;
                let comp = complement_nba(&na, self.budget)?;
                let (p, tr) = self.project(comp, tr, &self.name(*v))?;
                Ok((complement_nba(&p, self.budget)?, tr))
            }
            Node::ExistsFo(v, a) => {
                let (na, tr) = self.go(a)?;
                let guarded = self.guard_singleton(na, &tr, &self.name(*v))?;
                self.project(guarded.0, guarded.1, &self.name(*v))
            }
            Node::ForallFo(v, a) => {
                // all1 x. f  ==  ~ ex1 x. ~f
                let (na, tr) = self.go(a)?;
                let neg = complement_nba(&na, self.budget)?;
                let (g, tr) = self.guard_singleton(neg, &tr, &self.name(*v))?;
                let (p, tr) = self.project(g, tr, &self.name(*v))?;
                Ok((complement_nba(&p, self.budget)?, tr))
            }
            Node::Cat(v, a) => {
                let (na, tr) = self.go(a)?;
                let x = self.name(*v);
                if !tr.contains(&x) {
                    // the section is constant in the quantified component
                    return Ok((na, tr));
                }
                // move the quantified track last, determinize, eliminate
                let rest: Vec<String> = tr.iter().filter(|t| **t != x).cloned().collect();
                let mut reordered = rest.clone();
                reordered.push(x.clone());
                let moved = {
                    let target = Alphabet::tracks(reordered.clone())?;
                    let old_of_new: Vec<usize> = target
                        .letters()
                        .map(|nl| {
                            let bits: Vec<bool> = tr
                                .iter()
                                .map(|t| {
                                    let pos = reordered.iter().position(|r| r == t).unwrap();
                                    target.bit(nl, pos)
                                })
                                .collect();
                            na.alphabet.letter_from_bits(&bits)
                        })
                        .collect();
                    na.remap_letters(target, &old_of_new)
                };
                let dpa = determinize(&moved, self.budget)?;
                let det = dpa_to_detmuller(&dpa)?;
                let out = eliminate_category(&det, rest.len(), self.budget)?;
                self.provenance.push(format!(
                    "category quantifier over {x} eliminated via the tagged two-player \
                     construction"
                ));
                Ok((out, rest))
            }
        }
    }

    fn project(&self, nba: Nba, tracks: Vec<String>, name: &str) -> Result<(Nba, Vec<String>)> {
        match tracks.iter().position(|t| t == name) {
            None => Ok((nba, tracks)),
            Some(i) => {
                let mut rest = tracks;
                rest.remove(i);
                Ok((nba.project_track(i)?.trimmed(), rest))
            }
        }
    }

    fn guard_singleton(
        &self,
        nba: Nba,
        tracks: &[String],
        name: &str,
    ) -> Result<(Nba, Vec<String>)> {
        let tracks = merge_tracks(tracks, &[name.to_string()]);
        let nba = self.align(nba, &tracks)?;
        let guard = singleton_nba(tracks.clone(), name)?;
        Ok((nba.intersection(&guard)?.trimmed(), tracks))
    }
}

fn meas1_only_outermost(n: &Node) -> bool {
    // no Meas1 strictly below the root
    fn below(n: &Node) -> usize {
        n.count_matching(&|m| matches!(m, Node::Meas1(..)))
    }
    match n {
        Node::Meas1(_, body) => below(body) == 0,
        other => below(other) == 0,
    }
}

/// Compiles a word formula to an automaton over its free-variable tracks.
/// Free first-order variables are singleton-constrained.
pub fn compile(f: &Formula, budget: usize) -> Result<CompiledLanguage> {
    f.check_word()?;
    if !meas1_only_outermost(&f.root) {
        return Err(Error::UndecidableFragment(
            "a nested measure quantifier makes the fragment undecidable".into(),
        ));
    }
    if let Node::Meas1(v, body) = &f.root {
        // an outermost measure sentence compiles to a constant language
        let sub = Formula { vars: f.vars.clone(), root: (**body).clone() };
        let free = sub.free_vars();
        if free.iter().any(|x| x != v) {
            return Err(Error::UndecidableFragment(
                "the outermost measure quantifier must close the formula".into(),
            ));
        }
        let verdict = decide_meas1_body(f, *v, body, budget)?;
        let nba = if verdict { universal_nba(vec![])? } else { empty_nba(vec![])? };
        return Ok(CompiledLanguage {
            nba,
            tracks: vec![],
            provenance: vec!["outermost measure quantifier decided by chain analysis".into()],
        });
    }
    let mut c = Compiler { f, budget, provenance: Vec::new() };
    let (mut nba, mut tracks) = c.go(&f.root)?;
    // singleton guards for free first-order variables
    for &v in &f.free_vars() {
        if f.vars[v].sort == Sort::First {
            let (g, tr) = c.guard_singleton(nba, &tracks, &f.vars[v].name)?;
            nba = g;
            tracks = tr;
        }
    }
    // free second-order variables may not occur in any atom; widen so the
    // alphabet matches the free variable list
    let all_free: Vec<String> = f.free_vars().iter().map(|&v| f.vars[v].name.clone()).collect();
    let tracks = merge_tracks(&tracks, &all_free);
    let nba = c.align(nba, &tracks)?;
    Ok(CompiledLanguage { nba, tracks, provenance: c.provenance })
}

fn decide_meas1_body(f: &Formula, v: VarId, body: &Node, budget: usize) -> Result<bool> {
    let sub = Formula { vars: f.vars.clone(), root: body.clone() };
    let compiled = compile(&sub, budget)?;
    // the quantified track may be absent when the body ignores it
    let _ = v;
    let dpa = determinize(&compiled.nba, budget)?;
    measure::decide_measure_one(&dpa)
}

/// Sentence verdict with the cross-oracle result for outermost category or
/// measure quantifiers.
#[derive(Debug, Clone)]
pub struct SentenceVerdict {
    pub value: bool,
    pub cross: Option<measure::StaigerReport>,
}

/// Decides a closed word formula. For sentences with an outermost category
/// or measure quantifier the verdict is additionally cross-checked against
/// the other route; disagreement is a fatal diagnostic.
pub fn decide_sentence(f: &Formula, budget: usize) -> Result<SentenceVerdict> {
    f.check_word()?;
    if !f.is_closed() {
        return Err(Error::Other("decide needs a closed formula".into()));
    }
    // outermost category / measure: decide via both routes
    if let Node::Cat(v, body) | Node::Meas1(v, body) = &f.root {
        let sub = Formula { vars: f.vars.clone(), root: (**body).clone() };
        let compiled = compile(&sub, budget)?;
        let dpa = determinize(&compiled.nba, budget)?;
        let det = dpa_to_detmuller(&dpa)?;
        let report = measure::staiger_crosscheck(&det)?;
        let _ = v;
        if !report.agree() {
            return Err(Error::Other(format!(
                "cross-oracle disagreement on {:?}: game={}, measure={}",
                f.pretty(),
                report.comeager,
                report.measure_one
            )));
        }
        let value = match &f.root {
            Node::Cat(..) => report.comeager,
            _ => report.measure_one,
        };
        return Ok(SentenceVerdict { value, cross: Some(report) });
    }
    let compiled = compile(f, budget)?;
    Ok(SentenceVerdict { value: compiled.nba.is_nonempty(), cross: None })
}
