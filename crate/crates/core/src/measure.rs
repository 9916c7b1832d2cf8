//! Exact Lebesgue measure of omega-regular word languages under the uniform
//! letter distribution.
//!
//! A total deterministic automaton is read as a finite Markov chain: every
//! letter has probability `1/|alphabet|`. Almost every run is absorbed into
//! a recurrent class (a bottom SCC of the support graph) and its inf-set is
//! then exactly that class, so the measure is the total absorption
//! probability of the accepting classes. Absorption probabilities come from
//! a linear solve over exact rationals.

use num_traits::One;

use crate::det::{DetMullerAutomaton, Dpa, StateSet};
use crate::error::Result;
use crate::linalg;
use crate::scalar::Field;
use crate::scc;
use crate::Rational;

/// Deterministic omega-automaton viewed as a chain with a class-level
/// acceptance test.
pub trait DeterministicOmega {
    fn n_states(&self) -> usize;
    fn initial(&self) -> usize;
    fn n_letters(&self) -> usize;
    fn step(&self, q: usize, letter: usize) -> usize;
    /// Does a run whose inf-set is exactly `class` accept?
    fn class_accepts(&self, class: &StateSet) -> bool;
}

impl DeterministicOmega for DetMullerAutomaton {
    fn n_states(&self) -> usize {
        self.n_states
    }
    fn initial(&self) -> usize {
        self.initial
    }
    fn n_letters(&self) -> usize {
        self.alphabet.len()
    }
    fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }
    fn class_accepts(&self, class: &StateSet) -> bool {
        self.muller.contains(class)
    }
}

impl DeterministicOmega for Dpa {
    fn n_states(&self) -> usize {
        self.n_states
    }
    fn initial(&self) -> usize {
        self.initial
    }
    fn n_letters(&self) -> usize {
        self.alphabet.len()
    }
    fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }
    fn class_accepts(&self, class: &StateSet) -> bool {
        class.iter().map(|&q| self.priority[q]).max().map_or(false, |m| m % 2 == 0)
    }
}

/// One recurrent class of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrentClass<T> {
    pub states: StateSet,
    pub accepting: bool,
    /// Probability of absorption into this class from the initial state.
    pub absorption: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport<T> {
    pub measure: T,
    pub classes: Vec<RecurrentClass<T>>,
}

/// Measure of the language, together with the per-class analysis.
pub fn measure_report<T: Field>(a: &impl DeterministicOmega) -> Result<MeasureReport<T>> {
    let n = a.n_states();
    let succ = |q: usize| -> Vec<usize> {
        let mut out: Vec<usize> = (0..a.n_letters()).map(|l| a.step(q, l)).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let reach = scc::reachable(n, &[a.initial()], &succ);
    let bottoms: Vec<Vec<usize>> = scc::bottom_sccs(n, &succ)
        .into_iter()
        .filter(|c| c.iter().any(|&q| reach[q]))
        .collect();
    let mut class_of = vec![usize::MAX; n];
    for (ci, c) in bottoms.iter().enumerate() {
        for &q in c {
            class_of[q] = ci;
        }
    }
    let transient: Vec<usize> = (0..n)
        .filter(|&q| reach[q] && class_of[q] == usize::MAX)
        .collect();
    let tindex = {
        let mut idx = vec![usize::MAX; n];
        for (i, &q) in transient.iter().enumerate() {
            idx[q] = i;
        }
        idx
    };
    let p = T::recip_usize(a.n_letters());
    let mut classes = Vec::with_capacity(bottoms.len());
    for (ci, c) in bottoms.iter().enumerate() {
        let absorption = if class_of[a.initial()] == ci {
            T::one()
        } else if transient.is_empty() || class_of[a.initial()] != usize::MAX {
            T::zero()
        } else {
            // x_q = sum_l p * value(step(q, l)) over transient q
            let m = transient.len();
            let mut mat = vec![vec![T::zero(); m]; m];
            let mut rhs = vec![T::zero(); m];
            for (i, &q) in transient.iter().enumerate() {
                mat[i][i] = T::one();
                for l in 0..a.n_letters() {
                    let t = a.step(q, l);
                    if class_of[t] == ci {
                        rhs[i] = rhs[i].clone() + p.clone();
                    } else if class_of[t] == usize::MAX {
                        let j = tindex[t];
                        mat[i][j] = mat[i][j].clone() - p.clone();
                    }
                }
            }
            let x = linalg::solve(mat, rhs)?;
            x[tindex[a.initial()]].clone()
        };
        classes.push(RecurrentClass {
            states: c.iter().copied().collect(),
            accepting: a.class_accepts(&c.iter().copied().collect()),
            absorption,
        });
    }
    let measure = classes
        .iter()
        .filter(|c| c.accepting)
        .fold(T::zero(), |acc, c| acc + c.absorption.clone());
    Ok(MeasureReport { measure, classes })
}

/// Exact measure of the language of a total deterministic automaton.
pub fn language_measure(a: &impl DeterministicOmega) -> Result<Rational> {
    Ok(measure_report::<Rational>(a)?.measure)
}

pub fn decide_measure_one(a: &impl DeterministicOmega) -> Result<bool> {
    Ok(language_measure(a)? == Rational::one())
}

/// Agreement report between the measure route and the game route for the
/// same language. The two verdicts must agree for regular word languages;
/// a mismatch falsifies one of the implementations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaigerReport {
    pub measure_one: bool,
    pub comeager: bool,
}

impl StaigerReport {
    pub fn agree(&self) -> bool {
        self.measure_one == self.comeager
    }
}

pub fn staiger_crosscheck(a: &DetMullerAutomaton) -> Result<StaigerReport> {
    let measure_one = decide_measure_one(a)?;
    let (comeager, _) = crate::category::decide_comeager(a)?;
    Ok(StaigerReport { measure_one, comeager })
}

/// Decides a closed sentence whose outermost quantifier is the measure
/// quantifier over an otherwise measure-free word formula.
pub fn decide_forall1_sentence(f: &crate::formula::Formula, budget: usize) -> Result<bool> {
    use crate::formula::Node;
    let Node::Meas1(v, body) = &f.root else {
        return Err(crate::error::Error::UndecidableFragment(
            "expected an outermost measure quantifier".into(),
        ));
    };
    let nested = body.count_matching(&|n| matches!(n, Node::Meas1(..)));
    if nested > 0 {
        return Err(crate::error::Error::UndecidableFragment(
            "a nested measure quantifier makes the fragment undecidable".into(),
        ));
    }
    let sub = crate::formula::Formula { vars: f.vars.clone(), root: (**body).clone() };
    if sub.free_vars().iter().any(|x| x != v) {
        return Err(crate::error::Error::UndecidableFragment(
            "the outermost measure quantifier must close the formula".into(),
        ));
    }
    let compiled = crate::compile::compile(&sub, budget)?;
    let dpa = crate::safra::determinize(&compiled.nba, budget)?;
    decide_measure_one(&dpa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::det::MullerFamily;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// "First letter is 1" over {0,1}: 3 states.
    fn first_letter_one() -> DetMullerAutomaton {
        // 0: start, 1: accept sink, 2: reject sink
        let delta = vec![vec![2, 1], vec![1, 1], vec![2, 2]];
        DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            delta,
            MullerFamily::new([[1].into_iter().collect::<StateSet>()]),
        )
        .unwrap()
    }

    fn inf_many_ones() -> DetMullerAutomaton {
        DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([
                [1].into_iter().collect::<StateSet>(),
                [0, 1].into_iter().collect(),
            ]),
        )
        .unwrap()
    }

    fn fin_many_ones() -> DetMullerAutomaton {
        DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
        )
        .unwrap()
    }

    #[test]
    fn measure_pins() {
        assert_eq!(language_measure(&first_letter_one()).unwrap(), rat(1, 2));
        assert_eq!(language_measure(&inf_many_ones()).unwrap(), Rational::one());
        assert_eq!(language_measure(&fin_many_ones()).unwrap(), rat(0, 1));
    }

    #[test]
    fn empty_family_measure_zero() {
        let a = DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            vec![vec![0, 0]],
            MullerFamily::empty(),
        )
        .unwrap();
        assert_eq!(language_measure(&a).unwrap(), rat(0, 1));
    }

    #[test]
    fn letter_at_position_five() {
        // states 0..=4 count, state 5 reads: 1 -> acc(6), 0 -> rej(7)
        let mut delta = Vec::new();
        for i in 0..5 {
            delta.push(vec![i + 1, i + 1]);
        }
        delta.push(vec![7, 6]);
        delta.push(vec![6, 6]);
        delta.push(vec![7, 7]);
        let a = DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            delta,
            MullerFamily::new([[6].into_iter().collect::<StateSet>()]),
        )
        .unwrap();
        assert_eq!(language_measure(&a).unwrap(), rat(1, 2));
        assert!(!decide_measure_one(&a).unwrap());
    }

    #[test]
    fn absorption_sums_to_one() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6usize);
            let delta: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            let mut fam = MullerFamily::empty();
            for mask in 1usize..(1 << n) {
                if rng.gen_bool(0.4) {
                    fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            let a = DetMullerAutomaton::new(Alphabet::binary(), 0, delta, fam).unwrap();
            let rep = measure_report::<Rational>(&a).unwrap();
            let total: Rational = rep
                .classes
                .iter()
                .fold(Rational::new(0.into(), 1.into()), |acc, c| acc + c.absorption.clone());
            assert_eq!(total, Rational::one());
            let mu = rep.measure.clone();
            assert!(mu >= rat(0, 1) && mu <= Rational::one());
            // complement via family flip on the same structure
            let comp = a.complemented().unwrap();
            let mu_c = language_measure(&comp).unwrap();
            assert_eq!(mu + mu_c, Rational::one());
        }
    }

    #[test]
    fn measure_invariant_under_parity_round_trip() {
        use crate::det::dpa_to_detmuller;
        use crate::lar::lar_det;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(1..=3usize);
            let delta: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            let mut fam = MullerFamily::empty();
            for mask in 1usize..(1 << n) {
                if rng.gen_bool(0.5) {
                    fam.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            let a = DetMullerAutomaton::new(Alphabet::binary(), 0, delta, fam).unwrap();
            let mu = language_measure(&a).unwrap();
            let dpa = lar_det(&a).unwrap();
            assert_eq!(language_measure(&dpa).unwrap(), mu);
            if dpa.n_states <= 12 {
                let back = dpa_to_detmuller(&dpa).unwrap();
                assert_eq!(language_measure(&back).unwrap(), mu);
            }
        }
    }

    #[test]
    fn float_instantiation_tracks_rationals() {
        let a = first_letter_one();
        let f = measure_report::<f64>(&a).unwrap().measure;
        assert!((f - 0.5).abs() < 1e-12);
    }
}
