//! Ultimately periodic words `u v^ω` as finite test vehicles.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> LassoWord {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoWord { prefix, cycle }
    }

    /// Letter at position `i` of `u v^ω`.
    pub fn at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position the lasso graph wraps back to.
    pub fn cycle_start(&self) -> usize {
        self.prefix.len()
    }

    /// Successor position in the lasso graph.
    pub fn advance(&self, pos: usize) -> usize {
        if pos + 1 < self.len() {
            pos + 1
        } else {
            self.cycle_start()
        }
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for &l in self.prefix.iter().chain(&self.cycle) {
            if l >= alphabet.len() {
                return Err(Error::LetterOutOfRange { letter: l, size: alphabet.len() });
            }
        }
        Ok(())
    }

    /// Equality as omega-words (presentation independent).
    pub fn omega_eq(&self, other: &LassoWord) -> bool {
        let p = self.prefix.len().max(other.prefix.len());
        let l = lcm(self.cycle.len(), other.cycle.len());
        (0..p + 2 * l).all(|i| self.at(i) == other.at(i))
    }

    /// Relabels every letter.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> LassoWord {
        LassoWord {
            prefix: self.prefix.iter().map(|&l| f(l)).collect(),
            cycle: self.cycle.iter().map(|&l| f(l)).collect(),
        }
    }

    /// All lassos over `n_letters` letters with `|u| + |v| <= max_total`.
    pub fn enumerate(n_letters: usize, max_total: usize) -> Vec<LassoWord> {
        let mut out = Vec::new();
        for total in 1..=max_total {
            for cyc_len in 1..=total {
                let pre_len = total - cyc_len;
                let mut pre = vec![0usize; pre_len];
                loop {
                    let mut cyc = vec![0usize; cyc_len];
                    loop {
                        out.push(LassoWord::new(pre.clone(), cyc.clone()));
                        if !bump(&mut cyc, n_letters) {
                            break;
                        }
                    }
                    if !bump(&mut pre, n_letters) {
                        break;
                    }
                }
            }
        }
        out
    }
}

fn bump(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_equality_ignores_presentation() {
        let a = LassoWord::new(vec![], vec![1, 0]);
        let b = LassoWord::new(vec![1], vec![0, 1]);
        let c = LassoWord::new(vec![], vec![1, 0, 1, 0]);
        assert!(a.omega_eq(&b));
        assert!(a.omega_eq(&c));
        let d = LassoWord::new(vec![0], vec![1, 0]);
        assert!(!a.omega_eq(&d));
    }

    #[test]
    fn enumeration_counts() {
        // total length 1: 2 lassos; length 2: pre0cyc2 (4) + pre1cyc1 (4); ...
        let all = LassoWord::enumerate(2, 2);
        assert_eq!(all.len(), 2 + 4 + 4);
        assert!(all.iter().all(|w| !w.cycle.is_empty()));
    }

    #[test]
    fn advance_wraps_to_cycle_start() {
        let w = LassoWord::new(vec![7, 7], vec![1, 2]);
        assert_eq!(w.advance(0), 1);
        assert_eq!(w.advance(3), 2);
        assert_eq!(w.at(5), 2);
    }
}
