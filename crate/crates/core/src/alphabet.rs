//! Alphabets: bit-vector tracks or explicit symbols.
//!
//! Letters are canonical integer indices. For a track alphabet with tracks
//! `t0..t{n-1}` the letters are all bit vectors of length `n`, ordered
//! lexicographically by track order (track 0 is the most significant bit).

use crate::error::{Error, Result};

/// A letter is an index into the alphabet's enumeration.
pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    /// Tracks named by second-order variables; letters are bit vectors.
    Tracks(Vec<String>),
    /// Explicit symbolic letters, e.g. `{0, 1, R}`.
    Symbols(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    kind: Kind,
}

impl Alphabet {
    /// Track alphabet over the given track names (must be unique).
    pub fn tracks<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::AlphabetMismatch(format!("duplicate track `{n}`")));
            }
        }
        Ok(Alphabet { kind: Kind::Tracks(names) })
    }

    /// Symbolic alphabet with at least one distinct letter.
    pub fn symbols<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::AlphabetMismatch("symbolic alphabet with no letters".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::AlphabetMismatch(format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Alphabet { kind: Kind::Symbols(names) })
    }

    /// The binary alphabet `{0, 1}` as a single anonymous-ish track.
    pub fn binary() -> Alphabet {
        Alphabet::symbols(["0", "1"]).unwrap()
    }

    /// Unary alphabet (a single letter); the empty track set.
    pub fn unary() -> Alphabet {
        Alphabet { kind: Kind::Tracks(vec![]) }
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            Kind::Tracks(t) => 1usize << t.len(),
            Kind::Symbols(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn track_names(&self) -> Option<&[String]> {
        match &self.kind {
            Kind::Tracks(t) => Some(t),
            Kind::Symbols(_) => None,
        }
    }

    pub fn symbol_names(&self) -> Option<&[String]> {
        match &self.kind {
            Kind::Symbols(s) => Some(s),
            Kind::Tracks(_) => None,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.len()
    }

    /// Bit of `letter` on track `track` (track 0 = most significant).
    pub fn bit(&self, letter: Letter, track: usize) -> bool {
        match &self.kind {
            Kind::Tracks(t) => {
                debug_assert!(track < t.len() && letter < self.len());
                (letter >> (t.len() - 1 - track)) & 1 == 1
            }
            Kind::Symbols(_) => panic!("bit() on symbolic alphabet"),
        }
    }

    /// Letter index with the given bits per track.
    pub fn letter_from_bits(&self, bits: &[bool]) -> Letter {
        match &self.kind {
            Kind::Tracks(t) => {
                assert_eq!(bits.len(), t.len());
                bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
            }
            Kind::Symbols(_) => panic!("letter_from_bits() on symbolic alphabet"),
        }
    }

    /// Display form: bit string for tracks, symbol name otherwise.
    pub fn letter_name(&self, letter: Letter) -> String {
        match &self.kind {
            Kind::Tracks(t) => {
                if t.is_empty() {
                    ".".into()
                } else {
                    (0..t.len())
                        .map(|i| if self.bit(letter, i) { '1' } else { '0' })
                        .collect()
                }
            }
            Kind::Symbols(s) => s[letter].clone(),
        }
    }

    /// Inverse of [`letter_name`].
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        match &self.kind {
            Kind::Tracks(t) => {
                if t.is_empty() && text == "." {
                    return Ok(0);
                }
                if text.len() != t.len() || !text.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::Parse {
                        at: text.into(),
                        msg: format!("expected {} bits", t.len()),
                    });
                }
                Ok(text.chars().fold(0, |acc, c| (acc << 1) | (c == '1') as usize))
            }
            Kind::Symbols(s) => s
                .iter()
                .position(|n| n == text)
                .ok_or_else(|| Error::Parse { at: text.into(), msg: "unknown symbol".into() }),
        }
    }

    /// Splits a track alphabet into a leading parameter part and a trailing
    /// quantified part after `n_param` tracks. Any alphabet splits at 0 with a
    /// unary parameter part.
    pub fn factor(&self, n_param: usize) -> Result<AlphabetSplit> {
        if n_param == 0 {
            return Ok(AlphabetSplit {
                param: Alphabet::unary(),
                quantified: self.clone(),
                n_quantified: self.len(),
            });
        }
        match &self.kind {
            Kind::Tracks(t) => {
                if n_param > t.len() {
                    return Err(Error::AlphabetMismatch(format!(
                        "cannot split off {n_param} parameter tracks from {}",
                        t.len()
                    )));
                }
                let param = Alphabet::tracks(t[..n_param].to_vec())?;
                let quantified = Alphabet::tracks(t[n_param..].to_vec())?;
                let n_quantified = quantified.len();
                Ok(AlphabetSplit { param, quantified, n_quantified })
            }
            Kind::Symbols(_) => Err(Error::AlphabetMismatch(
                "symbolic alphabets only factor with an empty parameter part".into(),
            )),
        }
    }
}

/// A product view `param x quantified` of an alphabet.
///
/// With the lexicographic letter order, a combined letter decomposes as
/// `combined = param * |quantified| + quantified`.
#[derive(Debug, Clone)]
pub struct AlphabetSplit {
    pub param: Alphabet,
    pub quantified: Alphabet,
    n_quantified: usize,
}

impl AlphabetSplit {
    pub fn combine(&self, param: Letter, quantified: Letter) -> Letter {
        param * self.n_quantified + quantified
    }

    pub fn split(&self, combined: Letter) -> (Letter, Letter) {
        (combined / self.n_quantified, combined % self.n_quantified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn track_letters_are_lexicographic() {
        let a = Alphabet::tracks(["X", "Y"]).unwrap();
        assert_eq!(a.len(), 4);
        // 00 < 01 < 10 < 11
        assert_eq!(a.letter_name(0), "00");
        assert_eq!(a.letter_name(1), "01");
        assert_eq!(a.letter_name(2), "10");
        assert_eq!(a.letter_name(3), "11");
        assert!(a.bit(2, 0) && !a.bit(2, 1));
        assert_eq!(a.parse_letter("10").unwrap(), 2);
    }

    #[test]
    fn duplicate_tracks_rejected() {
        assert!(Alphabet::tracks(["X", "X"]).is_err());
    }

    #[test]
    fn factoring_round_trips() {
        let a = Alphabet::tracks(["X", "Y", "Z"]).unwrap();
        let split = a.factor(1).unwrap();
        assert_eq!(split.param.len(), 2);
        assert_eq!(split.quantified.len(), 4);
        for l in a.letters() {
            let (p, q) = split.split(l);
            assert_eq!(split.combine(p, q), l);
        }
    }

    #[test]
    fn unary_split_covers_symbolic() {
        let a = Alphabet::symbols(["0", "1", "R"]).unwrap();
        let split = a.factor(0).unwrap();
        assert_eq!(split.param.len(), 1);
        for l in a.letters() {
            assert_eq!(split.split(l), (0, l));
        }
        assert!(a.factor(1).is_err());
    }
}
