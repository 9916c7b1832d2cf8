//! The path transducer from binary-labeled trees to directions, and the
//! exact cylinder-measure computations backing measure preservation.

use num_traits::One;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::expr::Dir;
use crate::lasso::LassoWord;
use crate::tree::RegularTree;
use crate::Rational;

/// Alphabet of direction words: letter 0 is `L`, letter 1 is `R`.
pub fn direction_alphabet() -> Alphabet {
    Alphabet::symbols(["L", "R"]).unwrap()
}

pub fn dir_letter(d: Dir) -> usize {
    match d {
        Dir::L => 0,
        Dir::R => 1,
    }
}

/// The unique path determined by a binary-labeled tree: at a vertex labeled
/// 1 the path turns left, otherwise right. Regularity of the input makes
/// the direction word ultimately periodic.
pub fn f_transducer(x: &RegularTree) -> Result<LassoWord> {
    x.validate()?;
    if x.alphabet.len() != 2 {
        return Err(Error::AlphabetMismatch("the path transducer needs binary labels".into()));
    }
    let mut seen: Vec<usize> = Vec::new();
    let mut dirs: Vec<usize> = Vec::new();
    let mut v = x.root;
    loop {
        if let Some(i) = seen.iter().position(|&w| w == v) {
            return Ok(LassoWord::new(dirs[..i].to_vec(), dirs[i..].to_vec()));
        }
        seen.push(v);
        let d = if x.labels[v] == 1 { Dir::L } else { Dir::R };
        dirs.push(dir_letter(d));
        v = x.child(v, d);
    }
}

/// Builds a regular tree whose transduced path is the given direction word:
/// the path nodes carry the label matching the next direction, everything
/// off the path is labeled 0.
pub fn f_preimage_tree(w: &LassoWord) -> Result<RegularTree> {
    let alphabet = Alphabet::binary();
    let n = w.len();
    // nodes 0..n follow the lasso; node n is an all-zero sink
    let mut labels = Vec::with_capacity(n + 1);
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    for i in 0..n {
        let d = w.at(i);
        let next = w.advance(i);
        labels.push(if d == dir_letter(Dir::L) { 1 } else { 0 });
        if d == dir_letter(Dir::L) {
            left.push(next);
            right.push(n);
        } else {
            left.push(n);
            right.push(next);
        }
    }
    labels.push(0);
    left.push(n);
    right.push(n);
    RegularTree::new(alphabet, labels, left, right, 0)
}

/// Exact measure of the preimage of the direction cylinder `U_v` under the
/// path transducer. The preimage pins the labels of the `|v|` vertices
/// along `v`, independent events of probability one half each.
pub fn f_cylinder_preimage_measure(v: &[Dir]) -> Rational {
    // the constrained vertices are the proper prefixes of v; they are
    // pairwise distinct, so the events are independent
    let mut constrained: Vec<Vec<Dir>> = Vec::new();
    for i in 0..v.len() {
        let vertex = v[..i].to_vec();
        debug_assert!(!constrained.contains(&vertex));
        constrained.push(vertex);
    }
    let mut m = Rational::one();
    for _ in 0..constrained.len() {
        m /= Rational::from_integer(2.into());
    }
    m
}

/// Exact measure of the preimage under the leftmost-branch restriction of a
/// word cylinder constraining `positions` (distinct word positions map to
/// distinct branch vertices).
pub fn leftmost_cylinder_preimage_measure(positions: &[usize]) -> Rational {
    let mut distinct: Vec<usize> = positions.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut m = Rational::one();
    for _ in 0..distinct.len() {
        m /= Rational::from_integer(2.into());
    }
    m
}
