//! Blocks and values of `{0,1,R}` words, the unboundedness predicate, the
//! rewriting of `U` into a measure-quantified formula, and certified
//! evaluation of the block-probability product.
//!
//! A block is a maximal run of positions whose only `R` is its last
//! position; its value counts the 1-labelled positions. For a random set
//! `X`, the probability that some selected block has all its 1-positions
//! inside `X` is `1 - prod (1 - 2^-v)` over the selected values, which is 1
//! exactly when the values do not grow unboundedly along the selection.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::{Formula, Node, Sort, VarId};
use crate::lasso::LassoWord;
use crate::Rational;

/// Letters of the three-letter alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Zero,
    One,
    R,
}

impl Sym {
    pub fn from_letter(l: usize) -> Result<Sym> {
        match l {
            0 => Ok(Sym::Zero),
            1 => Ok(Sym::One),
            2 => Ok(Sym::R),
            _ => Err(Error::LetterOutOfRange { letter: l, size: 3 }),
        }
    }
}

/// A block of a finite word; `end` is the index of the closing `R`, absent
/// for the open suffix after the last `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: Option<usize>,
    pub value: u64,
}

/// Whether the leading segment (not preceded by an `R`) counts as a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UConvention {
    /// Every maximal segment counts, including the initial one.
    #[default]
    Blocks,
    /// Only segments strictly between consecutive `R` letters count.
    BetweenConsecutiveR,
}

/// Splits a finite word into blocks. The final open segment is reported
/// with `end: None` only when it is nonempty.
pub fn decompose_blocks_word(word: &[Sym], conv: UConvention) -> Vec<Block> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut value = 0u64;
    for (i, s) in word.iter().enumerate() {
        match s {
            Sym::One => value += 1,
            Sym::Zero => {}
            Sym::R => {
                out.push(Block { start, end: Some(i), value });
                start = i + 1;
                value = 0;
            }
        }
    }
    if start < word.len() {
        out.push(Block { start, end: None, value });
    }
    if conv == UConvention::BetweenConsecutiveR && !out.is_empty() && out[0].start == 0 {
        out.remove(0);
    }
    out
}

/// Block values of an ultimately periodic word: explicit head values plus a
/// repeating tail. The cycle must contain an `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoBlocks {
    pub head: Vec<u64>,
    pub tail_period: Vec<u64>,
    /// Letters spanned by one repetition of the tail (a multiple of the
    /// cycle length).
    pub tail_span: usize,
}

pub fn decompose_blocks_lasso(w: &LassoWord, conv: UConvention) -> Result<LassoBlocks> {
    let cyc: Vec<Sym> = w.cycle.iter().map(|&l| Sym::from_letter(l)).collect::<Result<_>>()?;
    let pre: Vec<Sym> = w.prefix.iter().map(|&l| Sym::from_letter(l)).collect::<Result<_>>()?;
    if !cyc.contains(&Sym::R) {
        return Err(Error::NoRInCycle);
    }
    let at = |i: usize| -> Sym {
        if i < pre.len() {
            pre[i]
        } else {
            cyc[(i - pre.len()) % cyc.len()]
        }
    };
    // walk blocks; a block starting at offset (start - |u|) mod |v| inside
    // the periodic part recurs with the same future, closing the period
    let mut values: Vec<u64> = Vec::new();
    let mut block_starts: Vec<usize> = vec![0];
    let mut seen: Vec<(usize, usize)> = Vec::new(); // (offset, block index)
    let mut i = 0usize;
    let mut value = 0u64;
    let (head, period, span) = 'outer: loop {
        // at a block start: check for a recurring offset
        let start = *block_starts.last().unwrap();
        if start >= pre.len() {
            let offset = (start - pre.len()) % cyc.len();
            if let Some(&(_, first)) = seen.iter().find(|&&(o, _)| o == offset) {
                break 'outer (
                    values[..first].to_vec(),
                    values[first..].to_vec(),
                    start - block_starts[first],
                );
            }
            seen.push((offset, values.len()));
        }
        // consume letters up to and including the closing R
        loop {
            match at(i) {
                Sym::One => value += 1,
                Sym::Zero => {}
                Sym::R => {
                    values.push(value);
                    block_starts.push(i + 1);
                    value = 0;
                    i += 1;
                    break;
                }
            }
            i += 1;
        }
    };
    let mut head = head;
    if conv == UConvention::BetweenConsecutiveR && !head.is_empty() {
        head.remove(0);
    } else if conv == UConvention::BetweenConsecutiveR && head.is_empty() {
        // the dropped initial block is the first periodic one; rotate
        // (values repeat, so rotating the period keeps the tail faithful)
        let mut p = period.clone();
        if !p.is_empty() {
            let first = p.remove(0);
            p.push(first);
            return Ok(LassoBlocks { head: Vec::new(), tail_period: p, tail_span: span });
        }
    }
    Ok(LassoBlocks { head, tail_period: period, tail_span: span })
}

/// Symbolic block-value profiles, the inputs of the probability evaluator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockProfile {
    /// `v_n = c`.
    Const(u64),
    /// `v_n = a n + b`.
    Arith { a: u64, b: u64 },
    /// Values repeat with the given nonempty period.
    Periodic(Vec<u64>),
    /// Explicit head values, then the tail profile.
    Explicit { head: Vec<u64>, tail: Box<BlockProfile> },
}

impl BlockProfile {
    pub fn value(&self, n: usize) -> u64 {
        match self {
            BlockProfile::Const(c) => *c,
            BlockProfile::Arith { a, b } => a * n as u64 + b,
            BlockProfile::Periodic(p) => p[n % p.len()],
            BlockProfile::Explicit { head, tail } => {
                if n < head.len() {
                    head[n]
                } else {
                    tail.value(n - head.len())
                }
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            BlockProfile::Const(_) | BlockProfile::Periodic(_) => true,
            BlockProfile::Arith { a, .. } => *a == 0,
            BlockProfile::Explicit { tail, .. } => tail.is_bounded(),
        }
    }

    /// `const:c`, `arith:a,b`, `periodic:v1,v2,...`, `explicit:v0,...;tail`.
    pub fn parse(text: &str) -> Result<BlockProfile> {
        let err = |msg: &str| Error::Parse { at: text.into(), msg: msg.into() };
        if let Some(rest) = text.strip_prefix("const:") {
            return Ok(BlockProfile::Const(rest.trim().parse().map_err(|_| err("bad constant"))?));
        }
        if let Some(rest) = text.strip_prefix("arith:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(err("arith needs `a,b`"));
            }
            return Ok(BlockProfile::Arith {
                a: parts[0].trim().parse().map_err(|_| err("bad coefficient"))?,
                b: parts[1].trim().parse().map_err(|_| err("bad offset"))?,
            });
        }
        if let Some(rest) = text.strip_prefix("periodic:") {
            let vals: Vec<u64> = rest
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| err("bad value")))
                .collect::<Result<_>>()?;
            if vals.is_empty() {
                return Err(err("empty period"));
            }
            return Ok(BlockProfile::Periodic(vals));
        }
        if let Some(rest) = text.strip_prefix("explicit:") {
            let (head, tail) = rest.split_once(';').ok_or_else(|| err("explicit needs `;tail`"))?;
            let vals: Vec<u64> = head
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse().map_err(|_| err("bad value")))
                .collect::<Result<_>>()?;
            return Ok(BlockProfile::Explicit {
                head: vals,
                tail: Box::new(BlockProfile::parse(tail)?),
            });
        }
        Err(err("unknown profile class"))
    }

    pub fn format(&self) -> String {
        match self {
            BlockProfile::Const(c) => format!("const:{c}"),
            BlockProfile::Arith { a, b } => format!("arith:{a},{b}"),
            BlockProfile::Periodic(p) => format!(
                "periodic:{}",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            BlockProfile::Explicit { head, tail } => format!(
                "explicit:{};{}",
                head.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                tail.format()
            ),
        }
    }
}

/// Unboundedness of the block values. Eventually periodic words always have
/// bounded values, so every lasso answers false.
pub fn u_predicate_profile(p: &BlockProfile) -> bool {
    !p.is_bounded()
}

pub fn u_predicate_lasso(w: &LassoWord, conv: UConvention) -> Result<bool> {
    decompose_blocks_lasso(w, conv)?;
    Ok(false)
}

/// Which blocks of a profile enter the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    All,
    /// The witness selection for unbounded profiles: the `k`-th selected
    /// block is the first with value at least `k + 3`.
    Witness,
    Finite(Vec<usize>),
}

/// A certified enclosure of an exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    fn exact(v: Rational) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }
}

fn pow2_neg(v: u64) -> Rational {
    if v > 4096 {
        // product factors this small are irrelevant at our scales
        return Rational::new(1.into(), num::BigInt::from(2).pow(4096));
    }
    Rational::new(1.into(), num::BigInt::from(2).pow(v as u32))
}

/// Certified bounds on `1 - prod_{n in S} (1 - 2^{-v_n})` using the first
/// `n_trunc` selected factors and a closed-form tail estimate.
pub fn psi_u_probability(
    profile: &BlockProfile,
    selection: &Selection,
    n_trunc: usize,
) -> Result<Interval> {
    assert!(n_trunc >= 1);
    match selection {
        Selection::Finite(indices) => {
            let mut prod = Rational::one();
            for &i in indices {
                prod *= Rational::one() - pow2_neg(profile.value(i));
            }
            Ok(Interval::exact(Rational::one() - prod))
        }
        Selection::All => {
            if profile.is_bounded() {
                // some factor is zero, or boundedly-small factors drive the
                // product to zero; either way the value is exactly one
                return Ok(Interval::exact(Rational::one()));
            }
            let BlockProfile::Arith { a, b } = tail_arith(profile)? else { unreachable!() };
            let head_len = head_len(profile);
            // any zero value forces the product to zero
            if (0..head_len).any(|n| profile.value(n) == 0) || (a == 0 && b == 0) {
                return Ok(Interval::exact(Rational::one()));
            }
            let mut prod = Rational::one();
            for n in 0..n_trunc {
                prod *= Rational::one() - pow2_neg(profile.value(n));
            }
            // tail sum over n >= n_trunc of 2^{-v_n}; v_n = a(n - head_len) + b there
            let tail_sum = if n_trunc >= head_len {
                geometric_tail(a, b, n_trunc - head_len)
            } else {
                // truncation inside the head: bound the head part directly
                let mut s = Rational::zero();
                for n in n_trunc..head_len {
                    s += pow2_neg(profile.value(n));
                }
                s + geometric_tail(a, b, 0)
            };
            Ok(enclose(prod, tail_sum))
        }
        Selection::Witness => {
            if profile.is_bounded() {
                return Err(Error::UnsupportedProfile(
                    "the witness selection needs unbounded values".into(),
                ));
            }
            // selected values w_k >= k + 3 by construction
            let mut prod = Rational::one();
            for k in 0..n_trunc {
                let w = witness_value(profile, k)?;
                prod *= Rational::one() - pow2_neg(w);
            }
            // sum over k >= n_trunc of 2^{-w_k} <= sum 2^{-(k+3)} = 2^{-(n_trunc+2)}
            let tail_sum = pow2_neg(n_trunc as u64 + 2);
            Ok(enclose(prod, tail_sum))
        }
    }
}

fn head_len(p: &BlockProfile) -> usize {
    match p {
        BlockProfile::Explicit { head, tail } => head.len() + head_len(tail),
        _ => 0,
    }
}

fn tail_arith(p: &BlockProfile) -> Result<BlockProfile> {
    match p {
        BlockProfile::Arith { a, b } if *a >= 1 => Ok(BlockProfile::Arith { a: *a, b: *b }),
        BlockProfile::Explicit { tail, .. } => tail_arith(tail),
        _ => Err(Error::UnsupportedProfile(
            "no computable tail bound for this profile class".into(),
        )),
    }
}

/// `sum_{k >= from} 2^{-(a k + b)}` for `a >= 1`.
fn geometric_tail(a: u64, b: u64, from: usize) -> Rational {
    // 2^{-(a*from + b)} / (1 - 2^{-a})
    let first = pow2_neg(a * from as u64 + b);
    let ratio = Rational::one() - pow2_neg(a);
    first / ratio
}

fn witness_value(profile: &BlockProfile, k: usize) -> Result<u64> {
    // first value >= k + 3 along the profile
    let need = k as u64 + 3;
    for n in 0..100_000usize {
        let v = profile.value(n);
        if v >= need {
            return Ok(v);
        }
    }
    Err(Error::UnsupportedProfile("witness block not found".into()))
}

fn enclose(partial_prod: Rational, tail_sum: Rational) -> Interval {
    let lo_tail = if tail_sum >= Rational::one() {
        Rational::zero()
    } else {
        Rational::one() - tail_sum
    };
    Interval {
        lo: Rational::one() - partial_prod.clone(),
        hi: Rational::one() - partial_prod * lo_tail,
    }
}

/// Outcome of checking one tagged profile against the block-probability
/// characterization.
#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub profile: String,
    pub bounded: bool,
    pub ok: bool,
    pub detail: String,
}

/// For bounded profiles the probability is exactly one for every infinite
/// selection; for unbounded ones the witness selection certifies a value
/// below one.
pub fn check_claim_instances(profiles: &[BlockProfile]) -> Result<Vec<ClaimOutcome>> {
    let mut out = Vec::new();
    for p in profiles {
        let bounded = p.is_bounded();
        let outcome = if bounded {
            let iv = psi_u_probability(p, &Selection::All, 10)?;
            ClaimOutcome {
                profile: p.format(),
                bounded,
                ok: iv.lo == Rational::one() && iv.hi == Rational::one(),
                detail: format!("all-blocks value in [{}, {}]", iv.lo, iv.hi),
            }
        } else {
            let iv = psi_u_probability(p, &Selection::Witness, 20)?;
            ClaimOutcome {
                profile: p.format(),
                bounded,
                ok: iv.hi < Rational::one(),
                detail: format!("witness value at most {}", iv.hi),
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

/// Replaces every `U(X1, XR)` by the measure-quantified formula asserting
/// that some infinite union of blocks defeats almost every random set. The
/// output contains nested measure quantifiers and is therefore kept as
/// syntax only.
pub fn rewrite_u_to_psi(f: &Formula) -> Formula {
    let mut out = Formula { vars: f.vars.clone(), root: Node::True };
    let root = rewrite_node(&f.root, &mut out);
    out.root = root;
    out
}

fn rewrite_node(n: &Node, f: &mut Formula) -> Node {
    match n {
        Node::UPred(x1, xr) => psi_u_template(f, *x1, *xr),
        Node::Not(a) => Node::Not(Box::new(rewrite_node(a, f))),
        Node::Or(a, b) => {
            Node::Or(Box::new(rewrite_node(a, f)), Box::new(rewrite_node(b, f)))
        }
        Node::And(a, b) => {
            Node::And(Box::new(rewrite_node(a, f)), Box::new(rewrite_node(b, f)))
        }
        Node::ForallFo(v, a) => Node::ForallFo(*v, Box::new(rewrite_node(a, f))),
        Node::ExistsFo(v, a) => Node::ExistsFo(*v, Box::new(rewrite_node(a, f))),
        Node::ForallSo(v, a) => Node::ForallSo(*v, Box::new(rewrite_node(a, f))),
        Node::ExistsSo(v, a) => Node::ExistsSo(*v, Box::new(rewrite_node(a, f))),
        Node::Cat(v, a) => Node::Cat(*v, Box::new(rewrite_node(a, f))),
        Node::Meas1(v, a) => Node::Meas1(*v, Box::new(rewrite_node(a, f))),
        Node::CatPath(v, a) => Node::CatPath(*v, Box::new(rewrite_node(a, f))),
        Node::Meas1Path(v, a) => Node::Meas1Path(*v, Box::new(rewrite_node(a, f))),
        other => other.clone(),
    }
}

/// `x` has no position strictly before it.
fn is_zero(f: &mut Formula, x: VarId) -> Node {
    let p = f.fresh_var("p", Sort::First);
    Node::Not(Box::new(Node::ExistsFo(p, Box::new(Node::Less(p, x)))))
}

/// `p` is the immediate predecessor of `x`.
fn is_pred(f: &mut Formula, p: VarId, x: VarId) -> Node {
    let q = f.fresh_var("q", Sort::First);
    Node::And(
        Box::new(Node::Less(p, x)),
        Box::new(Node::Not(Box::new(Node::ExistsFo(
            q,
            Box::new(Node::And(Box::new(Node::Less(p, q)), Box::new(Node::Less(q, x)))),
        )))),
    )
}

/// `B` is a block of the word encoded on track `xr`: a maximal interval
/// whose only `R` position is its last one.
fn block_formula(f: &mut Formula, b: VarId, xr: VarId) -> Node {
    let i = f.fresh_var("i", Sort::First);
    let j = f.fresh_var("j", Sort::First);
    let x = f.fresh_var("x", Sort::First);
    let k = f.fresh_var("k", Sort::First);
    let p = f.fresh_var("p", Sort::First);
    // x in B  <->  i <= x <= j
    let in_range = Node::And(
        Box::new(Node::Not(Box::new(Node::Less(x, i)))),
        Box::new(Node::Not(Box::new(Node::Less(j, x)))),
    );
    let member_iff = Node::ForallFo(
        x,
        Box::new(Node::And(
            Box::new(Node::implies(Node::In(x, b), in_range.clone())),
            Box::new(Node::implies(in_range, Node::In(x, b))),
        )),
    );
    // j carries R, nothing in [i, j) does
    let closes = Node::In(j, xr);
    let no_inner_r = Node::ForallFo(
        k,
        Box::new(Node::implies(
            Node::And(
                Box::new(Node::Not(Box::new(Node::Less(k, i)))),
                Box::new(Node::Less(k, j)),
            ),
            Node::Not(Box::new(Node::In(k, xr))),
        )),
    );
    // i = 0 or the predecessor of i carries R
    let zero = is_zero(f, i);
    let pred_r = {
        let isp = is_pred(f, p, i);
        Node::ExistsFo(p, Box::new(Node::And(Box::new(isp), Box::new(Node::In(p, xr)))))
    };
    let starts = Node::Or(Box::new(zero), Box::new(pred_r));
    let not_less_ji = Node::Not(Box::new(Node::Less(j, i)));
    Node::ExistsFo(
        i,
        Box::new(Node::ExistsFo(
            j,
            Box::new(Node::and_all(vec![not_less_ji, member_iff, closes, no_inner_r, starts])),
        )),
    )
}

fn subset(f: &mut Formula, a: VarId, b: VarId) -> Node {
    let x = f.fresh_var("x", Sort::First);
    Node::ForallFo(x, Box::new(Node::implies(Node::In(x, a), Node::In(x, b))))
}

fn infinite(f: &mut Formula, s: VarId) -> Node {
    let x = f.fresh_var("x", Sort::First);
    let y = f.fresh_var("y", Sort::First);
    Node::ForallFo(
        x,
        Box::new(Node::ExistsFo(
            y,
            Box::new(Node::And(Box::new(Node::Less(x, y)), Box::new(Node::In(y, s)))),
        )),
    )
}

fn psi_u_template(f: &mut Formula, x1: VarId, xr: VarId) -> Node {
    let s = f.fresh_var("S", Sort::Second);
    let bb = f.fresh_var("B", Sort::Second);
    let xx = f.fresh_var("X", Sort::Second);
    let y = f.fresh_var("y", Sort::First);

    let inf_s = infinite(f, s);
    // S is a union of blocks
    let union_of_blocks = {
        let z = f.fresh_var("z", Sort::First);
        let b2 = f.fresh_var("B", Sort::Second);
        let blk = block_formula(f, b2, xr);
        let sub = subset(f, b2, s);
        Node::ForallFo(
            z,
            Box::new(Node::implies(
                Node::In(z, s),
                Node::ExistsSo(
                    b2,
                    Box::new(Node::and_all(vec![blk, Node::In(z, b2), sub])),
                ),
            )),
        )
    };
    let b_block = block_formula(f, bb, xr);
    let b_in_s = subset(f, bb, s);
    let covered = Node::ForallFo(
        y,
        Box::new(Node::implies(
            Node::And(Box::new(Node::In(y, bb)), Box::new(Node::In(y, x1))),
            Node::In(y, xx),
        )),
    );
    let almost_all = Node::Meas1(
        xx,
        Box::new(Node::ExistsSo(
            bb,
            Box::new(Node::and_all(vec![b_in_s, b_block, covered])),
        )),
    );
    Node::ExistsSo(
        s,
        Box::new(Node::and_all(vec![
            inf_s,
            union_of_blocks,
            Node::Not(Box::new(almost_all)),
        ])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn word(text: &str) -> Vec<Sym> {
        text.split_whitespace()
            .map(|t| match t {
                "0" => Sym::Zero,
                "1" => Sym::One,
                "R" => Sym::R,
                _ => panic!("bad symbol {t}"),
            })
            .collect()
    }

    #[test]
    fn figure_word_blocks() {
        let w = word("0 0 1 R 0 0 0 0 R 0 1 1 0 1 1 0 R");
        let blocks = decompose_blocks_word(&w, UConvention::Blocks);
        let values: Vec<u64> = blocks.iter().map(|b| b.value).collect();
        assert_eq!(values, vec![1, 0, 4]);
        assert!(blocks.iter().all(|b| b.end.is_some()));
    }

    #[test]
    fn all_r_word() {
        let w = word("R R R");
        let blocks = decompose_blocks_word(&w, UConvention::Blocks);
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.value == 0));
        // the strict convention drops only the initial segment
        let strict = decompose_blocks_word(&w, UConvention::BetweenConsecutiveR);
        assert_eq!(strict.len(), 2);
    }

    #[test]
    fn block_round_trip() {
        let w = word("0 1 R 1 1 R 0");
        let blocks = decompose_blocks_word(&w, UConvention::Blocks);
        // reconstruct: blocks partition the word
        let mut covered = vec![false; w.len()];
        for b in &blocks {
            let end = b.end.unwrap_or(w.len() - 1);
            let ones = (b.start..=end).filter(|&i| w[i] == Sym::One).count() as u64;
            assert_eq!(ones, b.value);
            for i in b.start..=end {
                covered[i] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn lasso_blocks_periodic() {
        let w = LassoWord::new(vec![], vec![1, 2]); // (1 R)^ω
        let lb = decompose_blocks_lasso(&w, UConvention::Blocks).unwrap();
        assert!(lb.head.is_empty());
        assert_eq!(lb.tail_period, vec![1]);
        assert_eq!(lb.tail_span % w.cycle.len(), 0);
        let w = LassoWord::new(vec![0, 2], vec![1, 1, 2, 0, 2]);
        let lb = decompose_blocks_lasso(&w, UConvention::Blocks).unwrap();
        // head block "0 R" has value 0, then (2, 0) repeats
        assert_eq!(lb.head, vec![0]);
        assert_eq!(lb.tail_period, vec![2, 0]);
        assert_eq!(lb.tail_span % w.cycle.len(), 0);
        let no_r = LassoWord::new(vec![2], vec![1, 0]);
        assert!(matches!(
            decompose_blocks_lasso(&no_r, UConvention::Blocks),
            Err(Error::NoRInCycle)
        ));
    }

    #[test]
    fn u_predicate_values() {
        let w = LassoWord::new(vec![], vec![1, 2]);
        assert!(!u_predicate_lasso(&w, UConvention::Blocks).unwrap());
        assert!(u_predicate_profile(&BlockProfile::Arith { a: 1, b: 0 }));
        assert!(!u_predicate_profile(&BlockProfile::Const(7)));
        assert!(!u_predicate_profile(&BlockProfile::Periodic(vec![3, 9])));
    }

    #[test]
    fn probability_exact_cases() {
        // a zero value makes the probability exactly one
        let p = BlockProfile::Const(0);
        let iv = psi_u_probability(&p, &Selection::All, 5).unwrap();
        assert_eq!(iv, Interval::exact(Rational::one()));
        // constant positive values: partial products vanish in the limit
        let p = BlockProfile::Const(3);
        let iv = psi_u_probability(&p, &Selection::All, 5).unwrap();
        assert_eq!(iv, Interval::exact(Rational::one()));
        // finite selection is exact: 1 - (1 - 1/2)(1 - 1/4) = 5/8
        let p = BlockProfile::Arith { a: 1, b: 1 };
        let iv = psi_u_probability(&p, &Selection::Finite(vec![0, 1]), 1).unwrap();
        assert_eq!(iv, Interval::exact(rat(5, 8)));
    }

    #[test]
    fn growing_values_certified_interval() {
        // v_n = n + 1: the limit is 1 - prod_{n>=1}(1 - 2^{-n})
        let p = BlockProfile::Arith { a: 1, b: 1 };
        let iv30 = psi_u_probability(&p, &Selection::All, 30).unwrap();
        assert!(iv30.width() < rat(1, 100_000_000));
        // a distinctly finer enclosure must nest inside
        let iv60 = psi_u_probability(&p, &Selection::All, 60).unwrap();
        assert!(iv30.lo <= iv60.lo && iv60.hi <= iv30.hi);
        // rough location of the limit
        assert!(iv30.lo > rat(71, 100) && iv30.hi < rat(72, 100));
    }

    #[test]
    fn intervals_shrink_and_nest() {
        let p = BlockProfile::Arith { a: 1, b: 1 };
        let mut last: Option<Interval> = None;
        for n in [5usize, 10, 20, 40] {
            let iv = psi_u_probability(&p, &Selection::All, n).unwrap();
            assert!(iv.lo <= iv.hi);
            if let Some(prev) = &last {
                assert!(iv.width() < prev.width());
                assert!(prev.lo <= iv.lo && iv.hi <= prev.hi);
            }
            last = Some(iv);
        }
    }

    #[test]
    fn monotone_in_the_selection() {
        let p = BlockProfile::Arith { a: 1, b: 1 };
        let small = psi_u_probability(&p, &Selection::Finite(vec![0, 1]), 1).unwrap();
        let large = psi_u_probability(&p, &Selection::Finite(vec![0, 1, 2, 3]), 1).unwrap();
        assert!(small.lo <= large.lo);
        let all = psi_u_probability(&p, &Selection::All, 30).unwrap();
        assert!(small.lo <= all.hi);
        assert!(large.lo <= all.hi);
    }

    #[test]
    fn witness_bound_below_one() {
        let p = BlockProfile::Arith { a: 1, b: 0 };
        let iv = psi_u_probability(&p, &Selection::Witness, 20).unwrap();
        assert!(iv.hi < Rational::one());
        // witness values start at 3: bound <= 1 - prod(1 - 2^{-(k+3)}) <= 1/4
        assert!(iv.hi <= rat(1, 4));
    }

    #[test]
    fn claim_instances() {
        let outcomes = check_claim_instances(&[
            BlockProfile::Const(3),
            BlockProfile::Arith { a: 1, b: 0 },
            BlockProfile::Const(0),
        ])
        .unwrap();
        assert!(outcomes.iter().all(|o| o.ok));
        assert_eq!(outcomes[0].bounded, true);
        assert_eq!(outcomes[1].bounded, false);
    }

    #[test]
    fn profile_serialization_round_trip() {
        for text in ["const:7", "arith:1,0", "periodic:1,2,3", "explicit:4,5;arith:2,1"] {
            let p = BlockProfile::parse(text).unwrap();
            assert_eq!(p.format(), text);
        }
        assert!(BlockProfile::parse("nope:1").is_err());
    }

    #[test]
    fn rewriter_shape() {
        let f = parse("U(X1, XR)").unwrap();
        let g = rewrite_u_to_psi(&f);
        let meas = g.root.count_matching(&|n| matches!(n, Node::Meas1(..)));
        assert_eq!(meas, 1);
        let free: Vec<String> =
            g.free_vars().iter().map(|&v| g.vars[v].name.clone()).collect();
        assert_eq!(free, vec!["X1".to_string(), "XR".to_string()]);
        // under conjunction the rewrite is homomorphic: node counts add up
        let f2 = parse("U(X1, XR) & U(X1, XR)").unwrap();
        let g2 = rewrite_u_to_psi(&f2);
        assert_eq!(g2.root.count_nodes(), 2 * g.root.count_nodes() + 1);
        // identity on U-free input
        let f3 = parse("ex1 x. x in X").unwrap();
        assert_eq!(rewrite_u_to_psi(&f3).root, f3.root);
    }

    #[test]
    fn rewritten_u_is_rejected_by_compile() {
        let f = parse("U(X1, XR)").unwrap();
        let g = rewrite_u_to_psi(&f);
        let err = crate::compile::compile(&g, 1000).unwrap_err();
        assert!(matches!(err, Error::UndecidableFragment(_)));
    }
}
