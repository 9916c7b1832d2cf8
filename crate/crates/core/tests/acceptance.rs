//! Acceptance suite: one test per criterion, each printing a pass line.
//! Exact arithmetic throughout; every tolerance is pinned in the assertions.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use baire_core::alphabet::Alphabet;
use baire_core::bm::run_script;
use baire_core::category::{build_b_word, decide_comeager, eliminate_category};
use baire_core::dealt::dealternate;
use baire_core::det::{DetMullerAutomaton, MullerFamily, StateSet};
use baire_core::formats::write_transcript;
use baire_core::game::Player;
use baire_core::gen;
use baire_core::lasso::LassoWord;
use baire_core::measure::{decide_measure_one, language_measure, measure_report};
use baire_core::msou::{
    decompose_blocks_word, psi_u_probability, BlockProfile, Selection, Sym, UConvention,
};
use baire_core::safra::complement_nba;
use baire_core::tree::games::{build_b_tree, decide_comeager_tree, tree_membership_game};
use baire_core::tree::path::{f_cylinder_preimage_measure, f_transducer};
use baire_core::tree::witness::{minimal_growth, regular_tree_infinitely_ones, witness_u1_tree};
use baire_core::tree::{GameAutomaton, GameMove, GameOp, RegularTree};
use baire_core::expr::Dir;
use baire_core::{Rational, DEFAULT_STATE_BUDGET};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn criterion_1_measure_one_agrees_with_the_game_verdict() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut agree = 0;
    const N: usize = 200;
    for _ in 0..N {
        let a = gen::random_det_muller(&mut rng, Alphabet::binary(), 5);
        let m1 = decide_measure_one(&a).unwrap();
        let (game, _) = decide_comeager(&a).unwrap();
        assert_eq!(m1, game, "disagreement on {a:?}");
        agree += 1;
    }
    let elapsed = start.elapsed();
    assert_eq!(agree, N);
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 1: measure-one vs comeager game agreement {agree}/{N} ({elapsed:?}): pass");
}

/// Independent oracle for criterion 2: the parameter-fixed automaton reads
/// only the quantified track along the lasso's graph.
fn section_automaton(a: &DetMullerAutomaton, alpha: &LassoWord) -> DetMullerAutomaton {
    let split = a.alphabet.factor(1).unwrap();
    let len = alpha.len();
    let id = |q: usize, i: usize| q * len + i;
    let n = a.n_states * len;
    let mut delta = vec![vec![0usize; split.quantified.len()]; n];
    for q in 0..a.n_states {
        for i in 0..len {
            for b in split.quantified.letters() {
                let combined = split.combine(alpha.at(i), b);
                delta[id(q, i)][b] = id(a.step(q, combined), alpha.advance(i));
            }
        }
    }
    // family lifted through the state projection
    let mut fam = MullerFamily::empty();
    assert!(n <= 16);
    for mask in 1usize..(1 << n) {
        let set: StateSet = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let proj: StateSet = set.iter().map(|&j| j / len).collect();
        if a.muller.contains(&proj) {
            fam.insert(set);
        }
    }
    DetMullerAutomaton::new(split.quantified, id(a.initial, 0), delta, fam).unwrap()
}

#[test]
fn criterion_2_section_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let alphabet = Alphabet::tracks(["X", "Y"]).unwrap();
    let mut checked = 0;
    const AUTOMATA: usize = 100;
    const LASSOS: usize = 10;
    for _ in 0..AUTOMATA {
        let a = gen::random_det_muller(&mut rng, alphabet.clone(), 4);
        let b = build_b_word(&a, 1).unwrap();
        let nba = dealternate(&b, DEFAULT_STATE_BUDGET).unwrap();
        for _ in 0..LASSOS {
            let alpha = gen::random_lasso(&mut rng, 2, 4);
            let left = nba.accepts_lasso(&alpha).unwrap();
            let section = section_automaton(&a, &alpha);
            let right = language_measure(&section).unwrap() == Rational::one();
            assert_eq!(left, right, "automaton {a:?} lasso {alpha:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, AUTOMATA * LASSOS);
    println!("criterion 2: section-measure oracle agreement {checked}/{checked}: pass");
}

#[test]
fn criterion_3_dealternation_matches_the_acceptance_game() {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let battery = LassoWord::enumerate(2, 5);
    let mut checked = 0usize;
    const AUTOMATA: usize = 100;
    for _ in 0..AUTOMATA {
        let b = gen::random_alt_muller(&mut rng, Alphabet::binary(), 4);
        let nba = dealternate(&b, DEFAULT_STATE_BUDGET).unwrap();
        for w in &battery {
            assert_eq!(
                nba.accepts_lasso(w).unwrap(),
                b.accepts_lasso(w).unwrap(),
                "automaton {b:?} lasso {w:?}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, AUTOMATA * battery.len());
    println!(
        "criterion 3: dealternation vs game semantics on {checked} lasso checks: pass"
    );
}

#[test]
fn criterion_4_measure_pins() {
    // first letter is 1
    let first = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![2, 1], vec![1, 1], vec![2, 2]],
        MullerFamily::new([[1].into_iter().collect::<StateSet>()]),
    )
    .unwrap();
    assert_eq!(language_measure(&first).unwrap(), rat(1, 2));
    let inf_ones = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![0, 1], vec![0, 1]],
        MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]),
    )
    .unwrap();
    assert_eq!(language_measure(&inf_ones).unwrap(), Rational::one());
    let fin_ones = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![0, 1], vec![0, 1]],
        MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
    )
    .unwrap();
    assert_eq!(language_measure(&fin_ones).unwrap(), rat(0, 1));
    // complementation and absorption bookkeeping on random automata
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for round in 0..100 {
        let a = gen::random_det_muller(&mut rng, Alphabet::binary(), 4);
        let mu = language_measure(&a).unwrap();
        let comp = a.complemented().unwrap();
        assert_eq!(language_measure(&comp).unwrap() + mu.clone(), Rational::one());
        let report = measure_report::<Rational>(&a).unwrap();
        let total = report
            .classes
            .iter()
            .fold(rat(0, 1), |acc, c| acc + c.absorption.clone());
        assert_eq!(total, Rational::one());
        // a slice of rounds exercises the full automaton-level chain
        if round % 20 == 0 {
            let small = gen::random_det_muller(&mut rng, Alphabet::binary(), 3);
            let dpa = baire_core::lar::lar_det(&small).unwrap();
            let nba = baire_core::safra::dpa_to_nba(&dpa).unwrap();
            let comp = complement_nba(&nba, DEFAULT_STATE_BUDGET).unwrap();
            let comp_dpa = baire_core::safra::determinize(&comp, DEFAULT_STATE_BUDGET).unwrap();
            let mu_small = language_measure(&small).unwrap();
            assert_eq!(
                language_measure(&comp_dpa).unwrap() + mu_small,
                Rational::one()
            );
        }
    }
    println!("criterion 4: exact measure pins and complement identity: pass");
}

#[test]
fn criterion_5_block_probability_numerics() {
    // the growing profile: certified interval around 1 - prod(1 - 2^-n)
    let growing = BlockProfile::Arith { a: 1, b: 1 };
    let iv = psi_u_probability(&growing, &Selection::All, 30).unwrap();
    assert!(iv.width() < rat(1, 100_000_000));
    let finer = psi_u_probability(&growing, &Selection::All, 60).unwrap();
    assert!(iv.lo <= finer.lo && finer.hi <= iv.hi, "enclosures must nest");
    // bounded profiles give exactly one
    for bounded in [BlockProfile::Const(3), BlockProfile::Periodic(vec![2, 5])] {
        let iv = psi_u_probability(&bounded, &Selection::All, 10).unwrap();
        assert_eq!(iv.lo, Rational::one());
        assert_eq!(iv.hi, Rational::one());
    }
    // the unbounded witness stays certifiably below one
    let unbounded = BlockProfile::Arith { a: 1, b: 0 };
    let iv = psi_u_probability(&unbounded, &Selection::Witness, 20).unwrap();
    assert!(iv.hi < Rational::one());
    // block decomposition of the figure word
    let word: Vec<Sym> = "0 0 1 R 0 0 0 0 R 0 1 1 0 1 1 0 R"
        .split_whitespace()
        .map(|t| match t {
            "0" => Sym::Zero,
            "1" => Sym::One,
            _ => Sym::R,
        })
        .collect();
    let values: Vec<u64> = decompose_blocks_word(&word, UConvention::Blocks)
        .iter()
        .map(|b| b.value)
        .collect();
    assert_eq!(values, vec![1, 0, 4]);
    println!("criterion 5: certified block-probability numerics: pass");
}

fn root_labeled_one() -> GameAutomaton {
    let and = |l: usize, r: usize| GameMove { op: GameOp::And, left: l, right: r };
    GameAutomaton::new(
        Alphabet::binary(),
        0,
        vec![
            vec![and(2, 2), and(1, 1)],
            vec![and(1, 1), and(1, 1)],
            vec![and(2, 2), and(2, 2)],
        ],
        MullerFamily::new([[1].into_iter().collect::<StateSet>()]),
    )
    .unwrap()
}

fn path_recurrent_ones() -> GameAutomaton {
    let and = |l: usize, r: usize| GameMove { op: GameOp::And, left: l, right: r };
    GameAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![and(0, 0), and(1, 1)], vec![and(0, 0), and(1, 1)]],
        MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]),
    )
    .unwrap()
}

#[test]
fn criterion_6_tree_fixtures() {
    let full = GameAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![
            GameMove { op: GameOp::And, left: 0, right: 0 },
            GameMove { op: GameOp::And, left: 0, right: 0 },
        ]],
        MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
    )
    .unwrap();
    assert!(decide_comeager_tree(&full).unwrap());
    assert!(decide_comeager_tree(&path_recurrent_ones()).unwrap());
    assert!(!decide_comeager_tree(&root_labeled_one()).unwrap());
    // size of the tagged construction
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3usize);
        let delta: Vec<Vec<GameMove>> = (0..n)
            .map(|_| {
                (0..2)
                    .map(|_| GameMove {
                        op: if rng.gen_bool(0.5) { GameOp::And } else { GameOp::Or },
                        left: rng.gen_range(0..n),
                        right: rng.gen_range(0..n),
                    })
                    .collect()
            })
            .collect();
        let fam = gen::random_family(&mut rng, n, 0.5);
        let a = GameAutomaton::new(Alphabet::binary(), 0, delta, fam).unwrap();
        let b = build_b_tree(&a, 0).unwrap();
        assert_eq!(b.n_states, 2 * a.n_states);
    }
    println!("criterion 6: closed-tree-language verdicts and construction size: pass");
}

#[test]
fn criterion_7_path_map_measure_preservation() {
    let mut count = 0;
    for len in 1..=8usize {
        for mask in 0..(1usize << len) {
            let v: Vec<Dir> = (0..len)
                .map(|i| if mask >> i & 1 == 1 { Dir::R } else { Dir::L })
                .collect();
            let expect = Rational::new(1.into(), num::BigInt::from(2).pow(len as u32));
            assert_eq!(f_cylinder_preimage_measure(&v), expect);
            count += 1;
        }
    }
    assert_eq!(count, 510);
    let zeros = RegularTree::constant(Alphabet::binary(), 0).unwrap();
    let ones = RegularTree::constant(Alphabet::binary(), 1).unwrap();
    // direction letters: 0 reads L, 1 reads R
    assert!(f_transducer(&zeros).unwrap().omega_eq(&LassoWord::new(vec![], vec![1])));
    assert!(f_transducer(&ones).unwrap().omega_eq(&LassoWord::new(vec![], vec![0])));
    println!("criterion 7: path-map preimage measure 510/510 and transducer pins: pass");
}

#[test]
fn criterion_8_witness_and_recurrence() {
    let growth = minimal_growth(3);
    assert_eq!(growth[1], 2);
    assert_eq!(growth[2], 5);
    assert_eq!(growth[3], 11);
    let witness = witness_u1_tree(3).unwrap();
    assert_eq!(witness.partial_sum, rat(25, 64));
    assert!(witness.partial_sum <= Rational::one());
    assert!(witness.ones_are_dense());
    // recurrence consistency: accepted regular trees recur through 1s
    let l_automaton = path_recurrent_ones();
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut accepted = 0;
    let mut total = 0;
    for _ in 0..120 {
        let t = gen::random_regular_tree(&mut rng, Alphabet::binary(), 5);
        total += 1;
        if tree_membership_game(&l_automaton, &t).unwrap() {
            accepted += 1;
            assert!(
                regular_tree_infinitely_ones(&t).unwrap(),
                "accepted tree without recurring 1s: {t:?}"
            );
        }
    }
    assert!(accepted > 0 && accepted < total);
    println!(
        "criterion 8: growth pins, partial sum 25/64, recurrence on {accepted} accepted trees: pass"
    );
}

#[test]
fn criterion_9_scripted_play_sessions() {
    let full = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![0, 0]],
        MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
    )
    .unwrap();
    let only_zero = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![0, 1], vec![1, 1]],
        MullerFamily::new([[0].into_iter().collect::<StateSet>()]),
    )
    .unwrap();
    let inf_ones = DetMullerAutomaton::new(
        Alphabet::binary(),
        0,
        vec![vec![0, 1], vec![0, 1]],
        MullerFamily::new([
            [1].into_iter().collect::<StateSet>(),
            [0, 1].into_iter().collect(),
        ]),
    )
    .unwrap();
    // full language, human universal: the machine's existential seat wins
    let script = vec![(Player::Forall, vec![0, 0]), (Player::Forall, vec![1])];
    let out = run_script(&full, Player::Forall, &script, 10).unwrap();
    assert_eq!(out.winner, Player::Exists);
    // the zero-only language, human existential spoils: universal machine wins
    let script = vec![(Player::Exists, vec![1])];
    let out = run_script(&only_zero, Player::Exists, &script, 10).unwrap();
    assert_eq!(out.winner, Player::Forall);
    // recurring ones: existential machine commits to an accepting cycle
    let script = vec![(Player::Forall, vec![0]), (Player::Forall, vec![0, 0])];
    let out = run_script(&inf_ones, Player::Forall, &script, 12).unwrap();
    assert_eq!(out.winner, Player::Exists);
    assert!(out.inf_states.contains(&1));
    // replays are byte-identical
    let once = run_script(&inf_ones, Player::Forall, &script, 12).unwrap();
    let twice = run_script(&inf_ones, Player::Forall, &script, 12).unwrap();
    let r1 = write_transcript(&once.rounds, &inf_ones.alphabet);
    let r2 = write_transcript(&twice.rounds, &inf_ones.alphabet);
    assert_eq!(r1, r2);
    assert!(!r1.is_empty());
    println!("criterion 9: scripted sessions end with the pinned winners, replays identical: pass");
}
