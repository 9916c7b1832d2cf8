//! Omega-automata over words and infinite trees, finite-arena games,
//! exact language measure, and the category/measure quantifier machinery
//! built on top of them.

pub mod alphabet;
pub mod alt;
pub mod bm;
pub mod category;
pub mod dealt;
pub mod det;
pub mod compile;
pub mod error;
pub mod formats;
pub mod formula;
pub mod gen;
pub mod expr;
pub mod game;
pub mod lar;
pub mod lasso;
pub mod measure;
pub mod linalg;
pub mod msou;
pub mod nba;
pub mod parse;
pub mod safra;
pub mod scalar;
pub mod scc;
pub mod tree;
pub mod ztree;

pub use alphabet::{Alphabet, Letter};
pub use alt::AltMullerAutomaton;
pub use det::{dpa_to_detmuller, product_det, DetMullerAutomaton, Dpa, MullerFamily, ProductCond};
pub use error::{Error, Result};
pub use expr::{Dir, TransitionExpr};
pub use game::{Arena, Condition, Player, Strategy};
pub use lasso::LassoWord;
pub use nba::Nba;

/// Exact scalar used by every decision procedure.
pub type Rational = num::BigRational;

/// Dense automaton state identifier.
pub type StateId = usize;

/// Default cap on constructed states in the exponential constructions.
pub const DEFAULT_STATE_BUDGET: usize = 50_000;
