//! Two-variable first-order logic on finite words: rankers, ranker-based
//! equivalence, Ehrenfeucht–Fraïssé games, alternation-hierarchy witnesses and
//! a small-model satisfiability solver.
//!
//! ```
//! use fo2::equivalence::ranker_equiv;
//! use fo2::game::game_equiv;
//! use fo2::{Alphabet, Ranker, Word};
//!
//! let sigma = Alphabet::parse("ab")?;
//! let (u, v) = (Word::new(&sigma, "aa")?, Word::new(&sigma, "aaa")?);
//! assert!(!ranker_equiv(&u, &v, 2)?.verdict);
//! assert!(!game_equiv(&u, &v, 2, false)?.delilah_wins);
//!
//! let r: Ranker = ">a<b".parse()?;
//! assert_eq!(r.eval(&Word::new(&sigma, "baba")?), Some(1));
//! # Ok::<(), fo2::Error>(())
//! ```

pub mod error;
pub mod equivalence;
pub mod formula;
pub mod game;
pub mod hierarchy;
pub mod parse;
pub mod synth;
pub mod ranker;
pub mod solver;
pub mod word;

pub use error::{Error, Result};
pub use formula::{Formula, FormulaMetrics, Signature, Var};
pub use ranker::{BoundaryPos, Direction, NeighborhoodPos, Ranker, RankerFilter, RealizedSet, Step, SucRanker};
pub use word::{Alphabet, OrderType, SucOrderType, Word};
