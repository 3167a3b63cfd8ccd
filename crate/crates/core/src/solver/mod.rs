//! Satisfiability of FO²[<] sentences over a fixed alphabet: small-model
//! shrinking, bounded word search and the CNF reduction.

mod cnf;
mod search;
mod shrink;

pub use cnf::{cnf_brute_force, cnf_to_fo2, parse_dimacs, Cnf, MAX_BRUTE_FORCE_VARS};
pub use search::{
    sat_search, sat_search_with, CongruenceSearch, SatResult, SatStatus, SearchLimits, SearchPlan,
    SearchRegistry, ShortlexSearch, WordSearch,
};
pub use shrink::{shrink, small_model_bound};
