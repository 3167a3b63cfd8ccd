//! Word enumeration for satisfiability.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::shrink::small_model_bound;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::ranker::{realized_rankers, Ranker};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SatStatus {
    Sat,
    UnsatDefinitive,
    UnsatUpToBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SatResult {
    pub status: SatStatus,
    #[serde(serialize_with = "witness_text")]
    pub witness: Option<Word>,
    pub explored_bound: u64,
}

fn witness_text<S: serde::Serializer>(w: &Option<Word>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        self.status == SatStatus::Sat
    }
}

/// Caps on the work a single search may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Candidate words model-checked.
    pub max_words: u64,
    /// Words held in the search queue at once.
    pub max_queue: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_words: 2_000_000,
            max_queue: 200_000,
        }
    }
}

/// What a strategy is asked to explore.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchPlan {
    /// Quantifier depth used for the bound, at least 1.
    pub n: usize,
    /// `B(n, |alphabet|)`.
    pub bound: u64,
    /// Longest length explored, `min(maxLen, bound)`.
    pub max_len: u64,
    /// Only words of exactly this length are candidates.
    pub exact_len: Option<usize>,
    pub limits: SearchLimits,
}

/// A strategy for finding the shortlex-least model of a sentence.
pub trait WordSearch: Send + Sync {
    fn name(&self) -> &'static str;
    fn search(&self, phi: &Formula, alphabet: &Alphabet, plan: &SearchPlan) -> Result<SatResult>;
}

/// Every word in shortlex order.
pub struct ShortlexSearch;

impl WordSearch for ShortlexSearch {
    fn name(&self) -> &'static str {
        "shortlex"
    }

    fn search(&self, phi: &Formula, alphabet: &Alphabet, plan: &SearchPlan) -> Result<SatResult> {
        let letters = alphabet.letters();
        let (lo, hi) = match plan.exact_len {
            Some(l) => (l as u64, l as u64),
            None => (0, plan.max_len),
        };
        let mut checked = 0u64;
        for len in lo..=hi {
            let len = len as usize;
            let mut digits = vec![0usize; len];
            loop {
                checked += 1;
                if checked > plan.limits.max_words {
                    return Err(Error::Resource {
                        what: "words checked by satisfiability search",
                        cap: plan.limits.max_words,
                    });
                }
                let word = Word::from_letters(alphabet, digits.iter().map(|&d| letters[d]).collect())?;
                if phi.model_check(&word, None, None)? {
                    return Ok(sat(word));
                }
                if !next_digits(&mut digits, letters.len()) {
                    break;
                }
            }
        }
        Ok(unsat(plan, plan.exact_len.is_none() && plan.max_len >= plan.bound))
    }
}

/// Odometer increment; false once every digit wrapped.
fn next_digits(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Shortlex breadth-first search that keeps one word per `≡²_n` class.
///
/// Words are identified by their defined rankers of length ≤ n together with
/// where each lands relative to the positions of the rankers of length ≤ n−1.
/// Equal keys imply `≡²_n`, and `≡²_n` is a congruence, so a word whose key
/// was already seen cannot start a shortlex-smaller model than the earlier one.
pub struct CongruenceSearch;

type ClassKey = (usize, Vec<(Ranker, usize)>);

fn class_key(w: &Word, n: usize, with_len: bool) -> Result<ClassKey> {
    let realized = realized_rankers(w, n, None)?;
    let mut anchors: Vec<usize> = realized.iter().filter(|e| e.ranker.len() < n).map(|e| e.position).collect();
    anchors.sort_unstable();
    anchors.dedup();
    let mut key: Vec<(Ranker, usize)> = realized
        .iter()
        .map(|e| {
            let below = anchors.partition_point(|&p| p < e.position);
            let on = anchors.get(below) == Some(&e.position);
            (e.ranker.clone(), 2 * below + on as usize)
        })
        .collect();
    key.sort();
    Ok((if with_len { w.len() } else { 0 }, key))
}

impl WordSearch for CongruenceSearch {
    fn name(&self) -> &'static str {
        "congruence"
    }

    fn search(&self, phi: &Formula, alphabet: &Alphabet, plan: &SearchPlan) -> Result<SatResult> {
        let exact = plan.exact_len;
        let max_len = exact.map(|l| l as u64).unwrap_or(plan.max_len);
        let mut seen: HashSet<ClassKey> = HashSet::new();
        let mut queue: VecDeque<Vec<char>> = VecDeque::new();
        let mut truncated = false;
        let mut checked = 0u64;
        queue.push_back(Vec::new());
        while let Some(letters) = queue.pop_front() {
            let word = Word::from_letters(alphabet, letters)?;
            if !seen.insert(class_key(&word, plan.n, exact.is_some())?) {
                continue;
            }
            if exact.is_none_or(|l| l == word.len()) {
                checked += 1;
                if checked > plan.limits.max_words {
                    return Err(Error::Resource {
                        what: "words checked by satisfiability search",
                        cap: plan.limits.max_words,
                    });
                }
                if phi.model_check(&word, None, None)? {
                    return Ok(sat(word));
                }
            }
            if word.len() as u64 >= max_len {
                truncated = true;
                continue;
            }
            for &c in alphabet.letters() {
                let mut next = word.letters().to_vec();
                next.push(c);
                queue.push_back(next);
            }
            if queue.len() > plan.limits.max_queue {
                return Err(Error::Resource {
                    what: "satisfiability search queue",
                    cap: plan.limits.max_queue as u64,
                });
            }
        }
        // An exhausted queue covers every word of every length; a queue cut at
        // the small-model bound does too.
        let definitive = exact.is_none() && (!truncated || plan.max_len >= plan.bound);
        Ok(unsat(plan, definitive))
    }
}

fn sat(word: Word) -> SatResult {
    SatResult {
        status: SatStatus::Sat,
        explored_bound: word.len() as u64,
        witness: Some(word),
    }
}

fn unsat(plan: &SearchPlan, definitive: bool) -> SatResult {
    if definitive {
        SatResult {
            status: SatStatus::UnsatDefinitive,
            witness: None,
            explored_bound: plan.bound,
        }
    } else {
        SatResult {
            status: SatStatus::UnsatUpToBound,
            witness: None,
            explored_bound: plan.exact_len.map(|l| l as u64).unwrap_or(plan.max_len),
        }
    }
}

/// Search strategies by name.
pub struct SearchRegistry {
    strategies: Vec<Box<dyn WordSearch>>,
}

impl Default for SearchRegistry {
    fn default() -> Self {
        let mut registry = SearchRegistry::empty();
        registry.register(Box::new(CongruenceSearch));
        registry.register(Box::new(ShortlexSearch));
        registry
    }
}

impl SearchRegistry {
    pub fn empty() -> Self {
        SearchRegistry { strategies: Vec::new() }
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, strategy: Box<dyn WordSearch>) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn get(&self, name: &str) -> Option<&dyn WordSearch> {
        self.strategies.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    /// The strategy used when none is named.
    pub fn default_strategy(&self) -> Option<&dyn WordSearch> {
        self.strategies.first().map(|s| s.as_ref())
    }
}

/// Shortlex-least model of `phi` over `alphabet`, with the default strategy and limits.
pub fn sat_search(
    phi: &Formula,
    alphabet: &Alphabet,
    max_len: Option<u64>,
    exact_len: Option<usize>,
) -> Result<SatResult> {
    sat_search_with(&CongruenceSearch, phi, alphabet, max_len, exact_len, SearchLimits::default())
}

pub fn sat_search_with(
    strategy: &dyn WordSearch,
    phi: &Formula,
    alphabet: &Alphabet,
    max_len: Option<u64>,
    exact_len: Option<usize>,
    limits: SearchLimits,
) -> Result<SatResult> {
    if !phi.is_sentence() {
        return Err(Error::precondition("satisfiability search needs a sentence"));
    }
    if phi.uses_successor() {
        return Err(Error::precondition(
            "satisfiability search supports the order signature only",
        ));
    }
    for c in phi.letters() {
        alphabet.check(c)?;
    }
    let n = phi.quantifier_depth().max(1);
    let bound = small_model_bound(n, alphabet.len())?;
    let plan = SearchPlan {
        n,
        bound,
        max_len: max_len.map_or(bound, |l| l.min(bound)),
        exact_len,
        limits,
    };
    strategy.search(phi, alphabet, &plan)
}
