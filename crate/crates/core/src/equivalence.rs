//! Deciding `≡²_n` and `≡²_{m,n}` through ranker conditions, with witnesses.
//!
//! Condition (a) compares the defined rankers of both words, (b) compares the
//! order of pairs `r ∈ R*_{m,n}`, `r' ∈ R*_{m−1,n−1}`, and (c), for the
//! alternation-bounded relation, pairs `r ∈ R*_{m,n}`, `r' ∈ R*_{m,n−1}` that
//! end in different directions. Without an alternation bound (c) is subsumed
//! by (b). The successor variants use successor rankers and `sucord`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Signature;
use crate::game::{game_equiv, game_equiv_alt, GameVerdict};
use crate::ranker::{
    realized_rankers, realized_suc_rankers, RankerFilter, Realized, RealizedSet, Step,
};
use crate::word::{ord, sucord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailedCondition {
    None,
    Definedness,
    Order,
    CrossDirection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankerWitness {
    pub ranker: String,
    pub pos_u: Option<usize>,
    pub pos_v: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub signature: Signature,
    pub verdict: bool,
    pub failed_condition: FailedCondition,
    pub witnesses: Vec<RankerWitness>,
}

/// `u ≡²_n v` over `<`.
pub fn ranker_equiv(u: &Word, v: &Word, n: usize) -> Result<EquivReport> {
    check_inputs(u, v, None, n)?;
    let (su, sv) = (realized_rankers(u, n, None)?, realized_rankers(v, n, None)?);
    Ok(decide(&su, &sv, None, n, Signature::Order, |i, j, k, l| ord(i, j) == ord(k, l)))
}

/// `u ≡²_{m,n} v` over `<`.
pub fn ranker_equiv_alt(u: &Word, v: &Word, m: usize, n: usize) -> Result<EquivReport> {
    check_inputs(u, v, Some(m), n)?;
    let (su, sv) = (realized_rankers(u, n, Some(m))?, realized_rankers(v, n, Some(m))?);
    Ok(decide(&su, &sv, Some(m), n, Signature::Order, |i, j, k, l| ord(i, j) == ord(k, l)))
}

/// `u ≡²_n v` over `<, suc`.
pub fn suc_ranker_equiv(u: &Word, v: &Word, n: usize) -> Result<EquivReport> {
    check_inputs(u, v, None, n)?;
    let (su, sv) = (realized_suc_rankers(u, n, None)?, realized_suc_rankers(v, n, None)?);
    Ok(decide(&su, &sv, None, n, Signature::OrderSuc, |i, j, k, l| {
        sucord(i, j) == sucord(k, l)
    }))
}

/// `u ≡²_{m,n} v` over `<, suc`.
pub fn suc_ranker_equiv_alt(u: &Word, v: &Word, m: usize, n: usize) -> Result<EquivReport> {
    check_inputs(u, v, Some(m), n)?;
    let (su, sv) = (realized_suc_rankers(u, n, Some(m))?, realized_suc_rankers(v, n, Some(m))?);
    Ok(decide(&su, &sv, Some(m), n, Signature::OrderSuc, |i, j, k, l| {
        sucord(i, j) == sucord(k, l)
    }))
}

/// Probe for "`|Σ|+1` alternation blocks suffice": returns whether
/// `u ≡²_{|Σ|+1,n} v` implies `u ≡²_n v` on this pair.
pub fn alphabet_collapse_check(u: &Word, v: &Word, n: usize) -> Result<bool> {
    let m = (u.alphabet().len() + 1).min(n);
    let alt = ranker_equiv_alt(u, v, m, n)?.verdict;
    Ok(!alt || ranker_equiv(u, v, n)?.verdict)
}

fn check_inputs(u: &Word, v: &Word, m: Option<usize>, n: usize) -> Result<()> {
    if !u.alphabet().same_letters(v.alphabet()) {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet().to_string(),
            right: v.alphabet().to_string(),
        });
    }
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    if let Some(m) = m {
        if m == 0 || m > n {
            return Err(Error::precondition(format!("need 1 ≤ m ≤ n, got m={m}, n={n}")));
        }
    }
    Ok(())
}

fn witness<S: Step>(r: &Realized<S>, sv: &RealizedSet<S>, on_u: bool) -> RankerWitness {
    let other = sv.position(&r.ranker);
    let (pos_u, pos_v) = if on_u {
        (Some(r.position), other)
    } else {
        (other, Some(r.position))
    };
    RankerWitness {
        ranker: r.ranker.to_string(),
        pos_u,
        pos_v,
    }
}

fn decide<S: Step>(
    su: &RealizedSet<S>,
    sv: &RealizedSet<S>,
    m: Option<usize>,
    n: usize,
    signature: Signature,
    same: impl Fn(usize, usize, usize, usize) -> bool,
) -> EquivReport {
    let report = |failed: FailedCondition, witnesses: Vec<RankerWitness>| EquivReport {
        n,
        m,
        signature,
        verdict: failed == FailedCondition::None,
        failed_condition: failed,
        witnesses,
    };

    // (a): identical sets of defined rankers; report the least one defined on only one side.
    let mut only: BTreeMap<_, RankerWitness> = BTreeMap::new();
    for r in su.iter().filter(|r| !sv.contains(&r.ranker)) {
        only.insert(&r.ranker, witness(r, sv, true));
    }
    for r in sv.iter().filter(|r| !su.contains(&r.ranker)) {
        only.insert(&r.ranker, witness(r, su, false));
    }
    if let Some((_, w)) = only.into_iter().next() {
        return report(FailedCondition::Definedness, vec![w]);
    }

    let all = match m {
        Some(m) => RankerFilter::star_alt(m, n),
        None => RankerFilter::star(n),
    };
    let shorter = match m {
        Some(m) => RankerFilter::star_alt(m.saturating_sub(1), n - 1),
        None => RankerFilter::star(n - 1),
    };
    let disagree = |r: &Realized<S>, s: &Realized<S>| {
        let (rv, sv_) = (
            sv.position(&r.ranker).expect("(a) holds"),
            sv.position(&s.ranker).expect("(a) holds"),
        );
        !same(r.position, s.position, rv, sv_)
    };

    // (b)
    for r in su.select(all) {
        for s in su.select(shorter) {
            if disagree(r, s) {
                return report(FailedCondition::Order, vec![witness(r, sv, true), witness(s, sv, true)]);
            }
        }
    }

    // (c)
    if let Some(m) = m {
        let cross = RankerFilter::star_alt(m, n - 1);
        for r in su.select(all) {
            for s in su
                .select(cross)
                .filter(|s| s.ranker.last_direction() != r.ranker.last_direction())
            {
                if disagree(r, s) {
                    return report(
                        FailedCondition::CrossDirection,
                        vec![witness(r, sv, true), witness(s, sv, true)],
                    );
                }
            }
        }
    }

    report(FailedCondition::None, Vec::new())
}

/// An equivalence query: depth `n`, optional alternation bound `m`, signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivQuery {
    pub n: usize,
    pub m: Option<usize>,
    pub successor: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Ranker(EquivReport),
    Game(GameVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub method: String,
    pub verdict: bool,
    pub evidence: Evidence,
}

/// A procedure that decides `≡²_n` / `≡²_{m,n}` for word pairs.
pub trait EquivalenceDecider: Send + Sync {
    fn name(&self) -> &'static str;
    fn decide(&self, u: &Word, v: &Word, query: EquivQuery) -> Result<Decision>;
}

/// Decides through the ranker conditions.
pub struct RankerDecider;

impl EquivalenceDecider for RankerDecider {
    fn name(&self) -> &'static str {
        "ranker"
    }

    fn decide(&self, u: &Word, v: &Word, q: EquivQuery) -> Result<Decision> {
        let report = match (q.m, q.successor) {
            (None, false) => ranker_equiv(u, v, q.n)?,
            (None, true) => suc_ranker_equiv(u, v, q.n)?,
            (Some(m), false) => ranker_equiv_alt(u, v, m, q.n)?,
            (Some(m), true) => suc_ranker_equiv_alt(u, v, m, q.n)?,
        };
        Ok(Decision {
            method: self.name().to_string(),
            verdict: report.verdict,
            evidence: Evidence::Ranker(report),
        })
    }
}

/// Decides by solving the pebble game.
pub struct GameDecider;

impl EquivalenceDecider for GameDecider {
    fn name(&self) -> &'static str {
        "game"
    }

    fn decide(&self, u: &Word, v: &Word, q: EquivQuery) -> Result<Decision> {
        let verdict = match q.m {
            None => game_equiv(u, v, q.n, q.successor)?,
            Some(m) => game_equiv_alt(u, v, m, q.n, q.successor, None)?,
        };
        Ok(Decision {
            method: self.name().to_string(),
            verdict: verdict.delilah_wins,
            evidence: Evidence::Game(verdict),
        })
    }
}

/// Deciders by name.
pub struct DeciderRegistry {
    deciders: Vec<Box<dyn EquivalenceDecider>>,
}

impl Default for DeciderRegistry {
    fn default() -> Self {
        let mut registry = DeciderRegistry::empty();
        registry.register(Box::new(RankerDecider));
        registry.register(Box::new(GameDecider));
        registry
    }
}

impl DeciderRegistry {
    pub fn empty() -> Self {
        DeciderRegistry { deciders: Vec::new() }
    }

    /// Adds a decider, replacing any existing one with the same name.
    pub fn register(&mut self, decider: Box<dyn EquivalenceDecider>) {
        self.deciders.retain(|d| d.name() != decider.name());
        self.deciders.push(decider);
    }

    pub fn get(&self, name: &str) -> Option<&dyn EquivalenceDecider> {
        self.deciders.iter().find(|d| d.name() == name).map(|d| d.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.deciders.iter().map(|d| d.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn EquivalenceDecider> {
        self.deciders.iter().map(|d| d.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(text: &str) -> Word {
        Word::new(&Alphabet::parse("ab").unwrap(), text).unwrap()
    }

    fn witnesses(r: &EquivReport) -> Vec<(&str, Option<usize>, Option<usize>)> {
        r.witnesses.iter().map(|x| (x.ranker.as_str(), x.pos_u, x.pos_v)).collect()
    }

    #[test]
    fn plain_examples() {
        assert!(ranker_equiv(&w("ab"), &w("ba"), 1).unwrap().verdict);
        // →a→b is defined only on "ab", so (a) already fails.
        let r = ranker_equiv(&w("ab"), &w("ba"), 2).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failed_condition, FailedCondition::Definedness);
        assert_eq!(witnesses(&r), vec![(">a>b", Some(2), None)]);
        let r = ranker_equiv(&w("aa"), &w("aaa"), 2).unwrap();
        assert_eq!(r.failed_condition, FailedCondition::Order);
        assert_eq!(witnesses(&r), vec![(">a>a", Some(2), Some(2)), ("<a", Some(2), Some(3))]);
        assert!(ranker_equiv(&w("abba"), &w("abba"), 3).unwrap().verdict);
    }

    #[test]
    fn definedness_reported_first() {
        let r = ranker_equiv(&w("a"), &w(""), 2).unwrap();
        assert_eq!(r.failed_condition, FailedCondition::Definedness);
        assert_eq!(witnesses(&r), vec![(">a", Some(1), None)]);
        let r = ranker_equiv(&w("ab"), &w("a"), 1).unwrap();
        assert_eq!(witnesses(&r), vec![(">b", Some(2), None)]);
    }

    #[test]
    fn alternation_examples() {
        assert!(ranker_equiv_alt(&w("ababa"), &w("baba"), 1, 1).unwrap().verdict);
        let r = ranker_equiv_alt(&w("ababa"), &w("baba"), 2, 2).unwrap();
        assert!(!r.verdict);
        assert_eq!(witnesses(&r), vec![(">a<b", None, Some(1))]);
        let r = ranker_equiv_alt(&w("ababa"), &w("baba"), 1, 2).unwrap();
        assert_eq!(r.failed_condition, FailedCondition::CrossDirection);
        assert_eq!(witnesses(&r), vec![(">a>a", Some(3), Some(4)), ("<a", Some(5), Some(4))]);
        assert!(ranker_equiv_alt(&w("abab"), &w("abab"), 2, 3).unwrap().verdict);
        assert!(ranker_equiv_alt(&w("ab"), &w("ab"), 0, 3).is_err());
    }

    #[test]
    fn successor_examples() {
        assert!(suc_ranker_equiv(&w("ab"), &w("ba"), 1).unwrap().verdict);
        let sigma = Alphabet::parse("abx").unwrap();
        let ab = Word::new(&sigma, "ab").unwrap();
        let axb = Word::new(&sigma, "axb").unwrap();
        assert!(!suc_ranker_equiv(&ab, &axb, 2).unwrap().verdict);
        assert!(suc_ranker_equiv(&axb, &axb, 2).unwrap().verdict);
        assert!(suc_ranker_equiv_alt(&axb, &axb, 1, 2).unwrap().verdict);
        assert!(!suc_ranker_equiv_alt(&w("ab"), &w("ba"), 2, 2).unwrap().verdict);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let other = Word::new(&Alphabet::parse("abc").unwrap(), "ab").unwrap();
        assert_eq!(ranker_equiv(&w("ab"), &other, 1).unwrap_err().code(), "alphabet-mismatch");
    }

    #[test]
    fn collapse_examples() {
        assert!(alphabet_collapse_check(&w("abab"), &w("abab"), 3).unwrap());
        let sigma = Alphabet::parse("a").unwrap();
        let words: Vec<Word> = (0..=6).map(|k| Word::new(&sigma, &"a".repeat(k)).unwrap()).collect();
        for u in &words {
            for v in &words {
                for n in 1..=3 {
                    assert!(alphabet_collapse_check(u, v, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn registry_lookup() {
        let registry = DeciderRegistry::default();
        assert_eq!(registry.names(), vec!["ranker", "game"]);
        let q = EquivQuery {
            n: 2,
            m: None,
            successor: false,
        };
        for d in registry.iter() {
            assert!(!d.decide(&w("ab"), &w("ba"), q).unwrap().verdict);
        }
        assert!(registry.get("nope").is_none());
    }
}
