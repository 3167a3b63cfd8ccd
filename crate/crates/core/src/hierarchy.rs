//! Witness words for the strict alternation hierarchy and their separating rankers.
//!
//! Letters `a₀, a₁, …` are rendered `a, b, c, …` for the order signature. In
//! the successor family `b` is the padding letter, so `a₀ ↦ a` and
//! `a_i ↦` the `(i+2)`-th letter for `i ≥ 1` (`a₁ ↦ c`, `a₂ ↦ d`, …).

use serde::Serialize;

use crate::equivalence::{ranker_equiv_alt, suc_ranker_equiv_alt};
use crate::error::{Error, Result};
use crate::formula::{Formula, Signature, Var};
use crate::game::game_equiv_alt;
use crate::ranker::{BoundaryPos, Ranker};
use crate::word::{ord, Alphabet, OrderType, Word};

/// The successor family's padding letter.
pub const PAD: char = 'b';

/// `a_i` in the order family.
pub fn order_letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

/// `a_i` in the successor family.
pub fn suc_letter(i: usize) -> char {
    if i == 0 {
        'a'
    } else {
        (b'a' + i as u8 + 1) as char
    }
}

fn letter(signature: Signature, i: usize) -> char {
    match signature {
        Signature::Order => order_letter(i),
        Signature::OrderSuc => suc_letter(i),
    }
}

/// `u_{m,n}` and `v_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "as_text")]
    pub u: Word,
    #[serde(serialize_with = "as_text")]
    pub v: Word,
    pub signature: Signature,
}

fn as_text<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn check_range(m: usize, n: usize, max_m: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::precondition("witness words need m ≥ 1 and n ≥ 1"));
    }
    if m > max_m {
        return Err(Error::precondition(format!("m = {m} exceeds the {max_m} available letters")));
    }
    Ok(())
}

fn pair(m: usize, n: usize, signature: Signature, u: String, v: String) -> Result<WitnessPair> {
    let mut letters: Vec<char> = (0..m).map(|i| letter(signature, i)).collect();
    if signature == Signature::OrderSuc {
        letters.insert(1.min(letters.len()), PAD);
    }
    let sigma = Alphabet::new(letters)?;
    Ok(WitnessPair {
        m,
        n,
        u: Word::new(&sigma, &u)?,
        v: Word::new(&sigma, &v)?,
        signature,
    })
}

/// The order-signature witnesses over `Σ_m = {a₀, …, a_{m−1}}`.
pub fn witness_words(m: usize, n: usize) -> Result<WitnessPair> {
    check_range(m, n, 26)?;
    let a = order_letter;
    let (mut u, mut v) = if m == 1 {
        (a(0).to_string(), String::new())
    } else {
        let tail = format!("{}{}", a(1), a(0)).repeat(2 * n);
        (format!("{}{tail}", a(0)), tail)
    };
    for level in 3..=m {
        if level % 2 == 1 {
            // u_{2i+1} = (a₀ … a_{2i})^n u_{2i}
            let block: String = (0..level).map(a).collect::<String>().repeat(n);
            u = format!("{block}{u}");
            v = format!("{block}{v}");
        } else {
            // u_{2i+2} = u_{2i+1} (a_{2i+1} … a₀)^n
            let block: String = (0..level).rev().map(a).collect::<String>().repeat(n);
            u.push_str(&block);
            v.push_str(&block);
        }
    }
    pair(m, n, Signature::Order, u, v)
}

/// The padded witnesses for the successor signature.
pub fn witness_words_suc(m: usize, n: usize) -> Result<WitnessPair> {
    check_range(m, n, 25)?;
    let a = suc_letter;
    let pad = PAD.to_string().repeat(2 * n);
    let (mut u, mut v) = (format!("{pad}{}{pad}", a(0)), pad.clone());
    if m >= 2 {
        let tail = format!("{}{pad}{}{pad}", a(1), a(0)).repeat(2 * n);
        u.push_str(&tail);
        v.push_str(&tail);
    }
    for level in 3..=m {
        if level % 2 == 1 {
            let block: String = (0..level)
                .map(|j| format!("{pad}{}", a(j)))
                .collect::<String>()
                .repeat(n);
            u = format!("{block}{u}");
            v = format!("{block}{v}");
        } else {
            let block: String = (0..level)
                .rev()
                .map(|j| format!("{}{pad}", a(j)))
                .collect::<String>()
                .repeat(n);
            u.push_str(&block);
            v.push_str(&block);
        }
    }
    pair(m, n, Signature::OrderSuc, u, v)
}

/// Witnesses for either signature.
pub fn witness_pair(m: usize, n: usize, signature: Signature) -> Result<WitnessPair> {
    match signature {
        Signature::Order => witness_words(m, n),
        Signature::OrderSuc => witness_words_suc(m, n),
    }
}

/// `(r_m, s_m)`: rankers whose order differs on `u_{m,n}` and `v_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingRankerPair {
    pub r: Ranker,
    pub s: Ranker,
}

/// The separating rankers with order-family letters.
pub fn separating_rankers(m: usize) -> Result<SeparatingRankerPair> {
    separating_rankers_for(m, Signature::Order)
}

/// The separating rankers with the letters of the given family.
pub fn separating_rankers_for(m: usize, signature: Signature) -> Result<SeparatingRankerPair> {
    if m < 2 {
        return Err(Error::precondition("separating rankers exist for m ≥ 2"));
    }
    let a = |i| letter(signature, i);
    let mut r = Ranker::single(BoundaryPos::right(a(0)));
    let mut s = Ranker::single(BoundaryPos::right(a(1)));
    for level in 3..=m {
        // Odd levels prepend ←a_{2i}, even levels →a_{2i+1}; either way a_{level−1}.
        let step = if level % 2 == 1 {
            BoundaryPos::left(a(level - 1))
        } else {
            BoundaryPos::right(a(level - 1))
        };
        r = r.prepended(step)?;
        s = s.prepended(step)?;
    }
    Ok(SeparatingRankerPair { r, s })
}

/// `r_{2i+2}(u_{2i+2}) = r_{2i+1}(u_{2i+1}) = (2i+1)n + r_{2i}(u_{2i})` and its
/// companions for `s` and `v`, evaluated rather than assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceRow {
    pub ranker: char,
    pub word: char,
    /// `(level 2i+2, level 2i+1, level 2i)` positions.
    pub positions: [Option<usize>; 3],
    pub holds: bool,
}

pub fn position_recurrence(i: usize, n: usize) -> Result<Vec<RecurrenceRow>> {
    if i == 0 {
        return Err(Error::precondition("the recurrence starts at i = 1"));
    }
    let levels = [2 * i + 2, 2 * i + 1, 2 * i];
    let words: Vec<WitnessPair> = levels.iter().map(|&l| witness_words(l, n)).collect::<Result<_>>()?;
    let rankers: Vec<SeparatingRankerPair> = levels.iter().map(|&l| separating_rankers(l)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (rname, pick_r) in [('r', true), ('s', false)] {
        for (wname, pick_u) in [('u', true), ('v', false)] {
            let mut positions = [None; 3];
            for k in 0..3 {
                let rk = if pick_r { &rankers[k].r } else { &rankers[k].s };
                let w = if pick_u { &words[k].u } else { &words[k].v };
                positions[k] = rk.eval(w);
            }
            let holds = match positions {
                [Some(a), Some(b), Some(c)] => a == b && b == (2 * i + 1) * n + c,
                _ => false,
            };
            rows.push(RecurrenceRow {
                ranker: rname,
                word: wname,
                positions,
                holds,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Indistinguishability {
    /// The `(m−1, n)` relation as decided by ranker conditions.
    pub ranker_verdict: bool,
    /// The same relation as decided by the game.
    pub game_verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankerSeparation {
    pub r: String,
    pub s: String,
    pub ord_u: Option<OrderType>,
    pub ord_v: Option<OrderType>,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HierarchyReport {
    pub m: usize,
    pub n: usize,
    pub signature: Signature,
    pub u: String,
    pub v: String,
    /// Present for `m ≥ 2`.
    pub indistinguishable: Option<Indistinguishability>,
    /// Present for `m ≥ 2`.
    pub rankers: Option<RankerSeparation>,
    /// Smallest depth `n' ≤ search_bound` at which Samson wins with `m` blocks.
    pub game_separation_depth: Option<usize>,
    pub search_bound: usize,
    /// For `m = 1`: truth of `∃x(x=x)` on `u` and on `v`.
    pub nonempty: Option<(bool, bool)>,
}

impl HierarchyReport {
    /// Every check separated the levels as expected.
    pub fn confirmed(&self) -> bool {
        if self.m == 1 {
            return self.nonempty.is_some_and(|(u, v)| u != v);
        }
        self.indistinguishable
            .as_ref()
            .is_some_and(|i| i.ranker_verdict && i.game_verdict)
            && self.rankers.as_ref().is_some_and(|r| r.swapped)
            && self.game_separation_depth.is_some()
    }
}

/// Checks that level `m` witnesses at parameter `n` are `(m−1, n)`-equivalent
/// and `m`-alternation separable.
pub fn verify_hierarchy_level(m: usize, n: usize, signature: Signature) -> Result<HierarchyReport> {
    let pair = witness_pair(m, n, signature)?;
    let suc = signature.has_successor();
    let search_bound = n + m;
    let mut report = HierarchyReport {
        m,
        n,
        signature,
        u: pair.u.to_string(),
        v: pair.v.to_string(),
        indistinguishable: None,
        rankers: None,
        game_separation_depth: None,
        search_bound,
        nonempty: None,
    };

    if m == 1 {
        let phi = Formula::exists(Var::X, Formula::equal(Var::X, Var::X));
        report.nonempty = Some((phi.model_check(&pair.u, None, None)?, phi.model_check(&pair.v, None, None)?));
    } else {
        // More blocks than moves adds nothing, so clamp for n < m − 1.
        let blocks = (m - 1).min(n);
        let ranker_verdict = if suc {
            suc_ranker_equiv_alt(&pair.u, &pair.v, blocks, n)?.verdict
        } else {
            ranker_equiv_alt(&pair.u, &pair.v, blocks, n)?.verdict
        };
        let game_verdict = game_equiv_alt(&pair.u, &pair.v, blocks, n, suc, None)?.delilah_wins;
        report.indistinguishable = Some(Indistinguishability {
            ranker_verdict,
            game_verdict,
        });

        let SeparatingRankerPair { r, s } = separating_rankers_for(m, signature)?;
        let order = |w: &Word| Some(ord(r.eval(w)?, s.eval(w)?));
        let (ord_u, ord_v) = (order(&pair.u), order(&pair.v));
        report.rankers = Some(RankerSeparation {
            r: r.to_string(),
            s: s.to_string(),
            ord_u,
            ord_v,
            swapped: ord_u.is_some() && ord_v.is_some() && ord_u != ord_v,
        });
    }

    for depth in m..=search_bound {
        if !game_equiv_alt(&pair.u, &pair.v, m, depth, suc, None)?.delilah_wins {
            report.game_separation_depth = Some(depth);
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(p: &WitnessPair) -> (String, String) {
        (p.u.to_string(), p.v.to_string())
    }

    #[test]
    fn order_witness_examples() {
        assert_eq!(texts(&witness_words(1, 1).unwrap()), ("a".into(), "".into()));
        assert_eq!(texts(&witness_words(2, 1).unwrap()), ("ababa".into(), "baba".into()));
        assert_eq!(texts(&witness_words(3, 1).unwrap()), ("abcababa".into(), "abcbaba".into()));
        assert_eq!(
            texts(&witness_words(4, 1).unwrap()),
            ("abcababadcba".into(), "abcbabadcba".into())
        );
        assert_eq!(witness_words(2, 3).unwrap().u.alphabet().letters(), &['a', 'b']);
        assert!(witness_words(0, 1).is_err());
        assert!(witness_words(1, 0).is_err());
    }

    #[test]
    fn successor_witness_examples() {
        assert_eq!(texts(&witness_words_suc(1, 1).unwrap()), ("bbabb".into(), "bb".into()));
        let p = witness_words_suc(2, 1).unwrap();
        assert_eq!(p.u.to_string(), format!("bbabb{}", "cbbabb".repeat(2)));
        assert_eq!(texts(&witness_words_suc(1, 2).unwrap()), ("bbbbabbbb".into(), "bbbb".into()));
        assert_eq!(p.u.alphabet().letters(), &['a', 'b', 'c']);
    }

    #[test]
    fn deletion_invariant_order_family() {
        for m in 1..=5 {
            for n in 1..=4 {
                let p = witness_words(m, n).unwrap();
                let u = p.u.letters();
                let deletes_to_v = (0..u.len()).any(|k| {
                    u[k] == 'a' && u[..k].iter().chain(&u[k + 1..]).copied().eq(p.v.letters().iter().copied())
                });
                assert!(deletes_to_v, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn successor_pad_runs() {
        for m in 1..=5 {
            for n in 1..=4 {
                let p = witness_words_suc(m, n).unwrap();
                for w in [&p.u, &p.v] {
                    for seg in crate::word::segments(w) {
                        if seg.letter == PAD {
                            assert_eq!(seg.len(), 2 * n, "m={m} n={n} {w}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn separating_ranker_examples() {
        let show = |m| {
            let p = separating_rankers(m).unwrap();
            (p.r.to_string(), p.s.to_string())
        };
        assert_eq!(show(2), (">a".into(), ">b".into()));
        assert_eq!(show(3), ("<c>a".into(), "<c>b".into()));
        assert_eq!(show(4), (">d<c>a".into(), ">d<c>b".into()));
        assert!(separating_rankers(1).is_err());
        for m in 2..=6 {
            let p = separating_rankers(m).unwrap();
            let dirs = |r: &Ranker| r.steps().iter().map(|s| s.direction).collect::<Vec<_>>();
            assert_eq!(dirs(&p.r), dirs(&p.s));
            assert_eq!(p.r.alternation_blocks(), m - 1);
        }
    }

    #[test]
    fn separation_swaps_order() {
        for m in 2..=4 {
            for n in 1..=3 {
                let w = witness_words(m, n).unwrap();
                let p = separating_rankers(m).unwrap();
                let on = |x: &Word| ord(p.r.eval(x).unwrap(), p.s.eval(x).unwrap());
                assert_ne!(on(&w.u), on(&w.v), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_holds() {
        for n in 1..=3 {
            let rows = position_recurrence(1, n).unwrap();
            assert_eq!(rows.len(), 4);
            assert!(rows.iter().all(|r| r.holds), "{rows:?}");
        }
    }

    #[test]
    fn verify_small_levels() {
        let r = verify_hierarchy_level(1, 1, Signature::Order).unwrap();
        assert_eq!(r.nonempty, Some((true, false)));
        assert!(r.confirmed());
        let r = verify_hierarchy_level(2, 2, Signature::Order).unwrap();
        assert!(r.confirmed(), "{r:?}");
        let r = verify_hierarchy_level(2, 1, Signature::OrderSuc).unwrap();
        assert!(r.confirmed(), "{r:?}");
    }
}
