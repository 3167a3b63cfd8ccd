//! Formulas for rankers: definedness sentences `φ_r`, position formulas `ψ_r`,
//! and the comparison formulas they are built from.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Var};
use crate::ranker::{realized_rankers, BoundaryPos, Direction, NeighborhoodPos, Ranker, Step};
use crate::word::Word;

/// How the free position `i` relates to `r(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparison {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "<" => Some(Comparison::Lt),
            "<=" => Some(Comparison::Le),
            ">" => Some(Comparison::Gt),
            ">=" => Some(Comparison::Ge),
            _ => None,
        }
    }

    pub fn holds(self, i: usize, target: usize) -> bool {
        match self {
            Comparison::Lt => i < target,
            Comparison::Le => i <= target,
            Comparison::Gt => i > target,
            Comparison::Ge => i >= target,
        }
    }
}

/// Instructions that can express "position `v` is a match" as a formula.
pub trait StepFormula: Step {
    fn matches(&self, v: Var) -> Formula;
}

impl StepFormula for BoundaryPos {
    fn matches(&self, v: Var) -> Formula {
        Formula::letter(self.letter, v)
    }
}

impl StepFormula for NeighborhoodPos {
    /// `a(v)` plus successor chains for the context; depth `max(k, ℓ)`.
    fn matches(&self, v: Var) -> Formula {
        let mut parts = vec![Formula::letter(self.letter, v)];
        if !self.before.is_empty() {
            parts.push(chain(v, self.before.iter().rev().copied().collect(), true));
        }
        if !self.after.is_empty() {
            parts.push(chain(v, self.after.clone(), false));
        }
        Formula::and_all(parts)
    }
}

/// `∃o(suc(o,v) ∧ c₁(o) ∧ ∃v(suc(v,o) ∧ c₂(v) ∧ …))`, walking left when `backwards`.
fn chain(v: Var, letters: Vec<char>, backwards: bool) -> Formula {
    fn go(from: Var, letters: &[char], backwards: bool) -> Formula {
        let Some((&c, rest)) = letters.split_first() else {
            return Formula::True;
        };
        let to = from.other();
        let link = if backwards {
            Formula::suc(to, from)
        } else {
            Formula::suc(from, to)
        };
        let mut parts = vec![link, Formula::letter(c, to)];
        if !rest.is_empty() {
            parts.push(go(to, rest, backwards));
        }
        Formula::exists(to, Formula::and_all(parts))
    }
    go(v, &letters, backwards)
}

/// Conjunction that leaves out `true` conjuncts (from empty prefixes).
fn all<const N: usize>(parts: [Formula; N]) -> Formula {
    Formula::and_all(parts.into_iter().filter(|f| *f != Formula::True))
}

/// A formula `γ(v)` that holds at `i` iff `r` is defined on the word and `i cmp r(w)`.
pub fn synth_comparison<S: StepFormula>(r: &Ranker<S>, cmp: Comparison, v: Var) -> Formula {
    comparison(r.steps(), cmp, v)
}

fn comparison<S: StepFormula>(steps: &[S], cmp: Comparison, i: Var) -> Formula {
    let Some((p, prefix)) = steps.split_last() else {
        // The empty prefix sits before the first and after the last position.
        return Formula::True;
    };
    let o = i.other();
    let pos = |a: Var, b: Var, strict: bool| {
        if strict {
            Formula::less(a, b)
        } else {
            Formula::or(Formula::less(a, b), Formula::equal(a, b))
        }
    };
    match p.direction() {
        Direction::Right => {
            let inner = comparison(prefix, Comparison::Gt, o);
            match cmp {
                Comparison::Gt | Comparison::Ge => Formula::exists(
                    o,
                    all([p.matches(o), pos(o, i, cmp == Comparison::Gt), inner]),
                ),
                Comparison::Lt | Comparison::Le => all([
                    definedness(steps),
                    Formula::forall(
                        o,
                        Formula::implies(
                            Formula::and(p.matches(o), pos(o, i, cmp == Comparison::Le)),
                            Formula::not(inner),
                        ),
                    ),
                ]),
            }
        }
        Direction::Left => {
            let inner = comparison(prefix, Comparison::Lt, o);
            match cmp {
                Comparison::Lt | Comparison::Le => Formula::exists(
                    o,
                    all([p.matches(o), pos(i, o, cmp == Comparison::Lt), inner]),
                ),
                Comparison::Gt | Comparison::Ge => all([
                    definedness(steps),
                    Formula::forall(
                        o,
                        Formula::implies(
                            Formula::and(p.matches(o), pos(i, o, cmp == Comparison::Ge)),
                            Formula::not(inner),
                        ),
                    ),
                ]),
            }
        }
    }
}

fn definedness<S: StepFormula>(steps: &[S]) -> Formula {
    let (p, prefix) = steps.split_last().expect("rankers are non-empty");
    let after = match p.direction() {
        Direction::Right => Comparison::Gt,
        Direction::Left => Comparison::Lt,
    };
    Formula::exists(Var::X, all([p.matches(Var::X), comparison(prefix, after, Var::X)]))
}

/// The sentence `φ_r`: true exactly on words where `r` is defined.
pub fn synth_definedness<S: StepFormula>(r: &Ranker<S>) -> Formula {
    definedness(r.steps())
}

/// `ψ_r(x)`: true exactly at `x = r(w)`, nowhere when `r` is undefined.
pub fn synth_position<S: StepFormula>(r: &Ranker<S>) -> Formula {
    let (p, prefix) = r.steps().split_last().expect("rankers are non-empty");
    let (x, y) = (Var::X, Var::Y);
    let (after, earlier) = match p.direction() {
        Direction::Right => (Comparison::Gt, Formula::less(y, x)),
        Direction::Left => (Comparison::Lt, Formula::less(x, y)),
    };
    all([
        p.matches(x),
        comparison(prefix, after, x),
        Formula::forall(
            y,
            Formula::implies(
                Formula::and(earlier, p.matches(y)),
                Formula::not(comparison(prefix, after, y)),
            ),
        ),
    ])
}

/// Satisfying positions of one corpus word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WordPositions {
    pub positions: Vec<usize>,
    /// For a single satisfying position: whether some ranker of length at
    /// most the formula's depth lands there.
    pub ranker_position: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniquePositionReport {
    pub unique: bool,
    pub words: BTreeMap<String, WordPositions>,
}

impl UniquePositionReport {
    /// True when the formula is unique on the corpus and every satisfied
    /// position is a ranker position.
    pub fn all_ranker_positions(&self) -> bool {
        self.unique && self.words.values().all(|w| w.ranker_position != Some(false))
    }
}

/// Checks a formula with free `x` for the unique-position property on a corpus.
pub fn unique_position_positions(phi: &Formula, corpus: &[Word]) -> Result<UniquePositionReport> {
    let free = phi.free_vars();
    if !free.contains(&Var::X) || free.contains(&Var::Y) {
        return Err(Error::precondition("formula must have exactly the free variable x"));
    }
    let n = phi.quantifier_depth().max(1);
    let mut words = BTreeMap::new();
    let mut unique = true;
    for w in corpus {
        let positions = phi.satisfying_positions(w)?;
        unique &= positions.len() <= 1;
        let ranker_position = match positions.as_slice() {
            [p] => Some(realized_rankers(w, n, None)?.iter().any(|e| e.position == *p)),
            _ => None,
        };
        words.insert(w.to_string(), WordPositions { positions, ranker_position });
    }
    Ok(UniquePositionReport { unique, words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranker::SucRanker;
    use crate::word::Alphabet;

    fn r(text: &str) -> Ranker {
        text.parse().unwrap()
    }

    fn w(text: &str) -> Word {
        Word::new(&Alphabet::parse("abc").unwrap(), text).unwrap()
    }

    fn holding(f: &Formula, word: &Word) -> Vec<usize> {
        f.satisfying_positions(word).unwrap()
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(holding(&synth_comparison(&r(">a"), Comparison::Gt, Var::X), &w("bab")), vec![3]);
        assert_eq!(holding(&synth_comparison(&r(">a"), Comparison::Ge, Var::X), &w("bab")), vec![2, 3]);
        assert!(holding(&synth_comparison(&r(">a"), Comparison::Lt, Var::X), &w("bbb")).is_empty());
    }

    #[test]
    fn definedness_examples() {
        let phi = synth_definedness(&r(">a"));
        assert!(phi.model_check(&w("ba"), None, None).unwrap());
        assert!(!phi.model_check(&w("bb"), None, None).unwrap());
        let phi = synth_definedness(&r(">a>c<b"));
        assert!(phi.model_check(&w("cababcba"), None, None).unwrap());
        assert!(!phi.model_check(&w("acbbca"), None, None).unwrap());
        let phi = synth_definedness(&r("<a"));
        assert!(phi.model_check(&w("a"), None, None).unwrap());
        assert!(!phi.model_check(&w(""), None, None).unwrap());
    }

    #[test]
    fn position_examples() {
        assert_eq!(holding(&synth_position(&r(">a")), &w("bab")), vec![2]);
        assert_eq!(holding(&synth_position(&r(">a>c<b")), &w("cababcba")), vec![5]);
        assert!(holding(&synth_position(&r(">a")), &w("bbb")).is_empty());
    }

    #[test]
    fn successor_synthesis_matches_evaluation() {
        let sigma = Alphabet::parse("ab").unwrap();
        let rankers: Vec<SucRanker> = ["<[|a|]>[a|b|]", ">[|b|]<[|a|b]", ">[|a|]>[|a|a]<[ab|a|]", "<[|b|]<[b|a|b]"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        let mut words = vec![String::new()];
        for len in 1..=6 {
            for bits in 0..(1u32 << len) {
                words.push((0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect());
            }
        }
        for text in &words {
            let word = Word::new(&sigma, text).unwrap();
            for rk in &rankers {
                let expect = rk.eval(&word);
                let phi = synth_definedness(rk);
                assert_eq!(phi.model_check(&word, None, None).unwrap(), expect.is_some());
                assert!(phi.quantifier_depth() <= rk.len());
                let psi = synth_position(rk);
                assert!(psi.quantifier_depth() <= rk.len());
                assert_eq!(holding(&psi, &word), expect.into_iter().collect::<Vec<_>>(), "{rk} on {text}");
                for cmp in [Comparison::Lt, Comparison::Le, Comparison::Gt, Comparison::Ge] {
                    let gamma = synth_comparison(rk, cmp, Var::X);
                    let got = holding(&gamma, &word);
                    let want: Vec<usize> = match expect {
                        Some(p) => (1..=word.len()).filter(|&i| cmp.holds(i, p)).collect(),
                        None => vec![],
                    };
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn unique_position_examples() {
        let sigma = Alphabet::parse("ab").unwrap();
        let mut corpus = vec![Word::empty(&sigma)];
        for len in 1..=3 {
            for bits in 0..(1u32 << len) {
                let text: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                corpus.push(Word::new(&sigma, &text).unwrap());
            }
        }
        let report = unique_position_positions(&synth_position(&r(">a")), &corpus).unwrap();
        assert!(report.unique && report.all_ranker_positions());

        let aa = vec![Word::new(&sigma, "aa").unwrap()];
        let report = unique_position_positions(&Formula::letter('a', Var::X), &aa).unwrap();
        assert!(!report.unique);
        assert_eq!(report.words["aa"].positions, vec![1, 2]);

        let sentence = Formula::exists(Var::X, Formula::letter('a', Var::X));
        assert!(unique_position_positions(&sentence, &aa).is_err());
    }
}
