//! Boundary positions and rankers, plain and successor (neighbourhood) form.
//!
//! A ranker is a short program of "go to the next/previous occurrence of ..."
//! instructions. It either lands on a unique position of a word or is
//! undefined there. Both ranker families share [`Ranker`]; they differ only
//! in their instruction type, which implements [`Step`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Default cap on the number of realized rankers per word.
pub const DEFAULT_MAX_RANKERS: usize = 200_000;

/// `→` (first occurrence / next to the right) or `←` (last occurrence / next to the left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn symbol(self) -> char {
        match self {
            Direction::Right => '>',
            Direction::Left => '<',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '>' => Some(Direction::Right),
            '<' => Some(Direction::Left),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

/// A single ranker instruction.
pub trait Step: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display {
    fn direction(&self) -> Direction;

    /// The centre letter.
    fn letter(&self) -> char;

    /// Whether the instruction's pattern matches with its centre at position `i`.
    fn matches_at(&self, w: &Word, i: usize) -> bool;

    /// `max(k, ℓ)` for a `(k,ℓ)`-neighbourhood; zero for plain boundary positions.
    fn context_width(&self) -> usize;

    /// Every letter mentioned by the instruction.
    fn mentioned_letters(&self) -> Vec<char>;

    /// Evaluates the instruction on `w`, optionally relative to position `from`.
    ///
    /// Without `from`: first (→) or last (←) match. With `from = q`: first
    /// match strictly after `q` (→) or last match strictly before `q` (←).
    fn eval(&self, w: &Word, from: Option<usize>) -> Option<usize> {
        match self.direction() {
            Direction::Right => {
                let start = from.map_or(1, |q| q + 1);
                (start..=w.len()).find(|&i| self.matches_at(w, i))
            }
            Direction::Left => {
                let end = from.map_or(w.len(), |q| q.saturating_sub(1).min(w.len()));
                (1..=end).rev().find(|&i| self.matches_at(w, i))
            }
        }
    }
}

/// `d_a`: first or last occurrence of letter `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPos {
    pub direction: Direction,
    pub letter: char,
}

impl BoundaryPos {
    pub fn new(direction: Direction, letter: char) -> Self {
        BoundaryPos { direction, letter }
    }

    pub fn right(letter: char) -> Self {
        Self::new(Direction::Right, letter)
    }

    pub fn left(letter: char) -> Self {
        Self::new(Direction::Left, letter)
    }
}

impl Step for BoundaryPos {
    fn direction(&self) -> Direction {
        self.direction
    }

    fn letter(&self) -> char {
        self.letter
    }

    fn matches_at(&self, w: &Word, i: usize) -> bool {
        w.get(i) == Some(self.letter)
    }

    fn context_width(&self) -> usize {
        0
    }

    fn mentioned_letters(&self) -> Vec<char> {
        vec![self.letter]
    }
}

impl fmt::Display for BoundaryPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.direction.symbol(), self.letter)
    }
}

/// `d_(s,a,t)`: first or last occurrence of the factor `s·a·t`, pointing at `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborhoodPos {
    pub direction: Direction,
    pub letter: char,
    pub before: Vec<char>,
    pub after: Vec<char>,
}

impl NeighborhoodPos {
    pub fn new(direction: Direction, before: &str, letter: char, after: &str) -> Self {
        NeighborhoodPos {
            direction,
            letter,
            before: before.chars().collect(),
            after: after.chars().collect(),
        }
    }

    /// The `(0,0)`-neighbourhood equivalent of a plain boundary position.
    pub fn plain(p: BoundaryPos) -> Self {
        NeighborhoodPos {
            direction: p.direction,
            letter: p.letter,
            before: Vec::new(),
            after: Vec::new(),
        }
    }

    /// `(k, ℓ)`.
    pub fn widths(&self) -> (usize, usize) {
        (self.before.len(), self.after.len())
    }
}

impl Step for NeighborhoodPos {
    fn direction(&self) -> Direction {
        self.direction
    }

    fn letter(&self) -> char {
        self.letter
    }

    fn matches_at(&self, w: &Word, i: usize) -> bool {
        let k = self.before.len();
        let l = self.after.len();
        if i < k + 1 || i + l > w.len() || w.at(i) != self.letter {
            return false;
        }
        let letters = w.letters();
        letters[i - 1 - k..i - 1] == self.before[..] && letters[i..i + l] == self.after[..]
    }

    fn context_width(&self) -> usize {
        self.before.len().max(self.after.len())
    }

    fn mentioned_letters(&self) -> Vec<char> {
        let mut out = self.before.clone();
        out.push(self.letter);
        out.extend_from_slice(&self.after);
        out
    }
}

impl fmt::Display for NeighborhoodPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.direction.symbol())?;
        for c in &self.before {
            write!(f, "{c}")?;
        }
        write!(f, "|{}|", self.letter)?;
        for c in &self.after {
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A non-empty sequence of instructions.
///
/// Rankers compare structurally: two different rankers landing on the same
/// position are still different. The total order is by length, then
/// lexicographically by instruction (direction first, → before ←).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ranker<S = BoundaryPos> {
    steps: Vec<S>,
}

/// A ranker over neighbourhood boundary positions.
pub type SucRanker = Ranker<NeighborhoodPos>;

impl<S: Step> Ranker<S> {
    /// Builds a ranker, rejecting empty sequences and neighbourhoods wider
    /// than the instruction's index allows (`k_i, ℓ_i ≤ i − 1`).
    pub fn new(steps: Vec<S>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::precondition("a ranker needs at least one instruction"));
        }
        for (idx, s) in steps.iter().enumerate() {
            if s.context_width() > idx {
                return Err(Error::precondition(format!(
                    "instruction {} ({s}) has neighbourhood width {} > {idx}",
                    idx + 1,
                    s.context_width()
                )));
            }
        }
        Ok(Ranker { steps })
    }

    pub fn single(step: S) -> Self {
        Ranker { steps: vec![step] }
    }

    pub fn steps(&self) -> &[S] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &S {
        self.steps.last().expect("rankers are non-empty")
    }

    pub fn first_direction(&self) -> Direction {
        self.steps[0].direction()
    }

    pub fn last_direction(&self) -> Direction {
        self.last().direction()
    }

    /// Number of maximal runs of equal direction.
    pub fn alternation_blocks(&self) -> usize {
        1 + self
            .steps
            .windows(2)
            .filter(|p| p[0].direction() != p[1].direction())
            .count()
    }

    /// `(blocks, final direction)`.
    pub fn block_profile(&self) -> (usize, Direction) {
        (self.alternation_blocks(), self.last_direction())
    }

    /// Threads the position left to right; `None` once any step is undefined.
    pub fn eval(&self, w: &Word) -> Option<usize> {
        let mut pos: Option<usize> = None;
        for s in &self.steps {
            pos = Some(s.eval(w, pos)?);
        }
        pos
    }

    /// Positions of every prefix, stopping at the first undefined one.
    pub fn trace(&self, w: &Word) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut pos = None;
        for s in &self.steps {
            match s.eval(w, pos) {
                Some(p) => {
                    out.push(p);
                    pos = Some(p);
                }
                None => break,
            }
        }
        out
    }

    /// The `k`-prefix ranker `r_k`, for `1 ≤ k ≤ |r|`.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.len() {
            return Err(Error::precondition(format!(
                "prefix length {k} outside [1,{}]",
                self.len()
            )));
        }
        Ok(Ranker {
            steps: self.steps[..k].to_vec(),
        })
    }

    /// `r·p`.
    pub fn extended(&self, step: S) -> Result<Self> {
        let mut steps = self.steps.clone();
        steps.push(step);
        Ranker::new(steps)
    }

    /// `p·r`; used by the hierarchy constructions that grow rankers on the left.
    pub fn prepended(&self, step: S) -> Result<Self> {
        let mut steps = Vec::with_capacity(self.len() + 1);
        steps.push(step);
        steps.extend(self.steps.iter().cloned());
        Ranker::new(steps)
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for s in &self.steps {
            for c in s.mentioned_letters() {
                alphabet.check(c)?;
            }
        }
        Ok(())
    }
}

impl Ranker<BoundaryPos> {
    /// The successor ranker with all neighbourhoods empty.
    pub fn to_suc(&self) -> SucRanker {
        Ranker {
            steps: self.steps.iter().copied().map(NeighborhoodPos::plain).collect(),
        }
    }
}

impl<S: Step> PartialOrd for Ranker<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Step> Ord for Ranker<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

impl<S: Step> fmt::Display for Ranker<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl<S: Step> fmt::Debug for Ranker<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ranker({self})")
    }
}

impl FromStr for Ranker<BoundaryPos> {
    type Err = Error;

    /// `>a<b>c` is `→a ←b →c`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.trim().chars().collect();
        if !chars.len().is_multiple_of(2) {
            return Err(Error::syntax(chars.len(), "ranker instruction is missing its letter"));
        }
        let mut steps = Vec::with_capacity(chars.len() / 2);
        for (i, pair) in chars.chunks(2).enumerate() {
            let dir = Direction::from_symbol(pair[0])
                .ok_or_else(|| Error::syntax(2 * i, format!("expected '>' or '<', found '{}'", pair[0])))?;
            steps.push(BoundaryPos::new(dir, pair[1]));
        }
        Ranker::new(steps)
    }
}

impl FromStr for SucRanker {
    type Err = Error;

    /// `>[s|a|t]` instructions; a bare `>a` is accepted as `>[|a|]`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.trim().chars().collect();
        let mut steps = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let dir = Direction::from_symbol(chars[i])
                .ok_or_else(|| Error::syntax(i, format!("expected '>' or '<', found '{}'", chars[i])))?;
            i += 1;
            match chars.get(i) {
                None => return Err(Error::syntax(i, "instruction is missing its letter")),
                Some('[') => {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ']')
                        .map(|p| p + i)
                        .ok_or_else(|| Error::syntax(i, "unterminated neighbourhood"))?;
                    let body: String = chars[i + 1..close].iter().collect();
                    let parts: Vec<&str> = body.split('|').collect();
                    if parts.len() != 3 {
                        return Err(Error::syntax(i, "neighbourhood must look like [s|a|t]"));
                    }
                    let mut centre = parts[1].chars();
                    let letter = match (centre.next(), centre.next()) {
                        (Some(c), None) => c,
                        _ => return Err(Error::syntax(i, "neighbourhood centre must be one letter")),
                    };
                    steps.push(NeighborhoodPos::new(dir, parts[0], letter, parts[2]));
                    i = close + 1;
                }
                Some(&c) => {
                    steps.push(NeighborhoodPos::new(dir, "", c, ""));
                    i += 1;
                }
            }
        }
        Ranker::new(steps)
    }
}

/// One realized ranker: defined on the word, landing at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realized<S: Step = BoundaryPos> {
    pub ranker: Ranker<S>,
    pub position: usize,
}

impl<S: Step> Realized<S> {
    pub fn blocks(&self) -> usize {
        self.ranker.alternation_blocks()
    }
}

/// Selects a sub-family of realized rankers, e.g. `R*_{m,n}` or `R_{m→,n}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankerFilter {
    pub max_len: Option<usize>,
    pub exact_len: Option<usize>,
    pub max_blocks: Option<usize>,
    pub exact_blocks: Option<usize>,
    pub ends_with: Option<Direction>,
}

impl RankerFilter {
    pub fn all() -> Self {
        Self::default()
    }

    /// `R*_n`: length at most `n`.
    pub fn star(n: usize) -> Self {
        RankerFilter {
            max_len: Some(n),
            ..Self::default()
        }
    }

    /// `R*_{m,n}`: at most `m` blocks and length at most `n`.
    pub fn star_alt(m: usize, n: usize) -> Self {
        RankerFilter {
            max_len: Some(n),
            max_blocks: Some(m),
            ..Self::default()
        }
    }

    /// `R_{m,n}`: exactly `m` blocks and exactly length `n`.
    pub fn exact(m: usize, n: usize) -> Self {
        RankerFilter {
            exact_len: Some(n),
            exact_blocks: Some(m),
            ..Self::default()
        }
    }

    pub fn ending(mut self, d: Direction) -> Self {
        self.ends_with = Some(d);
        self
    }

    pub fn accepts<S: Step>(&self, r: &Ranker<S>) -> bool {
        let len = r.len();
        let blocks = r.alternation_blocks();
        self.max_len.is_none_or(|n| len <= n)
            && self.exact_len.is_none_or(|n| len == n)
            && self.max_blocks.is_none_or(|m| blocks <= m)
            && self.exact_blocks.is_none_or(|m| blocks == m)
            && self.ends_with.is_none_or(|d| r.last_direction() == d)
    }
}

/// All rankers (up to a length/alternation bound) defined on one word, with
/// their positions, in ranker order.
#[derive(Debug, Clone)]
pub struct RealizedSet<S: Step = BoundaryPos> {
    word: Word,
    entries: Vec<Realized<S>>,
    index: HashMap<Ranker<S>, usize>,
}

impl<S: Step> RealizedSet<S> {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Realized<S>> {
        self.entries.iter()
    }

    pub fn position(&self, r: &Ranker<S>) -> Option<usize> {
        self.index.get(r).map(|&i| self.entries[i].position)
    }

    pub fn contains(&self, r: &Ranker<S>) -> bool {
        self.index.contains_key(r)
    }

    pub fn select<'a>(&'a self, filter: RankerFilter) -> impl Iterator<Item = &'a Realized<S>> + 'a {
        self.entries.iter().filter(move |e| filter.accepts(&e.ranker))
    }

    pub fn rankers(&self, filter: RankerFilter) -> BTreeSet<&Ranker<S>> {
        self.select(filter).map(|e| &e.ranker).collect()
    }

    /// Distinct positions reached by the selected rankers, ascending.
    pub fn positions(&self, filter: RankerFilter) -> Vec<usize> {
        let set: BTreeSet<usize> = self.select(filter).map(|e| e.position).collect();
        set.into_iter().collect()
    }
}

/// Caps for realized-set enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_rankers: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_rankers: DEFAULT_MAX_RANKERS,
        }
    }
}

/// `R*_n(w)`, optionally restricted to at most `alt_bound` alternation blocks.
pub fn realized_rankers(w: &Word, n: usize, alt_bound: Option<usize>) -> Result<RealizedSet> {
    realized_rankers_with(w, n, alt_bound, EnumLimits::default())
}

pub fn realized_rankers_with(
    w: &Word,
    n: usize,
    alt_bound: Option<usize>,
    limits: EnumLimits,
) -> Result<RealizedSet> {
    let letters = w.alphabet().letters().to_vec();
    grow(w, n, alt_bound, limits, |_level| {
        let mut out = Vec::with_capacity(2 * letters.len());
        for dir in [Direction::Right, Direction::Left] {
            for &c in &letters {
                out.push(BoundaryPos::new(dir, c));
            }
        }
        out
    })
}

/// `SR*_n(w)`, optionally restricted to at most `alt_bound` alternation blocks.
pub fn realized_suc_rankers(w: &Word, n: usize, alt_bound: Option<usize>) -> Result<RealizedSet<NeighborhoodPos>> {
    realized_suc_rankers_with(w, n, alt_bound, EnumLimits::default())
}

pub fn realized_suc_rankers_with(
    w: &Word,
    n: usize,
    alt_bound: Option<usize>,
    limits: EnumLimits,
) -> Result<RealizedSet<NeighborhoodPos>> {
    grow(w, n, alt_bound, limits, |level| neighborhood_candidates(w, level - 1))
}

/// Every `(s, a, t)` occurring in `w` with `|s|, |t| ≤ width`, in both directions.
fn neighborhood_candidates(w: &Word, width: usize) -> Vec<NeighborhoodPos> {
    let letters = w.letters();
    let mut windows: BTreeSet<(Vec<char>, char, Vec<char>)> = BTreeSet::new();
    for i in 1..=w.len() {
        for k in 0..=width.min(i - 1) {
            for l in 0..=width.min(w.len() - i) {
                windows.insert((letters[i - 1 - k..i - 1].to_vec(), letters[i - 1], letters[i..i + l].to_vec()));
            }
        }
    }
    let mut out = Vec::with_capacity(2 * windows.len());
    for dir in [Direction::Right, Direction::Left] {
        for (before, letter, after) in &windows {
            out.push(NeighborhoodPos {
                direction: dir,
                letter: *letter,
                before: before.clone(),
                after: after.clone(),
            });
        }
    }
    out
}

/// Grows rankers level by level, only extending rankers already defined on `w`.
fn grow<S: Step>(
    w: &Word,
    n: usize,
    alt_bound: Option<usize>,
    limits: EnumLimits,
    candidates: impl Fn(usize) -> Vec<S>,
) -> Result<RealizedSet<S>> {
    if n == 0 {
        return Err(Error::precondition("ranker length bound n must be at least 1"));
    }
    if let Some(m) = alt_bound {
        if m > n {
            return Err(Error::precondition(format!("alternation bound {m} exceeds length bound {n}")));
        }
    }
    let max_blocks = alt_bound.unwrap_or(n);
    let mut entries: Vec<Realized<S>> = Vec::new();
    // (ranker, position, blocks) of the previous level.
    let mut frontier: Vec<(Ranker<S>, usize, usize)> = Vec::new();

    if max_blocks > 0 && !w.is_empty() {
        for step in candidates(1) {
            if let Some(p) = step.eval(w, None) {
                frontier.push((Ranker::single(step), p, 1));
            }
        }
    }

    for level in 1..=n {
        if entries.len() + frontier.len() > limits.max_rankers {
            return Err(Error::Resource {
                what: "realized rankers per word",
                cap: limits.max_rankers as u64,
            });
        }
        let next_candidates = if level < n && !frontier.is_empty() {
            candidates(level + 1)
        } else {
            Vec::new()
        };
        let mut next = Vec::new();
        for (r, pos, blocks) in &frontier {
            for step in &next_candidates {
                let b = if step.direction() == r.last_direction() {
                    *blocks
                } else {
                    blocks + 1
                };
                if b > max_blocks {
                    continue;
                }
                if let Some(p) = step.eval(w, Some(*pos)) {
                    let mut steps = r.steps.clone();
                    steps.push(step.clone());
                    next.push((Ranker { steps }, p, b));
                }
            }
            if entries.len() + frontier.len() + next.len() > limits.max_rankers {
                return Err(Error::Resource {
                    what: "realized rankers per word",
                    cap: limits.max_rankers as u64,
                });
            }
        }
        entries.extend(
            frontier
                .drain(..)
                .map(|(ranker, position, _)| Realized { ranker, position }),
        );
        frontier = next;
    }

    entries.sort_by(|a, b| a.ranker.cmp(&b.ranker));
    let index = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.ranker.clone(), i))
        .collect();
    Ok(RealizedSet {
        word: w.clone(),
        entries,
        index,
    })
}
