//! Alphabets, words, and the two order-type comparators.
//!
//! Positions are 1-indexed throughout: a word `w` has positions `1..=w.len()`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, ordered set of single-character letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[char]>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::Alphabet("alphabet must not be empty".into()));
        }
        for (i, &c) in letters.iter().enumerate() {
            if c.is_whitespace() || c.is_control() {
                return Err(Error::Alphabet(format!("letter {c:?} is not a visible character")));
            }
            if letters[..i].contains(&c) {
                return Err(Error::Alphabet(format!("duplicate letter '{c}'")));
            }
        }
        Ok(Alphabet {
            letters: letters.into(),
        })
    }

    /// Parses an alphabet given as a string of letters, e.g. `"abc"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.chars())
    }

    /// The letters occurring in `text` (in order of first occurrence) plus `extra`.
    pub fn infer(text: &str, extra: &str) -> Result<Self> {
        let mut letters: Vec<char> = Vec::new();
        for c in text.chars().chain(extra.chars()) {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        if letters.is_empty() {
            // The empty word still needs some alphabet.
            letters.push('a');
        }
        Self::new(letters)
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    /// Same letters regardless of declaration order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.letters.iter().all(|&c| other.contains(c))
    }

    /// Union preserving the order of `self` first.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut letters = self.letters.to_vec();
        for &c in other.letters() {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        Alphabet {
            letters: letters.into(),
        }
    }

    pub fn check(&self, c: char) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::UnknownLetter {
                letter: c,
                alphabet: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite word over a declared alphabet. The empty word is valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<char>,
}

impl Word {
    pub fn new(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let letters: Vec<char> = text.chars().collect();
        for &c in &letters {
            alphabet.check(c)?;
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// A word whose alphabet is the set of letters it contains.
    pub fn infer(text: &str) -> Result<Self> {
        let alphabet = Alphabet::infer(text, "")?;
        Word::new(&alphabet, text)
    }

    pub fn from_letters(alphabet: &Alphabet, letters: Vec<char>) -> Result<Self> {
        for &c in &letters {
            alphabet.check(c)?;
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter at 1-indexed position `i`.
    ///
    /// Panics if `i` is outside `1..=len`.
    pub fn at(&self, i: usize) -> char {
        assert!(i >= 1 && i <= self.len(), "position {i} outside [1,{}]", self.len());
        self.letters[i - 1]
    }

    pub fn get(&self, i: usize) -> Option<char> {
        if i == 0 {
            None
        } else {
            self.letters.get(i - 1).copied()
        }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// The substring `w_{[i,j]}` (1-indexed, inclusive); empty when `i > j`.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        let letters = if i > j {
            Vec::new()
        } else {
            self.letters[i - 1..j].to_vec()
        };
        Word {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            alphabet: self.alphabet.union(&other.alphabet),
            letters,
        }
    }

    /// Same letters, re-declared over a larger (or equal) alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Word> {
        Word::from_letters(alphabet, self.letters.clone())
    }

    /// Number of distinct letters that actually occur.
    pub fn distinct_letters(&self) -> usize {
        let mut seen: Vec<char> = Vec::new();
        for &c in &self.letters {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len()
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

/// `ord(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderType {
    Lt,
    Eq,
    Gt,
}

/// `sucord(i, j)`: like [`OrderType`] but separating neighbours from far positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SucOrderType {
    FarBelow,
    Pred,
    Eq,
    Succ,
    FarAbove,
}

pub fn ord(i: usize, j: usize) -> OrderType {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => OrderType::Lt,
        std::cmp::Ordering::Equal => OrderType::Eq,
        std::cmp::Ordering::Greater => OrderType::Gt,
    }
}

pub fn sucord(i: usize, j: usize) -> SucOrderType {
    if i + 1 < j {
        SucOrderType::FarBelow
    } else if i + 1 == j {
        SucOrderType::Pred
    } else if i == j {
        SucOrderType::Eq
    } else if i == j + 1 {
        SucOrderType::Succ
    } else {
        SucOrderType::FarAbove
    }
}

impl SucOrderType {
    /// The plain order type this successor order type refines.
    pub fn coarsen(self) -> OrderType {
        match self {
            SucOrderType::FarBelow | SucOrderType::Pred => OrderType::Lt,
            SucOrderType::Eq => OrderType::Eq,
            SucOrderType::Succ | SucOrderType::FarAbove => OrderType::Gt,
        }
    }
}

/// A maximal run of one letter, `w_{[start,end]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub letter: char,
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Maximal constant runs of `w`, left to right.
pub fn segments(w: &Word) -> Vec<Segment> {
    letter_segments(w.letters())
}

/// [`segments`] on a bare letter sequence (positions still 1-indexed).
pub fn letter_segments(letters: &[char]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (idx, &c) in letters.iter().enumerate() {
        let pos = idx + 1;
        match out.last_mut() {
            Some(seg) if seg.letter == c => seg.end = pos,
            _ => out.push(Segment {
                letter: c,
                start: pos,
                end: pos,
            }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(alphabet: &[char], max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut frontier = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &c in alphabet {
                    let mut s = w.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn order_types() {
        assert_eq!(ord(3, 5), OrderType::Lt);
        assert_eq!(ord(4, 4), OrderType::Eq);
        assert_eq!(ord(7, 2), OrderType::Gt);
        assert_eq!(sucord(4, 5), SucOrderType::Pred);
        assert_eq!(sucord(4, 4), SucOrderType::Eq);
        assert_eq!(sucord(1, 9), SucOrderType::FarBelow);
        assert_eq!(sucord(5, 4), SucOrderType::Succ);
        assert_eq!(sucord(9, 1), SucOrderType::FarAbove);
    }

    #[test]
    fn sucord_refines_ord() {
        for i in 1..12 {
            for j in 1..12 {
                assert_eq!(sucord(i, j).coarsen(), ord(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn segment_examples() {
        let w = Word::infer("aaabb").unwrap();
        let segs: Vec<_> = segments(&w).iter().map(|s| (s.letter, s.start, s.end)).collect();
        assert_eq!(segs, vec![('a', 1, 3), ('b', 4, 5)]);
        assert!(segments(&Word::infer("").unwrap()).is_empty());
        let w = Word::infer("aba").unwrap();
        let segs: Vec<_> = segments(&w).iter().map(|s| (s.letter, s.start, s.end)).collect();
        assert_eq!(segs, vec![('a', 1, 1), ('b', 2, 2), ('a', 3, 3)]);
    }

    #[test]
    fn segments_round_trip_exhaustive() {
        let sigma = Alphabet::parse("abc").unwrap();
        for text in all_words(&['a', 'b', 'c'], 12) {
            let w = Word::new(&sigma, &text).unwrap();
            let segs = segments(&w);
            let joined: String = segs
                .iter()
                .map(|s| w.slice(s.start, s.end).to_string())
                .collect();
            assert_eq!(joined, text);
            for pair in segs.windows(2) {
                assert_ne!(pair[0].letter, pair[1].letter);
                assert_eq!(pair[0].end + 1, pair[1].start);
            }
            for s in &segs {
                assert!((s.start..=s.end).all(|i| w.at(i) == s.letter));
            }
        }
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("aba").is_err());
        assert!(Alphabet::parse("a b").is_err());
        let sigma = Alphabet::parse("ab").unwrap();
        assert!(matches!(
            Word::new(&sigma, "abz"),
            Err(Error::UnknownLetter { letter: 'z', .. })
        ));
        assert!(Word::new(&sigma, "").unwrap().is_empty());
    }

    #[test]
    fn inferred_alphabet_keeps_extras() {
        let sigma = Alphabet::infer("bab", "c").unwrap();
        assert_eq!(sigma.letters(), &['b', 'a', 'c']);
    }
}
