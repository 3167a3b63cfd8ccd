//! Shrinking a word to a `≡²_n`-equivalent word of bounded length.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::{letter_segments, Segment, Word};

/// `B(n, k) = 2n·(4n+2)^{k−1}`, saturating at `u64::MAX`.
pub fn small_model_bound(n: usize, k: usize) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::precondition("the small model bound needs n ≥ 1 and k ≥ 1"));
    }
    let n = n as u64;
    let mut bound = 2 * n;
    for _ in 1..k {
        bound = bound.saturating_mul(4 * n + 2);
    }
    Ok(bound)
}

/// A `≡²_n`-equivalent word of length at most `B(n, k)`, where `k` is the
/// number of distinct letters occurring in `w`.
pub fn shrink(w: &Word, n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::precondition("shrink needs n ≥ 1"));
    }
    let out = shrink_letters(w.letters(), n);
    Word::from_letters(w.alphabet(), out)
}

fn shrink_letters(w: &[char], n: usize) -> Vec<char> {
    let distinct: BTreeSet<char> = w.iter().copied().collect();
    if distinct.len() <= 1 {
        if w.len() <= 2 * n {
            return w.to_vec();
        }
        return w[..2 * n].to_vec();
    }

    // Cut every segment to at most 2n letters.
    let cut: Vec<char> = letter_segments(w)
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.letter, s.len().min(2 * n)))
        .collect();
    let segs = letter_segments(&cut);
    let k = distinct.len();
    let s = greedy_cuts(segs.iter(), k);
    let t = greedy_cuts(segs.iter().rev(), k)
        .into_iter()
        .map(|i| segs.len() - 1 - i)
        .collect::<Vec<_>>();

    let piece = |from: usize, to: usize| -> Vec<char> {
        // Segments with index in [from, to).
        if from >= to {
            return Vec::new();
        }
        cut[segs[from].start - 1..segs[to - 1].end].to_vec()
    };
    let mut out = Vec::new();

    if s.len() > 2 * n && t.len() > 2 * n && s[n - 1] < t[n - 1] {
        // u₁s₁…uₙsₙ · tₙvₙ…t₁v₁ with every uᵢ and vᵢ shrunk.
        let mut prev = 0;
        for &si in &s[..n] {
            out.extend(shrink_letters(&piece(prev, si), n));
            out.extend(piece(si, si + 1));
            prev = si + 1;
        }
        let mut right = Vec::new();
        let mut next = segs.len();
        for &ti in &t[..n] {
            let mut chunk = piece(ti, ti + 1);
            chunk.extend(shrink_letters(&piece(ti + 1, next), n));
            chunk.extend(right);
            right = chunk;
            next = ti;
        }
        out.extend(right);
        return out;
    }

    // Keep every cut segment of both partitions; shrink the gaps between them.
    let cuts: BTreeSet<usize> = s.iter().chain(&t).copied().collect();
    let mut prev = 0;
    for &c in &cuts {
        out.extend(shrink_letters(&piece(prev, c), n));
        out.extend(piece(c, c + 1));
        prev = c + 1;
    }
    out.extend(shrink_letters(&piece(prev, segs.len()), n));
    out
}

/// Indices (in iteration order) of the segments that complete all `k` letters,
/// restarting the count after each one.
fn greedy_cuts<'a>(segs: impl Iterator<Item = &'a Segment>, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, seg) in segs.enumerate() {
        seen.insert(seg.letter);
        if seen.len() == k {
            out.push(i);
            seen.clear();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{segments, Alphabet};

    fn w(text: &str) -> Word {
        Word::new(&Alphabet::parse("abc").unwrap(), text).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(small_model_bound(1, 1).unwrap(), 2);
        assert_eq!(small_model_bound(2, 1).unwrap(), 4);
        assert_eq!(small_model_bound(2, 2).unwrap(), 40);
        assert_eq!(small_model_bound(3, 3).unwrap(), 6 * 14 * 14);
        assert!(small_model_bound(0, 1).is_err());
        assert_eq!(small_model_bound(1000, 100).unwrap(), u64::MAX);
    }

    #[test]
    fn shrink_examples() {
        assert_eq!(shrink(&w("aaaaa"), 1).unwrap().to_string(), "aa");
        assert_eq!(shrink(&w("ab"), 3).unwrap().to_string(), "ab");
        let long = format!("a{}a", "b".repeat(9));
        assert_eq!(shrink(&w(&long), 2).unwrap().to_string(), "abbbba");
        assert_eq!(shrink(&w(""), 2).unwrap().to_string(), "");
    }

    #[test]
    fn partitions_have_equal_length() {
        let words = ["abcabcabc", "aabbccabcbca", "abababab", "cabbacbacab"];
        for text in words {
            let word = w(text);
            let segs = segments(&word);
            let k = word.distinct_letters();
            let left = greedy_cuts(segs.iter(), k).len();
            let right = greedy_cuts(segs.iter().rev(), k).len();
            assert_eq!(left, right, "{text}");
        }
    }
}
