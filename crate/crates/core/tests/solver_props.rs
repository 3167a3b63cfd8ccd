use fo2::equivalence::ranker_equiv;
use fo2::game::game_equiv;
use fo2::solver::{cnf_brute_force, cnf_to_fo2, sat_search, shrink, small_model_bound, Cnf};
use fo2::{Alphabet, Word};
use proptest::prelude::*;

fn word_over(letters: &'static str, max_len: usize) -> impl Strategy<Value = Word> {
    let chars: Vec<char> = letters.chars().collect();
    prop::collection::vec(prop::sample::select(chars), 0..=max_len).prop_map(move |v| {
        Word::from_letters(&Alphabet::parse(letters).unwrap(), v).unwrap()
    })
}

fn any_word() -> impl Strategy<Value = Word> {
    prop_oneof![word_over("a", 30), word_over("ab", 30), word_over("abc", 30)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn shrink_is_equivalent_and_bounded(w in any_word(), n in 1usize..=2) {
        let s = shrink(&w, n).unwrap();
        prop_assert!(s.len() <= w.len());
        let k = w.distinct_letters().max(1);
        prop_assert!(s.len() as u64 <= small_model_bound(n, k).unwrap(), "{} -> {}", w, s);
        prop_assert!(ranker_equiv(&w, &s, n).unwrap().verdict, "{} -> {}", w, s);
    }

    #[test]
    fn shrink_inside_context_preserves_equivalence(
        u in word_over("ab", 3),
        v in word_over("ab", 14),
        x in word_over("ab", 3),
        n in 1usize..=2,
    ) {
        let s = shrink(&v, n).unwrap();
        let left = u.concat(&v).concat(&x);
        let right = u.concat(&s).concat(&x);
        prop_assert!(ranker_equiv(&left, &right, n).unwrap().verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn shrink_agrees_with_game(w in word_over("abc", 14), n in 1usize..=2) {
        let s = shrink(&w, n).unwrap();
        prop_assert!(game_equiv(&w, &s, n, false).unwrap().delilah_wins);
    }
}

fn small_cnf() -> impl Strategy<Value = Cnf> {
    (1usize..=4).prop_flat_map(|vars| {
        let lit = (1..=vars as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        prop::collection::vec(prop::collection::vec(lit, 1..=3), 1..=6)
            .prop_map(move |clauses| Cnf::new(vars, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn reduction_preserves_satisfiability(alpha in small_cnf()) {
        let (phi, n) = cnf_to_fo2(&alpha).unwrap();
        let sigma = Alphabet::parse("01").unwrap();
        let res = sat_search(&phi, &sigma, None, Some(n)).unwrap();
        prop_assert_eq!(res.is_sat(), cnf_brute_force(&alpha).unwrap());
        if let Some(w) = res.witness {
            let assignment = w.letters().iter().enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c == '1') as u64) << i);
            prop_assert!(alpha.eval(assignment));
        }
    }
}

#[test]
fn shrunk_segment_in_context_is_game_equivalent() {
    let sigma = Alphabet::parse("ab").unwrap();
    let cases = [
        ("ab", "aaaaaaab", "b", 1),
        ("", "bbbbbbbb", "a", 2),
        ("b", "abababababab", "", 2),
        ("aa", "abbbbbbba", "ba", 2),
        ("ba", "aaaaa", "ab", 1),
        ("a", "babbbbbbbab", "a", 2),
        ("", "aabbaabbaabb", "", 2),
        ("bb", "abbbbba", "bb", 1),
        ("ab", "baaaaaaaab", "ab", 2),
        ("b", "aaaaaaaaaa", "b", 2),
    ];
    for (u, v, x, n) in cases {
        let word = |t: &str| Word::new(&sigma, t).unwrap();
        let s = shrink(&word(v), n).unwrap();
        let left = word(u).concat(&word(v)).concat(&word(x));
        let right = word(u).concat(&s).concat(&word(x));
        assert!(game_equiv(&left, &right, n, false).unwrap().delilah_wins, "{u}[{v} -> {s}]{x} at n={n}");
    }
}
