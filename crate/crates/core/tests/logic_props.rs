use fo2::equivalence::{ranker_equiv, ranker_equiv_alt};
use fo2::game::{game_equiv, game_equiv_alt};
use fo2::{Alphabet, Formula, Var, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(&ab())];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| ["a", "b"].map(|c| format!("{s}{c}")))
            .collect();
        out.extend(layer.iter().map(|s| Word::new(&ab(), s).unwrap()));
    }
    out
}

/// A random formula of quantifier depth at most `depth`.
fn random_formula(rng: &mut ChaCha8Rng, depth: usize, size: usize) -> Formula {
    let var = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Var::X } else { Var::Y };
    if size == 0 {
        return match rng.gen_range(0..4) {
            0 => Formula::letter(if rng.gen_bool(0.5) { 'a' } else { 'b' }, var(rng)),
            1 => Formula::less(var(rng), var(rng)),
            2 => Formula::equal(var(rng), var(rng)),
            _ => Formula::letter('a', var(rng)),
        };
    }
    let pick = rng.gen_range(0..if depth > 0 { 7 } else { 4 });
    let half = size / 2;
    match pick {
        0 => Formula::not(random_formula(rng, depth, size - 1)),
        1 => Formula::and(random_formula(rng, depth, half), random_formula(rng, depth, size - 1 - half)),
        2 => Formula::or(random_formula(rng, depth, half), random_formula(rng, depth, size - 1 - half)),
        3 => Formula::implies(random_formula(rng, depth, half), random_formula(rng, depth, size - 1 - half)),
        4 | 5 => Formula::exists(var(rng), random_formula(rng, depth - 1, size - 1)),
        _ => Formula::forall(var(rng), random_formula(rng, depth - 1, size - 1)),
    }
}

/// Closes free variables with quantifiers while keeping depth within `depth`.
fn random_sentence(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    loop {
        let size = rng.gen_range(1..10);
        let mut f = random_formula(rng, depth, size);
        for v in f.free_vars() {
            f = if rng.gen_bool(0.5) { Formula::exists(v, f) } else { Formula::forall(v, f) };
        }
        if f.quantifier_depth() <= depth {
            return f;
        }
    }
}

fn check(f: &Formula, w: &Word, env: (usize, usize)) -> bool {
    let pos = |v: Var, p: usize| f.free_vars().contains(&v).then_some(p);
    f.model_check(w, pos(Var::X, env.0), pos(Var::Y, env.1)).unwrap()
}

#[test]
fn nnf_preserves_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let words: Vec<Word> = all_words(4).into_iter().filter(|w| !w.is_empty()).collect();
    for _ in 0..500 {
        let size = rng.gen_range(0..12);
        let f = random_formula(&mut rng, 3, size);
        let g = f.nnf();
        for w in &words {
            let env = (rng.gen_range(1..=w.len()), rng.gen_range(1..=w.len()));
            assert_eq!(check(&f, w, env), check(&g, w, env), "{f} vs {g} on {w}");
        }
        let (m, mm) = (f.metrics(), g.metrics());
        assert_eq!(m.quantifier_depth, mm.quantifier_depth, "{f}");
        assert_eq!(m.alternation_depth, mm.alternation_depth, "{f}");
        assert!(m.alternation_depth <= m.quantifier_depth, "{f}");
    }
}

#[test]
fn game_equivalent_words_agree_on_sentences() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let words = all_words(5);
    for n in 1..=2 {
        let mut pairs = Vec::new();
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                if game_equiv(u, v, n, false).unwrap().delilah_wins {
                    pairs.push((u, v));
                }
            }
        }
        assert!(!pairs.is_empty());
        for _ in 0..500 {
            let phi = random_sentence(&mut rng, n);
            for (u, v) in &pairs {
                assert_eq!(
                    phi.model_check(u, None, None).unwrap(),
                    phi.model_check(v, None, None).unwrap(),
                    "{phi} separates {u} and {v} at depth {n}"
                );
            }
        }
    }
}

#[test]
fn game_relation_is_an_equivalence() {
    let words = all_words(4);
    for n in 1..=3 {
        let rel: Vec<Vec<bool>> = words
            .iter()
            .map(|u| words.iter().map(|v| game_equiv(u, v, n, false).unwrap().delilah_wins).collect())
            .collect();
        for i in 0..words.len() {
            assert!(rel[i][i]);
            for j in 0..words.len() {
                assert_eq!(rel[i][j], rel[j][i]);
                if rel[i][j] {
                    for k in 0..words.len() {
                        assert!(!rel[j][k] || rel[i][k], "{} {} {}", words[i], words[j], words[k]);
                    }
                }
            }
        }
    }
}

#[test]
fn full_alternation_bound_matches_plain_game() {
    let words = all_words(4);
    for u in &words {
        for v in &words {
            for n in 1..=2 {
                assert_eq!(
                    game_equiv_alt(u, v, n, n, false, None).unwrap().delilah_wins,
                    game_equiv(u, v, n, false).unwrap().delilah_wins,
                    "{u} {v} {n}"
                );
            }
        }
    }
}

fn word_ab(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b']), 0..=max_len)
        .prop_map(|v| Word::from_letters(&ab(), v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn game_monotone_in_depth_and_switches(u in word_ab(5), v in word_ab(5)) {
        for n in 1..=3 {
            if game_equiv(&u, &v, n, false).unwrap().delilah_wins {
                for k in 0..n {
                    prop_assert!(game_equiv(&u, &v, k, false).unwrap().delilah_wins);
                }
            }
            for m in 1..=n {
                if game_equiv_alt(&u, &v, m, n, false, None).unwrap().delilah_wins {
                    for k in 1..m {
                        prop_assert!(game_equiv_alt(&u, &v, k, n, false, None).unwrap().delilah_wins);
                    }
                }
            }
        }
    }

    #[test]
    fn game_symmetric(u in word_ab(6), v in word_ab(6), n in 1usize..=3) {
        prop_assert_eq!(
            game_equiv(&u, &v, n, false).unwrap().delilah_wins,
            game_equiv(&v, &u, n, false).unwrap().delilah_wins
        );
        prop_assert!(game_equiv(&u, &u, n, true).unwrap().delilah_wins);
    }

    #[test]
    fn ranker_relation_refines(u in word_ab(6), v in word_ab(6), n in 2usize..=3) {
        if ranker_equiv(&u, &v, n).unwrap().verdict {
            prop_assert!(ranker_equiv(&u, &v, n - 1).unwrap().verdict);
            for m in 1..=n {
                prop_assert!(ranker_equiv_alt(&u, &v, m, n).unwrap().verdict);
            }
        }
    }

    #[test]
    fn witnesses_re_evaluate(u in word_ab(6), v in word_ab(6), n in 1usize..=3, m in 1usize..=3) {
        let reports = [
            ranker_equiv(&u, &v, n).unwrap(),
            ranker_equiv_alt(&u, &v, m.min(n), n).unwrap(),
        ];
        for report in reports {
            prop_assert_eq!(report.verdict, report.witnesses.is_empty());
            for wit in &report.witnesses {
                let r: fo2::Ranker = wit.ranker.parse().unwrap();
                prop_assert_eq!(r.eval(&u), wit.pos_u);
                prop_assert_eq!(r.eval(&v), wit.pos_v);
            }
        }
    }

    #[test]
    fn equivalence_is_a_congruence(
        v in word_ab(6),
        pad in word_ab(4),
        left in word_ab(3),
        right in word_ab(3),
        n in 1usize..=2,
    ) {
        // Some member of v's class; v itself when neither padding stays equivalent.
        let other = [v.concat(&pad), pad.concat(&v), v.clone()]
            .into_iter()
            .find(|c| ranker_equiv(&v, c, n).unwrap().verdict)
            .unwrap();
        prop_assert!(ranker_equiv(&left.concat(&v).concat(&right), &left.concat(&other).concat(&right), n).unwrap().verdict);
    }
}

#[test]
fn shrink_preserves_models_of_shallow_sentences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let sentences: Vec<(usize, Formula)> = (0..200)
        .map(|i| {
            let n = 1 + i % 2;
            (n, random_sentence(&mut rng, n))
        })
        .collect();
    for _ in 0..100 {
        let len = rng.gen_range(0..=30);
        let letters: Vec<char> = (0..len).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect();
        let w = Word::from_letters(&ab(), letters).unwrap();
        for (n, phi) in &sentences {
            let s = fo2::solver::shrink(&w, *n).unwrap();
            assert!(s.len() <= w.len());
            if phi.model_check(&w, None, None).unwrap() {
                assert!(phi.model_check(&s, None, None).unwrap(), "{phi} lost on {w} -> {s}");
            }
        }
    }
}
