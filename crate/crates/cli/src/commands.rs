//! Subcommand implementations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use fo2::equivalence::{Decision, DeciderRegistry, EquivQuery, Evidence};
use fo2::hierarchy::{verify_hierarchy_level, witness_pair, HierarchyReport};
use fo2::parse::{parse, parse_unchecked};
use fo2::ranker::{realized_rankers, realized_suc_rankers};
use fo2::solver::{
    cnf_brute_force, cnf_to_fo2, parse_dimacs, sat_search_with, shrink, small_model_bound, SearchLimits,
    SearchRegistry,
};
use fo2::synth::{synth_comparison, synth_definedness, synth_position, Comparison, StepFormula};
use fo2::{Alphabet, Formula, Ranker, Signature, Step, SucRanker, Var, Word};

use crate::input::{file, inline_or_file};
use crate::{AlphabetArg, Command, Failure, Format};

pub const DEFAULT_SEED: u64 = 20_240_601;

type Outcome = Result<(), Failure>;

pub fn run(command: Command, format: Format) -> Outcome {
    let out = Out { format };
    match command {
        Command::EvalRanker { ranker, word, alphabet } => eval_ranker(out, &ranker, &word, &alphabet),
        Command::Rankers {
            word,
            n,
            m,
            suc,
            alphabet,
        } => rankers(out, &word, n, m, suc, &alphabet),
        Command::Equiv {
            u,
            v,
            n,
            m,
            suc,
            method,
            alphabet,
        } => equiv(out, &u, &v, EquivQuery { n, m, successor: suc }, &method, &alphabet),
        Command::Check {
            formula_file,
            word,
            x,
            y,
            suc,
            alphabet,
        } => check(out, &formula_file, &word, (x, y), suc, &alphabet),
        Command::Metrics { formula_file, suc } => metrics(out, &formula_file, suc),
        Command::Synth {
            ranker,
            definedness: _,
            position,
            comparison,
        } => synth(out, &ranker, position, comparison.as_deref()),
        Command::Witness { m, n, suc } => witness(out, m, n, suc),
        Command::VerifyHierarchy { m, n, suc } => verify_hierarchy(out, m, n, suc),
        Command::Sat {
            formula_file,
            alphabet,
            max_len,
            exact_len,
            strategy,
        } => sat(out, &formula_file, &alphabet, max_len, exact_len, strategy.as_deref()),
        Command::Shrink { word, n, alphabet } => shrink_word(out, &word, n, &alphabet),
        Command::ReduceCnf { dimacs_file, solve } => reduce_cnf(out, &dimacs_file, solve),
        Command::Crosscheck {
            seed,
            pairs,
            letters,
            max_len,
            n,
            m,
            suc,
        } => crosscheck(out, seed, pairs, &letters, max_len, EquivQuery { n, m, successor: suc }),
    }
}

#[derive(Clone, Copy)]
struct Out {
    format: Format,
}

impl Out {
    /// Prints `text` or the JSON value, depending on the format.
    fn emit(self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        match self.format {
            Format::Text => println!("{}", text()),
            Format::Json => println!("{}", serde_json::to_string_pretty(&value()).expect("serializable")),
        }
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn alphabet_for(arg: &AlphabetArg, texts: &[&str]) -> Result<Alphabet, Failure> {
    match &arg.alphabet {
        Some(letters) => Ok(Alphabet::parse(letters)?),
        None => Ok(Alphabet::infer(&texts.concat(), "")?),
    }
}

fn show(p: Option<usize>) -> String {
    p.map_or_else(|| "UNDEFINED".to_string(), |p| p.to_string())
}

enum AnyRanker {
    Plain(Ranker),
    Suc(SucRanker),
}

impl AnyRanker {
    /// Successor syntax is recognised by its bracketed neighbourhoods.
    fn parse(text: &str) -> Result<Self, Failure> {
        if text.contains('[') {
            Ok(AnyRanker::Suc(text.parse()?))
        } else {
            Ok(AnyRanker::Plain(text.parse()?))
        }
    }

    fn letters(&self) -> String {
        fn collect<S: Step>(r: &Ranker<S>) -> String {
            r.steps().iter().flat_map(|s| s.mentioned_letters()).collect()
        }
        match self {
            AnyRanker::Plain(r) => collect(r),
            AnyRanker::Suc(r) => collect(r),
        }
    }
}

fn eval_ranker(out: Out, ranker: &str, word: &str, alphabet: &AlphabetArg) -> Outcome {
    let (ranker, word) = (inline_or_file(ranker)?, inline_or_file(word)?);
    let r = AnyRanker::parse(&ranker)?;
    let sigma = alphabet_for(alphabet, &[&word, &r.letters()])?;
    let w = Word::new(&sigma, &word)?;
    let (shown, pos) = match &r {
        AnyRanker::Plain(r) => {
            r.check_alphabet(&sigma)?;
            (r.to_string(), r.eval(&w))
        }
        AnyRanker::Suc(r) => {
            r.check_alphabet(&sigma)?;
            (r.to_string(), r.eval(&w))
        }
    };
    out.emit(
        || show(pos),
        || json!({ "ranker": shown, "word": word, "position": pos }),
    );
    Ok(())
}

fn rankers(out: Out, word: &str, n: usize, m: Option<usize>, suc: bool, alphabet: &AlphabetArg) -> Outcome {
    let word = inline_or_file(word)?;
    let sigma = alphabet_for(alphabet, &[&word])?;
    let w = Word::new(&sigma, &word)?;
    let mut rows: Vec<(usize, String, usize)> = if suc {
        realized_suc_rankers(&w, n, m)?
            .iter()
            .map(|e| (e.ranker.len(), e.ranker.to_string(), e.position))
            .collect()
    } else {
        let set = realized_rankers(&w, n, m)?;
        let mut sorted: Vec<_> = set.iter().collect();
        sorted.sort_by(|a, b| a.ranker.cmp(&b.ranker));
        sorted.iter().map(|e| (e.ranker.len(), e.ranker.to_string(), e.position)).collect()
    };
    if suc {
        rows.sort();
    }
    out.emit(
        || rows.iter().map(|(_, r, p)| format!("{r}\t{p}")).collect::<Vec<_>>().join("\n"),
        || {
            json!({
                "word": word,
                "n": n,
                "m": m,
                "signature": Signature::with_successor(suc),
                "rankers": rows.iter().map(|(_, r, p)| json!({ "ranker": r, "position": p })).collect::<Vec<_>>(),
            })
        },
    );
    Ok(())
}

fn decision_text(d: &Decision) -> Vec<String> {
    let mut lines = vec![format!("{}: {}", d.method, d.verdict)];
    match &d.evidence {
        Evidence::Ranker(report) => {
            if !report.verdict {
                lines.push(format!("  failed condition: {}", to_value(&report.failed_condition).as_str().unwrap_or("")));
                for wit in &report.witnesses {
                    lines.push(format!("  witness {}: u={} v={}", wit.ranker, show(wit.pos_u), show(wit.pos_v)));
                }
            }
        }
        Evidence::Game(verdict) => {
            if let Some(mv) = verdict.first_winning_samson_move {
                lines.push(format!("  samson opens: {} pebble {} at {}", mv.side, mv.pebble, mv.position));
            }
        }
    }
    lines
}

fn equiv(out: Out, u: &str, v: &str, query: EquivQuery, method: &str, alphabet: &AlphabetArg) -> Outcome {
    let (u, v) = (inline_or_file(u)?, inline_or_file(v)?);
    let sigma = alphabet_for(alphabet, &[&u, &v])?;
    let (wu, wv) = (Word::new(&sigma, &u)?, Word::new(&sigma, &v)?);
    let registry = DeciderRegistry::default();
    let deciders: Vec<_> = if method == "both" {
        registry.iter().collect()
    } else {
        let d = registry.get(method).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown method '{method}'; expected one of {} or both",
                registry.names().join(", ")
            ))
        })?;
        vec![d]
    };
    let decisions = deciders
        .iter()
        .map(|d| d.decide(&wu, &wv, query))
        .collect::<fo2::Result<Vec<_>>>()?;
    let verdict = decisions[0].verdict;
    let agree = decisions.iter().all(|d| d.verdict == verdict);
    out.emit(
        || {
            let mut lines = vec![if agree { verdict.to_string() } else { "DISAGREEMENT".into() }];
            if decisions.len() > 1 || !verdict {
                lines.extend(decisions.iter().flat_map(decision_text));
            }
            lines.join("\n")
        },
        || {
            json!({
                "u": u,
                "v": v,
                "n": query.n,
                "m": query.m,
                "signature": Signature::with_successor(query.successor),
                "method": method,
                "verdict": verdict,
                "agree": agree,
                "decisions": decisions,
            })
        },
    );
    if agree {
        Ok(())
    } else {
        crate::report(out.format, "disagreement", "the deciders returned different verdicts");
        Err(Failure::Disagreement)
    }
}

/// Parses a formula file; the alphabet is the given one or the word's letters
/// plus the formula's.
fn load_formula(text: &str, alphabet: Option<&Alphabet>, extra: &str, suc: bool) -> Result<(Formula, Alphabet), Failure> {
    let sigma = match alphabet {
        Some(a) => a.clone(),
        None => {
            let letters: String = parse_unchecked(text)?.letters().into_iter().collect();
            Alphabet::infer(extra, &letters)?
        }
    };
    Ok((parse(text, &sigma, Signature::with_successor(suc))?, sigma))
}

fn check(out: Out, formula_file: &str, word: &str, (x, y): (Option<usize>, Option<usize>), suc: bool, alphabet: &AlphabetArg) -> Outcome {
    let text = file(formula_file)?;
    let word = inline_or_file(word)?;
    let given = alphabet.alphabet.as_deref().map(Alphabet::parse).transpose()?;
    let (phi, sigma) = load_formula(&text, given.as_ref(), &word, suc)?;
    let w = Word::new(&sigma, &word)?;
    let holds = phi.model_check(&w, x, y)?;
    out.emit(
        || holds.to_string(),
        || json!({ "formula": phi.to_string(), "word": word, "x": x, "y": y, "holds": holds }),
    );
    Ok(())
}

fn metrics(out: Out, formula_file: &str, suc: bool) -> Outcome {
    let text = file(formula_file)?;
    let (phi, _) = load_formula(&text, None, "", suc)?;
    let m = phi.metrics();
    let vars: Vec<String> = m.free_vars.iter().map(Var::to_string).collect();
    out.emit(
        || {
            format!(
                "quantifier depth: {}\nalternation depth: {}\nuses successor: {}\nfree variables: {}\nsize: {}",
                m.quantifier_depth,
                m.alternation_depth,
                m.uses_successor,
                if vars.is_empty() { "none".into() } else { vars.join(", ") },
                phi.size()
            )
        },
        || {
            let mut v = to_value(&m);
            v["size"] = json!(phi.size());
            v["formula"] = json!(phi.to_string());
            v
        },
    );
    Ok(())
}

fn synth(out: Out, ranker: &str, position: bool, comparison: Option<&str>) -> Outcome {
    let text = inline_or_file(ranker)?;
    let cmp = comparison
        .map(|c| {
            let symbol = match c {
                "lt" => "<",
                "le" => "<=",
                "gt" => ">",
                "ge" => ">=",
                other => other,
            };
            Comparison::parse(symbol).ok_or_else(|| Failure::Usage(format!("unknown comparison '{c}'")))
        })
        .transpose()?;
    let kind = match (cmp, position) {
        (Some(_), _) => "comparison",
        (None, true) => "position",
        (None, false) => "definedness",
    };
    fn build<S: StepFormula>(r: &Ranker<S>, cmp: Option<Comparison>, position: bool) -> Formula {
        match (cmp, position) {
            (Some(c), _) => synth_comparison(r, c, Var::X),
            (None, true) => synth_position(r),
            (None, false) => synth_definedness(r),
        }
    }
    let (shown, phi) = match AnyRanker::parse(&text)? {
        AnyRanker::Plain(r) => (r.to_string(), build(&r, cmp, position)),
        AnyRanker::Suc(r) => (r.to_string(), build(&r, cmp, position)),
    };
    out.emit(
        || phi.to_string(),
        || {
            json!({
                "ranker": shown,
                "kind": kind,
                "formula": phi.to_string(),
                "quantifierDepth": phi.quantifier_depth(),
            })
        },
    );
    Ok(())
}

fn witness(out: Out, m: usize, n: usize, suc: bool) -> Outcome {
    let pair = witness_pair(m, n, Signature::with_successor(suc))?;
    out.emit(|| format!("{}\n{}", pair.u, pair.v), || to_value(&pair));
    Ok(())
}

fn hierarchy_text(r: &HierarchyReport) -> String {
    let mut lines = vec![format!("u = {}", r.u), format!("v = {}", r.v)];
    if let Some((u, v)) = r.nonempty {
        lines.push(format!("Ex.(x=x): {u} on u, {v} on v"));
    }
    if let Some(i) = &r.indistinguishable {
        lines.push(format!(
            "equivalent with {} blocks at depth {}: ranker {}, game {}",
            r.m - 1,
            r.n,
            i.ranker_verdict,
            i.game_verdict
        ));
    }
    if let Some(s) = &r.rankers {
        let ord = |o: Option<fo2::OrderType>| o.map_or("UNDEFINED".to_string(), |o| to_value(&o).as_str().unwrap_or("").to_string());
        lines.push(format!("ord({}, {}): {} on u, {} on v", s.r, s.s, ord(s.ord_u), ord(s.ord_v)));
    }
    if r.m > 1 {
        lines.push(match r.game_separation_depth {
            Some(d) => format!("separated with {} blocks at depth {d}", r.m),
            None => format!("not separated with {} blocks up to depth {}", r.m, r.search_bound),
        });
    }
    lines.push(format!("confirmed: {}", r.confirmed()));
    lines.join("\n")
}

fn verify_hierarchy(out: Out, m: usize, n: usize, suc: bool) -> Outcome {
    let report = verify_hierarchy_level(m, n, Signature::with_successor(suc))?;
    out.emit(
        || hierarchy_text(&report),
        || {
            let mut v = to_value(&report);
            v["confirmed"] = json!(report.confirmed());
            v
        },
    );
    Ok(())
}

fn sat(out: Out, formula_file: &str, alphabet: &str, max_len: Option<u64>, exact_len: Option<usize>, strategy: Option<&str>) -> Outcome {
    let text = file(formula_file)?;
    let sigma = Alphabet::parse(alphabet)?;
    let phi = parse(&text, &sigma, Signature::Order)?;
    let registry = SearchRegistry::default();
    let search = match strategy {
        Some(name) => registry.get(name).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown strategy '{name}'; expected one of {}",
                registry.names().join(", ")
            ))
        })?,
        None => registry.default_strategy().expect("default strategies registered"),
    };
    let result = sat_search_with(search, &phi, &sigma, max_len, exact_len, SearchLimits::default())?;
    out.emit(
        || {
            let status = to_value(&result.status);
            let status = status.as_str().unwrap_or("");
            match &result.witness {
                Some(w) => format!("{status}\n{w}"),
                None => format!("{status}\nexplored up to length {}", result.explored_bound),
            }
        },
        || to_value(&result),
    );
    Ok(())
}

fn shrink_word(out: Out, word: &str, n: usize, alphabet: &AlphabetArg) -> Outcome {
    let word = inline_or_file(word)?;
    let sigma = alphabet_for(alphabet, &[&word])?;
    let w = Word::new(&sigma, &word)?;
    let s = shrink(&w, n)?;
    let bound = small_model_bound(n, w.distinct_letters().max(1))?;
    out.emit(
        || s.to_string(),
        || {
            json!({
                "input": word,
                "n": n,
                "output": s.to_string(),
                "length": s.len(),
                "bound": bound,
            })
        },
    );
    Ok(())
}

fn reduce_cnf(out: Out, dimacs_file: &str, solve: bool) -> Outcome {
    let alpha = parse_dimacs(&file(dimacs_file)?)?;
    let (phi, n) = cnf_to_fo2(&alpha)?;
    let solved = if solve {
        let binary = Alphabet::parse("01")?;
        let strategy = SearchRegistry::default();
        let search = strategy.default_strategy().expect("default strategies registered");
        let result = sat_search_with(search, &phi, &binary, None, Some(n), SearchLimits::default())?;
        Some((result, cnf_brute_force(&alpha)?))
    } else {
        None
    };
    out.emit(
        || {
            let mut lines = vec![phi.to_string()];
            if let Some((result, brute)) = &solved {
                let status = to_value(&result.status);
                lines.push(format!("n = {n}"));
                lines.push(format!(
                    "search: {}{}",
                    status.as_str().unwrap_or(""),
                    result.witness.as_ref().map_or(String::new(), |w| format!(" {w}"))
                ));
                lines.push(format!("brute force: {}", if *brute { "SAT" } else { "UNSAT" }));
            }
            lines.join("\n")
        },
        || {
            let mut v = json!({
                "n": n,
                "cnfSize": alpha.size(),
                "formula": phi.to_string(),
                "formulaLength": phi.to_string().chars().count(),
            });
            if let Some((result, brute)) = &solved {
                v["search"] = to_value(result);
                v["bruteForce"] = json!(brute);
            }
            v
        },
    );
    Ok(())
}

fn crosscheck(out: Out, seed: u64, pairs: usize, letters: &str, max_len: usize, query: EquivQuery) -> Outcome {
    let sigma = Alphabet::parse(letters)?;
    let registry = DeciderRegistry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len).map(|_| sigma.letters()[rng.gen_range(0..sigma.len())]).collect();
        Word::from_letters(&sigma, letters)
    };
    let mut disagreements = Vec::new();
    let mut equivalent = 0;
    for _ in 0..pairs {
        let (u, v) = (word(&mut rng)?, word(&mut rng)?);
        let verdicts = registry
            .iter()
            .map(|d| Ok((d.name(), d.decide(&u, &v, query)?.verdict)))
            .collect::<fo2::Result<Vec<_>>>()?;
        if verdicts.iter().any(|(_, b)| *b != verdicts[0].1) {
            disagreements.push(json!({
                "u": u.to_string(),
                "v": v.to_string(),
                "verdicts": verdicts.iter().map(|(k, b)| json!({ "method": k, "verdict": b })).collect::<Vec<_>>(),
            }));
        } else {
            equivalent += verdicts[0].1 as usize;
        }
    }
    out.emit(
        || {
            let mut lines = vec![format!(
                "seed {seed}: {pairs} pairs, {equivalent} equivalent, {} disagreements",
                disagreements.len()
            )];
            lines.extend(disagreements.iter().map(|d| d.to_string()));
            lines.join("\n")
        },
        || {
            json!({
                "seed": seed,
                "pairs": pairs,
                "n": query.n,
                "m": query.m,
                "signature": Signature::with_successor(query.successor),
                "methods": registry.names(),
                "equivalent": equivalent,
                "disagreements": disagreements,
            })
        },
    );
    if disagreements.is_empty() {
        Ok(())
    } else {
        crate::report(out.format, "disagreement", "the deciders returned different verdicts");
        Err(Failure::Disagreement)
    }
}
