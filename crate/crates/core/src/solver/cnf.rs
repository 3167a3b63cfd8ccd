//! CNF formulas, a brute-force oracle and the reduction to FO²[<] over `{0,1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Var};

/// Largest variable count [`cnf_brute_force`] accepts.
pub const MAX_BRUTE_FORCE_VARS: usize = 20;

/// Clauses of signed 1-based variable indices. An empty clause is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Cnf {
    variable_count: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(variable_count: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for lit in clauses.iter().flatten() {
            if *lit == 0 || lit.unsigned_abs() as usize > variable_count {
                return Err(Error::precondition(format!(
                    "literal {lit} outside [1, {variable_count}]"
                )));
            }
        }
        Ok(Cnf {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `|α|`: literal occurrences plus clauses.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(|c| c.len() + 1).sum()
    }

    /// Truth under `assignment`, where bit `i−1` is the value of `X_i`.
    pub fn eval(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let bit = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                bit == (lit > 0)
            })
        })
    }
}

/// DIMACS text: `c` comment lines, a `p cnf <vars> <clauses>` header, then
/// zero-terminated clauses that may span lines.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::syntax(start, "duplicate problem line"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| Error::syntax(start, "expected `p cnf <vars> <clauses>`"))?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::syntax(start, "clause before the problem line"));
        };
        let mut col = 0;
        for token in line.split_whitespace() {
            let at = start + line[col..].find(token).map_or(col, |i| col + i);
            col = at - start + token.len();
            let lit: i32 = token
                .parse()
                .map_err(|_| Error::syntax(at, format!("expected an integer literal, found `{token}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(Error::syntax(at, format!("literal {lit} exceeds variable count {vars}")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::syntax(offset, "missing `p cnf` problem line"));
    };
    if !current.is_empty() {
        return Err(Error::syntax(offset, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::syntax(
            offset,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    Cnf::new(vars, clauses)
}

/// Exhaustive satisfiability check.
pub fn cnf_brute_force(alpha: &Cnf) -> Result<bool> {
    if alpha.variable_count > MAX_BRUTE_FORCE_VARS {
        return Err(Error::Resource {
            what: "variables for brute-force CNF check",
            cap: MAX_BRUTE_FORCE_VARS as u64,
        });
    }
    Ok((0..1u64 << alpha.variable_count).any(|a| alpha.eval(a)))
}

/// `χ_i(v)`: at least `i` positions lie strictly before `v`.
fn at_least_before(i: usize, v: Var) -> Formula {
    if i == 0 {
        return Formula::True;
    }
    let o = v.other();
    let before = Formula::less(o, v);
    if i == 1 {
        return Formula::exists(o, before);
    }
    Formula::exists(o, Formula::and(before, at_least_before(i - 1, o)))
}

/// `ξ_i`: position `i` carries the letter `1`.
fn letter_one_at(i: usize) -> Formula {
    let x = Var::X;
    Formula::exists(
        x,
        Formula::and_all(
            [
                Formula::letter('1', x),
                at_least_before(i - 1, x),
                Formula::not(at_least_before(i, x)),
            ]
            .into_iter()
            .filter(|f| *f != Formula::True),
        ),
    )
}

/// `φ_n ∧ α[ξ_i / X_i]` over `{0,1}`, together with `n`; its models are exactly
/// the length-`n` words whose `1`-positions form a satisfying assignment.
pub fn cnf_to_fo2(alpha: &Cnf) -> Result<(Formula, usize)> {
    let n = alpha.variable_count;
    if n == 0 {
        return Err(Error::precondition("the CNF needs at least one variable"));
    }
    if alpha.clauses.is_empty() {
        return Err(Error::precondition("the CNF has no clauses"));
    }
    let x = Var::X;
    let length_is_n = Formula::and(
        Formula::exists(x, at_least_before(n - 1, x)),
        Formula::not(Formula::exists(x, at_least_before(n, x))),
    );
    let clauses = alpha.clauses.iter().map(|clause| {
        if clause.is_empty() {
            return Formula::False;
        }
        Formula::or_all(clause.iter().map(|&lit| {
            let xi = letter_one_at(lit.unsigned_abs() as usize);
            if lit > 0 {
                xi
            } else {
                Formula::not(xi)
            }
        }))
    });
    Ok((Formula::and(length_is_n, Formula::and_all(clauses)), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{sat_search, SatStatus};
    use crate::word::{Alphabet, Word};

    fn cnf(vars: usize, clauses: &[&[i32]]) -> Cnf {
        Cnf::new(vars, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn binary() -> Alphabet {
        Alphabet::parse("01").unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert!(!cnf_brute_force(&cnf(1, &[&[1], &[-1]])).unwrap());
        assert!(cnf_brute_force(&cnf(2, &[&[1, 2]])).unwrap());
        assert!(!cnf_brute_force(&cnf(2, &[&[1, 2], &[]])).unwrap());
        assert!(cnf_brute_force(&Cnf::new(21, vec![vec![1]]).unwrap()).unwrap_err().is_resource());
    }

    #[test]
    fn rejects_out_of_range_literals() {
        assert!(Cnf::new(2, vec![vec![3]]).is_err());
        assert!(Cnf::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -3 0\n2\n3 -1 0\n";
        let a = parse_dimacs(text).unwrap();
        assert_eq!(a.variable_count(), 3);
        assert_eq!(a.clauses(), &[vec![1, -3], vec![2, 3, -1]]);
        let empty = parse_dimacs("p cnf 1 2\n1 0\n0\n").unwrap();
        assert_eq!(empty.clauses()[1], Vec::<i32>::new());
    }

    #[test]
    fn dimacs_errors_carry_offsets() {
        match parse_dimacs("p cnf 2 1\n1 x 0\n") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("{other:?}"),
        }
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n3 0\n").is_err());
    }

    #[test]
    fn length_formula_pins_the_length() {
        let (phi, _) = cnf_to_fo2(&cnf(3, &[&[1, -1]])).unwrap();
        for text in ["", "0", "01", "010", "0110", "11111"] {
            let w = Word::new(&binary(), text).unwrap();
            assert_eq!(phi.model_check(&w, None, None).unwrap(), text.len() == 3, "{text}");
        }
    }

    #[test]
    fn letter_formula_reads_one_position() {
        let w = Word::new(&binary(), "0100").unwrap();
        let got: Vec<bool> = (1..=4)
            .map(|i| letter_one_at(i).model_check(&w, None, None).unwrap())
            .collect();
        assert_eq!(got, [false, true, false, false]);
    }

    #[test]
    fn reduction_examples() {
        let (phi, n) = cnf_to_fo2(&cnf(1, &[&[1], &[-1]])).unwrap();
        assert_eq!(n, 1);
        assert_eq!(sat_search(&phi, &binary(), None, None).unwrap().status, SatStatus::UnsatDefinitive);

        let (phi, n) = cnf_to_fo2(&cnf(1, &[&[1]])).unwrap();
        let r = sat_search(&phi, &binary(), None, Some(n)).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "1");

        let (phi, n) = cnf_to_fo2(&cnf(2, &[&[1, -2], &[2]])).unwrap();
        let r = sat_search(&phi, &binary(), None, Some(n)).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "11");
    }

    #[test]
    fn reduction_rejects_degenerate_inputs() {
        assert!(cnf_to_fo2(&cnf(1, &[])).is_err());
        assert!(cnf_to_fo2(&cnf(0, &[&[]])).is_err());
        let (phi, n) = cnf_to_fo2(&cnf(1, &[&[]])).unwrap();
        assert!(!sat_search(&phi, &binary(), None, Some(n)).unwrap().is_sat());
    }
}
