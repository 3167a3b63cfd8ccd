//! FO² syntax over words: AST, negation normal form, metrics and model checking.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
        }
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Which numerical predicates a formula may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    #[serde(rename = "order")]
    Order,
    #[serde(rename = "order+successor")]
    OrderSuc,
}

impl Signature {
    pub fn with_successor(successor: bool) -> Self {
        if successor {
            Signature::OrderSuc
        } else {
            Signature::Order
        }
    }

    pub fn has_successor(self) -> bool {
        self == Signature::OrderSuc
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Order => "order",
            Signature::OrderSuc => "order+successor",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Letter(char, Var),
    Less(Var, Var),
    Equal(Var, Var),
    /// `suc(x, y)` holds when `y = x + 1`.
    Suc(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn letter(c: char, v: Var) -> Self {
        Formula::Letter(c, v)
    }

    pub fn less(a: Var, b: Var) -> Self {
        Formula::Less(a, b)
    }

    pub fn equal(a: Var, b: Var) -> Self {
        Formula::Equal(a, b)
    }

    pub fn suc(a: Var, b: Var) -> Self {
        Formula::Suc(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::True
                | Formula::False
                | Formula::Letter(..)
                | Formula::Less(..)
                | Formula::Equal(..)
                | Formula::Suc(..)
        )
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut [false, false], &mut out);
        out
    }

    fn collect_free(&self, bound: &mut [bool; 2], out: &mut BTreeSet<Var>) {
        let see = |v: Var, out: &mut BTreeSet<Var>| {
            if !bound[v.slot()] {
                out.insert(v);
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Letter(_, v) => see(*v, out),
            Formula::Less(a, b) | Formula::Equal(a, b) | Formula::Suc(a, b) => {
                see(*a, out);
                see(*b, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let saved = bound[v.slot()];
                bound[v.slot()] = true;
                body.collect_free(bound, out);
                bound[v.slot()] = saved;
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn uses_successor(&self) -> bool {
        match self {
            Formula::Suc(..) => true,
            Formula::True | Formula::False | Formula::Letter(..) | Formula::Less(..) | Formula::Equal(..) => false,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.uses_successor(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.uses_successor() || b.uses_successor(),
        }
    }

    /// Letters mentioned by atoms, sorted.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Letter(c, _) = f {
                out.insert(*c);
            }
        });
        out
    }

    fn visit(&self, on: &mut impl FnMut(&Formula)) {
        on(self);
        match self {
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.visit(on),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(on);
                b.visit(on);
            }
            _ => {}
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            _ => 0,
        }
    }

    /// Negation normal form: `Implies` eliminated, negations only on atoms,
    /// and the reflexive atoms `v=v`, `v<v`, `suc(v,v)` folded to constants.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        let lit = |f: Formula| if positive { f } else { Formula::not(f) };
        let constant = |b: bool| if b == positive { Formula::True } else { Formula::False };
        match self {
            Formula::True => constant(true),
            Formula::False => constant(false),
            Formula::Equal(a, b) if a == b => constant(true),
            Formula::Less(a, b) | Formula::Suc(a, b) if a == b => constant(false),
            Formula::Letter(..) | Formula::Less(..) | Formula::Equal(..) | Formula::Suc(..) => lit(self.clone()),
            Formula::Not(f) => f.nnf_signed(!positive),
            Formula::And(a, b) => {
                let (a, b) = (a.nnf_signed(positive), b.nnf_signed(positive));
                if positive {
                    Formula::and(a, b)
                } else {
                    Formula::or(a, b)
                }
            }
            Formula::Or(a, b) => {
                let (a, b) = (a.nnf_signed(positive), b.nnf_signed(positive));
                if positive {
                    Formula::or(a, b)
                } else {
                    Formula::and(a, b)
                }
            }
            Formula::Implies(a, b) => {
                let (a, b) = (a.nnf_signed(!positive), b.nnf_signed(positive));
                if positive {
                    Formula::or(a, b)
                } else {
                    Formula::and(a, b)
                }
            }
            Formula::Exists(v, f) => {
                let body = f.nnf_signed(positive);
                if positive {
                    Formula::exists(*v, body)
                } else {
                    Formula::forall(*v, body)
                }
            }
            Formula::Forall(v, f) => {
                let body = f.nnf_signed(positive);
                if positive {
                    Formula::forall(*v, body)
                } else {
                    Formula::exists(*v, body)
                }
            }
        }
    }

    pub fn metrics(&self) -> FormulaMetrics {
        let nnf = self.nnf();
        FormulaMetrics {
            quantifier_depth: nnf.quantifier_depth(),
            alternation_depth: alternation_blocks(&nnf, None),
            uses_successor: self.uses_successor(),
            free_vars: self.free_vars().into_iter().collect(),
        }
    }

    /// Truth of the formula on `w` under the given assignment.
    ///
    /// Every free variable must be assigned a position in `[1, |w|]`.
    pub fn model_check(&self, w: &Word, x: Option<usize>, y: Option<usize>) -> Result<bool> {
        for (v, pos) in [(Var::X, x), (Var::Y, y)] {
            if let Some(p) = pos {
                if p == 0 || p > w.len() {
                    return Err(Error::precondition(format!(
                        "position {p} for {v} outside [1,{}]",
                        w.len()
                    )));
                }
            }
        }
        for v in self.free_vars() {
            let assigned = match v {
                Var::X => x.is_some(),
                Var::Y => y.is_some(),
            };
            if !assigned {
                return Err(Error::precondition(format!("free variable {v} has no assigned position")));
            }
        }
        Ok(self.holds(w.letters(), &mut [x.unwrap_or(0), y.unwrap_or(0)]))
    }

    /// Unchecked evaluation; `env` holds 1-indexed positions for x and y.
    pub(crate) fn holds(&self, w: &[char], env: &mut [usize; 2]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Letter(c, v) => w[env[v.slot()] - 1] == *c,
            Formula::Less(a, b) => env[a.slot()] < env[b.slot()],
            Formula::Equal(a, b) => env[a.slot()] == env[b.slot()],
            Formula::Suc(a, b) => env[a.slot()] + 1 == env[b.slot()],
            Formula::Not(f) => !f.holds(w, env),
            Formula::And(a, b) => a.holds(w, env) && b.holds(w, env),
            Formula::Or(a, b) => a.holds(w, env) || b.holds(w, env),
            Formula::Implies(a, b) => !a.holds(w, env) || b.holds(w, env),
            Formula::Exists(v, f) => {
                let saved = env[v.slot()];
                let mut found = false;
                for i in 1..=w.len() {
                    env[v.slot()] = i;
                    if f.holds(w, env) {
                        found = true;
                        break;
                    }
                }
                env[v.slot()] = saved;
                found
            }
            Formula::Forall(v, f) => {
                let saved = env[v.slot()];
                let mut all = true;
                for i in 1..=w.len() {
                    env[v.slot()] = i;
                    if !f.holds(w, env) {
                        all = false;
                        break;
                    }
                }
                env[v.slot()] = saved;
                all
            }
        }
    }

    /// Positions `i` with `(w, x = i) ⊨ φ`; the formula may only have `x` free.
    pub fn satisfying_positions(&self, w: &Word) -> Result<Vec<usize>> {
        if self.free_vars().contains(&Var::Y) {
            return Err(Error::precondition("formula has free variable y"));
        }
        let mut env = [0, 0];
        Ok((1..=w.len())
            .filter(|&i| {
                env[0] = i;
                self.holds(w.letters(), &mut env)
            })
            .collect())
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        let (open, close) = if top { ("", "") } else { ("(", ")") };
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Letter(c, v) => write!(f, "{c}({v})"),
            Formula::Less(a, b) => write!(f, "{a}<{b}"),
            Formula::Equal(a, b) => write!(f, "{a}={b}"),
            Formula::Suc(a, b) => write!(f, "suc({a},{b})"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.write(f, false)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " -> ",
                };
                f.write_str(open)?;
                a.write(f, false)?;
                f.write_str(op)?;
                b.write(f, false)?;
                f.write_str(close)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let q = if matches!(self, Formula::Exists(..)) { 'E' } else { 'A' };
                write!(f, "{open}{q}{v}. ")?;
                body.write(f, true)?;
                f.write_str(close)
            }
        }
    }
}

/// Fully parenthesized rendering, accepted back by the parser.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    Exists,
    Forall,
}

fn alternation_blocks(f: &Formula, last: Option<Quant>) -> usize {
    let step = |q: Quant, body: &Formula| usize::from(last != Some(q)) + alternation_blocks(body, Some(q));
    match f {
        Formula::Exists(_, body) => step(Quant::Exists, body),
        Formula::Forall(_, body) => step(Quant::Forall, body),
        Formula::Not(g) => alternation_blocks(g, last),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            alternation_blocks(a, last).max(alternation_blocks(b, last))
        }
        _ => 0,
    }
}

/// Depth and alternation of a formula, both measured on its negation normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaMetrics {
    pub quantifier_depth: usize,
    pub alternation_depth: usize,
    pub uses_successor: bool,
    pub free_vars: Vec<Var>,
}
