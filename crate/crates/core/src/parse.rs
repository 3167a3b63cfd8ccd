//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := 'E' var '.' formula | 'A' var '.' formula
//!          | formula '&' formula | formula '|' formula | formula '->' formula
//!          | '!' formula | '(' formula ')' | atom
//! atom    := letter '(' var ')' | var '<' var | var '=' var | 'suc(' var ',' var ')'
//!          | 'true' | 'false'
//! ```
//!
//! `&` binds tighter than `|`, which binds tighter than `->` (right associative).
//! A quantifier's scope extends as far right as possible.

use crate::error::{Error, Result};
use crate::formula::{Formula, Signature, Var};
use crate::word::Alphabet;

/// Parses `text`, checking letters against `alphabet` and `suc` against `signature`.
pub fn parse(text: &str, alphabet: &Alphabet, signature: Signature) -> Result<Formula> {
    Parser::new(text, Some(alphabet), signature).run()
}

/// Parses without an alphabet check and with successor allowed.
pub fn parse_unchecked(text: &str) -> Result<Formula> {
    Parser::new(text, None, Signature::OrderSuc).run()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
    signature: Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: Option<&'a Alphabet>, signature: Signature) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            alphabet,
            signature,
        }
    }

    fn run(mut self) -> Result<Formula> {
        let f = self.implication()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error(format!("unexpected '{}'", self.chars[self.pos])));
        }
        Ok(f)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// Next non-space character after the one at `self.pos`.
    fn peek_second(&self) -> Option<char> {
        self.chars[self.pos + 1..].iter().copied().find(|c| !c.is_whitespace())
    }

    fn looking_at(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{c}', found '{d}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn var(&mut self) -> Result<Var> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Var::X)
            }
            Some('y') => {
                self.pos += 1;
                Ok(Var::Y)
            }
            Some(c) => Err(self.error(format!("unknown variable '{c}'; only x and y are allowed"))),
            None => Err(self.error("expected a variable, found end of input")),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.looking_at("->") {
            self.pos += 2;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(')')?;
                Ok(f)
            }
            Some(q @ ('E' | 'A')) if self.peek_second() != Some('(') => {
                self.pos += 1;
                let v = self.var()?;
                self.expect('.')?;
                let body = self.implication()?;
                Ok(if q == 'E' {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                })
            }
            Some(_) => self.atom(),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        if !self.looking_at(word) {
            return false;
        }
        let after = self.chars.get(self.pos + word.len()).copied();
        if after.is_some_and(|c| c.is_alphanumeric() || c == '(') {
            return false;
        }
        self.pos += word.len();
        true
    }

    fn atom(&mut self) -> Result<Formula> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.looking_at("suc(") {
            self.pos += 4;
            let a = self.var()?;
            self.expect(',')?;
            let b = self.var()?;
            self.expect(')')?;
            if !self.signature.has_successor() {
                return Err(Error::Signature { offset: start });
            }
            return Ok(Formula::suc(a, b));
        }
        if self.keyword("true") {
            return Ok(Formula::True);
        }
        if self.keyword("false") {
            return Ok(Formula::False);
        }
        let c = self.chars[self.pos];
        if self.peek_second() == Some('(') {
            self.pos += 1;
            self.expect('(')?;
            let v = self.var()?;
            self.expect(')')?;
            if let Some(alphabet) = self.alphabet {
                alphabet.check(c)?;
            }
            return Ok(Formula::letter(c, v));
        }
        let a = self.var()?;
        let op = self.peek();
        match op {
            Some('<') | Some('=') => {
                self.pos += 1;
                let b = self.var()?;
                Ok(if op == Some('<') {
                    Formula::less(a, b)
                } else {
                    Formula::equal(a, b)
                })
            }
            Some(d) => Err(self.error(format!("expected '<' or '=', found '{d}'"))),
            None => Err(self.error("expected '<' or '=', found end of input")),
        }
    }
}
