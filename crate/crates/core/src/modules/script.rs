//! A small language for describing modules:
//!
//! ```text
//! # comments start with '#'
//! let p = projective right 1
//! let e = sum (injective 2) (injective 3)
//! let q = quotient p by spin [[0, 0, 1]]
//! submodule e spanned [[1, 0, 1, 0]]
//! ```
//!
//! Other forms: `simple <i>`, `regular`, `sum <m> <m> ...`, and an explicit
//! `action = [M_1, ..., M_d]` with one matrix (list of rows) per algebra basis element.
//! The value of the last statement is the result. Vectors are coordinate lists in the
//! module's own basis.

use std::collections::HashMap;
use std::sync::Arc;

use super::{DirectSum, RightModule};
use crate::algebra::FiniteAlgebra;
use crate::envelope::indecomposable_injective;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Mat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
}

fn tokenize(text: &str) -> Result<Vec<Vec<Token>>> {
    let mut statements = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut depth: i64 = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut chars = body.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                    s.push(c);
                    chars.next();
                }
                current.push(Token { tok: Tok::Ident(s), line });
            } else if c.is_ascii_digit() || c == '-' {
                let mut s = String::from(c);
                chars.next();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(c);
                    chars.next();
                }
                let v = s.parse().map_err(|_| Error::Parse { line, message: format!("bad integer '{s}'") })?;
                current.push(Token { tok: Tok::Int(v), line });
            } else if "[](),=".contains(c) {
                match c {
                    '[' | '(' => depth += 1,
                    ']' | ')' => depth -= 1,
                    _ => {}
                }
                if depth < 0 {
                    return Err(Error::Parse { line, message: format!("unbalanced '{c}'") });
                }
                current.push(Token { tok: Tok::Punct(c), line });
                chars.next();
            } else {
                return Err(Error::Parse { line, message: format!("unexpected character '{c}'") });
            }
        }
        if depth == 0 && !current.is_empty() {
            statements.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        let line = current.last().map_or(1, |t| t.line);
        return Err(Error::Parse { line, message: "unterminated bracket".into() });
    }
    Ok(statements)
}

struct Parser<'a> {
    algebra: &'a Arc<FiniteAlgebra>,
    env: &'a HashMap<String, RightModule>,
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn line(&self) -> usize {
        self.tokens.get(self.pos).or(self.tokens.last()).map_or(1, |t| t.line)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line(), message: message.into() }
    }

    fn at_error(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => self.err(other.to_string()),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn done(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Punct(d)) if d == c => Ok(()),
            other => Err(self.err(format!("expected '{c}', found {other:?}"))),
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        match self.next() {
            Some(Tok::Ident(s)) if s == w => Ok(()),
            other => Err(self.err(format!("expected '{w}', found {other:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            other => Err(self.err(format!("expected integer, found {other:?}"))),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.err(format!("index {v} must be positive")))
    }

    /// `[a, b, ...]` of items parsed by `item`.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect_punct('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Punct(']')) {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.next() {
                Some(Tok::Punct(',')) => continue,
                Some(Tok::Punct(']')) => return Ok(out),
                other => return Err(self.err(format!("expected ',' or ']', found {other:?}"))),
            }
        }
    }

    fn vectors(&mut self, dim: usize) -> Result<Vec<Vec<Elem>>> {
        let f = self.algebra.field();
        let vs = self.list(|p| p.list(|q| q.int()))?;
        vs.into_iter()
            .map(|v| {
                if v.len() != dim {
                    Err(self.err(format!("vector has {} coordinates, module has dimension {dim}", v.len())))
                } else {
                    Ok(v.into_iter().map(|x| f.reduce(x)).collect())
                }
            })
            .collect()
    }

    fn action(&mut self) -> Result<RightModule> {
        let f = self.algebra.field();
        let mats = self.list(|p| p.list(|q| q.list(|r| r.int())))?;
        let dim = mats.first().map_or(0, Vec::len);
        let action = mats
            .iter()
            .map(|rows| Mat::from_rows(f, dim, rows))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| self.at_error(e))?;
        RightModule::new(self.algebra.clone(), dim, action).map_err(|e| self.at_error(e))
    }

    fn atom(&mut self) -> Result<RightModule> {
        match self.next() {
            Some(Tok::Punct('(')) => {
                let m = self.expr()?;
                self.expect_punct(')')?;
                Ok(m)
            }
            Some(Tok::Ident(name)) => match self.env.get(&name) {
                Some(m) => Ok(m.clone()),
                None => {
                    self.pos -= 1;
                    self.expr()
                }
            },
            other => Err(self.err(format!("expected a module, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<RightModule> {
        let Some(Tok::Ident(head)) = self.peek().cloned() else {
            return self.atom();
        };
        if self.env.contains_key(&head) {
            self.next();
            return Ok(self.env[&head].clone());
        }
        self.next();
        let a = self.algebra;
        match head.as_str() {
            "projective" => {
                self.expect_word("right")?;
                let i = self.index()?;
                RightModule::projective(a, i).map_err(|e| self.at_error(e))
            }
            "simple" => {
                let i = self.index()?;
                RightModule::simple(a, i).map_err(|e| self.at_error(e))
            }
            "injective" => {
                let i = self.index()?;
                indecomposable_injective(a, i).map_err(|e| self.at_error(e))
            }
            "regular" => Ok(RightModule::regular(a)),
            "quotient" => {
                let m = self.atom()?;
                self.expect_word("by")?;
                self.expect_word("spin")?;
                let vs = self.vectors(m.dim())?;
                let sub = m.spin(vs.iter().map(|v| v.as_slice()));
                Ok(m.quotient(&sub).map_err(|e| self.at_error(e))?.0)
            }
            "submodule" => {
                let m = self.atom()?;
                self.expect_word("spanned")?;
                let vs = self.vectors(m.dim())?;
                Ok(m.restrict(&m.spin(vs.iter().map(|v| v.as_slice()))))
            }
            "sum" => {
                let mut parts = vec![self.atom()?];
                while !self.done() && self.peek() != Some(&Tok::Punct(')')) {
                    parts.push(self.atom()?);
                }
                let refs: Vec<&RightModule> = parts.iter().collect();
                Ok(DirectSum::new(&refs).map_err(|e| self.at_error(e))?.module)
            }
            "action" => {
                if self.peek() == Some(&Tok::Punct('=')) {
                    self.next();
                }
                self.action()
            }
            other => Err(self.err(format!("unknown module form or name '{other}'"))),
        }
    }
}

/// Evaluates module descriptions against a fixed algebra.
pub struct ModuleScript;

impl ModuleScript {
    pub fn evaluate(algebra: &Arc<FiniteAlgebra>, text: &str) -> Result<RightModule> {
        let mut env: HashMap<String, RightModule> = HashMap::new();
        let mut last = None;
        for stmt in tokenize(text)? {
            let (name, body) = match (&stmt[0].tok, stmt.get(1).map(|t| &t.tok), stmt.get(2).map(|t| &t.tok)) {
                (Tok::Ident(k), Some(Tok::Ident(n)), Some(Tok::Punct('='))) if k == "let" => (Some(n.clone()), &stmt[3..]),
                _ => (None, &stmt[..]),
            };
            if body.is_empty() {
                return Err(Error::Parse { line: stmt[0].line, message: "missing expression".into() });
            }
            let mut p = Parser { algebra, env: &env, tokens: body, pos: 0 };
            let value = p.expr()?;
            if !p.done() {
                return Err(p.err(format!("unexpected trailing token {:?}", p.peek())));
            }
            if let Some(n) = name {
                env.insert(n, value.clone());
            }
            last = Some(value);
        }
        last.ok_or(Error::Parse { line: 1, message: "empty module description".into() })
    }
}
