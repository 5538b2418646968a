//! Boolean formulas over state names, compiled to extensional [`BoolFun`]s.
//!
//! Grammar: `expr := and ( ("|" | "or") and )*`, `and := not ( ("&" | "and") not )*`,
//! `not := ("!" | "~" | "not") not | atom`, `atom := "true" | "false" | NAME | "(" expr ")"`.

use super::BoolFun;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    And,
    Or,
    Not,
    True,
    False,
    Open,
    Close,
}

#[derive(Clone, Debug)]
enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, mask: u32) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(s) => mask >> s & 1 == 1,
            Expr::Not(e) => !e.eval(mask),
            Expr::And(l, r) => l.eval(mask) && r.eval(mask),
            Expr::Or(l, r) => l.eval(mask) || r.eval(mask),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' | ')' | '&' | '|' | '!' | '~' => {
                out.push((
                    pos,
                    match c {
                        '(' => Token::Open,
                        ')' => Token::Close,
                        '&' => Token::And,
                        '|' => Token::Or,
                        _ => Token::Not,
                    },
                ));
                i += 1;
            }
            c if is_name_char(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i].1) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let tok = match word.as_str() {
                    "and" => Token::And,
                    "or" => Token::Or,
                    "not" => Token::Not,
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Ident(word),
                };
                out.push((pos, tok));
            }
            other => {
                return Err(Error::Syntax(format!(
                    "unexpected character `{other}` at offset {pos} in formula `{src}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    states: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, msg: &str) -> Error {
        let at = self
            .tokens
            .get(self.pos)
            .map_or(self.src.len(), |(p, _)| *p);
        Error::Syntax(format!("{msg} at offset {at} in formula `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.conj()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = Expr::Or(Box::new(lhs), Box::new(self.conj()?));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr> {
        let mut lhs = self.neg()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = Expr::And(Box::new(lhs), Box::new(self.neg()?));
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Not) {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.neg()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned();
        match tok {
            Some(Token::True) => {
                self.pos += 1;
                Ok(Expr::Const(true))
            }
            Some(Token::False) => {
                self.pos += 1;
                Ok(Expr::Const(false))
            }
            Some(Token::Ident(name)) => {
                let idx = self
                    .states
                    .iter()
                    .position(|s| *s == name)
                    .ok_or_else(|| self.error(&format!("unknown state `{name}`")))?;
                self.pos += 1;
                Ok(Expr::Var(idx))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a state name, constant or `(`")),
        }
    }
}

/// Compiles a formula over the given state names.
pub fn compile_formula(src: &str, states: &[String]) -> Result<BoolFun> {
    let mut p = Parser {
        src,
        tokens: tokenize(src)?,
        pos: 0,
        states,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    BoolFun::from_fn(states.len(), |mask| e.eval(mask))
}
