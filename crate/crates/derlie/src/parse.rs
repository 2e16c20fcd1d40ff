//! Session file lexer and parser.
//!
//! Expressions are parsed by recursive descent with one function per
//! precedence level: `^` binds tightest, then unary minus, then `*` and `/`,
//! then binary `+` and `-`. A derivation term is a coefficient followed by
//! `*` and a derivative token (`dx` for a declared variable `x`) or the name
//! of an earlier definition.

use derlie_core::{Derivation, RatFunc, Rational};
use indexmap::IndexMap;

use crate::error::{CliError, Pos, Result};
use crate::session::Session;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            _ => "",
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                advance(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.extend(advance(&mut chars));
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.extend(advance(&mut chars));
            }
            if chars.peek() == Some(&'.') {
                return Err(CliError::syntax(pos, "decimal literals are not supported; write p/q"));
            }
            out.push((Tok::Int(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => return Err(CliError::syntax(pos, format!("unexpected character `{other}`"))),
        };
        advance(&mut chars);
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

const RESERVED: &[&str] = &["vars", "algebra"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: Vec<String>,
    defs: IndexMap<String, Derivation>,
}

impl Parser {
    fn new(text: &str, vars: Vec<String>) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            vars,
            defs: IndexMap::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(CliError::syntax(
                self.pos(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Pos)> {
        match self.bump() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(CliError::syntax(pos, format!("expected a name, found {}", t.describe()))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.expect(Tok::Eof).map(|_| ())
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The derivation named by the token at `offset`, if it names one.
    fn derivation_at(&self, offset: usize) -> Result<Option<Derivation>> {
        let i = (self.at + offset).min(self.toks.len() - 1);
        let (Tok::Ident(name), pos) = &self.toks[i] else {
            return Ok(None);
        };
        if let Some(d) = self.defs.get(name) {
            return Ok(Some(d.clone()));
        }
        if self.var_index(name).is_some() {
            return Ok(None);
        }
        match name.strip_prefix('d') {
            Some(var) if !var.is_empty() => match self.var_index(var) {
                Some(v) => Ok(Some(Derivation::partial(self.nvars(), v))),
                None => Err(CliError::UndefinedVariable {
                    pos: Pos { col: pos.col + 1, ..*pos },
                    name: var.to_string(),
                }),
            },
            _ => Ok(None),
        }
    }

    fn rexpr(&mut self) -> Result<RatFunc> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<RatFunc> {
        let first = self.unary()?;
        self.product_tail(first)
    }

    fn product_tail(&mut self, mut acc: RatFunc) -> Result<RatFunc> {
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => acc = self.divide(acc)?,
                _ => return Ok(acc),
            }
        }
    }

    /// Consumes `/ unary` and divides `acc` by it.
    fn divide(&mut self, acc: RatFunc) -> Result<RatFunc> {
        let pos = self.expect(Tok::Slash)?;
        let rhs = self.unary()?;
        acc.checked_div(&rhs)
            .map_err(|_| CliError::syntax(pos, "division by zero"))
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(s), pos) => {
                let e: u32 = s
                    .parse()
                    .map_err(|_| CliError::syntax(pos, format!("exponent `{s}` is too large")))?;
                Ok(base.pow(e))
            }
            (t, pos) => Err(CliError::syntax(
                pos,
                format!("exponent must be a non-negative integer literal, found {}", t.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.bump() {
            (Tok::Int(s), _) => {
                let c: Rational = s.parse().expect("digit string");
                Ok(RatFunc::constant(self.nvars(), c))
            }
            (Tok::Ident(name), pos) => match self.var_index(&name) {
                Some(v) => Ok(RatFunc::variable(self.nvars(), v)),
                None => Err(CliError::UndefinedName { pos, name }),
            },
            (Tok::LParen, _) => {
                let inner = self.rexpr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            (t, pos) => Err(CliError::syntax(pos, format!("expected an expression, found {}", t.describe()))),
        }
    }

    fn dexpr(&mut self) -> Result<Derivation> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Derivation> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.term()?);
        }
        if let Some(d) = self.derivation_at(0)? {
            self.bump();
            return Ok(d);
        }
        let mut coeff = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    if let Some(d) = self.derivation_at(1)? {
                        self.bump();
                        self.bump();
                        return Ok(d.scale(&coeff));
                    }
                    self.bump();
                    coeff = &coeff * &self.unary()?;
                }
                Tok::Slash => coeff = self.divide(coeff)?,
                t => {
                    return Err(CliError::syntax(
                        self.pos(),
                        format!("expected `*` and a derivative such as `d{}`, found {}", self.vars[0], t.describe()),
                    ))
                }
            }
        }
    }

    fn session(mut self) -> Result<Session> {
        let mut algebras: IndexMap<String, Vec<String>> = IndexMap::new();
        while *self.peek() != Tok::Eof {
            let (name, pos) = self.expect_ident()?;
            if name == "vars" {
                if !self.defs.is_empty() || !algebras.is_empty() {
                    return Err(CliError::syntax(pos, "`vars` must precede all definitions"));
                }
                loop {
                    let (v, vpos) = self.expect_ident()?;
                    if RESERVED.contains(&v.as_str()) || v.starts_with('d') {
                        return Err(CliError::syntax(
                            vpos,
                            format!("`{v}` cannot name a variable (reserved, or begins with `d`)"),
                        ));
                    }
                    if self.vars.contains(&v) {
                        return Err(CliError::syntax(vpos, format!("variable `{v}` declared twice")));
                    }
                    self.vars.push(v);
                    if *self.peek() != Tok::Comma {
                        break;
                    }
                    self.bump();
                }
                self.expect(Tok::Semi)?;
                continue;
            }
            if self.vars.is_empty() {
                return Err(CliError::syntax(pos, "declare variables with `vars` before definitions"));
            }
            if RESERVED.contains(&name.as_str()) || self.vars.contains(&name) {
                return Err(CliError::syntax(pos, format!("`{name}` cannot be used as a definition name")));
            }
            if self.defs.contains_key(&name) || algebras.contains_key(&name) {
                return Err(CliError::syntax(pos, format!("`{name}` is defined twice")));
            }
            self.expect(Tok::Eq)?;
            if *self.peek() == Tok::Ident("algebra".into()) && *self.peek_at(1) == Tok::LParen {
                self.bump();
                self.bump();
                let mut members = Vec::new();
                loop {
                    let (m, mpos) = self.expect_ident()?;
                    if !self.defs.contains_key(&m) {
                        return Err(CliError::UndefinedName { pos: mpos, name: m });
                    }
                    members.push(m);
                    if *self.peek() != Tok::Comma {
                        break;
                    }
                    self.bump();
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Semi)?;
                algebras.insert(name, members);
            } else {
                let d = self.dexpr()?;
                self.expect(Tok::Semi)?;
                self.defs.insert(name, d);
            }
        }
        Ok(Session::from_parts(self.vars, self.defs, algebras))
    }
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<Session> {
    Parser::new(text, Vec::new())?.session()
}

/// Parses a rational-function expression over `vars`.
pub fn parse_rexpr(text: &str, vars: &[String]) -> Result<RatFunc> {
    let mut p = Parser::new(text, vars.to_vec())?;
    let r = p.rexpr()?;
    p.finish()?;
    Ok(r)
}

/// Parses a derivation expression over `vars`.
pub fn parse_dexpr(text: &str, vars: &[String]) -> Result<Derivation> {
    if vars.is_empty() {
        return Err(CliError::Usage("a derivation needs at least one variable".into()));
    }
    let mut p = Parser::new(text, vars.to_vec())?;
    let d = p.dexpr()?;
    p.finish()?;
    Ok(d)
}
