//! The text input language: ring, ideal and point declarations.
//!
//! ```text
//! # comment
//! ring R vars x0 x1 x2 x3;
//! ideal TC = x0*x2-x1^2, x1*x3-x2^2, x0*x3-x1*x2;
//! point P = (1 : 0 : 2/3 : -1);
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElement, MonomialOrder, Polynomial, Ring};
use crate::groebner::Ideal;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (sl, sc) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: sl, col: sc });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: sl, col: sc });
        } else if ";,=():+-*^/".contains(c) {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym(c), line: sl, col: sc });
        } else {
            return err(sl, sc, format!("unexpected character '{c}'"));
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            err(t.line, t.col, format!("expected '{c}', found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            other => err(t.line, t.col, format!("expected a name, found {}", describe(&other))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (s, l, c) = self.ident()?;
        if s == kw {
            Ok(())
        } else {
            err(l, c, format!("expected '{kw}', found '{s}'"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok(v),
            other => err(t.line, t.col, format!("expected an integer, found {}", describe(&other))),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let t = self.peek().clone();
        let v = self.int()?;
        u32::try_from(&v)
            .ok()
            .filter(|&e| e <= u16::MAX as u32)
            .map_or_else(|| err(t.line, t.col, "exponent too large"), Ok)
    }

    /// `int` or `int/int`.
    fn rational(&mut self, field: Field) -> Result<FieldElement> {
        let t = self.peek().clone();
        let num = self.int()?;
        let den = if self.is_sym('/') {
            self.next();
            let d = self.peek().clone();
            let v = self.int()?;
            if v == BigInt::from(0) {
                return err(d.line, d.col, "zero denominator");
            }
            v
        } else {
            BigInt::from(1)
        };
        field.from_rational(&BigRational::new(num, den)).or_else(|e| err(t.line, t.col, e.to_string()))
    }

    fn poly(&mut self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let mut acc = ring.zero();
        let mut first = true;
        loop {
            let neg = if self.is_sym('+') || self.is_sym('-') {
                self.next().tok == Tok::Sym('-')
            } else if first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term(ring)?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
    }

    fn term(&mut self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let mut acc = self.factor(ring)?;
        while self.is_sym('*') {
            self.next();
            acc = acc.mul(&self.factor(ring)?);
        }
        Ok(acc)
    }

    fn factor(&mut self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let t = self.peek().clone();
        let base = match &t.tok {
            Tok::Int(_) => {
                let c = self.rational(ring.field())?;
                return Ok(Polynomial::constant(ring, c));
            }
            Tok::Ident(name) => {
                self.next();
                match ring.variable_index(name) {
                    Some(i) => ring.var(i),
                    None => return err(t.line, t.col, format!("undeclared variable '{name}'")),
                }
            }
            Tok::Sym('(') => {
                self.next();
                let p = self.poly(ring)?;
                self.expect_sym(')')?;
                p
            }
            other => {
                return err(
                    t.line,
                    t.col,
                    format!("expected a coefficient, variable or '(', found {}", describe(other)),
                )
            }
        };
        if self.is_sym('^') {
            self.next();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn end(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::Eof => Ok(()),
            other => err(t.line, t.col, format!("unexpected {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a single polynomial in `ring`.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0 };
    let f = p.poly(ring)?;
    p.end()?;
    Ok(f)
}

/// A parsed input file: one ring, then named ideals and points.
#[derive(Clone, Debug)]
pub struct InputModel {
    pub ring_name: String,
    pub ring: Arc<Ring>,
    pub ideals: Vec<(String, Ideal)>,
    pub points: Vec<(String, Vec<FieldElement>)>,
}

impl InputModel {
    pub fn new(ring_name: &str, ring: Arc<Ring>) -> InputModel {
        InputModel { ring_name: ring_name.into(), ring, ideals: Vec::new(), points: Vec::new() }
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn point(&self, name: &str) -> Option<&[FieldElement]> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p.as_slice())
    }

    /// The named ideal, or the only one when `name` is `None`.
    pub fn select_ideal(&self, name: Option<&str>) -> Result<&Ideal> {
        match name {
            Some(n) => self.ideal(n).ok_or_else(|| Error::InvalidArgument(format!("no ideal named '{n}'"))),
            None => match self.ideals.as_slice() {
                [(_, i)] => Ok(i),
                [] => Err(Error::InvalidArgument("input declares no ideal".into())),
                _ => Err(Error::InvalidArgument("input declares several ideals; choose one by name".into())),
            },
        }
    }

    fn name_taken(&self, name: &str) -> bool {
        name == self.ring_name || self.ideal(name).is_some() || self.point(name).is_some()
    }
}

impl fmt::Display for InputModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {} vars {};", self.ring_name, self.ring.vars().join(" "))?;
        for (name, ideal) in &self.ideals {
            let gens: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
            writeln!(f, "ideal {name} = {};", if gens.is_empty() { "0".to_string() } else { gens.join(", ") })?;
        }
        for (name, p) in &self.points {
            let cs: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            writeln!(f, "point {name} = ({});", cs.join(" : "))?;
        }
        Ok(())
    }
}

const RESERVED: [&str; 4] = ["ring", "vars", "ideal", "point"];

/// Parses an input file over `field`.
pub fn parse_input(text: &str, field: Field) -> Result<InputModel> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0 };
    let mut model: Option<InputModel> = None;
    loop {
        let t = p.peek().clone();
        if t.tok == Tok::Eof {
            break;
        }
        let (kw, line, col) = p.ident()?;
        match (kw.as_str(), &mut model) {
            ("ring", None) => {
                let (name, _, _) = p.ident()?;
                p.keyword("vars")?;
                let mut vars: Vec<String> = Vec::new();
                while let Tok::Ident(_) = p.peek().tok {
                    let (v, vl, vc) = p.ident()?;
                    if vars.contains(&v) || v == name || RESERVED.contains(&v.as_str()) {
                        return err(vl, vc, format!("variable name '{v}' is already in use"));
                    }
                    vars.push(v);
                }
                if vars.is_empty() {
                    let t = p.peek();
                    return err(t.line, t.col, "a ring needs at least one variable");
                }
                p.expect_sym(';')?;
                model = Some(InputModel::new(&name, Ring::new(vars, field, MonomialOrder::Grevlex)));
            }
            ("ring", Some(_)) => return err(line, col, "only one ring declaration is allowed"),
            ("ideal" | "point", None) => return err(line, col, "a ring must be declared first"),
            ("ideal", Some(m)) => {
                let (name, nl, nc) = p.ident()?;
                if m.name_taken(&name) || m.ring.variable_index(&name).is_some() {
                    return err(nl, nc, format!("name '{name}' is already declared"));
                }
                p.expect_sym('=')?;
                let mut gens = vec![p.poly(&m.ring)?];
                while p.is_sym(',') {
                    p.next();
                    gens.push(p.poly(&m.ring)?);
                }
                p.expect_sym(';')?;
                let ideal = Ideal::new(&m.ring, gens)?;
                m.ideals.push((name, ideal));
            }
            ("point", Some(m)) => {
                let (name, nl, nc) = p.ident()?;
                if m.name_taken(&name) || m.ring.variable_index(&name).is_some() {
                    return err(nl, nc, format!("name '{name}' is already declared"));
                }
                p.expect_sym('=')?;
                let open = p.peek().clone();
                p.expect_sym('(')?;
                let mut coords = Vec::new();
                loop {
                    let neg = if p.is_sym('-') {
                        p.next();
                        true
                    } else {
                        false
                    };
                    let c = p.rational(field)?;
                    coords.push(if neg { c.neg() } else { c });
                    if p.is_sym(':') {
                        p.next();
                    } else {
                        break;
                    }
                }
                p.expect_sym(')')?;
                p.expect_sym(';')?;
                if coords.len() != m.ring.nvars() {
                    return err(
                        open.line,
                        open.col,
                        format!("point has {} coordinates, ring has {} variables", coords.len(), m.ring.nvars()),
                    );
                }
                if coords.iter().all(FieldElement::is_zero) {
                    return err(open.line, open.col, "the zero vector is not a projective point");
                }
                m.points.push((name, coords));
            }
            _ => return err(line, col, format!("unknown statement '{kw}'")),
        }
    }
    model.ok_or_else(|| Error::Parse { line: 1, column: 1, message: "missing ring declaration".into() })
}
