//! Tokenizer and arithmetic-expression parser shared by the `.alg` reader and
//! [`RationalFunction::parse`].

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: [&str; 16] = [
    "->", "+", "-", "*", "/", "^", "(", ")", "[", "]", "{", "}", ",", ";", "=", ":",
];

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < bytes.len() {
        let c = bytes[i] as char;
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
        if c == '#' || (c == '/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                line,
                col,
                start,
                end: i,
            });
            col += i - start;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                line,
                col,
                start,
                end: i,
            });
            col += i - start;
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| text[i..].starts_with(**s));
        match sym {
            Some(s) => {
                i += s.len();
                out.push(Token {
                    tok: Tok::Sym(s),
                    line,
                    col,
                    start,
                    end: i,
                });
                col += s.len();
            }
            None => {
                return Err(Error::Parse {
                    line,
                    column: col,
                    expected: format!("a token, found '{c}'"),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
        start: bytes.len(),
        end: bytes.len(),
    });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    pub fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    pub fn advance(&mut self) -> &Token {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek().tok, Tok::Sym(t) if t == s)
    }

    pub fn is_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(t) if t == s)
    }

    pub fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Parse {
            line: t.line,
            column: t.col,
            expected: expected.to_string(),
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.is_sym(s) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("'{s}'")))
        }
    }

    pub fn expect_keyword(&mut self, k: &str) -> Result<()> {
        if self.is_ident(k) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("'{k}'")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error("a name")),
        }
    }

    /// A hyphenated word such as `check-axioms`; pieces must be adjacent.
    pub fn expect_word(&mut self) -> Result<String> {
        let mut word = self.expect_ident()?;
        loop {
            let dash = self.peek().clone();
            let next = self.peek_at(1).clone();
            let prev_end = self.toks[self.pos - 1].end;
            match (&dash.tok, &next.tok) {
                (Tok::Sym("-"), Tok::Ident(s)) if dash.start == prev_end && next.start == dash.end => {
                    word.push('-');
                    word.push_str(s);
                    self.advance();
                    self.advance();
                }
                _ => return Ok(word),
            }
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.advance();
                Ok(n)
            }
            _ => Err(self.error("an integer")),
        }
    }

    pub fn expect_usize(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let n = self.expect_int()?;
        usize::try_from(n).map_err(|_| Error::Parse {
            line: t.line,
            column: t.col,
            expected: "a small nonnegative integer".into(),
        })
    }
}

/// Recursive-descent parser for `+ - * / ^`, integer literals, names and
/// parentheses. Names are resolved by `resolve`; unknown names are errors.
pub fn parse_expr(
    cur: &mut Cursor<'_>,
    resolve: &dyn Fn(&str) -> Option<RationalFunction>,
) -> Result<RationalFunction> {
    let mut acc = parse_term(cur, resolve)?;
    loop {
        if cur.is_sym("+") {
            cur.advance();
            acc = &acc + &parse_term(cur, resolve)?;
        } else if cur.is_sym("-") {
            cur.advance();
            acc = &acc - &parse_term(cur, resolve)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(
    cur: &mut Cursor<'_>,
    resolve: &dyn Fn(&str) -> Option<RationalFunction>,
) -> Result<RationalFunction> {
    let mut acc = parse_unary(cur, resolve)?;
    loop {
        if cur.is_sym("*") {
            cur.advance();
            acc = &acc * &parse_unary(cur, resolve)?;
        } else if cur.is_sym("/") {
            let at = cur.peek().clone();
            cur.advance();
            let d = parse_unary(cur, resolve)?;
            acc = acc.div(&d).map_err(|_| Error::Semantic(format!(
                "division by zero at line {}, column {}",
                at.line, at.col
            )))?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_unary(
    cur: &mut Cursor<'_>,
    resolve: &dyn Fn(&str) -> Option<RationalFunction>,
) -> Result<RationalFunction> {
    if cur.is_sym("-") {
        cur.advance();
        return Ok(-parse_unary(cur, resolve)?);
    }
    if cur.is_sym("+") {
        cur.advance();
        return parse_unary(cur, resolve);
    }
    let base = parse_atom(cur, resolve)?;
    if cur.is_sym("^") {
        cur.advance();
        let neg = if cur.is_sym("-") {
            cur.advance();
            true
        } else {
            false
        };
        let at = cur.peek().clone();
        let e = cur.expect_int()?;
        let e = i32::try_from(e).map_err(|_| Error::Parse {
            line: at.line,
            column: at.col,
            expected: "a small exponent".into(),
        })?;
        let e = if neg { -e } else { e };
        return base.pow(e).map_err(|_| {
            Error::Semantic(format!(
                "negative power of zero at line {}, column {}",
                at.line, at.col
            ))
        });
    }
    Ok(base)
}

fn parse_atom(
    cur: &mut Cursor<'_>,
    resolve: &dyn Fn(&str) -> Option<RationalFunction>,
) -> Result<RationalFunction> {
    let t = cur.peek().clone();
    match &t.tok {
        Tok::Int(n) => {
            cur.advance();
            Ok(RationalFunction::constant(BigRational::from_integer(n.clone())))
        }
        Tok::Ident(name) => {
            cur.advance();
            resolve(name).ok_or_else(|| Error::UnknownCoordinate(name.clone()))
        }
        Tok::Sym("(") => {
            cur.advance();
            let e = parse_expr(cur, resolve)?;
            cur.expect_sym(")")?;
            Ok(e)
        }
        _ => Err(cur.error("an expression")),
    }
}

impl RationalFunction {
    /// Parses an expression over the given coordinate names.
    pub fn parse(text: &str, coords: &[&str]) -> Result<RationalFunction> {
        let toks = tokenize(text)?;
        let mut cur = Cursor::new(&toks);
        let resolve = |name: &str| {
            coords
                .iter()
                .any(|c| *c == name)
                .then(|| RationalFunction::var(name))
        };
        let e = parse_expr(&mut cur, &resolve)?;
        if !cur.at_eof() {
            return Err(cur.error("end of expression"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_arithmetic() {
        let e = RationalFunction::parse("(x1^2 - 1)/(x1 - 1)", &["x1"]).unwrap();
        assert_eq!(e, RationalFunction::parse("x1 + 1", &["x1"]).unwrap());
        let f = RationalFunction::parse("x1^-2", &["x1"]).unwrap();
        assert_eq!(f.to_string(), "(1)/(x1^2)");
        let g = RationalFunction::parse("-3/2*x2 + x1*x2", &["x1", "x2"]).unwrap();
        assert_eq!(g.to_string(), "x1*x2-3/2*x2");
    }

    #[test]
    fn display_round_trips() {
        let coords = ["x1", "x2", "x3"];
        for s in ["(x1*x2+3)/(x3-x1)", "-1/4*x1^3+x2", "(x1)/(x2^2+1)", "0"] {
            let e = RationalFunction::parse(s, &coords).unwrap();
            assert_eq!(RationalFunction::parse(&e.to_string(), &coords).unwrap(), e);
        }
    }

    #[test]
    fn rejects_unknown_names_and_bad_syntax() {
        assert!(matches!(
            RationalFunction::parse("x1 + y", &["x1"]),
            Err(Error::UnknownCoordinate(_))
        ));
        assert!(matches!(
            RationalFunction::parse("x1 + * 2", &["x1"]),
            Err(Error::Parse { line: 1, column: 6, .. })
        ));
    }
}
