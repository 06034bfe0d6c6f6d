//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! factor := base ["^" natural]
//! term   := factor ("*" factor)*
//! base   := natural | variable | "(" expr ")"
//! ```
//!
//! Variables match `[A-Za-z][A-Za-z0-9_]*`; there is no implicit
//! multiplication, so `xyz` is one variable while `x*y*z` is a product.

use num_traits::Num;

use crate::error::{Error, Result};
use crate::exact::{Int, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::Open));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::Close));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value = Int::from_str_radix(digits, 10)
                    .map_err(|e| Error::Parse(format!("bad integer `{digits}`: {e}")))?;
                tokens.push((start, Token::Number(value)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` at byte {i}"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.tokens.get(self.pos) {
            Some((at, t)) => Error::Parse(format!("expected {wanted} at byte {at}, found {t:?}")),
            None => Error::Parse(format!("expected {wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.next();
        match self.next() {
            Some(Token::Number(n)) => {
                let exp: u32 = n
                    .try_into()
                    .map_err(|_| Error::Parse("exponent does not fit in u32".to_string()))?;
                Ok(base.pow(exp))
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.unexpected("a natural-number exponent"))
            }
        }
    }

    fn base(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Token::Number(_)) => match self.next() {
                Some(Token::Number(n)) => Ok(MultiPoly::constant(n)),
                _ => unreachable!(),
            },
            Some(Token::Ident(_)) => match self.next() {
                Some(Token::Ident(name)) => Ok(MultiPoly::var(&name)),
                _ => unreachable!(),
            },
            Some(Token::Open) => {
                self.next();
                let inner = self.expr()?;
                if self.next() != Some(Token::Close) {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable, or `(`")),
        }
    }
}

pub(super) fn parse_poly(text: &str) -> Result<MultiPoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial text".to_string()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use crate::exact::{int, MultiPoly};

    fn p(text: &str) -> MultiPoly {
        MultiPoly::parse(text).unwrap()
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(p("54*x*y*z - 243").to_string(), "54*x*y*z - 243");
        assert_eq!(p("-2*a*b + 3*b + 10").to_string(), "-2*a*b + 3*b + 10");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(p("  54 * x*y\t*z-243\n"), p("54*x*y*z - 243"));
    }

    #[test]
    fn parentheses_and_powers() {
        assert_eq!(p("(x + y)^2"), p("x^2 + 2*x*y + y^2"));
        assert_eq!(p("2*(x - 1)*(x + 1)"), p("2*x^2 - 2"));
        assert_eq!(p("-(x - 1)"), p("1 - x"));
    }

    #[test]
    fn multi_character_names_are_single_variables() {
        let q = p("xyz + x*y*z");
        assert_eq!(q.vars(), ["x", "xyz", "y", "z"]);
        assert_eq!(q.coefficient(&[("xyz", 1)]), int(1));
    }

    #[test]
    fn underscore_and_digits_in_names() {
        assert_eq!(p("E_0^3").to_string(), "E_0^3");
        assert_eq!(p("t12*t3").vars(), ["t12", "t3"]);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "", "x +", "* x", "x ^ y", "x ^ -2", "(x", "x)", "3..", "x ** y", "@", "x y",
        ] {
            assert!(
                MultiPoly::parse(bad).is_err(),
                "`{bad}` should fail to parse"
            );
        }
    }

    #[test]
    fn big_literals_survive() {
        let q = p("123456789012345678901234567890*x");
        assert_eq!(
            q.to_string(),
            "123456789012345678901234567890*x"
        );
    }
}
