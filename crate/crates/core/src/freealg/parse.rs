//! Concrete syntax for decorated nonassociative polynomials.
//!
//! Grammar (whitespace free between tokens):
//!
//! ```text
//! sum      := term (('+' | '-') term)*
//! term     := [rational '*'] factor
//! factor   := atom | atom '*' atom | '[' sum ',' sum ']'
//! atom     := var | '(' sum ')'
//! var      := 'x' digits [ '^h' digits | '^(' label ')' ]
//! rational := ['-'] digits ['/' digits]
//! ```
//!
//! Products of three or more factors must be bracketed explicitly —
//! `x1*x2*x3` is rejected, because in a nonassociative algebra it does not
//! name a single element. `[p, q]` is sugar for `p*q - q*p`. Variable
//! indices and `^h` decoration indices are 1-based in the syntax (the first
//! basis element of the acting algebra is `^h1`).
//!
//! Printing inverts parsing: `print(parse(text))` reparses to an equal
//! polynomial. The zero polynomial prints as `0`, which the parser accepts
//! as a special case (the grammar proper has no constants).

use super::{Decoration, DecorationAlphabet, HPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational};
use num::{One, Signed};
use std::fmt;

/// Parse an expression against an alphabet of admissible decorations.
pub fn parse_polynomial(text: &str, alphabet: &DecorationAlphabet) -> Result<HPolynomial> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    p.skip_ws();
    // Special case: a lone "0" denotes the zero polynomial.
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(HPolynomial::zero());
        }
        p.pos = save;
    }
    let sum = p.parse_sum()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected character {:?} after expression", c as char)));
    }
    Ok(sum)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    alphabet: &'a DecorationAlphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!(
                "expected {:?}, found {}",
                c as char,
                self.peek()
                    .map_or("end of input".to_string(), |b| format!("{:?}", b as char))
            )))
        }
    }

    fn parse_sum(&mut self) -> Result<HPolynomial> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<HPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let coeff = self.parse_rational()?;
                self.skip_ws();
                self.expect(b'*')?;
                let factor = self.parse_factor()?;
                Ok(factor.scale(&coeff))
            }
            _ => self.parse_factor(),
        }
    }

    fn parse_factor(&mut self) -> Result<HPolynomial> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let left = self.parse_sum()?;
            self.skip_ws();
            self.expect(b',')?;
            let right = self.parse_sum()?;
            self.skip_ws();
            self.expect(b']')?;
            return Ok(left.mul(&right).sub(&right.mul(&left)));
        }
        let first = self.parse_atom()?;
        self.skip_ws();
        if self.peek() != Some(b'*') {
            return Ok(first);
        }
        self.pos += 1;
        let second = self.parse_atom()?;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            return Err(self.err(
                "products of three or more factors are ambiguous; add explicit brackets"
                    .to_string(),
            ));
        }
        Ok(first.mul(&second))
    }

    fn parse_atom(&mut self) -> Result<HPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'x') => Ok(HPolynomial::from_monomial(self.parse_var()?)),
            Some(c) => Err(self.err(format!(
                "expected a variable, '(' or '[', found {:?}",
                c as char
            ))),
            None => Err(self.err("expected a variable, '(' or '[', found end of input".into())),
        }
    }

    fn parse_var(&mut self) -> Result<Monomial> {
        self.expect(b'x')?;
        let var = self.parse_digits("variable index")?;
        if var == 0 {
            return Err(self.err("variable indices start at x1".to_string()));
        }
        let decoration = if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'h') => {
                    self.pos += 1;
                    let j = self.parse_digits("acting-basis index")?;
                    if j == 0 {
                        return Err(self.err("acting-basis indices start at ^h1".to_string()));
                    }
                    Decoration::HBasis(j - 1)
                }
                Some(b'(') => {
                    self.pos += 1;
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c != b')' && !c.is_ascii_whitespace()) {
                        self.pos += 1;
                    }
                    if self.pos == start {
                        return Err(self.err("empty grade label".to_string()));
                    }
                    let label =
                        std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
                    let label = label.to_string();
                    self.expect(b')')?;
                    Decoration::Grade(label)
                }
                _ => {
                    return Err(self.err(
                        "expected 'h' followed by digits or a parenthesized grade label after '^'"
                            .to_string(),
                    ))
                }
            }
        } else {
            Decoration::None
        };
        if !self.alphabet.permits(&decoration) {
            return Err(Error::UnknownDecoration {
                decoration: decoration_suffix(&decoration),
                detail: format!(
                    "admissible decorations here: {}",
                    if self.alphabet.options() == [Decoration::None] {
                        "none (plain variables only)".to_string()
                    } else {
                        self.alphabet
                            .options()
                            .iter()
                            .map(decoration_suffix)
                            .collect::<Vec<_>>()
                            .join(", ")
                    }
                ),
            });
        }
        Ok(Monomial::Leaf { var, decoration })
    }

    fn parse_digits(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(format!("expected digits for {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<usize>()
            .map_err(|e| self.err(format!("{what} out of range: {e}")))
    }

    fn parse_rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        parse_rational(text).map_err(|e| Error::Parse {
            pos: start,
            msg: format!("{e}"),
        })
    }
}

/// The `^...` suffix a decoration prints as (1-based for acting-basis
/// indices, mirroring the input syntax).
fn decoration_suffix(d: &Decoration) -> String {
    match d {
        Decoration::None => String::new(),
        Decoration::HBasis(j) => format!("^h{}", j + 1),
        Decoration::Grade(t) => format!("^({t})"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match m {
                Monomial::Leaf { .. } => write!(f, "{m}"),
                Monomial::Product(..) => write!(f, "({m})"),
            }
        }
        match self {
            Monomial::Leaf { var, decoration } => {
                write!(f, "x{var}{}", decoration_suffix(decoration))
            }
            Monomial::Product(l, r) => {
                child(l, f)?;
                write!(f, "*")?;
                child(r, f)
            }
        }
    }
}

impl fmt::Display for HPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (sep, shown) = if k == 0 {
                ("", c.clone())
            } else if c.is_negative() {
                (" - ", -c.clone())
            } else {
                (" + ", c.clone())
            };
            write!(f, "{sep}")?;
            if shown.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&shown))?;
            }
        }
        Ok(())
    }
}
