//! Plain-text form: `x1^2+x2^2+x3^2-2*x1*x2*x3-1`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, SparsePoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

pub(crate) fn monomial_string(m: &Monomial) -> String {
    monomial_with(m, &default_names(m.nvars()))
}

fn monomial_with(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn magnitude(c: &Rational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl SparsePoly {
    pub fn to_pretty(&self) -> String {
        self.to_pretty_with(&default_names(self.nvars))
    }

    /// Terms in descending graded-lex order with the given variable names.
    pub fn to_pretty_with(&self, names: &[impl AsRef<str>]) -> String {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            if m.is_one() {
                out.push_str(&magnitude(c));
                continue;
            }
            if !c.abs().is_one() {
                out.push_str(&magnitude(c));
                out.push('*');
            }
            out.push_str(&monomial_with(m, &names));
        }
        out
    }

    /// Parses the text form over variables `x1 … xn`. With `nvars = None` the
    /// ring size is the largest index that appears (at least 1).
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<SparsePoly> {
        let n = match nvars {
            Some(n) => n,
            None => max_x_index(text).max(1),
        };
        Self::parse_with(text, &default_names(n))
    }

    /// Parses with an explicit variable-name list. Accepts `+ - * / ^`,
    /// parentheses, integer literals; division only by non-zero constants.
    pub fn parse_with(text: &str, names: &[impl AsRef<str>]) -> Result<SparsePoly> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            names: &names,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(value)
    }
}

fn max_x_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric()) {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = constant_value(&d)
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.error("division by a non-constant or zero"))?;
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = e
                .to_u32()
                .ok_or_else(|| self.error("exponent must be a small non-negative integer"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(SparsePoly::constant(self.nvars(), Rational::from_integer(v)))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let name = name.replace('_', "");
                match self.names.iter().position(|n| n.replace('_', "") == name) {
                    Some(i) => Ok(SparsePoly::var(self.nvars(), i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("unknown variable {name:?}")))
                    }
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

fn constant_value(p: &SparsePoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.len() == 1 {
        let (m, c) = p.terms.iter().next().unwrap();
        if m.is_one() {
            return Some(c.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn pretty_round_trip() {
        let src = "x1^2+x2^2+x3^2-2*x1*x2*x3-1";
        let p = SparsePoly::parse(src, None).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.to_pretty(), "-2*x1*x2*x3+x1^2+x2^2+x3^2-1");
        assert_eq!(SparsePoly::parse(&p.to_pretty(), Some(3)).unwrap(), p);
    }

    #[test]
    fn parser_features() {
        let p = SparsePoly::parse("(x1 - x2)^2 / 2 + 3/4", Some(2)).unwrap();
        assert_eq!(p.to_pretty(), "1/2*x1^2-x1*x2+1/2*x2^2+3/4");
        assert_eq!(p.coefficient(&[0, 0]), frac(3, 4));
        // Subscript spelling from typeset formulas.
        let q = SparsePoly::parse("x_1*x_2 - 1", Some(2)).unwrap();
        assert_eq!(q.to_pretty(), "x1*x2-1");
        assert_eq!(SparsePoly::parse("0", Some(2)).unwrap().to_pretty(), "0");
        assert!(SparsePoly::parse("x1 / x2", Some(2)).is_err());
        assert!(SparsePoly::parse("x3", Some(2)).is_err());
        assert!(SparsePoly::parse("x1 +", Some(2)).is_err());
        assert!(SparsePoly::parse("(x1", Some(2)).is_err());
        let r = SparsePoly::parse_with("r^2*r1 - r2*r3", &["r", "r1", "r2", "r3"]).unwrap();
        assert_eq!(r.to_pretty_with(&["r", "r1", "r2", "r3"]), "r^2*r1-r2*r3");
    }
}
