//! Covariant expressions such as `(F,(F,F)_2)_3`, `H4*F` or `(H2,F^2)_10`.

use satseq_core::transvectant::transvect;
use satseq_core::{Covariant, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    F,
    /// `H_n = (F,F)_n`.
    H(u32),
    Trans(Box<Expr>, Box<Expr>, u32),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.power()?;
        while self.eat(b'*') {
            e = Expr::Mul(Box::new(e), Box::new(self.power()?));
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(a), self.number()?));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'F') => {
                self.pos += 1;
                Ok(Expr::F)
            }
            Some(b'H') => {
                self.pos += 1;
                Ok(Expr::H(self.number()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.product()?;
                if self.eat(b',') {
                    let b = self.product()?;
                    self.expect(b')')?;
                    self.expect(b'_')?;
                    let r = self.number()?;
                    Ok(Expr::Trans(Box::new(a), Box::new(b), r))
                } else {
                    self.expect(b')')?;
                    Ok(a)
                }
            }
            _ => Err(self.error("expected `F`, `H<n>` or `(`")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let clean: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        s: clean.as_bytes(),
        pos: 0,
    };
    let e = p.product()?;
    if p.pos != p.s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Evaluate with `F` bound to the given form.
pub fn evaluate(e: &Expr, f: &Covariant) -> Result<Covariant> {
    match e {
        Expr::F => Ok(f.clone()),
        Expr::H(n) => transvect(f, f, *n),
        Expr::Trans(a, b, r) => transvect(&evaluate(a, f)?, &evaluate(b, f)?, *r),
        Expr::Mul(a, b) => evaluate(a, f)?.try_mul(&evaluate(b, f)?),
        Expr::Pow(a, k) => Ok(evaluate(a, f)?.pow(*k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use satseq_core::transvectant::generic_form;

    #[test]
    fn parses_nested() {
        let e = parse("(F, (F,F)_2)_3").unwrap();
        assert_eq!(
            e,
            Expr::Trans(
                Box::new(Expr::F),
                Box::new(Expr::Trans(Box::new(Expr::F), Box::new(Expr::F), 2)),
                3
            )
        );
        assert_eq!(parse("(H2,F^2)_10").unwrap(), Expr::Trans(Box::new(Expr::H(2)), Box::new(Expr::Pow(Box::new(Expr::F), 2)), 10));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("(F,F)").is_err());
        assert!(parse("G").is_err());
        assert!(parse("F)").is_err());
    }

    #[test]
    fn evaluates_hessian() {
        let f = generic_form(4);
        let a = evaluate(&parse("H2").unwrap(), &f).unwrap();
        let b = evaluate(&parse("(F,F)_2").unwrap(), &f).unwrap();
        assert_eq!(a.body(), b.body());
        assert_eq!((a.degree(), a.order()), (2, 4));
    }
}
