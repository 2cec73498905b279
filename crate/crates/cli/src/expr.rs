//! `novikov eval` expressions: bracketed series literals combined with
//! `+`, `-`, `*`, parentheses and `inv(EXPR, CUTOFF)`. A bare literal
//! without brackets is accepted as well.

use floer_core::novikov::parse_series;
use floer_core::{Exponent, ZSeries};
use num::BigRational;

#[derive(Debug)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

pub fn eval(src: &str) -> Result<ZSeries, ExprError> {
    if !src.contains('[') && !src.contains("inv") {
        return parse_series(src).map_err(|e| ExprError { column: e.column, message: e.message });
    }
    let chars: Vec<char> = src.chars().collect();
    let mut p = Parser { chars, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> ExprError {
        ExprError { column: self.pos + 1, message: message.to_string() }
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

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<ZSeries, ExprError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZSeries, ExprError> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ZSeries, ExprError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg_series());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ZSeries, ExprError> {
        match self.peek() {
            Some('[') => {
                let start = self.pos + 1;
                let Some(len) = self.chars[start..].iter().position(|&c| c == ']') else {
                    return Err(self.error("unclosed '['"));
                };
                let inner: String = self.chars[start..start + len].iter().collect();
                self.pos = start + len + 1;
                parse_series(&inner).map_err(|e| ExprError { column: start + e.column, message: e.message })
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('i') if self.chars[self.pos..].starts_with(&['i', 'n', 'v']) => {
                let at = self.error("");
                self.pos += 3;
                self.expect('(')?;
                let v = self.expr()?;
                self.expect(',')?;
                self.skip_ws();
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == '/' || *c == '-') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let cutoff: BigRational = text.parse().map_err(|_| ExprError { column: start + 1, message: "bad cutoff".into() })?;
                self.expect(')')?;
                v.invert(&Exponent(cutoff)).map_err(|e| ExprError { column: at.column, message: e.to_string() })
            }
            _ => Err(self.error("expected '[', '(' or 'inv'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(eval("[1 - t] * [1 + t]").unwrap().to_string(), "t^0 - t^2");
        assert_eq!(eval("inv([1 - t], 3)").unwrap().to_string(), "t^0 + t^1 + t^2 + O(t^3)");
        assert_eq!(eval("3t^1/2 - 2t^0").unwrap().to_string(), "-2t^0 + 3t^1/2");
    }

    #[test]
    fn error_columns() {
        assert_eq!(eval("[1 + t] * (").unwrap_err().column, 12);
        assert_eq!(eval("[1 + t^]").unwrap_err().column, 8);
    }
}
