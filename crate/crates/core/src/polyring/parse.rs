use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MPoly, Mono, Names, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a Names,
}

/// `c * z^k`, the only kind of polynomial that may be inverted.
fn as_z_monomial(p: &MPoly) -> Option<(Q, i32)> {
    if p.len() != 1 {
        return None;
    }
    let (m, c) = p.terms().next()?;
    (m.x().is_empty() && m.s().is_empty()).then(|| (c.clone(), m.z()))
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                match as_z_monomial(&d) {
                    Some((c, k)) if !c.is_zero() => {
                        acc = acc.mul_z(-k).scale(&(Q::one() / c));
                    }
                    _ => return Err(Error::Syntax { pos: at, msg: "division only by a nonzero constant or power of z".into() }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let v = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                i64::try_from(n).or_else(|_| self.err("exponent too large"))?
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected `)`");
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let e = self.exponent()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        match as_z_monomial(&base) {
            Some((c, k)) if !c.is_zero() => {
                let c = num_traits::pow(Q::one() / c, (-e) as usize);
                Ok(MPoly::term(Mono::new(vec![], vec![], k * e as i32), c))
            }
            _ => Err(Error::Syntax { pos: at, msg: "negative exponents are only allowed on z".into() }),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(k) = self.names.x.iter().position(|v| *v == name) {
                    Ok(MPoly::x_var(k))
                } else if let Some(a) = self.names.s.iter().position(|v| *v == name) {
                    Ok(MPoly::s_var(a))
                } else if name == self.names.z {
                    Ok(MPoly::z_pow(1))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => self.err("expected number, variable or `(`"),
        }
    }
}

/// Parses `+ - * / ^` expressions over the declared variables.
pub fn parse_poly(text: &str, names: &Names) -> Result<MPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), names };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q, qi};

    fn names() -> Names {
        Names::standard(2, 2)
    }

    #[test]
    fn parses_examples() {
        let f = parse_poly("x1^3 + x1*x2^3", &names()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(&Mono::new(vec![1, 3], vec![], 0)), qi(1));
        assert!(parse_poly("0", &names()).unwrap().is_zero());
        let a2 = parse_poly("(1/3)*x1^3 + s2*x1 + s1", &names()).unwrap();
        assert_eq!(a2.coeff(&Mono::new(vec![3], vec![], 0)), q(1, 3));
        assert_eq!(a2.coeff(&Mono::new(vec![1], vec![0, 1], 0)), qi(1));
        let l = parse_poly("z^-2*x1 - x2/z", &names()).unwrap();
        assert_eq!(l.coeff(&Mono::new(vec![1], vec![], -2)), qi(1));
        assert_eq!(l.coeff(&Mono::new(vec![0, 1], vec![], -1)), qi(-1));
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_poly("x1 + y", &names()), Err(Error::UnknownVariable(v)) if v == "y"));
        assert!(matches!(parse_poly("x1 + * x2", &names()), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("x1^-1", &names()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x1", &names()), Err(Error::Syntax { .. })));
        assert!(parse_poly("x1/x2", &names()).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let n = names();
        for text in ["x1^3 + x1*x2^3", "-(2/9)*z + x1^3", "s1*s2^2*z^(-3) - 7/5", "0"] {
            let p = parse_poly(text, &n).unwrap();
            let printed = p.display(&n).to_string();
            assert_eq!(parse_poly(&printed, &n).unwrap(), p, "{printed}");
        }
    }
}
