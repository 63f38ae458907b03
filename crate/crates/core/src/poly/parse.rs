use super::Poly;
use crate::error::{Error, Result};
use crate::exact::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::InvalidInput(format!(
                "unexpected character {c:?} in polynomial"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Tok::Op('/')) => {
                    self.bump();
                    let rhs = self.unary()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(Error::InvalidInput(
                            "division is only allowed by nonzero constants".into(),
                        ));
                    }
                    let c = rhs.coefficient(&vec![0; self.names.len()]);
                    acc = acc.scale(&c.recip());
                }
                // juxtaposition: "2x", "3(x+y)"
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                other => Err(Error::InvalidInput(format!(
                    "expected exponent, found {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Poly::constant(n, Rational::from_integer(v))),
            Some(Tok::Ident(name)) => match self.names.iter().position(|&x| x == name) {
                Some(i) => Ok(Poly::var(n, i)),
                None => Err(Error::InvalidInput(format!(
                    "unknown variable {name:?}; expected one of {:?}",
                    self.names
                ))),
            },
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::Op(')')) => Ok(e),
                    _ => Err(Error::InvalidInput("unbalanced parentheses".into())),
                }
            }
            other => Err(Error::InvalidInput(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `+ - * / ^ ( )`, integer literals and the given variable names.
/// Juxtaposition multiplies (`2x`, `3(x+y)`).
pub fn parse_poly(s: &str, names: &[&str]) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::InvalidInput(format!(
            "trailing input after position {} in {s:?}",
            p.pos
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_common_forms() {
        let names = ["x", "y"];
        let f = parse_poly("y^2 - x^3", &names).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&[3, 0]), -Rational::one());
        let g = parse_poly("2x(y + 1)/3", &names).unwrap();
        assert_eq!(g.coefficient(&[1, 1]), Rational::new(2.into(), 3.into()));
        assert!(parse_poly("-(x - x)", &names).unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let names = ["x", "y"];
        assert!(parse_poly("z + 1", &names).is_err());
        assert!(parse_poly("x / y", &names).is_err());
        assert!(parse_poly("(x + 1", &names).is_err());
        assert!(parse_poly("x ^ y", &names).is_err());
        assert!(parse_poly("", &names).is_err());
        assert!(parse_poly("x $ 2", &names).is_err());
    }
}
