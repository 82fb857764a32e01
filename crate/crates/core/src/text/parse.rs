//! Polynomial text grammar: rational constants, `+ - * / ^`, parentheses,
//! the variable (usually `x`) and generator symbols of a number-field tower.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{Field, NfElem, NumberField, Rational};
use crate::error::{Error, Result};
use crate::poly::{RationalFunction, UniPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            // `**` is accepted as a synonym for `^`
            if c == '*' && cs.get(i + 1) == Some(&'*') {
                out.push(Tok::Op('^'));
                i += 2;
                continue;
            }
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character '{c}' at offset {i}"
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Sym(String),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op(c @ ('*' | '/'))) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Bin(c, Box::new(lhs), Box::new(rhs));
                }
                // implicit multiplication: 2x, 3(x+1), (x+1)(x-1)
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let rhs = self.unary()?;
                    lhs = Ast::Bin('*', Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u64 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(Ast::Pow(Box::new(base), e));
                }
                other => {
                    return Err(Error::Parse(format!(
                        "expected a nonnegative integer exponent, found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Ast::Num(n)),
            Some(Tok::Ident(s)) => Ok(Ast::Sym(s)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Op(')')) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(e)
}

fn collect_symbols(a: &Ast, out: &mut Vec<String>) {
    match a {
        Ast::Num(_) => {}
        Ast::Sym(s) => {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        Ast::Neg(b) | Ast::Pow(b, _) => collect_symbols(b, out),
        Ast::Bin(_, l, r) => {
            collect_symbols(l, out);
            collect_symbols(r, out);
        }
    }
}

/// Identifiers occurring in an expression, in order of first appearance.
pub fn symbols(s: &str) -> Result<Vec<String>> {
    let mut out = vec![];
    collect_symbols(&parse_ast(s)?, &mut out);
    Ok(out)
}

fn eval(
    a: &Ast,
    var: &str,
    field: &Arc<NumberField>,
    gens: &[(String, NfElem)],
) -> Result<RationalFunction<NfElem>> {
    let z = field.zero();
    Ok(match a {
        Ast::Num(n) => {
            RationalFunction::constant(field.from_rational(&Rational::from_int(n.clone())))
        }
        Ast::Sym(s) if s == var => RationalFunction::x(&z),
        Ast::Sym(s) => match gens.iter().find(|(name, _)| name == s) {
            Some((_, g)) => RationalFunction::constant(g.clone()),
            None => return Err(Error::Parse(format!("unknown symbol '{s}'"))),
        },
        Ast::Neg(b) => eval(b, var, field, gens)?.neg(),
        Ast::Pow(b, e) => eval(b, var, field, gens)?.pow(*e),
        Ast::Bin(op, l, r) => {
            let l = eval(l, var, field, gens)?;
            let r = eval(r, var, field, gens)?;
            match op {
                '+' => l.add(&r),
                '-' => l.sub(&r),
                '*' => l.mul(&r),
                '/' => l
                    .div(&r)
                    .map_err(|_| Error::Parse("division by zero".into()))?,
                _ => unreachable!(),
            }
        }
    })
}

fn generator_bindings(field: &Arc<NumberField>) -> Vec<(String, NfElem)> {
    field
        .symbols()
        .into_iter()
        .zip(field.tower_generators())
        .collect()
}

/// Parses a rational function of `var` with coefficients in `field`.
pub fn parse_rational_function(
    s: &str,
    var: &str,
    field: &Arc<NumberField>,
) -> Result<RationalFunction<NfElem>> {
    eval(&parse_ast(s)?, var, field, &generator_bindings(field))
}

/// Parses a polynomial in `var` with coefficients in `field`.
pub fn parse_poly(s: &str, var: &str, field: &Arc<NumberField>) -> Result<UniPoly<NfElem>> {
    let f = parse_rational_function(s, var, field)?;
    if !f.is_polynomial() {
        return Err(Error::Parse(format!("'{s}' is not a polynomial in {var}")));
    }
    let c = f.den().coeff(0).inv()?;
    Ok(f.num().scale(&c))
}

/// Parses a field element (an expression without the variable).
pub fn parse_element(s: &str, field: &Arc<NumberField>) -> Result<NfElem> {
    let p = parse_poly(s, "\u{0}", field)?;
    Ok(p.coeff(0))
}

/// Builds a tower from defining polynomials, each in one new symbol over the
/// previously declared ones, e.g. `["a^2-2", "b^2-a"]`.
pub fn parse_tower(defs: &[String]) -> Result<Arc<NumberField>> {
    let mut field = NumberField::rationals();
    for d in defs {
        let known = field.symbols();
        let fresh: Vec<String> = symbols(d)?
            .into_iter()
            .filter(|s| !known.contains(s))
            .collect();
        if fresh.len() != 1 {
            return Err(Error::Parse(format!(
                "field definition '{d}' must introduce exactly one new symbol"
            )));
        }
        let m = parse_poly(d, &fresh[0], &field)?;
        field = field.adjoin(&m, &fresh[0]).map_err(|e| match e {
            Error::Reducible(_) => Error::Parse(format!("field definition '{d}' is reducible")),
            other => other,
        })?;
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_powers() {
        let q = NumberField::rationals();
        let p = parse_poly("x*(x-1)*(x-2)", "x", &q).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[0, 2, -3, 1], &q.zero()));
        let p = parse_poly("4x^5 - 10x^4 - 4*x^3 + 9x^2 + 6x + 1", "x", &q).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[1, 6, 9, -4, -10, 4], &q.zero()));
    }

    #[test]
    fn rational_coefficients() {
        let q = NumberField::rationals();
        let p = parse_poly("x/2 + 1/3", "x", &q).unwrap();
        assert_eq!(p.coeff(1), q.from_rational(&Rational::new(1, 2).unwrap()));
        assert_eq!(p.coeff(0), q.from_rational(&Rational::new(1, 3).unwrap()));
    }

    #[test]
    fn tower_symbols() {
        let k = parse_tower(&["a^2-2".into(), "b^2-a".into()]).unwrap();
        assert_eq!(k.degree(), 4);
        let e = parse_element("b^4", &k).unwrap();
        assert_eq!(e, k.from_int(2));
        assert!(parse_tower(&["a^2-1".into()]).is_err());
    }

    #[test]
    fn errors() {
        let q = NumberField::rationals();
        assert!(matches!(parse_poly("x +", "x", &q), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("1/x", "x", &q), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("y", "x", &q), Err(Error::Parse(_))));
        assert!(matches!(
            parse_poly("x ^ -1", "x", &q),
            Err(Error::Parse(_))
        ));
    }
}
