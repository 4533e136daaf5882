//! `--class` expressions: integers, `+ - * ^`, parentheses and `P1..Pn`.
//!
//! - `^` takes an integer exponent; negative powers need a monomial base
//! - `·` is accepted as a synonym for `*`
//! - errors carry the byte offset of the offending token

use qkgr_core::arith::int;
use qkgr_core::{Error, LaurentPoly, Mono, Result, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Var(u16),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(&(_, d)) = it.peek() {
                let Some(k) = d.to_digit(10) else { break };
                v = v.checked_mul(10).and_then(|v| v.checked_add(k as i64)).ok_or(Error::Parse {
                    pos,
                    msg: "integer literal too large".into(),
                })?;
                it.next();
            }
            out.push((pos, Tok::Int(v)));
        } else if c == 'P' {
            it.next();
            let mut idx = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                idx.push(d);
                it.next();
            }
            match idx.parse::<u16>() {
                Ok(i) if i >= 1 => out.push((pos, Tok::Var(i))),
                _ => return Err(Error::Parse { pos, msg: "expected a variable index after P".into() }),
            }
        } else if "+-*^()·".contains(c) {
            out.push((pos, Tok::Op(if c == '·' { '*' } else { c })));
            it.next();
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let neg = self.eat('-');
        let Some(Tok::Int(k)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.at += 1;
        let k = u32::try_from(k).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
        if !neg {
            return Ok(base.pow(k));
        }
        match base.monomial_inverse() {
            Some(inv) => Ok(inv.pow(k)),
            None => Err(Error::Parse { pos, msg: "negative power of a non-monomial".into() }),
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(LaurentPoly::constant(int(v)))
            }
            Some(Tok::Var(i)) => {
                if i as usize > self.n {
                    return self.err(&format!("P{i} outside P1..P{}", self.n));
                }
                self.at += 1;
                Ok(LaurentPoly::from_mono(Mono::var(Var::P(i))))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a class in `P1..Pn`.
pub fn parse_class(s: &str, n: usize) -> Result<LaurentPoly> {
    let mut p = Parser { toks: lex(s)?, at: 0, end: s.len(), n };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use qkgr_core::Monomial;

    fn pv(i: u16, e: i32) -> LaurentPoly {
        LaurentPoly::from_mono(Mono::from_monomial(Monomial::pow_var(Var::P(i), e)))
    }

    #[test]
    fn parses() {
        assert_eq!(parse_class("1", 1).unwrap(), LaurentPoly::one());
        assert_eq!(parse_class("P1^-1", 1).unwrap(), pv(1, -1));
        assert_eq!(parse_class("P1*P2", 2).unwrap(), pv(1, 1).mul(&pv(2, 1)));
        let e = parse_class("(P1 + P2)^2 - 2·P1*P2", 2).unwrap();
        assert_eq!(e, pv(1, 2).add(&pv(2, 2)));
        assert_eq!(parse_class("-(P1^-2)^-1", 1).unwrap(), pv(1, 2).neg());
    }

    #[derive(Clone, Debug)]
    enum Tree {
        Num(i64),
        Var(u16),
        Add(Box<Tree>, Box<Tree>),
        Sub(Box<Tree>, Box<Tree>),
        Mul(Box<Tree>, Box<Tree>),
        Pow(Box<Tree>, u32),
        Neg(Box<Tree>),
    }

    impl Tree {
        fn render(&self) -> String {
            match self {
                Tree::Num(v) => v.to_string(),
                Tree::Var(i) => format!("P{i}"),
                Tree::Add(a, b) => format!("({} + {})", a.render(), b.render()),
                Tree::Sub(a, b) => format!("({} - {})", a.render(), b.render()),
                Tree::Mul(a, b) => format!("{}*{}", a.render(), b.render()),
                Tree::Pow(a, k) => format!("({})^{k}", a.render()),
                Tree::Neg(a) => format!("-({})", a.render()),
            }
        }

        fn value(&self) -> LaurentPoly {
            match self {
                Tree::Num(v) => LaurentPoly::constant(int(*v)),
                Tree::Var(i) => pv(*i, 1),
                Tree::Add(a, b) => a.value().add(&b.value()),
                Tree::Sub(a, b) => a.value().sub(&b.value()),
                Tree::Mul(a, b) => a.value().mul(&b.value()),
                Tree::Pow(a, k) => a.value().pow(*k),
                Tree::Neg(a) => a.value().neg(),
            }
        }
    }

    fn tree() -> impl Strategy<Value = Tree> {
        let leaf = prop_oneof![(0i64..20).prop_map(Tree::Num), (1u16..=3).prop_map(Tree::Var)];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), 0u32..3).prop_map(|(a, k)| Tree::Pow(Box::new(a), k)),
                inner.prop_map(|a| Tree::Neg(Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn rendered_trees_parse_back(t in tree()) {
            prop_assert_eq!(parse_class(&t.render(), 3).unwrap(), t.value());
        }
    }

    #[test]
    fn reports_positions() {
        assert!(matches!(parse_class("P1 + x", 1), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_class("P3", 2), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_class("(1 + P1", 1), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_class("(1 + P1)^-1", 1), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse_class("P1 P1", 1), Err(Error::Parse { pos: 3, .. })));
    }
}
