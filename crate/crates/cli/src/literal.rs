//! Element literals.
//!
//! ```text
//! expr   = [sign] term { sign term } ;
//! sign   = "+" | "-" ;
//! term   = slot { "|" slot } ;
//! slot   = factor { ["*"] factor } ;
//! factor = number | "d" index [ "^" exponent ] | "g:" name ;
//! number = digits [ "/" digits ] ;
//! ```
//!
//! `d{i}^{e}` is the divided power `d_i^e / e!`; factors of a slot are multiplied left to
//! right, so `d1^2 d2 g:g` is the basis monomial printed the same way.

use pseudoalg::hopf::{HElem, HopfAlgebra};
use pseudoalg::rational::{parse_rational, Q};
use pseudoalg::tensor::TensorElem;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct LiteralError {
    /// One-based column in the literal.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Gen(usize, u32),
    Group(String),
    Plus,
    Minus,
    Star,
    Bar,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, LiteralError> {
    Err(LiteralError { column, message: message.into() })
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, LiteralError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '|' => {
                out.push((col, Tok::Bar));
                i += 1;
            }
            '0'..='9' => {
                let mut text = digits(&mut i);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let d = digits(&mut i);
                    if d.is_empty() {
                        return err(i + 1, "expected a denominator after `/`");
                    }
                    text = format!("{text}/{d}");
                }
                match parse_rational(&text) {
                    Some(q) => out.push((col, Tok::Num(q))),
                    None => return err(col, format!("invalid number `{text}`")),
                }
            }
            'd' => {
                i += 1;
                let idx = digits(&mut i);
                if idx.is_empty() {
                    return err(i + 1, "expected a generator index after `d`");
                }
                let idx: usize = idx.parse().map_err(|_| LiteralError { column: col, message: "index too large".into() })?;
                let mut exp = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let e = digits(&mut i);
                    if e.is_empty() {
                        return err(i + 1, "expected an exponent after `^`");
                    }
                    exp = e.parse().map_err(|_| LiteralError { column: col, message: "exponent too large".into() })?;
                }
                out.push((col, Tok::Gen(idx, exp)));
            }
            'g' if chars.get(i + 1) == Some(&':') => {
                i += 2;
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                if start == i {
                    return err(i + 1, "expected a group element name after `g:`");
                }
                out.push((col, Tok::Group(chars[start..i].iter().collect())));
            }
            other => return err(col, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    hopf: &'a HopfAlgebra,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end)
    }

    fn factor(&mut self) -> Result<Option<HElem>, LiteralError> {
        let col = self.column();
        let h = self.hopf;
        let f = match self.peek() {
            Some(Tok::Num(q)) => h.scalar(q.clone()),
            Some(Tok::Gen(i, e)) => {
                if *i == 0 || *i > h.n_gens() {
                    return err(col, format!("unknown generator d{i}; the Lie algebra has dimension {}", h.n_gens()));
                }
                let mut exps = vec![0; h.n_gens()];
                exps[i - 1] = *e;
                HElem::from_mono(h.mono(&exps, h.group().identity()))
            }
            Some(Tok::Group(name)) => match h.group().index_of(name) {
                Some(g) => h.group_elem(g),
                None => return err(col, format!("unknown group element `{name}`")),
            },
            _ => return Ok(None),
        };
        self.pos += 1;
        Ok(Some(f))
    }

    fn slot(&mut self) -> Result<HElem, LiteralError> {
        let col = self.column();
        let mut acc = match self.factor()? {
            Some(f) => f,
            None => return err(col, "expected a number, `d<i>` or `g:<name>`"),
        };
        loop {
            let star = self.peek() == Some(&Tok::Star);
            if star {
                self.pos += 1;
            }
            let col = self.column();
            match self.factor()? {
                Some(f) => acc = self.hopf.mul(&acc, &f),
                None if star => return err(col, "expected a factor after `*`"),
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<HElem>, LiteralError> {
        let mut slots = vec![self.slot()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            slots.push(self.slot()?);
        }
        Ok(slots)
    }

    fn expr(&mut self) -> Result<Vec<(Q, Vec<HElem>)>, LiteralError> {
        let mut terms = Vec::new();
        let mut sign = Q::from_integer(1.into());
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            terms.push((sign.clone(), self.term()?));
            match self.peek() {
                Some(Tok::Plus) => sign = Q::from_integer(1.into()),
                Some(Tok::Minus) => sign = Q::from_integer((-1).into()),
                None => return Ok(terms),
                Some(_) => return err(self.column(), "expected `+`, `-` or the end of the literal"),
            }
            self.pos += 1;
        }
    }
}

fn parse_terms(hopf: &HopfAlgebra, s: &str) -> Result<Vec<(Q, Vec<HElem>)>, LiteralError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return err(1, "empty literal");
    }
    let mut p = Parser { hopf, toks, pos: 0, end: s.chars().count() + 1 };
    p.expr()
}

/// An element of `H`.
pub fn parse_elem(hopf: &HopfAlgebra, s: &str) -> Result<HElem, LiteralError> {
    let mut out = HElem::zero();
    for (sign, slots) in parse_terms(hopf, s)? {
        if slots.len() != 1 {
            return err(1, "`|` is not allowed in an element of H");
        }
        out = out + slots[0].scale(&sign);
    }
    Ok(out)
}

/// An element of `H^{⊗ arity}`.
pub fn parse_tensor(hopf: &HopfAlgebra, arity: usize, s: &str) -> Result<TensorElem, LiteralError> {
    let mut out = TensorElem::zero(arity);
    for (sign, slots) in parse_terms(hopf, s)? {
        if slots.len() != arity {
            return err(1, format!("expected {arity} tensor slots, found {}", slots.len()));
        }
        out += &TensorElem::pure(&slots).scale(&sign);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pseudoalg::catalog;
    use pseudoalg::rational::{frac, q};

    #[test]
    fn divided_powers_and_products() {
        let h = catalog::polynomial2();
        let a = parse_elem(&h, "d1^2 d2").unwrap();
        assert_eq!(a, HElem::from_mono(h.mono(&[2, 1], 0)));
        let b = parse_elem(&h, "d1 d1").unwrap();
        assert_eq!(b, a.scale(&q(0)) + HElem::term(h.mono(&[2, 0], 0), q(2)));
        let c = parse_elem(&h, "-3 + 1/2*d1 - d2").unwrap();
        assert_eq!(h.fmt_elem(&c), "-3 + 1/2*d1 - d2");
        assert_eq!(parse_elem(&h, "2 * 1/4 d1").unwrap(), h.gen(0).scale(&frac(1, 2)));
    }

    #[test]
    fn errors_carry_columns() {
        let h = catalog::polynomial();
        assert_eq!(parse_elem(&h, "d1 + d3").unwrap_err().column, 6);
        assert_eq!(parse_elem(&h, "d1 +").unwrap_err().column, 5);
        assert!(parse_elem(&h, "").is_err());
        assert!(parse_elem(&h, "1/0").is_err());
        assert!(parse_elem(&h, "g:g").is_err());
        assert!(parse_tensor(&h, 2, "d1").is_err());
    }

    #[test]
    fn group_names_and_tensors() {
        let h = catalog::sign_smash();
        let t = parse_tensor(&h, 2, "2*d1 g:g | 1 - 1 | d1").unwrap();
        assert_eq!(parse_tensor(&h, 2, &h.fmt_tensor(&t)).unwrap(), t);
        // g d = -d g in the smash product
        assert_eq!(parse_elem(&h, "g:g d1").unwrap(), parse_elem(&h, "-d1 g:g").unwrap());
    }
}
