use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::element::validate_monomial;
use super::monomial::{Exps, Letters};
use super::{Coeff, CurveLetter, Monomial, Rank, RingContext, RingElement};
use crate::{Error, Result};

/// Parses the ASCII element grammar against `ctx`.
///
/// ```text
/// element := term ("+" term)* | "0"
/// term    := [rational "*"] "[" letter ("|" letter)* "]" ["w^(" ints ")"] ["t^(" ints ")"]
/// letter  := one | a<k> | b<k> | pt
/// ```
pub fn parse(ctx: &Arc<RingContext>, text: &str) -> Result<RingElement> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.eat_str("0") {
        p.skip_ws();
        if p.at_end() {
            return Ok(RingElement::zero(ctx));
        }
        p.pos = 0;
        p.skip_ws();
    }
    let mut terms = Vec::new();
    loop {
        let start = p.pos;
        let (m, c) = p.term()?;
        if m.letters().len() != ctx.factors() {
            return Err(Error::Syntax {
                position: start,
                message: format!("{} letters, context has {} factors", m.letters().len(), ctx.factors()),
            });
        }
        validate_monomial(ctx, &m)?;
        terms.push((m, c));
        p.skip_ws();
        if p.at_end() {
            break;
        }
        p.expect(b'+')?;
    }
    Ok(RingElement::from_terms(ctx, terms))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn rational(&mut self) -> Result<Coeff> {
        self.skip_ws();
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let num: BigInt = self.digits()?.parse().unwrap();
        let den: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().unwrap();
            if d.is_zero() {
                return Err(Error::Syntax {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        let c = Coeff::new(num, den);
        Ok(if negative { -c } else { c })
    }

    fn term(&mut self) -> Result<(Monomial, Coeff)> {
        self.skip_ws();
        let coeff = if self.peek() == Some(b'[') {
            Coeff::one()
        } else {
            let c = self.rational()?;
            self.expect(b'*')?;
            c
        };
        self.expect(b'[')?;
        let mut letters = Letters::new();
        loop {
            self.skip_ws();
            letters.push(self.letter()?);
            self.skip_ws();
            match self.peek() {
                Some(b'|') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected `|` or `]`"),
            }
        }
        self.skip_ws();
        let omega: Exps = if self.eat_str("w^(") {
            let at = self.pos;
            let v = self.ints()?;
            if v.len() != letters.len() {
                return Err(Error::Syntax {
                    position: at,
                    message: format!("ω vector has {} entries, expected {}", v.len(), letters.len()),
                });
            }
            v
        } else {
            SmallVec::from_elem(0, letters.len())
        };
        self.skip_ws();
        let t: Exps = if self.eat_str("t^(") { self.ints()? } else { Exps::new() };
        Ok((Monomial::from_parts(letters, omega, t), coeff))
    }

    fn ints(&mut self) -> Result<Exps> {
        let mut out = Exps::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let value: u16 = self.digits()?.parse().map_err(|_| Error::Syntax {
                position: at,
                message: "exponent too large".into(),
            })?;
            out.push(value);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err("expected `,` or `)`"),
            }
        }
    }

    fn letter(&mut self) -> Result<CurveLetter> {
        if self.eat_str("one") {
            return Ok(CurveLetter::Unit);
        }
        if self.eat_str("pt") {
            return Ok(CurveLetter::Point);
        }
        let kind = self.peek();
        if matches!(kind, Some(b'a') | Some(b'b')) {
            self.pos += 1;
            let at = self.pos;
            let k: u16 = self.digits()?.parse().map_err(|_| Error::Syntax {
                position: at,
                message: "letter index too large".into(),
            })?;
            return Ok(if kind == Some(b'a') {
                CurveLetter::Alpha(k)
            } else {
                CurveLetter::Beta(k)
            });
        }
        self.err("expected a letter (one, a<k>, b<k>, pt)")
    }
}

fn write_vec(f: &mut fmt::Formatter<'_>, prefix: &str, v: &[u16]) -> fmt::Result {
    f.write_str(prefix)?;
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let t_len = match self.ctx().rank() {
            Rank::Finite(r) => Some(r as usize),
            Rank::Unbounded => None,
        };
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * [")?;
            for (k, l) in m.letters().iter().enumerate() {
                if k > 0 {
                    f.write_str("|")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("]")?;
            if m.omega_exp().iter().any(|&e| e != 0) {
                write_vec(f, " w^(", m.omega_exp())?;
            }
            if !m.t_exp().is_empty() {
                let mut t = m.t_exp().to_vec();
                if let Some(len) = t_len {
                    t.resize(len.max(t.len()), 0);
                }
                write_vec(f, " t^(", &t)?;
            }
        }
        Ok(())
    }
}
