use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{Alphabet, Element, Symbol, Word};
use crate::scalars::{CycNumber, Rational, ResidueVector};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    /// `a*`, lexed as one token so that `*` stays multiplication elsewhere.
    StarArrow,
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Underscore,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|c| c.1).collect();
            if s == "a" && k < chars.len() && chars[k].1 == '*' {
                k += 1;
                out.push((pos, Tok::StarArrow));
            } else {
                out.push((pos, Tok::Ident(s)));
            }
            continue;
        }
        let tok = match ch {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '_' => Tok::Underscore,
            _ => return Err(Error::Parse { pos, msg: format!("unexpected character '{ch}'") }),
        };
        out.push((pos, tok));
        k += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    alpha: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Tok::Int(v) => Ok(v),
            _ => {
                self.at -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let pos = self.pos();
        let v = self.int()?;
        i64::try_from(&v).map_err(|_| Error::Parse { pos, msg: "integer too large".into() })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let v = self.small_int()?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.int()?;
        if *self.peek() == Tok::Slash {
            self.bump();
            let pos = self.pos();
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::Parse { pos, msg: "zero denominator".into() });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn one(&self) -> CycNumber {
        self.alpha.setting().field().one()
    }

    /// Laurent polynomial in q inside parentheses.
    fn laurent(&mut self) -> Result<CycNumber> {
        let field = self.alpha.setting().field();
        let mut total = field.zero();
        let mut sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1
            }
            Tok::Plus => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let mut coeff = Rational::one();
            let mut have_coeff = false;
            if let Tok::Int(_) = self.peek() {
                coeff = self.rational()?;
                have_coeff = true;
                if *self.peek() == Tok::Star {
                    self.bump();
                }
            }
            let mut exp = 0i64;
            if *self.peek() == Tok::Ident("q".into()) {
                self.bump();
                exp = 1;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    exp = self.signed_int()?;
                }
            } else if !have_coeff {
                return self.err("expected a term of a polynomial in q");
            }
            let term = field.q_power(exp).scale(&coeff);
            total = if sign < 0 { total - term } else { total + term };
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(total)
    }

    fn coefficient(&mut self) -> Result<CycNumber> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let c = self.laurent()?;
            self.expect(Tok::RParen, "')' closing the coefficient")?;
            Ok(c)
        } else {
            let r = self.rational()?;
            Ok(self.alpha.setting().field().from_rational(r))
        }
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Tok::StarArrow => true,
            Tok::Ident(s) => matches!(s.as_str(), "e" | "a" | "E" | "F" | "K" | "Kinv" | "x"),
            _ => false,
        }
    }

    fn vertex(&mut self) -> Result<ResidueVector> {
        let setting = self.alpha.setting().clone();
        let pos = self.pos();
        let mut entries = vec![self.signed_int()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            entries.push(self.signed_int()?);
        }
        if entries.len() != setting.rank() {
            return Err(Error::Parse {
                pos,
                msg: format!("vertex has {} coordinates but the rank is {}", entries.len(), setting.rank()),
            });
        }
        Ok(ResidueVector::new(setting.n(), entries))
    }

    fn index(&mut self, limit: usize) -> Result<u8> {
        let pos = self.pos();
        let i = self.small_int()?;
        if i < 1 || i as usize > limit {
            return Err(Error::Parse { pos, msg: format!("index {i} out of range 1..{limit}") });
        }
        Ok((i - 1) as u8)
    }

    fn symbol_element(&self, sym: Symbol, pos: usize) -> Result<Element> {
        match self.alpha.id_of(sym) {
            Some(id) => Ok(Element::word(Word::letter(id, self.alpha.letter(id)), self.alpha.setting().field())),
            None => Err(Error::Parse { pos, msg: "generator does not belong to this algebra".into() }),
        }
    }

    fn unit(&self) -> Element {
        self.alpha.trivials().map(|w| (w, self.one())).collect()
    }

    fn base_factor(&mut self) -> Result<Element> {
        let pos = self.pos();
        let t = self.alpha.setting().rank();
        match self.bump() {
            Tok::StarArrow => {
                self.expect(Tok::LParen, "'('")?;
                let x = self.vertex()?;
                self.expect(Tok::Semi, "';'")?;
                let i = self.index(t)?;
                self.expect(Tok::RParen, "')'")?;
                let base = self.alpha.setting().vertex_id(&x);
                self.symbol_element(Symbol::Arrow { base, index: i, starred: true }, pos)
            }
            Tok::Ident(name) => match name.as_str() {
                "e" => {
                    if !self.alpha.is_quiver() {
                        return Err(Error::Parse { pos, msg: "trivial paths exist only in quiver algebras".into() });
                    }
                    self.expect(Tok::LParen, "'('")?;
                    let x = self.vertex()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Element::word(Word::trivial(self.alpha.setting().vertex_id(&x)), self.alpha.setting().field()))
                }
                "a" => {
                    self.expect(Tok::LParen, "'('")?;
                    let x = self.vertex()?;
                    self.expect(Tok::Semi, "';'")?;
                    let i = self.index(t)?;
                    self.expect(Tok::RParen, "')'")?;
                    let base = self.alpha.setting().vertex_id(&x);
                    self.symbol_element(Symbol::Arrow { base, index: i, starred: false }, pos)
                }
                "E" | "F" | "K" | "Kinv" | "x" => {
                    self.expect(Tok::Underscore, "'_'")?;
                    let limit = if name == "x" { self.alpha.len() } else { t };
                    let i = self.index(limit)?;
                    let sym = match name.as_str() {
                        "E" => Symbol::E(i),
                        "F" => Symbol::F(i),
                        "K" => Symbol::K(i),
                        "Kinv" => Symbol::Kinv(i),
                        _ => Symbol::Free(i),
                    };
                    self.symbol_element(sym, pos)
                }
                other => Err(Error::Parse { pos, msg: format!("unknown generator '{other}'") }),
            },
            _ => Err(Error::Parse { pos, msg: "expected a generator".into() }),
        }
    }

    fn factor(&mut self) -> Result<Element> {
        let base = self.base_factor()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let k = self.small_int()?;
            if k > 64 {
                return Err(Error::Parse { pos, msg: "exponent too large".into() });
            }
            let mut acc = self.unit();
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn factors(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        loop {
            if self.starts_factor() {
                acc = acc.mul(&self.factor()?);
            } else if *self.peek() == Tok::Star
                && matches!(self.peek2(), Tok::StarArrow | Tok::Ident(_))
            {
                self.bump();
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        if matches!(self.peek(), Tok::Int(_) | Tok::LParen) {
            let c = self.coefficient()?;
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok(self.factors()?.scaled(&c));
            }
            if self.starts_factor() {
                return Ok(self.factors()?.scaled(&c));
            }
            return Ok(self.unit().scaled(&c));
        }
        if self.starts_factor() {
            return self.factors();
        }
        self.err("expected a term")
    }

    fn element(&mut self) -> Result<Element> {
        let mut total = Element::zero();
        let mut negative = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negative = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            if negative {
                total.sub(&t);
            } else {
                total.add(&t);
            }
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                Tok::End => return Ok(total),
                _ => return self.err("expected '+', '-' or end of input"),
            }
            self.bump();
        }
    }
}

/// Parses an element over `alpha`. Juxtaposition (or `*`) multiplies, with
/// the rightmost factor applied first; non-composable products are zero.
pub fn parse_element(text: &str, alpha: &Alphabet) -> Result<Element> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, alpha };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    p.element()
}
