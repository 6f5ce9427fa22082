//! Parser for the ring-spec text format:
//!
//! ```text
//! ring R { prime = 101; vars = x, y; ideal = x^2, y^2; }
//! ```
//!
//! Polynomials are signed integer-coefficient sums of monomials written with
//! `*` and `^`. A file may hold several `ring` blocks. `ideal = 0` is the zero
//! ideal; `prime` defaults to 32003 when omitted.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::monomial::Monomial;
use super::poly::HomogPoly;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::linalg::Prime;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    start: usize,
    end: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let mut j = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            Tok::Ident(chars[i..j].iter().map(|p| p.1).collect())
        } else if c.is_ascii_digit() {
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            Tok::Int(chars[i..j].iter().map(|p| p.1).collect())
        } else if "{};=,+-*^".contains(c) {
            j += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax { line, col, msg: format!("unexpected character {c:?}") });
        };
        let end = chars.get(j).map_or(text.len(), |p| p.0);
        col += j - i;
        out.push(Token { tok, line: start_line, col: start_col, start: pos, end });
        i = j;
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    default_prime: Prime,
}

impl<'a> Parser<'a> {
    fn err_here(&self, msg: impl Into<String>) -> Error {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => {
                let line = self.text.lines().count().max(1);
                let col = self.text.lines().last().map_or(0, |l| l.chars().count()) + 1;
                (line, col)
            }
        };
        Error::Syntax { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here(format!("expected '{c}'"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err_here("expected identifier")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse().map_err(|_| self.err_here("bad integer"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err_here("expected integer")),
        }
    }

    fn ring(&mut self) -> Result<RingSpec> {
        match self.next() {
            Some(Tok::Ident(k)) if k == "ring" => {}
            _ => {
                self.pos -= 1;
                return Err(self.err_here("expected 'ring'"));
            }
        }
        let name = self.ident()?;
        self.expect_sym('{')?;
        let mut prime = None;
        let mut vars: Option<Vec<String>> = None;
        let mut gens = Vec::new();
        loop {
            if let Some(Tok::Sym('}')) = self.peek() {
                self.pos += 1;
                break;
            }
            let key_pos = self.pos;
            let key = self.ident()?;
            self.expect_sym('=')?;
            match key.as_str() {
                "prime" => {
                    let v = self.int()?;
                    let v = v.to_u64().ok_or(Error::NotPrime(u64::MAX))?;
                    prime = Some(Prime::new(v)?);
                }
                "vars" => {
                    let mut vs = vec![self.ident()?];
                    while let Some(Tok::Sym(',')) = self.peek() {
                        self.pos += 1;
                        let at = self.pos;
                        let v = self.ident()?;
                        if vs.contains(&v) {
                            self.pos = at;
                            return Err(self.err_here(format!("duplicate variable {v}")));
                        }
                        vs.push(v);
                    }
                    vars = Some(vs);
                }
                "ideal" => {
                    let Some(vs) = vars.as_ref() else {
                        self.pos = key_pos;
                        return Err(self.err_here("'vars' must precede 'ideal'"));
                    };
                    let p = prime.unwrap_or(self.default_prime);
                    let mut index = 0;
                    loop {
                        if let Some(g) = self.poly(p, vs, index)? {
                            gens.push(g);
                        }
                        index += 1;
                        match self.peek() {
                            Some(Tok::Sym(',')) => self.pos += 1,
                            _ => break,
                        }
                    }
                }
                other => {
                    self.pos = key_pos;
                    return Err(self.err_here(format!("unknown key '{other}'")));
                }
            }
            self.expect_sym(';')?;
        }
        let vars = vars.ok_or_else(|| self.err_here("ring has no 'vars'"))?;
        RingSpec::new(name, prime.unwrap_or(self.default_prime), vars, gens)
    }

    /// Parses one generator; `None` for the literal zero polynomial.
    fn poly(&mut self, p: Prime, vars: &[String], index: usize) -> Result<Option<HomogPoly>> {
        let e = vars.len();
        let mut terms: Vec<(BigInt, Monomial, usize, usize)> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::from(1);
            match self.peek() {
                Some(Tok::Sym('+')) => self.pos += 1,
                Some(Tok::Sym('-')) => {
                    sign = BigInt::from(-1);
                    self.pos += 1;
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            let start = self.toks.get(self.pos).map_or(self.text.len(), |t| t.start);
            let mut coeff = sign;
            let mut exps = vec![0u16; e];
            loop {
                match self.peek() {
                    Some(Tok::Int(_)) => coeff *= self.int()?,
                    Some(Tok::Ident(name)) => {
                        let Some(i) = vars.iter().position(|v| v == name) else {
                            return Err(self.err_here(format!("unknown variable {name}")));
                        };
                        self.pos += 1;
                        let mut a = 1u16;
                        if let Some(Tok::Sym('^')) = self.peek() {
                            self.pos += 1;
                            a = self.int()?.to_u16().ok_or_else(|| self.err_here("exponent too large"))?;
                        }
                        exps[i] += a;
                    }
                    _ => return Err(self.err_here("expected coefficient or variable")),
                }
                match self.peek() {
                    Some(Tok::Sym('*')) => self.pos += 1,
                    _ => break,
                }
            }
            let end = self.toks[self.pos - 1].end;
            terms.push((coeff, Monomial::from_exps(&exps), start, end));
        }
        let modulus = BigInt::from(p.value());
        let reduce = |c: &BigInt| -> u32 {
            let r = ((c % &modulus) + &modulus) % &modulus;
            r.to_u32().unwrap()
        };
        let live: Vec<_> = terms.iter().filter(|t| reduce(&t.0) != 0).collect();
        let Some(first_term) = live.first() else {
            return Ok(None);
        };
        let degree = first_term.1.degree();
        let mut f = HomogPoly::zero(p, e, degree);
        for (c, m, start, end) in live {
            if m.degree() != degree {
                return Err(Error::NonHomogeneous {
                    generator: index,
                    term: self.text[*start..*end].trim().to_string(),
                    expected: degree,
                    found: m.degree(),
                });
            }
            f.add_term(m.clone(), reduce(c));
        }
        Ok(if f.is_zero() { None } else { Some(f) })
    }
}

/// Parses every `ring` block in `text`.
pub fn parse_ring_specs(text: &str) -> Result<Vec<RingSpec>> {
    parse_ring_specs_with_prime(text, Prime::default())
}

/// As [`parse_ring_specs`], with `default_prime` for blocks lacking `prime`.
pub fn parse_ring_specs_with_prime(text: &str, default_prime: Prime) -> Result<Vec<RingSpec>> {
    let mut parser = Parser { text, toks: tokenize(text)?, pos: 0, default_prime };
    let mut out = Vec::new();
    while parser.pos < parser.toks.len() {
        out.push(parser.ring()?);
    }
    Ok(out)
}

/// Parses a text holding exactly one `ring` block.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut rings = parse_ring_specs(text)?;
    match rings.len() {
        1 => Ok(rings.pop().unwrap()),
        n => Err(Error::BadRing(format!("expected one ring block, found {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ring() {
        let r = parse_ring_spec("ring R { prime = 101; vars = x, y; ideal = x^2, y^2; }").unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.gens().len(), 2);
        assert_eq!(r.prime().value(), 101);
        assert_eq!(r.to_string(), "ring R { prime = 101; vars = x, y; ideal = x^2, y^2; }");
    }

    #[test]
    fn non_homogeneous_reports_term() {
        let err = parse_ring_spec("ring R { prime = 101; vars = x, y; ideal = x^2 + y^3; }").unwrap_err();
        match err {
            Error::NonHomogeneous { term, expected, found, .. } => {
                assert_eq!(term, "y^3");
                assert_eq!((expected, found), (2, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn not_prime() {
        let err = parse_ring_spec("ring R { prime = 91; vars = x; ideal = x^2; }").unwrap_err();
        assert_eq!(err, Error::NotPrime(91));
    }

    #[test]
    fn duplicate_vars_and_syntax_positions() {
        let err = parse_ring_spec("ring R { vars = x, x; ideal = x^2; }").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 20, .. }), "{err:?}");
        let err = parse_ring_spec("ring R {\n  vars = x, y;\n  ideal = x^2 +* y;\n}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, col: 16, .. }), "{err:?}");
    }

    #[test]
    fn coefficients_and_zero_ideal() {
        let r = parse_ring_spec("ring R { prime = 7; vars = u1, u2; ideal = 3*u1^2 + 8*u1*u2 - u2*u2, 7*u1^3; }").unwrap();
        assert_eq!(r.gens().len(), 1);
        assert_eq!(r.fmt_poly(&r.gens()[0]), "3*u1^2 + u1*u2 - u2^2");
        let z = parse_ring_spec("ring Z { vars = a, b, c; ideal = 0; }").unwrap();
        assert!(z.is_zero_ideal());
        assert_eq!(z.prime().value(), 32003);
    }

    #[test]
    fn several_blocks_roundtrip() {
        let text = "ring R { prime = 5; vars = x; ideal = x^2; }\n# comment\nring S { prime = 5; vars = x; ideal = x; }";
        let rings = parse_ring_specs(text).unwrap();
        assert_eq!(rings.len(), 2);
        let again = parse_ring_specs(&format!("{}\n{}", rings[0], rings[1])).unwrap();
        assert_eq!(again, rings);
    }
}
