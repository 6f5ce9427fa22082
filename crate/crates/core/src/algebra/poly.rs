use std::collections::BTreeMap;

use super::monomial::Monomial;
use crate::linalg::Prime;

/// Homogeneous polynomial over F_p. The zero polynomial keeps its nominal degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    p: Prime,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl HomogPoly {
    pub fn zero(p: Prime, nvars: usize, degree: u32) -> Self {
        HomogPoly { p, nvars, degree, terms: BTreeMap::new() }
    }

    /// `c * m`; the coefficient is reduced mod p.
    pub fn term(p: Prime, c: i64, m: Monomial) -> Self {
        let mut f = HomogPoly::zero(p, m.nvars(), m.degree());
        f.add_term(m, p.reduce(c));
        f
    }

    pub fn monomial(p: Prime, m: Monomial) -> Self {
        Self::term(p, 1, m)
    }

    pub fn var(p: Prime, nvars: usize, i: usize) -> Self {
        Self::monomial(p, Monomial::var(nvars, i))
    }

    /// Builds from `(coeff, exponents)` pairs; panics if degrees differ.
    pub fn from_terms(p: Prime, nvars: usize, terms: &[(i64, Vec<u16>)]) -> Self {
        let degree = terms.first().map_or(0, |t| t.1.iter().map(|&a| a as u32).sum());
        let mut f = HomogPoly::zero(p, nvars, degree);
        for (c, e) in terms {
            let m = Monomial::from_exps(e);
            assert_eq!(m.degree(), degree, "inhomogeneous term");
            f.add_term(m, p.reduce(*c));
        }
        f
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        debug_assert_eq!(m.degree(), self.degree);
        if c == 0 {
            return;
        }
        let p = self.p;
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = p.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Single-term polynomials generate monomial ideals.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading monomial in degrevlex.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> HomogPoly {
        let mut out = HomogPoly::zero(self.p, self.nvars, self.degree);
        for (m, v) in self.terms() {
            out.add_term(m.clone(), self.p.mul(v, c));
        }
        out
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        self.add(&other.scale(self.p.neg(1)))
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let mut out = HomogPoly::zero(self.p, self.nvars, self.degree + other.degree);
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                out.add_term(a.mul(b), self.p.mul(c, d));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> HomogPoly {
        let mut out = HomogPoly::zero(self.p, self.nvars, self.degree + m.degree());
        for (a, c) in self.terms() {
            out.add_term(a.mul(m), c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> HomogPoly {
        let mut acc = HomogPoly::monomial(self.p, Monomial::one(self.nvars));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x_i := images[i]` (linear forms in a new variable set).
    pub fn substitute(&self, images: &[HomogPoly]) -> HomogPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |f| f.nvars);
        let mut out = HomogPoly::zero(self.p, target, self.degree);
        for (m, c) in self.terms() {
            let mut prod = HomogPoly::term(self.p, c as i64, Monomial::one(target));
            for (i, &a) in m.exps().iter().enumerate() {
                if a > 0 {
                    prod = prod.mul(&images[i].pow(a as u32));
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Renders with variable names, highest degrevlex term first.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = self.p.signed(*c);
            let mono = m.fmt_with(names);
            let mag = s.unsigned_abs();
            let body = if mono == "1" {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (k, s < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = Prime::new(101).unwrap();
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let x = HomogPoly::var(p, 2, 0);
        let y = HomogPoly::var(p, 2, 1);
        let f = x.add(&y).pow(2);
        assert_eq!(f.fmt_with(&names), "x^2 + 2*x*y + y^2");
        let g = f.sub(&x.mul(&x));
        assert_eq!(g.fmt_with(&names), "2*x*y + y^2");
        assert_eq!(x.sub(&x).fmt_with(&names), "0");
        assert_eq!(x.scale(100).fmt_with(&names), "-x");
    }

    #[test]
    fn substitution() {
        let p = Prime::new(101).unwrap();
        // x*y with x := u, y := u + v  ->  u^2 + u*v
        let xy = HomogPoly::monomial(p, Monomial::from_exps(&[1, 1]));
        let u = HomogPoly::var(p, 2, 0);
        let v = HomogPoly::var(p, 2, 1);
        let r = xy.substitute(&[u.clone(), u.add(&v)]);
        assert_eq!(r, u.mul(&u).add(&u.mul(&v)));
    }
}
