//! Integer polynomials in two variables `y` (internal degree) and `z`
//! (homological degree).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent pair; ordered by `z` first, then `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp {
    pub z: u32,
    pub y: u32,
}

impl Exp {
    pub fn new(y: u32, z: u32) -> Self {
        Exp { z, y }
    }
}

/// Sparse polynomial in ℤ[y, z] in canonical form (no zero coefficients).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * y^y_exp * z^z_exp`
    pub fn monomial<T: Into<BigInt>>(c: T, y_exp: u32, z_exp: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Exp::new(y_exp, z_exp), c.into());
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn yz() -> Self {
        Self::monomial(1, 1, 1)
    }

    /// Univariate polynomial in `z` from coefficients `c_0, c_1, ...`.
    pub fn from_z_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        let mut p = BiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Exp::new(0, i as u32), c.clone().into());
        }
        p
    }

    /// Builds from `(y_exp, z_exp, coeff)` triples, summing repeats.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, T)>,
        T: Into<BigInt>,
    {
        let mut p = BiPoly::zero();
        for (y, z, c) in terms {
            p.add_term(Exp::new(y, z), c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, y: u32, z: u32) -> BigInt {
        self.terms.get(&Exp::new(y, z)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    /// Highest power of `z`, or `None` for zero.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.z).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.y).max()
    }

    pub fn min_z(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.z).min()
    }

    pub fn min_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.y).min()
    }

    /// True when no term involves `y`.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|e| e.y == 0)
    }

    /// Coefficient of `z^k` as a polynomial in `y` (stored with z-exponent 0).
    pub fn z_coeff(&self, k: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in self.terms.range(Exp::new(0, k)..Exp::new(0, k + 1)) {
            out.terms.insert(Exp::new(e.y, 0), c.clone());
        }
        out
    }

    /// Coefficient list of a univariate polynomial, `c_0..=c_deg`.
    pub fn to_z_coeffs(&self) -> Vec<BigInt> {
        let deg = self.z_degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![BigInt::zero(); deg];
        for (e, c) in &self.terms {
            out[e.z as usize] += c;
        }
        out
    }

    /// Terms with `z`-exponent below `n`.
    pub fn truncate_z(&self, n: u32) -> BiPoly {
        BiPoly { terms: self.terms.range(..Exp::new(0, n)).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Multiplies by `y^dy z^dz`.
    pub fn shift(&self, dy: u32, dz: u32) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (Exp::new(e.y + dy, e.z + dz), c.clone())).collect(),
        }
    }

    /// Divides by `y^dy z^dz`; `None` if some term is not divisible.
    pub fn unshift(&self, dy: u32, dz: u32) -> Option<BiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.y < dy || e.z < dz {
                return None;
            }
            terms.insert(Exp::new(e.y - dy, e.z - dz), c.clone());
        }
        Some(BiPoly { terms })
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> BiPoly {
        let c = c.into();
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * &c)).collect() }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `y := value`, leaving a polynomial in `z`.
    pub fn eval_y(&self, value: &BigInt) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(Exp::new(0, e.z), c * num_traits::pow(value.clone(), e.y as usize));
        }
        out
    }

    /// Evaluates a univariate polynomial at `z := value` (y-terms use y = 1).
    pub fn eval_z(&self, value: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            acc += c * num_traits::pow(value.clone(), e.z as usize);
        }
        acc
    }

    /// Rewrites a univariate polynomial `p(t)` (stored in `z`) as `p(c * y * z)`.
    pub fn substitute_scaled_yz(&self, c: i64) -> BiPoly {
        let c = BigInt::from(c);
        let mut out = BiPoly::zero();
        for (e, v) in &self.terms {
            debug_assert_eq!(e.y, 0);
            out.add_term(Exp::new(e.z, e.z), v * num_traits::pow(c.clone(), e.z as usize));
        }
        out
    }

    /// Power-series inverse modulo `z^n`; requires constant term ±1.
    pub fn inverse_mod_z(&self, n: u32) -> Option<BiPoly> {
        let c0 = self.z_coeff(0);
        let unit = c0.terms.len() == 1 && c0.coeff(0, 0).abs().is_one();
        if !unit {
            return None;
        }
        let u = c0.coeff(0, 0);
        // inv_0 = u, inv_k = -u * sum_{i=1..k} d_i inv_{k-i}
        let d: Vec<BiPoly> = (0..n).map(|k| self.z_coeff(k)).collect();
        let mut inv: Vec<BiPoly> = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            if k == 0 {
                inv.push(BiPoly::constant(u.clone()));
                continue;
            }
            let mut acc = BiPoly::zero();
            for i in 1..=k {
                if !d[i].is_zero() && !inv[k - i].is_zero() {
                    acc = &acc + &(&d[i] * &inv[k - i]);
                }
            }
            inv.push(acc.scale(-u.clone()));
        }
        let mut out = BiPoly::zero();
        for (k, c) in inv.into_iter().enumerate() {
            for (e, v) in c.terms {
                out.add_term(Exp::new(e.y, k as u32), v);
            }
        }
        Some(out)
    }

    /// Exact division; `None` if `divisor` does not divide `self` or the
    /// divisor's `z^0` coefficient is not ±1.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dz = self.z_degree().unwrap();
        let vz = divisor.z_degree().unwrap();
        if vz > dz {
            return None;
        }
        let inv = divisor.inverse_mod_z(dz - vz + 1)?;
        let q = (self * &inv).truncate_z(dz - vz + 1);
        if &(&q * divisor) == self {
            Some(q)
        } else {
            None
        }
    }

    /// Integer content (gcd of coefficients), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<BiPoly> {
        use num_integer::Integer;
        let mut out = BiPoly::zero();
        for (e, v) in &self.terms {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.terms.insert(*e, q);
        }
        Some(out)
    }

    /// Sum of all coefficients as `i64` if it fits.
    pub fn coeff_sum_i64(&self) -> Option<i64> {
        self.terms.values().sum::<BigInt>().to_i64()
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_monomial(y: u32, z: u32) -> String {
    let mut parts = Vec::new();
    match y {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{y}")),
    }
    match z {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{z}")),
    }
    parts.join("*")
}

/// Terms in ascending `(z, y)` order, e.g. `1 - 3*y^2*z^2 + 2*y^3*z^3`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let mono = fmt_monomial(e.y, e.z);
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(Exp::new(a.y + b.y, a.z + b.z), c * d);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

/// `1 + c*y^dy*z^dz` style binomials used throughout the formulas.
pub fn binomial(c: i64, dy: u32, dz: u32) -> BiPoly {
    &BiPoly::one() + &BiPoly::monomial(c, dy, dz)
}
