use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::bipoly::binomial;
use super::rational::RationalSeries;
use crate::error::{Error, Result};

/// Polynomial in one variable with rational coefficients, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Degree with `deg(0) = -1`.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(x.into());
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &QPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        QPoly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&QPoly::new(other.0.iter().map(|c| -c).collect()))
    }
}

/// Highest degree first, in `x`, e.g. `1/2*x + 1`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            let neg = c.is_negative();
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// Even- and odd-index polynomials that eventually describe a Betti sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuasiPolynomialPair {
    pub beta_even: QPoly,
    pub beta_odd: QPoly,
    /// Order of the pole at `z = 1`.
    pub cx: u32,
    /// Order of the pole at `z = -1`.
    pub gn: u32,
    /// From this index on, the polynomials reproduce the coefficients.
    pub valid_from: u32,
}

impl QuasiPolynomialPair {
    /// Polynomial matching index `i`'s parity.
    pub fn predict(&self, i: u32) -> BigRational {
        if i % 2 == 0 {
            self.beta_even.eval(i as i64)
        } else {
            self.beta_odd.eval(i as i64)
        }
    }

    /// `deg(beta_even - beta_odd) + 1`.
    pub fn gn_from_polynomials(&self) -> u32 {
        (self.beta_even.sub(&self.beta_odd).degree() + 1) as u32
    }

    /// `max(deg beta_even, deg beta_odd) + 1`.
    pub fn cx_from_polynomials(&self) -> u32 {
        (self.beta_even.degree().max(self.beta_odd.degree()) + 1) as u32
    }
}

/// Solves a square system over ℚ; `None` when singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Extracts the even/odd Betti polynomials of a series whose only poles are
/// at `z = ±1`.
///
/// Writes `c_i = P(i) + (-1)^i Q(i)` with `deg P < cx`, `deg Q < gn`, fits the
/// `cx + gn` unknowns on consecutive coefficients starting at `valid_from`
/// and verifies the fit on `2 (cx + gn) + 4` further coefficients.
pub fn betti_polynomials(s: &RationalSeries) -> Result<QuasiPolynomialPair> {
    if !s.is_univariate() {
        return Err(Error::NotUnivariate);
    }
    if s.is_zero() {
        return Ok(QuasiPolynomialPair {
            beta_even: QPoly::default(),
            beta_odd: QPoly::default(),
            cx: 0,
            gn: 0,
            valid_from: 0,
        });
    }
    let mut rest = s.den().clone();
    for f in [binomial(-1, 0, 1), binomial(1, 0, 1)] {
        while let Some(q) = rest.div_exact(&f) {
            rest = q;
        }
    }
    if !(rest.z_degree() == Some(0) && rest.constant_term().abs().is_one()) {
        return Err(Error::NotPlusMinusOnePoles);
    }
    let (cx, gn) = s.pole_orders()?;
    let num_deg = s.num().z_degree().unwrap_or(0) as i64;
    let den_deg = s.den().z_degree().unwrap_or(0) as i64;
    let valid_from = (num_deg - den_deg + 1).max(0) as u32;
    let unknowns = (cx + gn) as usize;
    let checks = 2 * unknowns + 4;
    let order = valid_from + (unknowns + checks) as u32;
    let coeffs = s.expand_univariate(order)?;

    let basis = |i: u32, k: usize| -> BigRational {
        let sign = if i % 2 == 1 { -1 } else { 1 };
        let (power, signed) = if k < cx as usize { (k, false) } else { (k - cx as usize, true) };
        let v = BigInt::from(i).pow(power as u32) * if signed { sign } else { 1 };
        BigRational::from_integer(v)
    };
    let rows: Vec<u32> = (0..unknowns as u32).map(|r| valid_from + r).collect();
    let a: Vec<Vec<BigRational>> = rows.iter().map(|&i| (0..unknowns).map(|k| basis(i, k)).collect()).collect();
    let b: Vec<BigRational> = rows.iter().map(|&i| BigRational::from_integer(coeffs[i as usize].clone())).collect();
    let sol = solve(a, b).ok_or(Error::FitMismatch(valid_from as usize))?;
    let p = QPoly::new(sol[..cx as usize].to_vec());
    let q = QPoly::new(sol[cx as usize..].to_vec());
    let pair = QuasiPolynomialPair { beta_even: p.add(&q), beta_odd: p.sub(&q), cx, gn, valid_from };
    for i in valid_from..=order {
        if pair.predict(i) != BigRational::from_integer(coeffs[i as usize].clone()) {
            return Err(Error::FitMismatch(i as usize));
        }
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BiPoly;

    fn series(num: &[i64], minus: u32, plus: u32) -> RationalSeries {
        let den = &binomial(-1, 0, 1).pow(minus) * &binomial(1, 0, 1).pow(plus);
        RationalSeries::new(BiPoly::from_z_coeffs(num), den, 0).unwrap()
    }

    fn half(n: i64) -> BigRational {
        BigRational::new(n.into(), 2.into())
    }

    #[test]
    fn mixed_parity_example() {
        // 1/((1-z)^2(1+z)): 1,1,2,2,3,3,...
        let pair = betti_polynomials(&series(&[1], 2, 1)).unwrap();
        assert_eq!(pair.beta_even, QPoly::new(vec![half(2), half(1)]));
        assert_eq!(pair.beta_odd, QPoly::new(vec![half(1), half(1)]));
        assert_eq!((pair.cx, pair.gn), (2, 1));
        assert_eq!(pair.beta_even.to_string(), "1/2*x + 1");
    }

    #[test]
    fn constant_sequence() {
        let pair = betti_polynomials(&series(&[1], 1, 0)).unwrap();
        assert_eq!(pair.beta_even, QPoly::from_ints(&[1]));
        assert_eq!(pair.beta_odd, QPoly::from_ints(&[1]));
        assert_eq!((pair.cx, pair.gn), (1, 0));
    }

    #[test]
    fn residue_ring_example() {
        // (1 - z + z^2)/(1-z)^2 = 1, 1, 2, 3, 4, ...
        let pair = betti_polynomials(&series(&[1, -1, 1], 2, 0)).unwrap();
        assert_eq!(pair.valid_from, 1);
        for i in 2..20 {
            assert_eq!(pair.predict(i), BigRational::from_integer(i.into()));
        }
        assert_eq!(pair.gn, 0);
        assert_eq!(pair.beta_even, pair.beta_odd);
    }

    #[test]
    fn zero_series() {
        let pair = betti_polynomials(&RationalSeries::zero()).unwrap();
        assert_eq!((pair.cx, pair.gn), (0, 0));
        assert!(pair.beta_even.is_zero() && pair.beta_odd.is_zero());
        assert_eq!(pair.gn_from_polynomials(), 0);
    }

    #[test]
    fn rejects_other_poles() {
        let s = RationalSeries::new(BiPoly::one(), BiPoly::from_z_coeffs(&[1, -2]), 0).unwrap();
        assert_eq!(betti_polynomials(&s), Err(Error::NotPlusMinusOnePoles));
    }
}
