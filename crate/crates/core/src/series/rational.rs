use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bipoly::{binomial, BiPoly};
use crate::error::{Error, Result};

/// `num / den * y^y_offset`, expanded as a power series in `z` whose
/// coefficients are polynomials in `y`.
///
/// Invariants: the `z^0` coefficient of `den` is the constant `1`; the common
/// factors `(1 - z)`, `(1 + z)`, `(1 - yz)`, `(1 + yz)` of `num` and `den` are
/// cancelled; a positive `y_offset` is folded into `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: BiPoly,
    den: BiPoly,
    y_offset: i64,
}

/// Factors that reduction cancels and display pulls out of denominators.
fn special_factors() -> [(BiPoly, &'static str); 4] {
    [
        (binomial(-1, 0, 1), "(1 - z)"),
        (binomial(1, 0, 1), "(1 + z)"),
        (binomial(-1, 1, 1), "(1 - y*z)"),
        (binomial(1, 1, 1), "(1 + y*z)"),
    ]
}

impl RationalSeries {
    pub fn new(num: BiPoly, den: BiPoly, y_offset: i64) -> Result<Self> {
        let c0 = den.z_coeff(0);
        let lead = c0.constant_term();
        if !(c0.terms().count() == 1 && lead.abs().is_one()) {
            return Err(Error::DenominatorNotUnit(c0.to_string()));
        }
        let (mut num, mut den) = if lead.is_negative() { (-num, -den) } else { (num, den) };
        if num.is_zero() {
            return Ok(RationalSeries { num, den: BiPoly::one(), y_offset: 0 });
        }
        for (f, _) in special_factors() {
            loop {
                match (num.div_exact(&f), den.div_exact(&f)) {
                    (Some(n), Some(d)) => {
                        num = n;
                        den = d;
                    }
                    _ => break,
                }
            }
        }
        let mut y_offset = y_offset;
        if y_offset > 0 {
            num = num.shift(y_offset as u32, 0);
            y_offset = 0;
        } else if y_offset < 0 {
            let take = (-y_offset).min(num.min_y().unwrap_or(0) as i64);
            num = num.unshift(take as u32, 0).expect("min y exponent divides");
            y_offset += take;
        }
        Ok(RationalSeries { num, den, y_offset })
    }

    pub fn polynomial(p: BiPoly) -> Self {
        RationalSeries { num: p, den: BiPoly::one(), y_offset: 0 }
    }

    pub fn zero() -> Self {
        Self::polynomial(BiPoly::zero())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    /// Residual negative power of `y`; zero for every series with
    /// non-negative internal degrees.
    pub fn y_offset(&self) -> i64 {
        self.y_offset
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_univariate(&self) -> bool {
        self.num.is_univariate() && self.den.is_univariate() && self.y_offset == 0
    }

    /// Coefficients `c_0..=c_order` of `z^i` (each a polynomial in `y`),
    /// exact modulo `z^(order+1)`; a residual negative `y_offset` is not applied.
    pub fn expand(&self, order: u32) -> Vec<BiPoly> {
        let inv = self.den.inverse_mod_z(order + 1).expect("denominator is a unit mod z");
        let prod = (&self.num.truncate_z(order + 1) * &inv).truncate_z(order + 1);
        (0..=order).map(|k| prod.z_coeff(k)).collect()
    }

    /// Expansion of a univariate series as integers `c_0..=c_order`.
    pub fn expand_univariate(&self, order: u32) -> Result<Vec<BigInt>> {
        if !self.is_univariate() {
            return Err(Error::NotUnivariate);
        }
        Ok(self.expand(order).into_iter().map(|c| c.constant_term()).collect())
    }

    /// Orders of the poles at `z = 1` and `z = -1`, after cancellation.
    pub fn pole_orders(&self) -> Result<(u32, u32)> {
        if !self.is_univariate() {
            return Err(Error::NotUnivariate);
        }
        if self.num.is_zero() {
            return Ok((0, 0));
        }
        let at = |root: i32| -> Result<u32> {
            let d = root_multiplicity(&self.den, root)?;
            let n = root_multiplicity(&self.num, root)?;
            Ok(d.saturating_sub(n))
        };
        Ok((at(1)?, at(-1)?))
    }

    /// Substitutes `y := 1`; the result is univariate.
    pub fn specialize_y(&self) -> Result<RationalSeries> {
        let one = BiPoly::one().constant_term();
        let num = self.num.eval_y(&one);
        let den = self.den.eval_y(&one);
        if den.constant_term().is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        RationalSeries::new(num, den, 0)
    }

    pub fn mul(&self, other: &RationalSeries) -> Result<RationalSeries> {
        RationalSeries::new(&self.num * &other.num, &self.den * &other.den, self.y_offset + other.y_offset)
    }

    /// Sum of two series with equal `y_offset`.
    pub fn add(&self, other: &RationalSeries) -> Result<RationalSeries> {
        if self.y_offset != other.y_offset {
            return Err(Error::Shape("adding series with different y offsets".into()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalSeries::new(num, &self.den * &other.den, self.y_offset)
    }

    /// Denominator split into powers of the special binomials plus a remainder.
    fn factored_den(&self) -> (Vec<(&'static str, u32)>, BiPoly) {
        let mut rest = self.den.clone();
        let mut factors = Vec::new();
        for (f, name) in special_factors() {
            let mut k = 0;
            while let Some(q) = rest.div_exact(&f) {
                rest = q;
                k += 1;
            }
            if k > 0 {
                factors.push((name, k));
            }
        }
        (factors, rest)
    }
}

/// Multiplicity of `root` (`+1` or `-1`) as a root of a univariate polynomial.
pub fn root_multiplicity(p: &BiPoly, root: i32) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_univariate() {
        return Err(Error::NotUnivariate);
    }
    assert!(root == 1 || root == -1, "root must be +1 or -1");
    let r = BigInt::from(root);
    let mut coeffs = p.to_z_coeffs();
    let mut count = 0;
    // synthetic division by (z - root), highest degree first
    loop {
        let n = coeffs.len();
        if n < 2 {
            return Ok(count);
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            let v = &coeffs[i] + &carry * &r;
            if i == 0 {
                if !v.is_zero() {
                    return Ok(count);
                }
            } else {
                q[i - 1] = v.clone();
            }
            carry = v;
        }
        coeffs = q;
        count += 1;
    }
}

fn parenthesize(p: &BiPoly) -> String {
    if p.terms().count() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Canonical text form `num / den * y^k`; denominators show the special
/// binomial factors as powers, e.g. `1 / (1 - z)^2`.
impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (factors, rest) = self.factored_den();
        let mut parts: Vec<String> = Vec::new();
        if !rest.is_one() || factors.is_empty() {
            parts.push(parenthesize(&rest));
        }
        for (name, k) in factors {
            parts.push(if k == 1 { name.to_string() } else { format!("{name}^{k}") });
        }
        write!(f, "{} / {}", parenthesize(&self.num), parts.join(" "))?;
        if self.y_offset != 0 {
            write!(f, " * y^{}", self.y_offset)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `[[yExp, zExp, coeff], ...]` in canonical term order; coefficients beyond
/// the `i64` range are written as decimal strings.
pub fn bipoly_to_json(p: &BiPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms()
            .map(|(e, c)| serde_json::json!([e.y, e.z, coeff_to_json(c)]))
            .collect(),
    )
}

pub fn bipoly_from_json(v: &serde_json::Value) -> Option<BiPoly> {
    let mut p = BiPoly::zero();
    for t in v.as_array()? {
        let t = t.as_array()?;
        if t.len() != 3 {
            return None;
        }
        let y = u32::try_from(t[0].as_u64()?).ok()?;
        let z = u32::try_from(t[1].as_u64()?).ok()?;
        p.add_term(super::bipoly::Exp::new(y, z), coeff_from_json(&t[2])?);
    }
    Some(p)
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "num": bipoly_to_json(&self.num),
            "den": bipoly_to_json(&self.den),
            "yOffset": self.y_offset,
        })
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let num = v.get("num").and_then(bipoly_from_json).ok_or_else(|| D::Error::custom("bad num"))?;
        let den = v.get("den").and_then(bipoly_from_json).ok_or_else(|| D::Error::custom("bad den"))?;
        let y_offset = v.get("yOffset").and_then(|x| x.as_i64()).unwrap_or(0);
        RationalSeries::new(num, den, y_offset).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_poly(c: &[i64]) -> BiPoly {
        BiPoly::from_z_coeffs(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expand_examples() {
        let s = RationalSeries::new(BiPoly::one(), binomial(-1, 0, 1).pow(2), 0).unwrap();
        assert_eq!(s.expand_univariate(4).unwrap(), ints(&[1, 2, 3, 4, 5]));

        let s = RationalSeries::polynomial(binomial(1, 1, 1).pow(2));
        let c = s.expand(2);
        assert_eq!(c, vec![BiPoly::one(), BiPoly::monomial(2, 1, 0), BiPoly::monomial(1, 2, 0)]);

        let s = RationalSeries::new(BiPoly::one(), z_poly(&[1, 0, -1]), 0).unwrap();
        assert_eq!(s.expand_univariate(5).unwrap(), ints(&[1, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn pole_order_examples() {
        let s = RationalSeries::new(BiPoly::constant(2), z_poly(&[1, 0, -1]), 0).unwrap();
        assert_eq!(s.pole_orders().unwrap(), (1, 1));
        let s = RationalSeries::new(binomial(1, 0, 1).pow(3), binomial(-1, 0, 1).pow(3), 0).unwrap();
        assert_eq!(s.pole_orders().unwrap(), (3, 0));
        let s = RationalSeries::new(binomial(-1, 0, 1), binomial(-1, 0, 1), 0).unwrap();
        assert_eq!(s.pole_orders().unwrap(), (0, 0));
        assert!(s.is_polynomial());
    }

    #[test]
    fn root_multiplicity_examples() {
        assert_eq!(root_multiplicity(&z_poly(&[-1, 0, 3, 2]), -1).unwrap(), 2);
        assert_eq!(root_multiplicity(&binomial(-1, 0, 1).pow(3), 1).unwrap(), 3);
        assert_eq!(root_multiplicity(&z_poly(&[1, 0, 1]), -1).unwrap(), 0);
        assert_eq!(root_multiplicity(&BiPoly::zero(), 1), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn specialize_examples() {
        let s = RationalSeries::polynomial(binomial(1, 1, 1).pow(2));
        assert_eq!(s.specialize_y().unwrap(), RationalSeries::polynomial(binomial(1, 0, 1).pow(2)));

        let s = RationalSeries::polynomial(BiPoly::from_terms([(2, 0, 3), (3, 1, 2)]));
        assert_eq!(s.specialize_y().unwrap().num(), &z_poly(&[3, 2]));

        let s = RationalSeries::new(BiPoly::one(), binomial(-1, 2, 2), 0).unwrap();
        let u = s.specialize_y().unwrap();
        assert_eq!(u.expand_univariate(4).unwrap(), ints(&[1, 0, 1, 0, 1]));
        assert_eq!(u.pole_orders().unwrap(), (1, 1));
    }

    #[test]
    fn rejects_non_unit_denominator() {
        assert!(RationalSeries::new(BiPoly::one(), z_poly(&[2, 1]), 0).is_err());
        assert!(RationalSeries::new(BiPoly::one(), z_poly(&[0, 1]), 0).is_err());
        let s = RationalSeries::new(BiPoly::one(), z_poly(&[-1, 1]), 0).unwrap();
        assert_eq!(s.den(), &z_poly(&[1, -1]));
        assert_eq!(s.num(), &z_poly(&[-1]));
    }

    #[test]
    fn text_form() {
        let s = RationalSeries::new(BiPoly::one(), binomial(-1, 0, 1).pow(2), 0).unwrap();
        assert_eq!(s.to_string(), "1 / (1 - z)^2");
        let s = RationalSeries::new(z_poly(&[1, -1, 1]), binomial(-1, 0, 1).pow(2), 0).unwrap();
        assert_eq!(s.to_string(), "(1 - z + z^2) / (1 - z)^2");
        let s = RationalSeries::new(binomial(1, 1, 1), binomial(-1, 3, 2), 0).unwrap();
        assert_eq!(s.to_string(), "(1 + y*z) / (1 - y^3*z^2)");
    }

    #[test]
    fn json_roundtrip() {
        let s = RationalSeries::new(z_poly(&[1, -1, 1]), binomial(-1, 0, 1).pow(2), 0).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"den":[[0,0,1],[0,1,-2],[0,2,1]],"num":[[0,0,1],[0,1,-1],[0,2,1]],"yOffset":0}"#);
        let back: RationalSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
