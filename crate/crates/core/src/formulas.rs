//! Closed-form Poincaré series and granularity formulas.
//!
//! Everything here is exact integer arithmetic on [`BiPoly`] and
//! [`RationalSeries`]. Negative powers of `z` that appear in intermediate
//! expressions are cleared by hand and must cancel before a value is returned.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, RingSpec};
use crate::error::{Error, Result};
use crate::series::{binomial, BiPoly, RationalSeries};

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `(1 + c z)^n`.
fn lin_pow(c: i64, n: u32) -> BiPoly {
    binomial(c, 0, 1).pow(n)
}

/// `(1 + c y z)^n`.
fn yz_pow(c: i64, n: u32) -> BiPoly {
    binomial(c, 1, 1).pow(n)
}

/// `p / (-z)^k`, or `None` if `z^k` does not divide `p`.
fn div_neg_z_pow(p: &BiPoly, k: u32) -> Option<BiPoly> {
    let q = p.unshift(0, k)?;
    Some(if k % 2 == 1 { -q } else { q })
}

/// `sum_{i<n} C(m-1+i, i) (-w)^i` with `w = z` (`yz = false`) or `w = yz`.
fn neg_binomial_head(m: i64, n: i64, yz: bool) -> BiPoly {
    let mut out = BiPoly::zero();
    for i in 0..n.max(0) {
        let c = binom(m - 1 + i, i) * if i % 2 == 0 { 1 } else { -1 };
        out = out + BiPoly::monomial(c, if yz { i as u32 } else { 0 }, i as u32);
    }
    out
}

/// Rewrites a univariate series `H(t)` as `H(-yz)`.
fn at_neg_yz(h: &RationalSeries) -> Result<RationalSeries> {
    if !h.is_univariate() {
        return Err(Error::NotUnivariate);
    }
    RationalSeries::new(h.num().substitute_scaled_yz(-1), h.den().substitute_scaled_yz(-1), 0)
}

/// Divides a series by `(-z)^k`, failing if negative powers of `z` remain.
fn series_div_neg_z_pow(s: &RationalSeries, k: u32) -> Result<RationalSeries> {
    let num = div_neg_z_pow(s.num(), k)
        .ok_or_else(|| Error::NegativePowersRemain(format!("numerator {} not divisible by z^{k}", s.num())))?;
    RationalSeries::new(num, s.den().clone(), s.y_offset())
}

/// Tate's series of the residue field of a complete intersection:
/// `(1 + z)^dim / (1 - z)^codim`.
pub fn tate_series(dim: u32, codim: u32) -> RationalSeries {
    RationalSeries::new(lin_pow(1, dim), lin_pow(-1, codim), 0).expect("unit denominator")
}

/// `P^A_k` over a graded complete intersection with relations of the given degrees.
pub fn graded_ci_pk(e: u32, degrees: &[u32]) -> RationalSeries {
    let den = degrees
        .iter()
        .fold(BiPoly::one(), |acc, &n| &acc * &(BiPoly::one() - BiPoly::monomial(1, n, 2)));
    RationalSeries::new(yz_pow(1, e), den, 0).expect("unit denominator")
}

/// `P^A_k` over a Golod quotient: `(1 + yz)^e / (1 - z^2 P^B_I)`.
pub fn golod_pk(e: usize, pbi: &BiPoly) -> Result<RationalSeries> {
    RationalSeries::new(yz_pow(1, e as u32), BiPoly::one() - pbi.shift(0, 2), 0)
}

/// `P^A_k = 1 / H_A(-yz)` for a Koszul algebra.
pub fn koszul_pk(hilbert: &RationalSeries) -> Result<RationalSeries> {
    let h = at_neg_yz(hilbert)?;
    RationalSeries::new(h.den().clone(), h.num().clone(), 0)
}

/// `P^R_S` for a Golod quotient `S` of a complete intersection `R`:
///
/// `((1+z)^(a+1) (1-z)^a + z^2 P^Q_J - 1) / (z (1+z)^(c-d+e) (1-z)^c)`.
pub fn golod_residue_series(a: u32, c: u32, d: u32, e: u32, pqj: &BiPoly) -> Result<RationalSeries> {
    let top = &(&lin_pow(1, a + 1) * &lin_pow(-1, a)) + &(&pqj.shift(0, 2) - &BiPoly::one());
    let mut num = top.unshift(0, 1).ok_or(Error::NumeratorNotDivisibleByZ)?;
    let mut den = lin_pow(-1, c);
    let plus = c as i64 - d as i64 + e as i64;
    if plus >= 0 {
        den = &den * &lin_pow(1, plus as u32);
    } else {
        num = &num * &lin_pow(1, (-plus) as u32);
    }
    RationalSeries::new(num, den, 0)
}

/// `P^B_{I(X)}` for an adequate `s x (h+s-1)` matrix, from
/// `(-z)^s P(y, z) = 1 - (1+yz)^h sum_{i<s} C(h-1+i, i) (-yz)^i`.
pub fn adequate_ideal_series(s: u32, h: u32, _e: u32) -> BiPoly {
    let rhs = BiPoly::one() - &yz_pow(1, h) * &neg_binomial_head(h as i64, s as i64, true);
    div_neg_z_pow(&rhs, s).expect("right side vanishes to order s in yz")
}

/// `z^2 P^Q_J` for `J = I_s(U) + (x)^(s+1)`, `U` adequate.
pub fn det_power_series(s: u32, h: u32, e: u32) -> Result<BiPoly> {
    if s < 2 || h < 1 || h > e {
        return Err(Error::BadParameters(format!("det_power_series needs s >= 2, 1 <= h <= e (got s={s}, h={h}, e={e})")));
    }
    let (s, h, e) = (s as i64, h as i64, e as i64);
    // everything multiplied by (-z)^(s-1)
    let first = BiPoly::monomial(-1, 0, 1);
    let second = &lin_pow(1, (h + 1) as u32) * &neg_binomial_head(h, s, false);
    let tail = neg_binomial_head(e, s + 1, false)
        - BiPoly::monomial(binom(h - 1 + s, s) * if s % 2 == 0 { 1 } else { -1 }, 0, s as u32);
    let third = &lin_pow(1, e as u32) * &tail;
    let n = &(&first + &second) - &third;
    let out = div_neg_z_pow(&n, (s - 1) as u32)
        .ok_or_else(|| Error::NotPolynomial(format!("{n} not divisible by z^{}", s - 1)))?;
    if !out.coeff(0, 0).is_zero() || !out.coeff(0, 1).is_zero() {
        return Err(Error::NotPolynomial(format!("{out} has terms below z^2")));
    }
    Ok(out)
}

/// `P^Q_J` itself: [`det_power_series`] divided by `z^2`.
pub fn det_ideal_series(s: u32, h: u32, e: u32) -> Result<BiPoly> {
    Ok(det_power_series(s, h, e)?.unshift(0, 2).expect("checked above"))
}

/// One summand of the componentwise linear formula: degree `j`, the Hilbert
/// series of `B/I<j-1>` and `B/I<j>`, and `n_{j-1} = rank I_{j-1}`.
#[derive(Clone, Debug)]
pub struct LinearStep {
    pub j: u32,
    pub h_prev: RationalSeries,
    pub h_cur: RationalSeries,
    pub n_prev: u64,
}

/// `P^B_I` for a componentwise linear ideal.
pub fn componentwise_linear_series(e: u32, data: &[LinearStep]) -> Result<RationalSeries> {
    let top = data.iter().map(|d| d.j).max().unwrap_or(0);
    let mut acc = RationalSeries::zero();
    for d in data {
        let mono = BiPoly::monomial(
            BigInt::from(d.n_prev) * if (d.j - 1) % 2 == 0 { 1 } else { -1 },
            d.j - 1,
            d.j - 1,
        );
        let mut term = at_neg_yz(&d.h_prev)?.add(&at_neg_yz(&d.h_cur)?.mul(&RationalSeries::polynomial(-BiPoly::one()))?)?;
        term = term.add(&RationalSeries::polynomial(mono))?;
        // (-z)^(top - j)
        let k = top - d.j;
        let shift = BiPoly::monomial(if k % 2 == 0 { 1 } else { -1 }, 0, k);
        acc = acc.add(&term.mul(&RationalSeries::polynomial(shift))?)?;
    }
    let acc = acc.mul(&RationalSeries::polynomial(yz_pow(1, e)))?;
    series_div_neg_z_pow(&acc, top)
}

/// Hilbert series of `B/(f_1, ..., f_r)` for a `j`-linear ideal generated in degree `j`.
///
/// A `j`-linear ideal of `B = k[x_1..x_e]` has numerator of degree at most
/// `j + e`, so values through that degree determine it.
fn linear_quotient_hilbert(b: &RingSpec, gens: Vec<crate::algebra::HomogPoly>, j: u32) -> Result<RationalSeries> {
    let e = b.nvars() as u32;
    let q = Algebra::new(b.with_gens("Q", gens)?);
    let top = j + e;
    let h = BiPoly::from_z_coeffs(&(0..=top).map(|k| q.dim(k) as i64).collect::<Vec<_>>());
    let num = (&h * &lin_pow(-1, e)).truncate_z(top + 1);
    RationalSeries::new(num, lin_pow(-1, e), 0)
}

/// [`componentwise_linear_series`] for the ideal of `spec`, computing the jump
/// set, the ranks and the Hilbert series from the algebra.
pub fn componentwise_linear_series_of(spec: &RingSpec) -> Result<RationalSeries> {
    let e = spec.nvars() as u32;
    let b = RingSpec::polynomial_ring("B", spec.prime(), spec.vars().to_vec());
    let a = Algebra::new(spec.clone());
    let hilb = |j: u32| -> Result<RationalSeries> {
        if j == 0 {
            return RationalSeries::new(BiPoly::one(), lin_pow(-1, e), 0);
        }
        linear_quotient_hilbert(&b, a.ideal_basis(j), j)
    };
    let mut data = Vec::new();
    for j in 1..=spec.max_gen_degree() {
        if a.new_generators(j) == 0 {
            continue;
        }
        data.push(LinearStep {
            j,
            h_prev: hilb(j - 1)?,
            h_cur: hilb(j)?,
            n_prev: a.ideal_rank(j - 1) as u64,
        });
    }
    componentwise_linear_series(e, &data)
}

/// `P^B_I` for a `t`-linear ideal with Hilbert series `H_I`:
/// `(-z)^t P = (1+yz)^e H_I(-yz)`.
pub fn linear_ideal_series(t: u32, e: u32, h_i: &RationalSeries) -> Result<RationalSeries> {
    let s = at_neg_yz(h_i)?.mul(&RationalSeries::polynomial(yz_pow(1, e)))?;
    series_div_neg_z_pow(&s, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GringCase {
    HEqualsE,
    HAtMostEMinus1,
}

/// Invariants feeding the granularity case formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GringParams {
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub a: u32,
    pub h: u32,
    pub case_tag: GringCase,
}

impl GringParams {
    pub fn new(c: u32, d: u32, e: u32, a: u32, h: u32) -> Result<Self> {
        if c > d || h > e || h == 0 {
            return Err(Error::BadParameters(format!(
                "need c <= d and 1 <= h <= e (got c={c}, d={d}, e={e}, h={h})"
            )));
        }
        let case_tag = if h == e { GringCase::HEqualsE } else { GringCase::HAtMostEMinus1 };
        Ok(GringParams { c, d, e, a, h, case_tag })
    }
}

/// The four-branch granularity formula.
pub fn gring_granularity(p: &GringParams) -> u32 {
    let (c, d, e, a, h) = (p.c as i64, p.d as i64, p.e as i64, p.a as i64, p.h as i64);
    let v = match p.case_tag {
        GringCase::HEqualsE if a <= e - 2 => c - d + e - a - 1,
        GringCase::HEqualsE => 0,
        GringCase::HAtMostEMinus1 if a <= h - 1 => c - d + e - a - 1,
        GringCase::HAtMostEMinus1 => c - d + e - h - 1,
    };
    v.max(0) as u32
}

/// `max{c - q - 1, 0}`.
pub fn granularity_bound(c: u32, q: u32) -> Result<u32> {
    if q > c {
        return Err(Error::BadParameters(format!("need q <= c (got c={c}, q={q})")));
    }
    Ok(c.saturating_sub(q + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn univariate(s: &RationalSeries, n: u32) -> Vec<i64> {
        s.expand_univariate(n).unwrap().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn tate() {
        assert_eq!(univariate(&tate_series(0, 2), 5), [1, 2, 3, 4, 5, 6]);
        assert!(tate_series(3, 0).is_polynomial());
        assert_eq!(univariate(&tate_series(0, 3), 4), [1, 3, 6, 10, 15]);
    }

    #[test]
    fn graded_ci() {
        let s = graded_ci_pk(2, &[2, 2]);
        let ex = s.expand(4);
        assert_eq!(ex[2], BiPoly::from_terms([(2, 0, 3)]));
        assert_eq!(ex[3], BiPoly::from_terms([(3, 0, 4)]));
        assert_eq!(graded_ci_pk(3, &[]), RationalSeries::polynomial(yz_pow(1, 3)));
    }

    #[test]
    fn golod_specializes() {
        let pbi = BiPoly::from_terms([(2, 0, 3), (3, 1, 2)]);
        let s = golod_pk(2, &pbi).unwrap().specialize_y().unwrap();
        assert_eq!(univariate(&s, 6), [1, 2, 4, 8, 16, 32, 64]);
        assert_eq!(golod_pk(2, &BiPoly::zero()).unwrap(), RationalSeries::polynomial(yz_pow(1, 2)));
    }

    #[test]
    fn golod_residue_worked_example() {
        let s = golod_residue_series(2, 2, 2, 2, &BiPoly::from_z_coeffs(&[3, 2])).unwrap();
        let expect = RationalSeries::new(BiPoly::from_z_coeffs(&[1, -1, 1]), lin_pow(-1, 2), 0).unwrap();
        assert_eq!(s, expect);
        assert_eq!(univariate(&s, 5), [1, 1, 2, 3, 4, 5]);
        let s = golod_residue_series(0, 3, 4, 2, &BiPoly::zero()).unwrap();
        let expect = RationalSeries::new(BiPoly::one(), &lin_pow(1, 1) * &lin_pow(-1, 3), 0).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn adequate_examples() {
        assert_eq!(adequate_ideal_series(2, 2, 3), BiPoly::from_terms([(2, 0, 3), (3, 1, 2)]));
        assert_eq!(adequate_ideal_series(1, 1, 3), BiPoly::monomial(1, 1, 0));
        assert_eq!(adequate_ideal_series(2, 1, 3), BiPoly::monomial(1, 2, 0));
    }

    #[test]
    fn det_series_matches_hand_values() {
        assert_eq!(det_power_series(2, 2, 2).unwrap(), BiPoly::from_z_coeffs(&[0, 0, 3, 2]));
        // h = e: z^2 P - 1 = (1+z)^e (e z - 1)
        for e in 1..6 {
            let lhs = det_power_series(2, e, e).unwrap() - BiPoly::one();
            assert_eq!(lhs, &lin_pow(1, e) * &BiPoly::from_z_coeffs(&[-1, e as i64]));
        }
        // h < e: z^2 P - 1 = (1+z)^e/z (1 - e z + (e+h+1)(e-h)/2 z^2) + (1+z)^(h+1)/z (h z - 1)
        for e in 2..6i64 {
            for h in 1..e {
                let q = BiPoly::from_z_coeffs(&[1, -e, (e + h + 1) * (e - h) / 2]);
                let n = &(&lin_pow(1, e as u32) * &q) + &(&lin_pow(1, h as u32 + 1) * &BiPoly::from_z_coeffs(&[-1, h]));
                let lhs = det_power_series(2, h as u32, e as u32).unwrap() - BiPoly::one();
                assert_eq!(lhs, n.unshift(0, 1).unwrap());
            }
        }
        assert!(det_power_series(1, 1, 1).is_err());
    }

    #[test]
    fn m_invariant_from_det_series() {
        use crate::series::root_multiplicity;
        for e in 1..7 {
            for h in 1..=e {
                let p = det_power_series(2, h, e).unwrap() - BiPoly::one();
                let m = root_multiplicity(&p, -1).unwrap();
                assert_eq!(m, if h == e { e } else { h + 1 }, "h={h} e={e}");
            }
        }
    }

    #[test]
    fn componentwise_linear_square_of_maximal_ideal() {
        let data = [LinearStep {
            j: 2,
            h_prev: RationalSeries::new(BiPoly::one(), lin_pow(-1, 2), 0).unwrap(),
            h_cur: RationalSeries::polynomial(BiPoly::from_z_coeffs(&[1, 2])),
            n_prev: 0,
        }];
        let p = componentwise_linear_series(2, &data).unwrap();
        assert_eq!(p, RationalSeries::polynomial(BiPoly::from_terms([(2, 0, 3), (3, 1, 2)])));
        assert!(componentwise_linear_series(2, &[]).unwrap().is_zero());
    }

    #[test]
    fn componentwise_linear_wrapper() {
        let spec = parse_ring_spec("ring A { vars = x, y; ideal = x^2, x*y, y^2; }").unwrap();
        let p = componentwise_linear_series_of(&spec).unwrap();
        assert_eq!(p, RationalSeries::polynomial(adequate_ideal_series(2, 2, 2)));
        let spec = parse_ring_spec("ring A { vars = x, y; ideal = 0; }").unwrap();
        assert!(componentwise_linear_series_of(&spec).unwrap().is_zero());
    }

    #[test]
    fn componentwise_linear_staircase_agrees_with_det_series() {
        let spec = parse_ring_spec(
            "ring A { vars = x1, x2, x3; ideal = x1^2, x1*x2, x2^2, x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x1*x3^2, x2^3, x2^2*x3, x2*x3^2, x3^3; }",
        )
        .unwrap();
        let p = componentwise_linear_series_of(&spec).unwrap().specialize_y().unwrap();
        let det = det_ideal_series(2, 2, 3).unwrap();
        assert_eq!(p, RationalSeries::polynomial(det));
    }

    #[test]
    fn linear_ideals() {
        let h = RationalSeries::new(BiPoly::z(), lin_pow(-1, 1), 0).unwrap();
        assert_eq!(linear_ideal_series(1, 1, &h).unwrap(), RationalSeries::polynomial(BiPoly::monomial(1, 1, 0)));
        let h = RationalSeries::new(BiPoly::from_z_coeffs(&[0, 0, 3, -2]), lin_pow(-1, 2), 0).unwrap();
        assert_eq!(
            linear_ideal_series(2, 2, &h).unwrap(),
            RationalSeries::polynomial(BiPoly::from_terms([(2, 0, 3), (3, 1, 2)]))
        );
        assert!(linear_ideal_series(2, 2, &RationalSeries::zero()).unwrap().is_zero());
    }

    #[test]
    fn gring_cases() {
        assert_eq!(gring_granularity(&GringParams::new(4, 4, 4, 2, 2).unwrap()), 1);
        assert_eq!(gring_granularity(&GringParams::new(4, 4, 3, 2, 3).unwrap()), 0);
        assert_eq!(gring_granularity(&GringParams::new(2, 2, 2, 2, 2).unwrap()), 0);
        assert!(GringParams::new(3, 2, 2, 0, 1).is_err());
    }

    #[test]
    fn gring_agrees_with_residue_pole_order() {
        for d in 0..=5 {
            for c in 0..=d {
                for e in 1..=5 {
                    for h in 1..=e {
                        let pqj = det_ideal_series(2, h, e).unwrap();
                        for a in 0..=6 {
                            let s = golod_residue_series(a, c, d, e, &pqj).unwrap();
                            let (_, minus) = s.pole_orders().unwrap();
                            let p = GringParams::new(c, d, e, a, h).unwrap();
                            assert_eq!(minus, gring_granularity(&p), "c={c} d={d} e={e} a={a} h={h}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn granularity_bounds() {
        assert_eq!(granularity_bound(5, 2).unwrap(), 2);
        assert_eq!(granularity_bound(3, 3).unwrap(), 0);
        assert_eq!(granularity_bound(4, 1).unwrap(), 2);
        assert!(granularity_bound(1, 2).is_err());
    }
}
