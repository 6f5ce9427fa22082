use serde::Serialize;

use super::dimension::{krull_dimension, ProbeOptions, Tagged};
use super::graded::Algebra;
use crate::series::BiPoly;

/// Hilbert function values and, when determinable, the reduced Hilbert series
/// `numerator / (1 - t)^dim`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertData {
    pub values: Vec<u64>,
    pub krull_dim: Option<Tagged<usize>>,
    /// Coefficients of the numerator, constant term first.
    pub numerator: Option<Vec<i64>>,
    pub multiplicity: Option<i64>,
    pub exact: bool,
}

impl HilbertData {
    pub fn numerator_poly(&self) -> Option<BiPoly> {
        self.numerator.as_ref().map(|c| BiPoly::from_z_coeffs(c))
    }
}

/// Hilbert data of `A` through degree `jmax`.
///
/// Values are exact. The numerator is `(sum H_j t^j) (1 - t)^dim`, tracked to
/// `max(jmax, cap)` and accepted only if its top `e + 2` coefficients vanish.
pub fn hilbert(a: &Algebra, jmax: u32, opts: &ProbeOptions) -> HilbertData {
    let e = a.nvars();
    let cap = opts.cap_for(a.spec());
    let tracked = jmax.max(cap).max(e as u32 + 2);
    let all: Vec<u64> = (0..=tracked).map(|j| a.dim(j) as u64).collect();
    let krull_dim = krull_dimension(a.spec(), opts).ok();
    let mut numerator = None;
    let mut multiplicity = None;
    if let Some(dim) = krull_dim {
        let mut c: Vec<i64> = all.iter().map(|&v| v as i64).collect();
        for _ in 0..dim.value() {
            for j in (1..c.len()).rev() {
                c[j] -= c[j - 1];
            }
        }
        let window = c.len().saturating_sub(e + 2);
        if c[window..].iter().all(|&v| v == 0) {
            while c.last() == Some(&0) {
                c.pop();
            }
            multiplicity = Some(c.iter().sum());
            numerator = Some(c);
        }
    }
    let exact = krull_dim.is_some_and(|d| d.is_exact()) && numerator.is_some();
    HilbertData { values: all[..=jmax as usize].to_vec(), krull_dim, numerator, multiplicity, exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn data(text: &str, jmax: u32) -> HilbertData {
        hilbert(&Algebra::new(parse_ring_spec(text).unwrap()), jmax, &ProbeOptions::default())
    }

    #[test]
    fn complete_intersection_of_two_quadrics() {
        let h = data("ring A { vars = x, y; ideal = x^2, y^2; }", 4);
        assert_eq!(h.values, [1, 2, 1, 0, 0]);
        assert_eq!(h.krull_dim, Some(Tagged::Exact(0)));
        assert_eq!(h.numerator, Some(vec![1, 2, 1]));
        assert_eq!(h.multiplicity, Some(4));
        assert!(h.exact);
    }

    #[test]
    fn polynomial_ring() {
        let h = data("ring A { vars = x, y, z; ideal = 0; }", 5);
        assert_eq!(h.values, [1, 3, 6, 10, 15, 21]);
        assert_eq!(h.numerator, Some(vec![1]));
        assert_eq!(h.multiplicity, Some(1));
    }

    #[test]
    fn staircase_minors() {
        let h = data("ring A { vars = x1, x2, x3; ideal = x1^2, x1*x2, x2^2; }", 8);
        assert_eq!(h.values, [1, 3, 3, 3, 3, 3, 3, 3, 3]);
        assert_eq!(h.krull_dim, Some(Tagged::Exact(1)));
        assert_eq!(h.numerator, Some(vec![1, 2]));
    }
}
