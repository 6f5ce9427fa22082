//! Degree-truncated minimal graded free resolutions over `A = F_p[x]/I`.

mod engine;
mod table;

pub use engine::{default_jmax, minimal_betti_table, residue_field_table, resolve, Resolution, Step};
pub use table::{BettiTable, ColumnStatus, TruncatedSeries};

use num_bigint::BigInt;

use crate::algebra::{Algebra, RingSpec};
use crate::error::Result;
use crate::formulas::golod_pk;
use crate::series::BiPoly;

/// Poincaré polynomial of the table.
pub fn poincare_truncated(t: &BettiTable) -> TruncatedSeries {
    t.poincare_truncated()
}

/// First `(i, j)` with `j != i` and `beta_{i,j} != 0`.
pub fn koszul_violation(t: &BettiTable) -> Option<(usize, u32)> {
    t.entries().find(|&(i, j, _)| j as usize != i).map(|(i, j, _)| (i, j))
}

/// Truncated Koszul certificate: the residue field has a linear resolution
/// through homological degree `imax` (internal degrees up to the default
/// truncation).
pub fn is_koszul_truncated(a: &Algebra, imax: usize) -> Result<bool> {
    let vars = a.spec().variables();
    let jmax = default_jmax(a, &vars, imax);
    Ok(koszul_violation(&minimal_betti_table(a, &vars, imax, jmax)?).is_none())
}

/// `P^B_I`: the graded Poincaré series of the ideal `I` of `A` over the
/// polynomial ring, from a complete resolution through `jmax`.
pub fn ideal_series_over_polynomial_ring(spec: &RingSpec, jmax: u32) -> Result<BiPoly> {
    let b = Algebra::new(RingSpec::polynomial_ring("B", spec.prime(), spec.vars().to_vec()));
    let table = minimal_betti_table(&b, spec.gens(), spec.nvars() + 1, jmax)?;
    table.require_complete()?;
    Ok(table.syzygy(1).poincare_truncated().series)
}

/// Compares the oracle `P^A_k` with `(1+yz)^e / (1 - z^2 P^B_I)` for all
/// `i <= imax`, `j <= jmax`.
pub fn is_golod_truncated(a: &Algebra, imax: usize, jmax: u32) -> Result<bool> {
    let e = a.nvars();
    let pbi = ideal_series_over_polynomial_ring(a.spec(), jmax)?;
    let predicted = golod_pk(e, &pbi)?.expand(imax as u32);
    let oracle = residue_field_table(a, imax, jmax)?;
    for (i, coeffs) in predicted.iter().enumerate() {
        for j in 0..=jmax {
            if coeffs.coeff(j, 0) != BigInt::from(oracle.get(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn alg(text: &str) -> Algebra {
        Algebra::new(parse_ring_spec(text).unwrap())
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let a = alg("ring A { prime = 101; vars = x; ideal = x^2; }");
        let t = residue_field_table(&a, 6, 14).unwrap();
        for i in 0..=6 {
            assert_eq!(t.get(i, i as u32), 1);
            assert_eq!(t.total(i), 1);
        }
        assert!(t.is_complete());
        assert_eq!(t.column_status(6), ColumnStatus::Proven);
    }

    #[test]
    fn square_of_maximal_ideal_over_polynomial_ring() {
        let b = alg("ring B { prime = 101; vars = x, y; ideal = 0; }");
        let gens = parse_ring_spec("ring J { prime = 101; vars = x, y; ideal = x^2, x*y, y^2; }").unwrap();
        let r = resolve(&b, gens.gens(), 3, 8).unwrap();
        assert!(r.is_minimal() && r.is_complex());
        let t = r.table();
        let entries: Vec<_> = t.entries().collect();
        assert_eq!(entries, [(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        let ideal: Vec<_> = t.syzygy(1).entries().collect();
        assert_eq!(ideal, [(0, 2, 3), (1, 3, 2)]);
        assert!(t.is_complete());
    }

    #[test]
    fn residue_field_of_square_zero_algebra() {
        let a = alg("ring A { prime = 101; vars = x, y; ideal = x^2, x*y, y^2; }");
        let r = resolve(&a, &a.spec().variables(), 8, 10).unwrap();
        assert!(r.is_minimal() && r.is_complex());
        let t = r.table();
        for i in 0..=8 {
            assert_eq!(t.total(i), 1 << i);
        }
    }

    #[test]
    fn koszul_examples() {
        let a = alg("ring A { vars = x, y; ideal = x^2, y^2; }");
        assert!(is_koszul_truncated(&a, 6).unwrap());
        let a = alg("ring A { vars = x; ideal = x^3; }");
        let t = residue_field_table(&a, 3, 10).unwrap();
        assert_eq!(koszul_violation(&t), Some((2, 3)));
        assert!(!is_koszul_truncated(&a, 3).unwrap());
        let a = alg("ring A { vars = x, y, z; ideal = 0; }");
        assert!(is_koszul_truncated(&a, 4).unwrap());
    }

    #[test]
    fn golod_examples() {
        let a = alg("ring A { vars = x, y; ideal = x^2, x*y, y^2; }");
        assert!(is_golod_truncated(&a, 6, 8).unwrap());
        let a = alg("ring A { vars = x, y; ideal = x^2, y^2; }");
        assert!(!is_golod_truncated(&a, 4, 8).unwrap());
    }

    #[test]
    fn display_is_macaulay_style() {
        let b = alg("ring B { prime = 101; vars = x, y; ideal = 0; }");
        let gens = parse_ring_spec("ring J { prime = 101; vars = x, y; ideal = x^2, x*y, y^2; }").unwrap();
        let t = minimal_betti_table(&b, gens.gens(), 3, 8).unwrap();
        assert_eq!(t.to_string(), "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n");
    }
}
