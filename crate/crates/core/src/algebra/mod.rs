//! Standard graded algebras `F_p[x_1..x_e]/I` and their invariants.

mod dimension;
mod graded;
mod hilbert;
mod invariants;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use dimension::{
    ci_hilbert_prediction, is_regular_sequence, krull_dimension, min_multiplicity_check, ProbeOptions, Regularity,
    Tagged,
};
pub use graded::{Algebra, DegreePiece};
pub use hilbert::{hilbert, HilbertData};
pub use invariants::{
    eliminate_linear, invariants, loewy_bound_check, quadratic_part, quotient_ideal_series, InvariantReport, LoewyCheck,
};
pub use monomial::{count_monomials, monomials_of_degree, Monomial};
pub use parse::{parse_ring_spec, parse_ring_specs, parse_ring_specs_with_prime};
pub use poly::HomogPoly;
pub use ring::RingSpec;
