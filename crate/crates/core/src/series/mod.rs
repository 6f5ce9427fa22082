//! Exact bivariate polynomials and rational generating functions.
//!
//! Every Poincaré and Hilbert series in the crate is a [`RationalSeries`]:
//! `y` tracks internal degree and `z` homological degree (Hilbert series use
//! `z` as their single variable).

mod bipoly;
mod quasi;
mod rational;

pub use bipoly::{binomial, BiPoly, Exp};
pub use quasi::{betti_polynomials, QPoly, QuasiPolynomialPair};
pub use rational::{bipoly_from_json, bipoly_to_json, root_multiplicity, RationalSeries};
