//! Betti numbers and Poincaré series over graded complete intersections.
//!
//! Two independent pillars live side by side:
//!
//! * [`formulas`]: closed-form Poincaré/Hilbert series and granularity
//!   formulas, evaluated in exact integer arithmetic;
//! * [`resolution`]: a brute-force minimal graded free resolution engine over
//!   a prime field, producing graded Betti tables.
//!
//! [`algebra`] supplies standard graded algebras `F_p[x]/I` and their
//! invariants, [`constructions`] the explicit ring families, and [`series`]
//! the rational generating functions both pillars speak.

pub mod algebra;
pub mod constructions;

pub mod error;
pub mod formulas;
pub mod linalg;
pub mod resolution;
pub mod rng;
pub mod series;

pub use error::{Error, Result};
