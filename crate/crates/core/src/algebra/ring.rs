use std::fmt;

use super::monomial::Monomial;
use super::poly::HomogPoly;
use crate::error::{Error, Result};
use crate::linalg::Prime;

/// A standard graded algebra `F_p[x_1..x_e]/I` given by homogeneous
/// generators of `I`. An empty generator list is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    name: String,
    p: Prime,
    vars: Vec<String>,
    gens: Vec<HomogPoly>,
}

impl RingSpec {
    pub fn new(name: impl Into<String>, p: Prime, vars: Vec<String>, gens: Vec<HomogPoly>) -> Result<Self> {
        let e = vars.len();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::BadRing(format!("duplicate variable {v}")));
            }
        }
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != e || g.prime() != p {
                return Err(Error::BadRing("generator lives in a different polynomial ring".into()));
            }
            if g.is_zero() {
                continue;
            }
            if g.degree() == 0 {
                return Err(Error::BadRing("a nonzero constant generates the unit ideal".into()));
            }
            kept.push(g);
        }
        Ok(RingSpec { name: name.into(), p, vars, gens: kept })
    }

    /// Polynomial ring with the given variable names.
    pub fn polynomial_ring(name: impl Into<String>, p: Prime, vars: Vec<String>) -> Self {
        RingSpec { name: name.into(), p, vars, gens: Vec::new() }
    }

    /// Variables named `prefix1 .. prefixN`.
    pub fn numbered_vars(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[HomogPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Every generator has degree at least two, i.e. `I` lies in the square
    /// of the maximal ideal.
    pub fn is_minimal_presentation(&self) -> bool {
        self.gens.iter().all(|g| g.degree() >= 2)
    }

    pub fn is_monomial_ideal(&self) -> bool {
        self.gens.iter().all(HomogPoly::is_monomial)
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().map(HomogPoly::degree).max().unwrap_or(0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same polynomial ring, different ideal.
    pub fn with_gens(&self, name: impl Into<String>, gens: Vec<HomogPoly>) -> Result<Self> {
        RingSpec::new(name, self.p, self.vars.clone(), gens)
    }

    /// The ring with additional generators appended.
    pub fn extended(&self, extra: &[HomogPoly]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        RingSpec::new(self.name.clone(), self.p, self.vars.clone(), gens)
    }

    /// Generators of the maximal ideal.
    pub fn variables(&self) -> Vec<HomogPoly> {
        (0..self.nvars()).map(|i| HomogPoly::var(self.p, self.nvars(), i)).collect()
    }

    /// All monomials of degree `d`.
    pub fn power_of_maximal_ideal(&self, d: u32) -> Vec<HomogPoly> {
        super::monomial::monomials_of_degree(self.nvars(), d)
            .into_iter()
            .map(|m| HomogPoly::monomial(self.p, m))
            .collect()
    }

    pub fn monomial(&self, exps: &[u16]) -> HomogPoly {
        HomogPoly::monomial(self.p, Monomial::from_exps(exps))
    }

    pub fn fmt_poly(&self, f: &HomogPoly) -> String {
        f.fmt_with(&self.vars)
    }
}

/// `ring <name> { prime = <p>; vars = ...; ideal = ...; }` on one line.
impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ideal = if self.gens.is_empty() {
            "0".to_string()
        } else {
            self.gens.iter().map(|g| self.fmt_poly(g)).collect::<Vec<_>>().join(", ")
        };
        write!(
            f,
            "ring {} {{ prime = {}; vars = {}; ideal = {}; }}",
            self.name,
            self.p,
            self.vars.join(", "),
            ideal
        )
    }
}

/// Serialized as its ring-spec text.
impl serde::Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
