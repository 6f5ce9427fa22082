//! Ring invariants of a graded complete intersection `R = B/I` and a quotient
//! `S = B/J~`: embedding dimension, codimension, quadratic codimension,
//! number of relations, and the pair invariants `m(S)`, `a(phi)`.

use serde::Serialize;

use super::dimension::{krull_dimension, ProbeOptions, Tagged};
use super::graded::Algebra;
use super::poly::HomogPoly;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::resolution::{minimal_betti_table, ColumnStatus};
use crate::series::{root_multiplicity, BiPoly};

/// `B/(I_2)`: the quadrics of `I`, as a reduced basis.
pub fn quadratic_part(spec: &RingSpec) -> Result<RingSpec> {
    let a = Algebra::new(spec.clone());
    spec.with_gens(format!("{}~", spec.name()), a.ideal_basis(2))
}

/// Presentation of `B/J` with the linear forms of `J` eliminated: each pivot
/// variable of the reduced basis of `J_1` is replaced by the rest of its row.
pub fn eliminate_linear(spec: &RingSpec) -> Result<RingSpec> {
    let a = Algebra::new(spec.clone());
    let e = spec.nvars();
    let p = spec.prime();
    let linear = a.ideal_basis(1);
    let lead_of = |f: &HomogPoly| f.leading_monomial().and_then(|m| m.first_var()).expect("nonzero linear form");
    let leads: Vec<usize> = linear.iter().map(lead_of).collect();
    let kept: Vec<usize> = (0..e).filter(|k| !leads.contains(k)).collect();
    let new_index = |k: usize| kept.iter().position(|&v| v == k).expect("kept variable");
    let n = kept.len();
    let mut images: Vec<HomogPoly> = (0..e)
        .map(|k| if leads.contains(&k) { HomogPoly::zero(p, n, 1) } else { HomogPoly::var(p, n, new_index(k)) })
        .collect();
    for (f, &lead) in linear.iter().zip(&leads) {
        let mut img = HomogPoly::zero(p, n, 1);
        for (m, c) in f.terms() {
            let k = m.first_var().unwrap();
            if k != lead {
                img = img.add(&HomogPoly::term(p, -p.signed(c), super::Monomial::var(n, new_index(k))));
            }
        }
        images[lead] = img;
    }
    let gens = spec.gens().iter().filter(|g| g.degree() >= 2).map(|g| g.substitute(&images)).collect();
    let vars = kept.iter().map(|&k| spec.vars()[k].clone()).collect();
    RingSpec::new(spec.name(), p, vars, gens)
}

/// Rank of the span of `forms` (all of degree `j`) in `B_j`.
fn span(b: &Algebra, j: u32, forms: &[HomogPoly]) -> Echelon {
    let piece = b.piece(j);
    let mut ech = Echelon::new(b.prime(), false);
    for f in forms {
        ech.insert(b.to_vector(&piece, f), 0);
    }
    ech
}

/// `rank(U ∩ W) = rank U + rank W - rank(U + W)` inside `B_j`.
fn intersection_rank(b: &Algebra, j: u32, u: &[HomogPoly], w: &[HomogPoly]) -> usize {
    let both: Vec<HomogPoly> = u.iter().chain(w).cloned().collect();
    span(b, j, u).rank() + span(b, j, w).rank() - span(b, j, &both).rank()
}

/// `B_1 * V` for forms `V`.
fn times_variables(vs: &[HomogPoly], e: usize) -> Vec<HomogPoly> {
    let mut out = Vec::new();
    for v in vs {
        for k in 0..e {
            out.push(v.mul(&HomogPoly::var(v.prime(), e, k)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub d: Tagged<i64>,
    pub c: Tagged<i64>,
    pub q: Tagged<i64>,
    pub r: Tagged<i64>,
    pub e_s: Option<Tagged<i64>>,
    pub m_s: Option<Tagged<i64>>,
    pub a_phi: Option<Tagged<i64>>,
}

impl InvariantReport {
    /// `0 <= q <= c <= d >= e >= m >= 0 <= a <= r`, over the fields present.
    pub fn relations_hold(&self) -> bool {
        let (d, c, q, r) = (self.d.value(), self.c.value(), self.q.value(), self.r.value());
        let mut ok = 0 <= q && q <= c && c <= d;
        if let Some(e) = self.e_s {
            ok &= d >= e.value();
            if let Some(m) = self.m_s {
                ok &= e.value() >= m.value() && m.value() >= 0;
            }
        }
        if let Some(a) = self.a_phi {
            ok &= 0 <= a.value() && a.value() <= r;
        }
        ok
    }
}

/// `P^Q_J` at `y = 1` for the minimal presentation `Q/J` of `spec`, and
/// whether every column of the resolution was proven.
pub fn quotient_ideal_series(spec: &RingSpec) -> Result<(BiPoly, bool)> {
    let qj = eliminate_linear(spec)?;
    if qj.is_zero_ideal() {
        return Ok((BiPoly::zero(), true));
    }
    let e = qj.nvars();
    let a = Algebra::new(qj.clone());
    let maxdeg = qj.max_gen_degree();
    let jmax = match a.top_degree(maxdeg * (e as u32 + 1) + 1) {
        Some(t) => t + e as u32 + 2,
        None => (e as u32 + 1) * maxdeg + 2,
    };
    let b = Algebra::new(RingSpec::polynomial_ring("Q", qj.prime(), qj.vars().to_vec()));
    let table = minimal_betti_table(&b, qj.gens(), e + 1, jmax)?;
    table.require_complete()?;
    let proven = (0..=e + 1).all(|i| table.column_status(i) == ColumnStatus::Proven);
    let series = table.syzygy(1).poincare_truncated().series.eval_y(&1.into());
    Ok((series, proven))
}

/// Invariants of `R` and, when given, of the pair `R -> S`.
pub fn invariants(r: &RingSpec, s: Option<&RingSpec>, opts: &ProbeOptions) -> Result<InvariantReport> {
    if !r.is_minimal_presentation() {
        return Err(Error::BadParameters("R must be minimally presented (generators of degree >= 2)".into()));
    }
    let e = r.nvars();
    let ra = Algebra::new(r.clone());
    let d = Tagged::Exact(e as i64);
    let c = krull_dimension(r, opts)?.map(|dim| e as i64 - dim as i64);
    let q = krull_dimension(&quadratic_part(r)?, opts)?.map(|dim| e as i64 - dim as i64);
    let rel = (1..=r.max_gen_degree()).map(|j| ra.new_generators(j) as i64).sum();
    let mut report = InvariantReport { d, c, q, r: Tagged::Exact(rel), e_s: None, m_s: None, a_phi: None };
    let Some(s) = s else {
        return Ok(report);
    };
    let sa = Algebra::new(s.clone());
    if let Some(g) = r.gens().iter().find(|g| !sa.contains(g)) {
        return Err(Error::NotASubideal(r.fmt_poly(g)));
    }
    report.e_s = Some(Tagged::Exact((e - sa.ideal_rank(1)) as i64));
    let (pqj, proven) = quotient_ideal_series(s)?;
    let m = root_multiplicity(&(pqj.shift(0, 2) - BiPoly::one()), -1)? as i64;
    report.m_s = Some(if proven { Tagged::Exact(m) } else { Tagged::Heuristic(m) });
    let b = Algebra::new(RingSpec::polynomial_ring("B", r.prime(), r.vars().to_vec()));
    let mut a_phi = 0;
    for j in 1..=r.max_gen_degree() {
        let ij = ra.ideal_basis(j);
        if ij.is_empty() {
            continue;
        }
        let products = times_variables(&sa.ideal_basis(j - 1), e);
        a_phi += (ij.len() - intersection_rank(&b, j, &ij, &products)) as i64;
    }
    report.a_phi = Some(Tagged::Exact(a_phi));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoewyCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub exact: bool,
}

/// `codim R - 1 <= rank L_1 + rank(I~_2 / (I~_2 ∩ B_1 L_1))`.
pub fn loewy_bound_check(r: &RingSpec, l: &[HomogPoly], opts: &ProbeOptions) -> Result<LoewyCheck> {
    let e = r.nvars();
    let c = krull_dimension(r, opts)?.map(|dim| e as i64 - dim as i64);
    let b = Algebra::new(RingSpec::polynomial_ring("B", r.prime(), r.vars().to_vec()));
    let l1: Vec<HomogPoly> = l.iter().filter(|f| f.degree() == 1).cloned().collect();
    let rank_l1 = span(&b, 1, &l1).rank();
    let i2 = Algebra::new(r.clone()).ideal_basis(2);
    let products = times_variables(&l1, e);
    let rhs = (rank_l1 + i2.len() - intersection_rank(&b, 2, &i2, &products)) as i64;
    let lhs = c.value() - 1;
    Ok(LoewyCheck { lhs, rhs, holds: lhs <= rhs, exact: c.is_exact() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn spec(text: &str) -> RingSpec {
        parse_ring_spec(text).unwrap()
    }

    #[test]
    fn quadrics_only() {
        let q = quadratic_part(&spec("ring R { vars = x, y; ideal = x^2, y^3; }")).unwrap();
        assert_eq!(q.gens().len(), 1);
        assert_eq!(q.fmt_poly(&q.gens()[0]), "x^2");
    }

    #[test]
    fn elimination_drops_linear_forms() {
        let s = spec("ring S { vars = t, u, v; ideal = t - u, t^2 + v^2, u*v; }");
        let q = eliminate_linear(&s).unwrap();
        assert_eq!(q.vars(), ["u", "v"]);
        let shown: Vec<String> = q.gens().iter().map(|g| q.fmt_poly(g)).collect();
        assert_eq!(shown, ["u^2 + v^2", "u*v"]);
    }

    #[test]
    fn quadric_pair_and_square_of_maximal_ideal() {
        let r = spec("ring R { vars = u1, u2; ideal = u1^2, u2^2; }");
        let s = spec("ring S { vars = u1, u2; ideal = u1^2, u1*u2, u2^2; }");
        let rep = invariants(&r, Some(&s), &ProbeOptions::default()).unwrap();
        assert_eq!(rep.d, Tagged::Exact(2));
        assert_eq!(rep.c, Tagged::Exact(2));
        assert_eq!(rep.q, Tagged::Exact(2));
        assert_eq!(rep.r, Tagged::Exact(2));
        assert_eq!(rep.e_s, Some(Tagged::Exact(2)));
        assert_eq!(rep.m_s, Some(Tagged::Exact(2)));
        assert_eq!(rep.a_phi, Some(Tagged::Exact(2)));
        assert!(rep.relations_hold());
    }

    #[test]
    fn containment_is_checked() {
        let r = spec("ring R { vars = u1, u2; ideal = u1^2, u2^2; }");
        let s = spec("ring S { vars = u1, u2; ideal = u1*u2; }");
        assert!(matches!(invariants(&r, Some(&s), &ProbeOptions::default()), Err(Error::NotASubideal(_))));
    }

    #[test]
    fn loewy_examples() {
        let r = spec("ring R { vars = u1, u2; ideal = u1^2, u2^2; }");
        let chk = loewy_bound_check(&r, &[], &ProbeOptions::default()).unwrap();
        assert_eq!((chk.lhs, chk.rhs, chk.holds), (1, 2, true));
        let r = spec("ring R { vars = u1, u2; ideal = u1^3; }");
        let l = [HomogPoly::var(r.prime(), 2, 0)];
        let chk = loewy_bound_check(&r, &l, &ProbeOptions::default()).unwrap();
        assert_eq!(chk.lhs, 0);
        assert!(chk.holds);
    }
}
