//! Explicit ring families: adequate matrices and their maximal minors, Golod
//! quotients `B/(I(U) + (x)^(s+1))`, the pairs `R -> S` realizing prescribed
//! invariants, and random sampling of regular points.

use std::fmt;

use serde::Serialize;

use crate::algebra::{min_multiplicity_check, monomials_of_degree, HomogPoly, Monomial, ProbeOptions, RingSpec};
use crate::error::{Error, Result};
use crate::linalg::Prime;
use crate::rng::SplitMix64;

/// An `s x (s+h-1)` matrix whose entries are variables `x_1..x_e` (stored
/// 0-based) or zero, satisfying the adequacy conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdequateMatrix {
    s: usize,
    h: usize,
    e: usize,
    entries: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// A cell on diagonal `1..=h` is zero or not a variable of `x`.
    DiagonalEntry,
    /// `x_n` with `n <= h` sits off diagonal `n`, or a diagonal holds the wrong variable.
    DiagonalVariable,
    /// A variable outside `x_1..x_h` occurs more than once.
    RepeatedVariable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub clause: Clause,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.clause {
            Clause::DiagonalEntry => "diagonal entry must be a variable",
            Clause::DiagonalVariable => "variable off its diagonal",
            Clause::RepeatedVariable => "variable outside x_1..x_h repeated",
        };
        write!(f, "cell ({}, {}): {what}", self.row + 1, self.col + 1)
    }
}

/// Checks the three adequacy conditions cell by cell. Rows and columns in
/// violations are 0-based; `h` is read off the shape.
pub fn validate_adequate(entries: &[Vec<Option<usize>>], e: usize) -> std::result::Result<AdequateMatrix, Vec<Violation>> {
    let s = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    if s == 0 || cols < s || entries.iter().any(|r| r.len() != cols) {
        return Err(vec![Violation { row: 0, col: 0, clause: Clause::DiagonalEntry }]);
    }
    let h = cols - s + 1;
    let mut bad = Vec::new();
    let mut seen = vec![0usize; e.max(1)];
    for (i, row) in entries.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            // diagonal n = j - i + 1 (1-based)
            let n = j as i64 - i as i64 + 1;
            let on_diag = (1..=h as i64).contains(&n);
            let violation = |clause| Violation { row: i, col: j, clause };
            match *cell {
                Some(v) if v >= e => bad.push(violation(if on_diag { Clause::DiagonalEntry } else { Clause::RepeatedVariable })),
                None if on_diag => bad.push(violation(Clause::DiagonalEntry)),
                None => {}
                Some(v) => {
                    if on_diag && v as i64 + 1 != n {
                        bad.push(violation(Clause::DiagonalVariable));
                    } else if !on_diag && v < h {
                        bad.push(violation(Clause::DiagonalVariable));
                    } else if v >= h {
                        seen[v] += 1;
                        if seen[v] > 1 {
                            bad.push(violation(Clause::RepeatedVariable));
                        }
                    }
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(AdequateMatrix { s, h, e, entries: entries.to_vec() })
    } else {
        Err(bad)
    }
}

impl AdequateMatrix {
    /// The `s x (s+h-1)` staircase: row `i` holds `x_1..x_h` starting at column `i`.
    pub fn staircase(s: usize, h: usize, e: usize) -> Result<Self> {
        if s == 0 || h == 0 || h > e {
            return Err(Error::BadParameters(format!("staircase needs s >= 1, 1 <= h <= e (got s={s}, h={h}, e={e})")));
        }
        let cols = s + h - 1;
        let entries: Vec<Vec<Option<usize>>> = (0..s)
            .map(|i| (0..cols).map(|j| if j >= i && j < i + h { Some(j - i) } else { None }).collect())
            .collect();
        validate_adequate(&entries, e).map_err(|v| Error::NotAdequate(v.iter().map(|x| x.to_string()).collect()))
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn entries(&self) -> &[Vec<Option<usize>>] {
        &self.entries
    }

    /// Same matrix with every variable index shifted by `offset` inside `e` variables.
    pub fn embedded(&self, offset: usize, e: usize) -> Vec<Vec<Option<usize>>> {
        assert!(offset + self.e <= e);
        self.entries.iter().map(|r| r.iter().map(|c| c.map(|v| v + offset)).collect()).collect()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<&str> = r.iter().map(|c| c.map_or("0", |v| names[v].as_str())).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

fn determinant(p: Prime, e: usize, m: &[Vec<Option<usize>>], rows: &[usize], cols: &[usize]) -> HomogPoly {
    let entry = |r: usize, c: usize| match m[r][c] {
        Some(v) => HomogPoly::var(p, e, v),
        None => HomogPoly::zero(p, e, 1),
    };
    if rows.len() == 1 {
        return entry(rows[0], cols[0]);
    }
    let mut acc = HomogPoly::zero(p, e, rows.len() as u32);
    for (k, &c) in cols.iter().enumerate() {
        if m[rows[0]][c].is_none() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry(rows[0], c).mul(&determinant(p, e, m, &rows[1..], &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `s x s` minors in lexicographic column order, duplicates removed.
pub fn minors_ideal(u: &AdequateMatrix, p: Prime) -> Vec<HomogPoly> {
    minors_in(p, u.e, &u.entries, u.s)
}

fn minors_in(p: Prime, e: usize, m: &[Vec<Option<usize>>], s: usize) -> Vec<HomogPoly> {
    let rows: Vec<usize> = (0..s).collect();
    let cols = m[0].len();
    let mut out: Vec<HomogPoly> = Vec::new();
    for c in combinations(cols, s) {
        let d = determinant(p, e, m, &rows, &c);
        if !d.is_zero() && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// `B/(I(U) + (x)^(s+1))` over `x1..xe`.
pub fn golod_quotient_ideal(u: &AdequateMatrix, e: usize, p: Prime) -> Result<RingSpec> {
    if u.h > e || u.e > e {
        return Err(Error::BadParameters(format!("need h <= e (got h={}, e={e})", u.h)));
    }
    let mut gens = minors_in(p, e, &u.entries, u.s);
    gens.extend(monomials_of_degree(e, u.s as u32 + 1).into_iter().map(|m| HomogPoly::monomial(p, m)));
    RingSpec::new("A", p, RingSpec::numbered_vars("x", e), gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub d: usize,
    pub c: usize,
    pub q: usize,
    pub a: usize,
}

/// A complete intersection `R = P/I` and a quotient `S = P/J~` with prescribed
/// `(edim R, codim R, codim q~R, a(phi))`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OptimalFamily {
    pub params: FamilyParams,
    pub r: RingSpec,
    pub s_tilde: RingSpec,
    /// Staircase in the `u` variables, `h = min(q, e)`; absent when that is 0.
    pub u: Option<AdequateMatrix>,
    /// Number of `u` variables.
    pub e: usize,
    pub predicted_gn: usize,
}

/// Builds the family for `d >= c >= q, a >= 0`, `a <= c`.
///
/// When `q > a`, `e = d - q + a` and the quartics sit on `u_(q+1)..u_c`; if
/// those indices exceed `e` they move to `u_(a+1)..u_(a+c-q)` instead. The
/// staircase uses `h = min(q, e)` variables.
pub fn optimal_family(d: usize, c: usize, q: usize, a: usize, p: Prime) -> Result<OptimalFamily> {
    if !(d >= c && c >= q) {
        return Err(Error::BadParameters(format!("need d >= c >= q (got d={d}, c={c}, q={q})")));
    }
    if a > c {
        return Err(Error::BadParameters(format!("need a <= c (got a={a}, c={c})")));
    }
    let e = if q > a { d - q + a } else { d };
    let nt = d - e;
    let mut vars = RingSpec::numbered_vars("t", nt);
    vars.extend(RingSpec::numbered_vars("u", e));
    let t = |i: usize| Monomial::var(d, i - 1);
    let u = |i: usize| Monomial::var(d, nt + i - 1);
    let pow = |m: Monomial, k: u32| HomogPoly::monomial(p, (0..k).fold(Monomial::one(d), |acc, _| acc.mul(&m)));
    let mut i_gens = Vec::new();
    if q > a {
        i_gens.extend((1..=q - a).map(|i| pow(t(i), 2)));
        i_gens.extend((1..=a).map(|i| pow(u(i), 2)));
        let quartics: Vec<usize> = if c <= e { (q + 1..=c).collect() } else { (a + 1..=a + c - q).collect() };
        i_gens.extend(quartics.into_iter().map(|i| pow(u(i), 4)));
    } else {
        i_gens.extend((1..=q).map(|i| pow(u(i), 2)));
        i_gens.extend((q + 1..=a).map(|i| pow(u(i), 3)));
        i_gens.extend((a + 1..=c).map(|i| pow(u(i), 4)));
    }
    let r = RingSpec::new("R", p, vars.clone(), i_gens)?;
    let h = q.min(e);
    let mut j_gens: Vec<HomogPoly> = (1..=nt).map(|i| pow(t(i), 1)).collect();
    let staircase = if h > 0 { Some(AdequateMatrix::staircase(2, h, e)?) } else { None };
    if let Some(st) = &staircase {
        j_gens.extend(minors_in(p, d, &st.embedded(nt, d), 2));
    }
    j_gens.extend(
        monomials_of_degree(e, 3)
            .into_iter()
            .map(|m| {
                let mut exps = vec![0u16; nt];
                exps.extend_from_slice(m.exps());
                HomogPoly::monomial(p, Monomial::from_exps(&exps))
            }),
    );
    let s_tilde = RingSpec::new("S", p, vars, j_gens)?;
    let sa = crate::algebra::Algebra::new(s_tilde.clone());
    if let Some(g) = r.gens().iter().find(|g| !sa.contains(g)) {
        return Err(Error::NotASubideal(r.fmt_poly(g)));
    }
    Ok(OptimalFamily {
        params: FamilyParams { d, c, q, a },
        r,
        s_tilde,
        u: staircase,
        e,
        predicted_gn: c.saturating_sub(q + 1),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sample {
    pub a: Vec<u32>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleReport {
    pub samples: Vec<Sample>,
    pub pass_ratio: f64,
}

/// Whether the first `q` of `f_i - a_i f_r` (`i < r`) define a complete
/// intersection of minimal multiplicity.
pub fn regular_point_check(e: usize, forms: &[HomogPoly], q: usize, a: &[u32], opts: &ProbeOptions) -> bool {
    let last = forms.last().expect("r >= 2");
    let shifted: Vec<HomogPoly> = forms[..q].iter().zip(a).map(|(f, &ai)| f.sub(&last.scale(ai))).collect();
    min_multiplicity_check(e, &shifted, opts)
}

/// Draws `trials` points `a` in `F_p^(r-1)`; trial `k` uses seed `seed + k`.
pub fn sample_regular_point(e: usize, forms: &[HomogPoly], q: usize, seed: u64, trials: usize) -> Result<SampleReport> {
    let r = forms.len();
    if r < 2 || q >= r {
        return Err(Error::BadParameters(format!("need r >= 2 and q < r (got r={r}, q={q})")));
    }
    let p = forms[0].prime();
    let samples: Vec<Sample> = (0..trials)
        .map(|k| {
            let trial_seed = seed.wrapping_add(k as u64);
            let mut rng = SplitMix64::new(trial_seed);
            let a: Vec<u32> = (0..r - 1).map(|_| rng.next_fp(p)).collect();
            let opts = ProbeOptions { seed: trial_seed, ..ProbeOptions::default() };
            let passed = regular_point_check(e, forms, q, &a, &opts);
            Sample { a, passed }
        })
        .collect();
    let passes = samples.iter().filter(|s| s.passed).count();
    let pass_ratio = if trials == 0 { 1.0 } else { passes as f64 / trials as f64 };
    Ok(SampleReport { samples, pass_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{invariants, Algebra, Tagged};

    fn p() -> Prime {
        Prime::new(32003).unwrap()
    }

    fn show(spec: &RingSpec, fs: &[HomogPoly]) -> Vec<String> {
        fs.iter().map(|f| spec.fmt_poly(f)).collect()
    }

    #[test]
    fn adequacy() {
        let m = vec![vec![Some(0), Some(1), None], vec![None, Some(0), Some(1)]];
        let u = validate_adequate(&m, 2).unwrap();
        assert_eq!((u.s(), u.h()), (2, 2));
        assert_eq!(AdequateMatrix::staircase(2, 4, 4).unwrap().h(), 4);
        let bad = vec![vec![Some(0), Some(0)], vec![Some(1), Some(0)]];
        let v = validate_adequate(&bad, 2).unwrap_err();
        assert_eq!(v, [Violation { row: 0, col: 1, clause: Clause::DiagonalVariable }]);
        let rep = vec![vec![Some(0), Some(2)], vec![Some(2), Some(0)]];
        let v = validate_adequate(&rep, 3).unwrap_err();
        assert_eq!(v[0].clause, Clause::RepeatedVariable);
    }

    #[test]
    fn staircase_minors() {
        let u = AdequateMatrix::staircase(2, 2, 2).unwrap();
        let spec = RingSpec::polynomial_ring("B", p(), RingSpec::numbered_vars("x", 2));
        assert_eq!(show(&spec, &minors_ideal(&u, p())), ["x1^2", "x1*x2", "x2^2"]);
        let zero_pair = validate_adequate(&[vec![Some(0), None, None], vec![None, Some(0), None]], 1);
        assert!(zero_pair.is_err());
    }

    #[test]
    fn golod_quotients() {
        let u = AdequateMatrix::staircase(2, 2, 3).unwrap();
        let spec = golod_quotient_ideal(&u, 3, p()).unwrap();
        assert_eq!(spec.gens().len(), 3 + 10);
        let u = AdequateMatrix::staircase(2, 3, 3).unwrap();
        let a = Algebra::new(golod_quotient_ideal(&u, 3, p()).unwrap());
        assert_eq!(a.dim(2), 0);
        let u = AdequateMatrix::staircase(3, 3, 3).unwrap();
        let spec = golod_quotient_ideal(&u, 3, p()).unwrap();
        assert!(spec.gens().iter().take(10).all(|g| g.degree() == 3));
        assert_eq!(spec.max_gen_degree(), 4);
    }

    #[test]
    fn optimal_family_shapes() {
        let f = optimal_family(2, 2, 1, 1, p()).unwrap();
        assert_eq!(show(&f.r, f.r.gens()), ["u1^2", "u2^4"]);
        assert_eq!(f.e, 2);
        let f = optimal_family(3, 3, 1, 0, p()).unwrap();
        assert_eq!(f.e, 2);
        assert_eq!(show(&f.r, f.r.gens()), ["t1^2", "u1^4", "u2^4"]);
        assert_eq!(optimal_family(5, 5, 2, 0, p()).unwrap().predicted_gn, 2);
        assert!(optimal_family(2, 3, 1, 0, p()).is_err());
        assert!(optimal_family(3, 2, 1, 3, p()).is_err());
    }

    #[test]
    fn optimal_family_invariants() {
        for (d, c, q, a) in [(2, 2, 1, 1), (3, 3, 1, 0), (3, 2, 2, 0), (4, 3, 1, 2), (3, 3, 3, 3), (2, 1, 0, 0)] {
            let f = optimal_family(d, c, q, a, p()).unwrap();
            let rep = invariants(&f.r, Some(&f.s_tilde), &ProbeOptions::default()).unwrap();
            assert_eq!(rep.d, Tagged::Exact(d as i64));
            assert_eq!(rep.c, Tagged::Exact(c as i64));
            assert_eq!(rep.q, Tagged::Exact(q as i64));
            assert_eq!(rep.a_phi, Some(Tagged::Exact(a as i64)), "{d} {c} {q} {a}");
            assert_eq!(rep.e_s.unwrap().value(), f.e as i64);
            assert!(rep.relations_hold());
        }
    }

    #[test]
    fn sampling() {
        let spec = RingSpec::polynomial_ring("B", p(), RingSpec::numbered_vars("x", 2));
        let (x2, y2, xy) = (spec.monomial(&[2, 0]), spec.monomial(&[0, 2]), spec.monomial(&[1, 1]));
        let rep = sample_regular_point(2, &[x2.clone(), y2.clone(), xy.clone()], 2, 1, 50).unwrap();
        assert!(rep.pass_ratio > 0.9);
        // f = (x^2, xy, y^2): a = 0 gives (x^2, xy), not regular
        let forms = [x2, xy, y2];
        let opts = ProbeOptions::default();
        assert!(!regular_point_check(2, &forms, 2, &[0, 0], &opts));
        let rep = sample_regular_point(2, &forms, 2, 7, 20).unwrap();
        assert!(rep.samples.iter().all(|s| s.passed));
        assert_eq!(sample_regular_point(2, &forms, 0, 7, 3).unwrap().pass_ratio, 1.0);
    }
}
