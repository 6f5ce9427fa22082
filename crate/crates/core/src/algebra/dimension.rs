use serde::Serialize;

use super::graded::Algebra;
use super::poly::HomogPoly;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::linalg::{MatrixFp, Prime};
use crate::rng::SplitMix64;

/// A value together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "value")]
pub enum Tagged<T> {
    Exact(T),
    Heuristic(T),
}

impl<T: Copy> Tagged<T> {
    pub fn value(&self) -> T {
        match *self {
            Tagged::Exact(v) | Tagged::Heuristic(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Tagged::Exact(_))
    }

    /// Keeps the tag, replaces the value.
    pub fn map<U>(&self, f: impl FnOnce(T) -> U) -> Tagged<U> {
        match *self {
            Tagged::Exact(v) => Tagged::Exact(f(v)),
            Tagged::Heuristic(v) => Tagged::Heuristic(f(v)),
        }
    }

    /// Exact only when both inputs are.
    pub fn zip<U: Copy, V>(&self, other: &Tagged<U>, f: impl FnOnce(T, U) -> V) -> Tagged<V> {
        let v = f(self.value(), other.value());
        if self.is_exact() && other.is_exact() {
            Tagged::Exact(v)
        } else {
            Tagged::Heuristic(v)
        }
    }
}

/// Verdict of [`is_regular_sequence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "value")]
pub enum Regularity {
    Exact(bool),
    Probabilistic(bool),
}

impl Regularity {
    pub fn value(&self) -> bool {
        match *self {
            Regularity::Exact(v) | Regularity::Probabilistic(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Regularity::Exact(_))
    }
}

/// Knobs of the randomized tests.
#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub trials: usize,
    /// Degree cap; `None` means `sum(deg gens) + e + 4`.
    pub cap: Option<u32>,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { trials: 5, cap: None, seed: 0 }
    }
}

impl ProbeOptions {
    pub fn cap_for(&self, spec: &RingSpec) -> u32 {
        self.cap
            .unwrap_or_else(|| spec.gens().iter().map(HomogPoly::degree).sum::<u32>() + spec.nvars() as u32 + 4)
    }
}

/// Krull dimension of `spec`.
///
/// Monomial ideals are handled exactly: the dimension is the size of the
/// largest variable set containing the support of no generator. Otherwise the
/// last `s` variables are replaced by random linear combinations of the
/// others (cutting by `s` generic hyperplanes) and the least `s` making the
/// quotient vanish by degree `cap` is reported, by majority over the trials.
pub fn krull_dimension(spec: &RingSpec, opts: &ProbeOptions) -> Result<Tagged<usize>> {
    let e = spec.nvars();
    if spec.is_monomial_ideal() {
        return Ok(Tagged::Exact(monomial_dimension(spec)));
    }
    let cap = opts.cap_for(spec);
    let mut rng = SplitMix64::new(opts.seed);
    let mut votes = vec![0usize; e + 1];
    let mut any = false;
    for _ in 0..opts.trials.max(1) {
        let images = random_section(spec.prime(), e, e, &mut rng);
        for s in 0..=e {
            let cut = cut_by_hyperplanes(spec, &images, s);
            if Algebra::new(cut).vanishing_degree(cap).is_some() {
                votes[s] += 1;
                any = true;
                break;
            }
        }
    }
    if !any {
        return Err(Error::CapExceeded(cap));
    }
    let best = (0..=e).max_by_key(|&d| (votes[d], std::cmp::Reverse(d))).unwrap();
    Ok(Tagged::Heuristic(best))
}

fn monomial_dimension(spec: &RingSpec) -> usize {
    let e = spec.nvars();
    let supports: Vec<u64> = spec
        .gens()
        .iter()
        .map(|g| g.leading_monomial().unwrap().support().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut best = 0;
    for set in 0u64..(1u64 << e) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Random substitution data: for each `s`, the last `s` variables become
/// linear forms in the first `e - s`. Row `s` holds those `s` images.
fn random_section(p: Prime, e: usize, smax: usize, rng: &mut SplitMix64) -> Vec<Vec<Vec<u32>>> {
    (0..=smax)
        .map(|s| (0..s).map(|_| (0..e - s).map(|_| rng.next_fp(p)).collect()).collect())
        .collect()
}

fn cut_by_hyperplanes(spec: &RingSpec, images: &[Vec<Vec<u32>>], s: usize) -> RingSpec {
    let p = spec.prime();
    let e = spec.nvars();
    let kept = e - s;
    let mut subst: Vec<HomogPoly> = (0..kept).map(|i| HomogPoly::var(p, kept, i)).collect();
    for coeffs in &images[s] {
        let mut f = HomogPoly::zero(p, kept, 1);
        for (i, &c) in coeffs.iter().enumerate() {
            f = f.add(&HomogPoly::var(p, kept, i).scale(c));
        }
        subst.push(f);
    }
    let gens = spec.gens().iter().map(|g| g.substitute(&subst)).collect();
    RingSpec::new(spec.name(), p, spec.vars()[..kept].to_vec(), gens).expect("substitution keeps homogeneity")
}

/// Coefficients of `prod(1 - t^n_i) / (1 - t)^e` through degree `upto`.
pub fn ci_hilbert_prediction(e: usize, degrees: &[u32], upto: u32) -> Vec<i128> {
    let len = upto as usize + 1;
    let mut c = vec![0i128; len];
    c[0] = 1;
    for &n in degrees {
        for j in (n as usize..len).rev() {
            c[j] -= c[j - n as usize];
        }
    }
    for _ in 0..e {
        for j in 1..len {
            c[j] += c[j - 1];
        }
    }
    c
}

/// Whether homogeneous `forms` in `e` variables form a regular sequence.
///
/// For `s = e` forms the answer is exact: the quotient must vanish in degree
/// `sum(n_i - 1) + 1`. For `s < e` the Hilbert function is first compared with
/// the complete-intersection prediction (a mismatch is an exact `false`),
/// then each trial cuts by `e - s` random hyperplanes and applies the `s = e`
/// test.
pub fn is_regular_sequence(e: usize, forms: &[HomogPoly], opts: &ProbeOptions) -> Regularity {
    let s = forms.len();
    if s > e || forms.iter().any(|f| f.is_zero() || f.degree() == 0) {
        return Regularity::Exact(false);
    }
    if s == 0 {
        return Regularity::Exact(true);
    }
    let p = forms[0].prime();
    let vars = RingSpec::numbered_vars("x", e);
    let Ok(spec) = RingSpec::new("B", p, vars, forms.to_vec()) else {
        return Regularity::Exact(false);
    };
    let degrees: Vec<u32> = forms.iter().map(HomogPoly::degree).collect();
    let top = degrees.iter().map(|n| n - 1).sum::<u32>() + 1;
    let algebra = Algebra::new(spec.clone());
    if s == e {
        return Regularity::Exact(algebra.dim(top) == 0);
    }
    let predicted = ci_hilbert_prediction(e, &degrees, top);
    for (j, &want) in predicted.iter().enumerate() {
        if algebra.dim(j as u32) as i128 != want {
            return Regularity::Exact(false);
        }
    }
    let mut rng = SplitMix64::new(opts.seed);
    for _ in 0..opts.trials.max(1) {
        let images = random_section(p, e, e - s, &mut rng);
        let cut = cut_by_hyperplanes(&spec, &images, e - s);
        if Algebra::new(cut).dim(top) == 0 {
            return Regularity::Probabilistic(true);
        }
    }
    Regularity::Probabilistic(false)
}

/// Quadrics that are linearly independent and form a regular sequence, i.e.
/// define a complete intersection of minimal multiplicity.
pub fn min_multiplicity_check(e: usize, quadrics: &[HomogPoly], opts: &ProbeOptions) -> bool {
    if quadrics.iter().any(|f| f.degree() != 2) {
        return false;
    }
    if quadrics.is_empty() {
        return true;
    }
    let p = quadrics[0].prime();
    let monomials = super::monomial::monomials_of_degree(e, 2);
    let rows: Vec<Vec<i64>> = quadrics
        .iter()
        .map(|f| monomials.iter().map(|m| f.terms().find(|t| t.0 == m).map_or(0, |t| t.1 as i64)).collect())
        .collect();
    if MatrixFp::from_rows(p, &rows).map_or(0, |m| m.rank()) < quadrics.len() {
        return false;
    }
    is_regular_sequence(e, quadrics, opts).value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn spec(text: &str) -> RingSpec {
        parse_ring_spec(text).unwrap()
    }

    #[test]
    fn monomial_dimensions() {
        let o = ProbeOptions::default();
        let r = spec("ring A { vars = x, y, z; ideal = x^2, y^2; }");
        assert_eq!(krull_dimension(&r, &o).unwrap(), Tagged::Exact(1));
        let r = spec("ring A { vars = a, b, c, d; ideal = 0; }");
        assert_eq!(krull_dimension(&r, &o).unwrap(), Tagged::Exact(4));
        let r = spec("ring A { vars = x, y, z; ideal = x*y, x*z; }");
        assert_eq!(krull_dimension(&r, &o).unwrap(), Tagged::Exact(2));
    }

    #[test]
    fn probed_dimensions() {
        let o = ProbeOptions::default();
        // a single generic quadric in 3 variables
        let r = spec("ring A { vars = x, y, z; ideal = x^2 + y*z + 3*z^2; }");
        assert_eq!(krull_dimension(&r, &o).unwrap(), Tagged::Heuristic(2));
        // (x+y)^2, (x-y)^2, z^3: Artinian
        let r = spec("ring A { vars = x, y, z; ideal = x^2 + 2*x*y + y^2, x^2 - 2*x*y + y^2, z^3 + x*y*z; }");
        assert_eq!(krull_dimension(&r, &o).unwrap(), Tagged::Heuristic(0));
    }

    #[test]
    fn regular_sequences() {
        let o = ProbeOptions::default();
        let r = spec("ring A { vars = x, y; ideal = x^2, y^2; }");
        assert_eq!(is_regular_sequence(2, r.gens(), &o), Regularity::Exact(true));
        let r = spec("ring A { vars = x, y; ideal = x^2, x*y; }");
        assert_eq!(is_regular_sequence(2, r.gens(), &o), Regularity::Exact(false));
        let r = spec("ring A { vars = x, y, z, w; ideal = x*y - z*w, x^2 + y*w; }");
        assert_eq!(is_regular_sequence(4, r.gens(), &o), Regularity::Probabilistic(true));
        let r = spec("ring A { vars = x, y, z; ideal = x*y, x*z; }");
        assert_eq!(is_regular_sequence(3, r.gens(), &o), Regularity::Exact(false));
    }

    #[test]
    fn ci_prediction_matches_binomials() {
        // 1/(1-t)^3 -> C(j+2, 2)
        let c = ci_hilbert_prediction(3, &[], 5);
        assert_eq!(c, [1, 3, 6, 10, 15, 21]);
        // (1+t)^2 for two quadrics in two variables
        assert_eq!(ci_hilbert_prediction(2, &[2, 2], 4), [1, 2, 1, 0, 0]);
    }

    #[test]
    fn minimal_multiplicity() {
        let o = ProbeOptions::default();
        let r = spec("ring A { vars = x, y; ideal = x^2, y^2; }");
        assert!(min_multiplicity_check(2, r.gens(), &o));
        let r = spec("ring A { vars = x, y; ideal = x^2, x^2 + x*y, y^2; }");
        assert!(!min_multiplicity_check(2, r.gens(), &o));
    }
}
