use std::collections::BTreeMap;
use std::sync::Arc;

use super::table::{BettiTable, ColumnStatus};
use crate::algebra::{Algebra, DegreePiece, HomogPoly, Monomial, RingSpec};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Insertion, SparseVec};

/// Generators of one free module `F_i` (degrees ascending) and their images
/// `d(e_t)` in `F_{i-1}`, each in the coordinates of degree `deg e_t`.
#[derive(Clone, Debug, Default)]
pub struct Step {
    pub degrees: Vec<u32>,
    pub images: Vec<SparseVec>,
}

/// Coordinates of a graded free module in one degree `j`: generator `t`
/// contributes the block `offsets[t] .. offsets[t] + dim A_{j - deg t}`.
struct Layout {
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(pieces: &[Arc<DegreePiece>], degrees: &[u32], j: u32) -> Layout {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &d in degrees.iter().take_while(|&&d| d <= j) {
            offsets.push(total);
            total += pieces[(j - d) as usize].dim();
        }
        Layout { offsets, total }
    }

    fn decode(&self, c: usize) -> (usize, usize) {
        let t = self.offsets.partition_point(|&o| o <= c) - 1;
        (t, c - self.offsets[t])
    }
}

/// A degree-truncated minimal graded free resolution of `M = A/J`.
pub struct Resolution {
    spec: RingSpec,
    pieces: Vec<Arc<DegreePiece>>,
    steps: Vec<Step>,
    imax: usize,
    jmax: u32,
    columns: Vec<ColumnStatus>,
    zero_module: bool,
}

impl Resolution {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        if !self.zero_module {
            for (i, step) in self.steps.iter().enumerate().take(self.imax + 1) {
                for &d in &step.degrees {
                    *entries.entry((i, d)).or_insert(0) += 1;
                }
            }
        }
        BettiTable::new(entries, self.imax, self.jmax, self.columns.clone())
    }

    /// True when no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        for i in 1..self.steps.len() {
            let (src, tgt) = (&self.steps[i], &self.steps[i - 1]);
            for (t, v) in src.images.iter().enumerate() {
                let d = src.degrees[t];
                let layout = Layout::new(&self.pieces, &tgt.degrees, d);
                if v.entries().iter().any(|&(c, _)| tgt.degrees[layout.decode(c as usize).0] == d) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks `d_{i-1} d_i = 0` on every generator, for `i >= 2`.
    pub fn is_complex(&self) -> bool {
        for i in 2..self.steps.len() {
            let (src, mid, tgt) = (&self.steps[i], &self.steps[i - 1], &self.steps[i - 2]);
            for (t, v) in src.images.iter().enumerate() {
                let j = src.degrees[t];
                if !self.apply(mid, &tgt.degrees, v, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Applies the differential with generators `step` (targets `tgt`) to `v` in degree `j`.
    fn apply(&self, step: &Step, tgt: &[u32], v: &SparseVec, j: u32) -> SparseVec {
        let p = self.spec.prime();
        let e = self.spec.nvars();
        let src_layout = Layout::new(&self.pieces, &step.degrees, j);
        let mut acc = SparseVec::new();
        for &(c, val) in v.entries() {
            let (t, b) = src_layout.decode(c as usize);
            let d = j - step.degrees[t];
            let m = self.pieces[d as usize].basis_monomial(b).clone();
            let mut w = step.images[t].clone();
            let mut deg = step.degrees[t];
            for k in 0..e {
                for _ in 0..m.exps()[k] {
                    w = mul_vec(&self.pieces, e, p, tgt, &w, deg, k);
                    deg += 1;
                }
            }
            acc = acc.axpy(p, val, &w);
        }
        acc
    }
}

/// `x_k * v` for `v` in degree `j` of the free module with generator degrees `degrees`.
fn mul_vec(
    pieces: &[Arc<DegreePiece>],
    e: usize,
    p: crate::linalg::Prime,
    degrees: &[u32],
    v: &SparseVec,
    j: u32,
    k: usize,
) -> SparseVec {
    let from = Layout::new(pieces, degrees, j);
    let to = Layout::new(pieces, degrees, j + 1);
    mul_vec_with(pieces, e, p, degrees, v, j, k, &from, &to)
}

#[allow(clippy::too_many_arguments)]
fn mul_vec_with(
    pieces: &[Arc<DegreePiece>],
    e: usize,
    p: crate::linalg::Prime,
    degrees: &[u32],
    v: &SparseVec,
    j: u32,
    k: usize,
    from: &Layout,
    to: &Layout,
) -> SparseVec {
    let mut acc = Vec::new();
    for &(c, val) in v.entries() {
        let (t, b) = from.decode(c as usize);
        let d = j - degrees[t];
        for &(b2, w) in pieces[d as usize + 1].mul_prev(b, k, e).entries() {
            acc.push(((to.offsets[t] + b2 as usize) as u32, p.mul(val, w)));
        }
    }
    SparseVec::from_entries(p, acc)
}

/// Default truncation: `imax * maxdeg(I) + maxdeg(J) + 2`.
pub fn default_jmax(a: &Algebra, module_gens: &[HomogPoly], imax: usize) -> u32 {
    let di = a.spec().max_gen_degree();
    let dj = module_gens.iter().map(HomogPoly::degree).max().unwrap_or(0);
    imax as u32 * di + dj + 2
}

/// Resolves `M = A/J` through homological degree `imax` and internal degree `jmax`.
///
/// Each step streams the images of a basis of `(F_i)_j` into a tracked
/// echelon; relations among them span the kernel in degree `j`, and those
/// independent of `A_1` times the kernel in degree `j - 1` become the new
/// generators. Every `beta_{i,j}` with `j <= jmax` is exact; the column flags
/// record whether generators beyond `jmax` are excluded.
pub fn resolve(a: &Algebra, module_gens: &[HomogPoly], imax: usize, jmax: u32) -> Result<Resolution> {
    let spec = a.spec().clone();
    let p = spec.prime();
    let e = spec.nvars();
    for g in module_gens {
        if g.nvars() != e || g.prime() != p {
            return Err(Error::BadRing("module generator lives in a different polynomial ring".into()));
        }
    }
    let pieces: Vec<Arc<DegreePiece>> = (0..=jmax + 1).map(|j| a.piece(j)).collect();
    let gens: Vec<&HomogPoly> = module_gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.degree() == 0) {
        return Ok(Resolution {
            spec,
            pieces,
            steps: vec![Step::default(); imax + 1],
            imax,
            jmax,
            columns: vec![ColumnStatus::Proven; imax + 1],
            zero_module: true,
        });
    }

    let mut steps = vec![Step { degrees: vec![0], images: vec![SparseVec::new()] }];
    let mut image_dims = Vec::new();
    if imax >= 1 {
        // generators of J A: K_j = A_1 K_{j-1} + span NF(J_j)
        let f0 = [0u32];
        let mut step = Step::default();
        let mut prev: Vec<SparseVec> = Vec::new();
        image_dims = vec![0; jmax as usize + 1];
        for j in 1..=jmax {
            let mut ech = Echelon::new(p, false);
            let mut cur = Vec::new();
            for z in &prev {
                for k in 0..e {
                    let v = mul_vec(&pieces, e, p, &f0, z, j - 1, k);
                    if ech.insert(v.clone(), 0) == Insertion::Independent {
                        cur.push(v);
                    }
                }
            }
            for g in gens.iter().filter(|g| g.degree() == j) {
                let v = a.normal_form(g);
                if ech.insert(v.clone(), 0) == Insertion::Independent {
                    cur.push(v.clone());
                    step.degrees.push(j);
                    step.images.push(v);
                }
            }
            image_dims[j as usize] = ech.rank();
            prev = cur;
        }
        steps.push(step);
    }
    for i in 1..imax {
        let (next, dims) = kernel_generators(&pieces, e, p, &steps[i], &steps[i - 1].degrees, jmax, &image_dims);
        steps.push(next);
        image_dims = dims;
    }
    let columns = certify(a, &gens, &steps, imax, jmax);
    Ok(Resolution { spec, pieces, steps, imax, jmax, columns, zero_module: false })
}

/// Next step of the resolution: minimal generators of `ker(d_i)` where `d_i`
/// has generators `src` and targets `tgt`.
///
/// `image_dims[j]` is `dim (im d_i)_j`, so `dim ker(d_i)_j` is known in
/// advance. In each degree the span of the generators found so far is built
/// first; only when it falls short of the kernel dimension are the images of
/// `(F_i)_j` eliminated with tracking to produce new kernel elements. Returns
/// the step and `dim ker(d_i)_j` for every `j <= jmax`.
fn kernel_generators(
    pieces: &[Arc<DegreePiece>],
    e: usize,
    p: crate::linalg::Prime,
    src: &Step,
    tgt: &[u32],
    jmax: u32,
    image_dims: &[usize],
) -> (Step, Vec<usize>) {
    let mut out = Step::default();
    let mut kernel_dims = vec![0; jmax as usize + 1];
    let Some(&jmin) = src.degrees.first() else {
        return (out, kernel_dims);
    };
    let last = *src.degrees.last().unwrap();
    let mut prev_images: Vec<SparseVec> = Vec::new();
    // multiples b * g_t of the kernel generators found so far, per generator
    let mut prev_multiples: Vec<Vec<SparseVec>> = Vec::new();
    let mut prev_src = Layout::new(pieces, &src.degrees, jmin);
    let mut prev_tgt = Layout::new(pieces, tgt, jmin);
    for j in jmin..=jmax {
        let ls = Layout::new(pieces, &src.degrees, j);
        let lt = Layout::new(pieces, tgt, j);
        if ls.total == 0 && j >= last {
            break;
        }
        let mut images = Vec::with_capacity(ls.total);
        for t in 0..ls.offsets.len() {
            let d = j - src.degrees[t];
            let piece = &pieces[d as usize];
            for b in 0..piece.dim() {
                if d == 0 {
                    images.push(src.images[t].clone());
                    continue;
                }
                let m = piece.basis_monomial(b);
                let k = m.first_var().expect("positive degree");
                let lower = Monomial::var(e, k).quotient_of(m);
                let b1 = pieces[d as usize - 1].basis_index(&lower).expect("standard monomials form an order ideal");
                let v = &prev_images[prev_src.offsets[t] + b1];
                images.push(mul_vec_with(pieces, e, p, tgt, v, j - 1, k, &prev_tgt, &lt));
            }
        }
        let kernel_dim = ls.total - image_dims.get(j as usize).copied().unwrap_or(0);
        let mut span = Echelon::new(p, false);
        let mut multiples: Vec<Vec<SparseVec>> = Vec::with_capacity(out.degrees.len());
        for (t, &d) in out.degrees.iter().enumerate() {
            let piece = &pieces[(j - d) as usize];
            let mut vs = Vec::with_capacity(piece.dim());
            for b in 0..piece.dim() {
                let m = piece.basis_monomial(b);
                let k = m.first_var().expect("positive degree");
                let lower = Monomial::var(e, k).quotient_of(m);
                let b1 = pieces[(j - d) as usize - 1].basis_index(&lower).expect("order ideal");
                let v = mul_vec_with(pieces, e, p, &src.degrees, &prev_multiples[t][b1], j - 1, k, &prev_src, &ls);
                if span.rank() < kernel_dim {
                    span.insert(v.clone(), 0);
                }
                vs.push(v);
            }
            multiples.push(vs);
        }
        if span.rank() < kernel_dim {
            let mut ech = Echelon::new(p, true);
            for (c, v) in images.iter().enumerate() {
                if let Insertion::Dependent(rel) = ech.insert(v.clone(), c as u32) {
                    if span.insert(rel.clone(), 0) == Insertion::Independent {
                        out.degrees.push(j);
                        out.images.push(rel.clone());
                        multiples.push(vec![rel]);
                        if span.rank() == kernel_dim {
                            break;
                        }
                    }
                }
            }
        }
        kernel_dims[j as usize] = span.rank();
        prev_images = images;
        prev_multiples = multiples;
        prev_src = ls;
        prev_tgt = lt;
    }
    (out, kernel_dims)
}

/// Column flags from proven degree bounds when available, else the margin rule.
fn certify(a: &Algebra, gens: &[&HomogPoly], steps: &[Step], imax: usize, jmax: u32) -> Vec<ColumnStatus> {
    let spec = a.spec();
    let e = spec.nvars();
    let maxdeg_j = gens.iter().map(|g| g.degree()).max().unwrap_or(0);
    let margin = spec.max_gen_degree().max(maxdeg_j).max(1);
    let top_a = a.vanishing_degree(jmax + 1).map(|v| v.saturating_sub(1));
    let poly_ring = spec.is_zero_ideal() && e > 0;
    let top_m = if poly_ring {
        let m = spec.with_gens("M", gens.iter().map(|g| (*g).clone()).collect()).ok();
        m.and_then(|m| Algebra::new(m).vanishing_degree(jmax + 1)).map(|v| v.saturating_sub(1))
    } else {
        None
    };
    let taylor = poly_ring && gens.iter().all(|g| g.is_monomial());
    let mut gen_degs: Vec<u32> = gens.iter().map(|g| g.degree()).collect();
    gen_degs.sort_unstable_by(|a, b| b.cmp(a));
    let lcm_deg = gens
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .reduce(|x, y| x.lcm(&y))
        .map_or(0, |m| m.degree());

    let mut out = Vec::with_capacity(imax + 1);
    // proven bound on the generator degrees of the previous column;
    // `Some(None)` means that column is proven empty
    let mut prev: Option<Option<u32>> = None;
    for i in 0..=imax {
        let found = steps.get(i).map_or(&[][..], |s| &s.degrees[..]);
        let bound: Option<Option<u32>> = if i == 0 {
            Some(Some(0))
        } else if poly_ring && i > e {
            Some(None)
        } else if let Some(t) = top_a {
            // (F_i)_j = 0 beyond maxdeg(F_i) + t, so kernels live below that
            if i == 1 {
                Some(gens.iter().map(|g| g.degree()).max())
            } else {
                prev.map(|b| b.map(|d| d + t))
            }
        } else if let Some(tm) = top_m {
            // finite length over a polynomial ring: regularity is the top degree
            Some(Some(i as u32 + tm))
        } else if taylor {
            Some(if i > gens.len() { None } else { Some(gen_degs.iter().take(i).sum::<u32>().min(lcm_deg)) })
        } else {
            None
        };
        let status = match bound {
            Some(None) => ColumnStatus::Proven,
            Some(Some(b)) if b <= jmax => ColumnStatus::Proven,
            _ => margin_status(found, jmax, margin),
        };
        prev = if status == ColumnStatus::Proven { Some(found.last().copied()) } else { bound };
        out.push(status);
    }
    out
}

fn margin_status(found: &[u32], jmax: u32, margin: u32) -> ColumnStatus {
    let lo = jmax.saturating_sub(margin);
    if found.iter().any(|&d| d > lo) {
        ColumnStatus::Incomplete
    } else {
        ColumnStatus::Margin
    }
}

/// Graded Betti table of `A/J` (generators of `J` given) through `(imax, jmax)`.
pub fn minimal_betti_table(a: &Algebra, module_gens: &[HomogPoly], imax: usize, jmax: u32) -> Result<BettiTable> {
    Ok(resolve(a, module_gens, imax, jmax)?.table())
}

/// Betti table of the residue field `k = A/(x_1..x_e)`.
pub fn residue_field_table(a: &Algebra, imax: usize, jmax: u32) -> Result<BettiTable> {
    minimal_betti_table(a, &a.spec().variables(), imax, jmax)
}
