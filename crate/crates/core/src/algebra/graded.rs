use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::monomial::{monomials_of_degree, Monomial};
use super::poly::HomogPoly;
use super::ring::RingSpec;
use crate::linalg::{Prime, SparseVec};

const NOT_STANDARD: u32 = u32::MAX;

/// Linear algebra data of one graded piece `A_j = F_p[x]_j / I_j`.
///
/// Coordinates on `F_p[x]_j` index `monomials` (largest first). `I_j` is kept
/// as a fully reduced echelon basis whose leads are the largest monomials of
/// each row, so the standard monomials (non-leads) form a basis of `A_j` and
/// every non-lead entry of a row sits on a standard monomial.
#[derive(Debug)]
pub struct DegreePiece {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    std_pos: Vec<u32>,
    basis: Vec<u32>,
    rows: Vec<SparseVec>,
    pivot: HashMap<u32, u32>,
    product_rank: usize,
    /// `A_j = 0`; rows are left implicit (every monomial lies in `I_j`).
    vanishing: bool,
    /// `NF(x_k * b)` for basis element `b` of the previous degree, at `b * e + k`.
    mul_from_prev: Vec<SparseVec>,
}

impl DegreePiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Standard monomials, largest first.
    pub fn basis(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.basis.iter().map(move |&i| &self.monomials[i as usize])
    }

    pub fn basis_monomial(&self, b: usize) -> &Monomial {
        &self.monomials[self.basis[b] as usize]
    }

    /// Position of a standard monomial in the basis.
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        let i = *self.index.get(m)?;
        match self.std_pos[i as usize] {
            NOT_STANDARD => None,
            s => Some(s as usize),
        }
    }

    /// `NF(x_k * b)` for basis element `b` of the previous degree, with `e` variables.
    pub fn mul_prev(&self, b: usize, k: usize, e: usize) -> &SparseVec {
        &self.mul_from_prev[b * e + k]
    }

    /// Dimension of `I_j`.
    pub fn ideal_rank(&self) -> usize {
        self.monomials.len() - self.basis.len()
    }

    /// Dimension of `B_1 * I_{j-1}` inside `I_j`.
    pub fn product_rank(&self) -> usize {
        self.product_rank
    }

    pub fn is_vanishing(&self) -> bool {
        self.vanishing
    }

    /// A basis of `I_j` in monomial coordinates.
    pub fn ideal_rows(&self) -> Vec<SparseVec> {
        if self.vanishing {
            (0..self.monomials.len() as u32).map(SparseVec::unit).collect()
        } else {
            self.rows.clone()
        }
    }

    /// Normal form of a vector in monomial coordinates, in basis coordinates.
    pub fn reduce(&self, p: Prime, v: &SparseVec) -> SparseVec {
        if self.vanishing {
            return SparseVec::new();
        }
        let mut acc = Vec::new();
        for &(i, c) in v.entries() {
            self.push_nf(p, i, c, &mut acc);
        }
        SparseVec::from_entries(p, acc)
    }

    fn push_nf(&self, p: Prime, i: u32, c: u32, acc: &mut Vec<(u32, u32)>) {
        let s = self.std_pos[i as usize];
        if s != NOT_STANDARD {
            acc.push((s, c));
        } else if let Some(&r) = self.pivot.get(&i) {
            let f = p.neg(c);
            for &(k, w) in &self.rows[r as usize].entries()[1..] {
                acc.push((self.std_pos[k as usize], p.mul(f, w)));
            }
        }
    }

    fn nf_of_monomial(&self, p: Prime, i: u32) -> SparseVec {
        if self.vanishing {
            return SparseVec::new();
        }
        let mut acc = Vec::new();
        self.push_nf(p, i, 1, &mut acc);
        SparseVec::from_entries(p, acc)
    }
}

/// Pivot table used while assembling `I_j`.
struct Builder {
    p: Prime,
    rows: Vec<SparseVec>,
    pivot: HashMap<u32, u32>,
}

impl Builder {
    fn insert(&mut self, mut v: SparseVec) {
        let p = self.p;
        while let Some((lead, c)) = v.lead() {
            match self.pivot.get(&lead) {
                Some(&r) => v = v.axpy(p, p.neg(c), &self.rows[r as usize]),
                None => {
                    let v = v.scale(p, p.inv(c));
                    self.pivot.insert(lead, self.rows.len() as u32);
                    self.rows.push(v);
                    return;
                }
            }
        }
    }

    /// Back-substitution to the fully reduced form, processing larger leads first.
    fn finish(mut self) -> (Vec<SparseVec>, HashMap<u32, u32>) {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&r| std::cmp::Reverse(self.rows[r].lead().unwrap().0));
        for &r in &order {
            let mut v = std::mem::take(&mut self.rows[r]);
            let mut k = 1;
            while k < v.len() {
                let (i, c) = v.entries()[k];
                match self.pivot.get(&i) {
                    Some(&s) => {
                        // rows with larger leads are already fully reduced
                        v = v.axpy(p, p.neg(c), &self.rows[s as usize]);
                    }
                    None => k += 1,
                }
            }
            self.rows[r] = v;
        }
        (self.rows, self.pivot)
    }
}

/// `A = F_p[x]/I` with a lazily grown, thread-safe cache of graded pieces.
pub struct Algebra {
    spec: RingSpec,
    monomial_ideal: bool,
    cache: Mutex<Vec<Arc<DegreePiece>>>,
}

impl Algebra {
    pub fn new(spec: RingSpec) -> Self {
        let monomial_ideal = spec.is_monomial_ideal();
        Algebra { spec, monomial_ideal, cache: Mutex::new(Vec::new()) }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn prime(&self) -> Prime {
        self.spec.prime()
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn piece(&self, j: u32) -> Arc<DegreePiece> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= j as usize {
            let d = cache.len() as u32;
            let next = self.build(d, cache.last().map(Arc::as_ref));
            cache.push(Arc::new(next));
        }
        cache[j as usize].clone()
    }

    pub fn dim(&self, j: u32) -> usize {
        self.piece(j).dim()
    }

    /// Standard monomial basis of `A_j`.
    pub fn degree_basis(&self, j: u32) -> Vec<Monomial> {
        self.piece(j).basis().cloned().collect()
    }

    /// Normal form of `f` in basis coordinates of `A_{deg f}`.
    pub fn normal_form(&self, f: &HomogPoly) -> SparseVec {
        let piece = self.piece(f.degree());
        let v = self.to_vector(&piece, f);
        piece.reduce(self.prime(), &v)
    }

    pub fn contains(&self, f: &HomogPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `f` in monomial coordinates of its degree piece.
    pub fn to_vector(&self, piece: &DegreePiece, f: &HomogPoly) -> SparseVec {
        let entries = f.terms().map(|(m, c)| (piece.index[m], c)).collect();
        SparseVec::from_entries(self.prime(), entries)
    }

    /// Basis element `b` of `A_j` as a polynomial.
    pub fn basis_poly(&self, j: u32, b: usize) -> HomogPoly {
        HomogPoly::monomial(self.prime(), self.piece(j).basis_monomial(b).clone())
    }

    /// `NF(x_k * b)` for basis element `b` of `A_j`, in basis coordinates of `A_{j+1}`.
    pub fn mul_var(&self, j: u32, b: usize, k: usize) -> SparseVec {
        self.piece(j + 1).mul_from_prev[b * self.nvars() + k].clone()
    }

    /// Full multiplication table from `A_j` to `A_{j+1}`, indexed `b * e + k`.
    pub fn mul_table(&self, j: u32) -> Arc<DegreePiece> {
        self.piece(j + 1)
    }

    pub fn ideal_rank(&self, j: u32) -> usize {
        self.piece(j).ideal_rank()
    }

    /// A basis of `I_j` as polynomials.
    pub fn ideal_basis(&self, j: u32) -> Vec<HomogPoly> {
        let piece = self.piece(j);
        let (p, e) = (self.prime(), self.nvars());
        piece
            .ideal_rows()
            .iter()
            .map(|row| {
                let mut f = HomogPoly::zero(p, e, j);
                for &(i, c) in row.entries() {
                    f.add_term(piece.monomials[i as usize].clone(), c);
                }
                f
            })
            .collect()
    }

    /// `rank I_j - rank B_1 I_{j-1}`: minimal generators of `I` in degree `j`.
    pub fn new_generators(&self, j: u32) -> usize {
        let piece = self.piece(j);
        piece.ideal_rank() - piece.product_rank()
    }

    /// Smallest `j <= limit` with `A_j = 0`, if any.
    pub fn vanishing_degree(&self, limit: u32) -> Option<u32> {
        (0..=limit).find(|&j| self.dim(j) == 0)
    }

    /// Top nonzero degree of an Artinian algebra, searched up to `limit`.
    pub fn top_degree(&self, limit: u32) -> Option<u32> {
        self.vanishing_degree(limit + 1).map(|j| j.saturating_sub(1))
    }

    fn build(&self, j: u32, prev: Option<&DegreePiece>) -> DegreePiece {
        let p = self.prime();
        let e = self.nvars();
        let monomials = monomials_of_degree(e, j);
        let index: HashMap<Monomial, u32> =
            monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let n = monomials.len();
        let prev_vanishing = prev.is_some_and(|q| q.vanishing) && j >= 1;
        let vanishing_piece = |monomials, index| DegreePiece {
            degree: j,
            monomials,
            index,
            std_pos: vec![NOT_STANDARD; n],
            basis: Vec::new(),
            rows: Vec::new(),
            pivot: HashMap::new(),
            product_rank: n,
            vanishing: true,
            mul_from_prev: Vec::new(),
        };
        if prev_vanishing {
            return vanishing_piece(monomials, index);
        }
        let gens: Vec<&HomogPoly> = self.spec.gens().iter().filter(|g| g.degree() == j).collect();

        let (rows, pivot, product_rank) = if self.monomial_ideal {
            let mut rows = Vec::new();
            let mut pivot = HashMap::new();
            let mut product_rank = 0;
            for (i, m) in monomials.iter().enumerate() {
                let mut hit = None;
                for g in self.spec.gens() {
                    if g.degree() <= j && g.leading_monomial().unwrap().divides(m) {
                        hit = Some(g.degree());
                        if g.degree() < j {
                            break;
                        }
                    }
                }
                if let Some(d) = hit {
                    if d < j {
                        product_rank += 1;
                    }
                    pivot.insert(i as u32, rows.len() as u32);
                    rows.push(SparseVec::unit(i as u32));
                }
            }
            (rows, pivot, product_rank)
        } else {
            let mut builder = Builder { p, rows: Vec::new(), pivot: HashMap::new() };
            if let Some(prev) = prev {
                for row in &prev.rows {
                    for k in 0..e {
                        let entries = row
                            .entries()
                            .iter()
                            .map(|&(i, c)| (index[&prev.monomials[i as usize].mul_var(k)], c))
                            .collect();
                        builder.insert(SparseVec::from_entries(p, entries));
                    }
                }
            }
            let product_rank = builder.rows.len();
            for g in &gens {
                let entries = g.terms().map(|(m, c)| (index[m], c)).collect();
                builder.insert(SparseVec::from_entries(p, entries));
            }
            let (rows, pivot) = builder.finish();
            (rows, pivot, product_rank)
        };

        if rows.len() == n && j >= 1 {
            let mut piece = vanishing_piece(monomials, index);
            piece.product_rank = product_rank;
            piece.mul_from_prev = prev.map_or(Vec::new(), |q| vec![SparseVec::new(); q.dim() * e]);
            return piece;
        }
        let mut std_pos = vec![NOT_STANDARD; n];
        let mut basis = Vec::new();
        for i in 0..n as u32 {
            if !pivot.contains_key(&i) {
                std_pos[i as usize] = basis.len() as u32;
                basis.push(i);
            }
        }
        let mut piece = DegreePiece {
            degree: j,
            monomials,
            index,
            std_pos,
            basis,
            rows,
            pivot,
            product_rank,
            vanishing: false,
            mul_from_prev: Vec::new(),
        };
        if let Some(prev) = prev {
            let mut table = Vec::with_capacity(prev.dim() * e);
            for m in prev.basis() {
                for k in 0..e {
                    let i = piece.index[&m.mul_var(k)];
                    table.push(piece.nf_of_monomial(p, i));
                }
            }
            piece.mul_from_prev = table;
        }
        piece
    }
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({})", self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring_spec;

    fn alg(text: &str) -> Algebra {
        Algebra::new(parse_ring_spec(text).unwrap())
    }

    fn names(a: &Algebra, j: u32) -> Vec<String> {
        a.degree_basis(j).iter().map(|m| m.fmt_with(a.spec().vars())).collect()
    }

    #[test]
    fn degree_basis_examples() {
        let a = alg("ring A { prime = 101; vars = x, y; ideal = x^2, y^2; }");
        assert_eq!(names(&a, 0), ["1"]);
        assert_eq!(names(&a, 2), ["x*y"]);
        assert_eq!(a.dim(3), 0);
        let b = alg("ring A { prime = 101; vars = x, y; ideal = x^2, x*y; }");
        assert_eq!(names(&b, 3), ["y^3"]);
    }

    #[test]
    fn non_monomial_matches_monomial_after_change_of_coordinates() {
        // (x+y)^2, (x-y)^2 span the same space as x^2 + y^2, x*y: H = 1, 2, 1
        let a = alg("ring A { prime = 101; vars = x, y; ideal = x^2 + 2*x*y + y^2, x^2 - 2*x*y + y^2; }");
        let h: Vec<usize> = (0..5).map(|j| a.dim(j)).collect();
        assert_eq!(h, [1, 2, 1, 0, 0]);
        assert_eq!(names(&a, 2), ["y^2"]);
        // x*y reduces to 0 and x^2 to -y^2
        let x2 = a.spec().monomial(&[2, 0]);
        assert_eq!(a.normal_form(&x2).entries(), &[(0, 100)]);
        assert!(a.contains(&a.spec().monomial(&[1, 1])));
    }

    #[test]
    fn multiplication_table() {
        let a = alg("ring A { prime = 101; vars = x, y; ideal = x^2 - y^2; }");
        // A_1 basis x, y; A_2 basis x*y, y^2 (x^2 = y^2)
        assert_eq!(names(&a, 2), ["x*y", "y^2"]);
        assert_eq!(a.mul_var(1, 0, 0).entries(), &[(1, 1)]);
        assert_eq!(a.mul_var(1, 1, 0).entries(), &[(0, 1)]);
        assert_eq!(a.new_generators(2), 1);
        assert_eq!(a.new_generators(3), 0);
    }
}
