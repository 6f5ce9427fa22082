//! Sparse vectors and an incremental semi-echelon basis over F_p.
//!
//! The resolution engine never materializes full matrices: it streams image
//! vectors into an [`Echelon`] and reads off kernel vectors from the
//! combinations that reduce to zero.

use std::collections::HashMap;

use super::field::Prime;

/// Sorted `(index, value)` pairs with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(u32, u32)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(p: Prime, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = p.add(last.1, v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec(out)
    }

    pub fn unit(index: u32) -> Self {
        SparseVec(vec![(index, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn lead(&self) -> Option<(u32, u32)> {
        self.0.first().copied()
    }

    pub fn get(&self, index: u32) -> u32 {
        self.0
            .binary_search_by_key(&index, |e| e.0)
            .map_or(0, |pos| self.0[pos].1)
    }

    pub fn scale(&self, p: Prime, c: u32) -> SparseVec {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|&(i, v)| (i, p.mul(v, c))).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, p: Prime, c: u32, other: &SparseVec) -> SparseVec {
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, p.mul(c, b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = p.add(a[i].1, p.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(k, v)| (k, p.mul(c, v))));
        SparseVec(out)
    }

    /// Applies a linear map given column images: `sum v_i * image(i)`.
    pub fn map<F>(&self, p: Prime, mut image: F) -> SparseVec
    where
        F: FnMut(u32) -> SparseVec,
    {
        let mut acc = Vec::new();
        for &(i, v) in &self.0 {
            acc.extend(image(i).0.into_iter().map(|(k, w)| (k, p.mul(v, w))));
        }
        SparseVec::from_entries(p, acc)
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for &(i, v) in &self.0 {
            out[i as usize] = v;
        }
        out
    }
}

struct Row {
    vec: SparseVec,
    comb: SparseVec,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent of the existing rows and became a pivot row.
    Independent,
    /// The vector reduced to zero; the payload is the tracked combination
    /// of inserted labels that sums to zero.
    Dependent(SparseVec),
}

/// Incrementally built semi-echelon basis with optional combination tracking.
///
/// Each stored row is monic at its lead (smallest) index and no two rows share
/// a lead. Inserting vector `v` with label `l` reduces `v` against the stored
/// rows; when tracking is on, the reduction records which labels were used,
/// so a zero remainder yields a linear relation among the inserted vectors.
pub struct Echelon {
    p: Prime,
    track: bool,
    rows: Vec<Row>,
    pivots: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(p: Prime, track: bool) -> Self {
        Echelon { p, track, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (with tracked combination `comb`) against the stored rows.
    pub fn reduce(&self, mut v: SparseVec, mut comb: SparseVec) -> (SparseVec, SparseVec) {
        let p = self.p;
        while let Some((lead, coeff)) = v.lead() {
            let Some(&r) = self.pivots.get(&lead) else {
                break;
            };
            let row = &self.rows[r];
            let f = p.neg(coeff);
            v = v.axpy(p, f, &row.vec);
            if self.track {
                comb = comb.axpy(p, f, &row.comb);
            }
        }
        (v, comb)
    }

    /// Inserts `v` labelled by `label` (only used when tracking).
    pub fn insert(&mut self, v: SparseVec, label: u32) -> Insertion {
        let comb = if self.track { SparseVec::unit(label) } else { SparseVec::new() };
        self.insert_with(v, comb)
    }

    pub fn insert_with(&mut self, v: SparseVec, comb: SparseVec) -> Insertion {
        let (v, comb) = self.reduce(v, comb);
        match v.lead() {
            None => Insertion::Dependent(comb),
            Some((lead, coeff)) => {
                let inv = self.p.inv(coeff);
                let row = Row { vec: v.scale(self.p, inv), comb: comb.scale(self.p, inv) };
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(row);
                Insertion::Independent
            }
        }
    }

    /// True when `v` lies in the span of the stored rows.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), SparseVec::new()).0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let p = Prime::new(7).unwrap();
        let a = SparseVec::from_entries(p, vec![(0, 1), (3, 2)]);
        let b = SparseVec::from_entries(p, vec![(3, 1), (5, 4)]);
        let c = a.axpy(p, 5, &b);
        assert_eq!(c.entries(), &[(0, 1), (5, 6)]);
    }

    #[test]
    fn tracked_relation() {
        let p = Prime::new(101).unwrap();
        let mut e = Echelon::new(p, true);
        let v0 = SparseVec::from_entries(p, vec![(0, 1), (1, 1)]);
        let v1 = SparseVec::from_entries(p, vec![(1, 1)]);
        let v2 = SparseVec::from_entries(p, vec![(0, 2), (1, 5)]);
        assert_eq!(e.insert(v0, 0), Insertion::Independent);
        assert_eq!(e.insert(v1, 1), Insertion::Independent);
        match e.insert(v2, 2) {
            Insertion::Dependent(c) => {
                // v2 = 2 v0 + 3 v1
                assert_eq!(c.get(2), 1);
                assert_eq!(c.get(0), p.reduce(-2));
                assert_eq!(c.get(1), p.reduce(-3));
            }
            other => panic!("{other:?}"),
        }
    }
}
