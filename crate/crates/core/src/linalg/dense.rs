use std::fmt;

use super::field::Prime;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFp {
    p: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        MatrixFp { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1 % p.value();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&a| p.reduce(a)).collect();
        Ok(MatrixFp { p, rows: rows.len(), cols, entries })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.p.value();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut out = MatrixFp::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = p.add(out.entries[idx], p.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// The pivot in each column is the first row (from the current one down)
    /// holding a nonzero entry.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.p;
        let modulus = p.value() as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(found) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if found != r {
                for j in 0..self.cols {
                    self.entries.swap(found * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.entries[idx] = p.mul(self.entries[idx], inv);
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let neg = modulus - f as u64;
                let base = i * self.cols + c;
                for (off, &v) in pivot_row.iter().enumerate() {
                    if v != 0 {
                        let e = &mut self.entries[base + off];
                        *e = ((*e as u64 + neg * v as u64) % modulus) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Columns of the returned matrix form a basis of the right kernel.
    ///
    /// Free variables are taken in increasing column order; the basis vector
    /// for a free column has a 1 there, zeros on the other free columns, and
    /// the negated reduced entries on the pivot columns.
    pub fn kernel_basis(&self) -> MatrixFp {
        let mut rref = self.clone();
        let pivots = rref.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = MatrixFp::zeros(self.p, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = rref.get(row, f);
                if v != 0 {
                    k.set(pc, col, self.p.neg(v));
                }
            }
        }
        k
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = MatrixFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp({}x{} mod {})", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(MatrixFp::identity(p(101), 2).rank(), 2);
        let m = MatrixFp::from_rows(p(101), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        // det [[1,1],[1,2]] = 1 mod 3, so the matrix is invertible.
        let m = MatrixFp::from_rows(p(3), &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let z = MatrixFp::zeros(p(101), 2, 3);
        let k = z.kernel_basis();
        assert_eq!(k, MatrixFp::identity(p(101), 3));

        let m = MatrixFp::from_rows(p(101), &[vec![1, 1, 0]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());

        let k = MatrixFp::identity(p(101), 2).kernel_basis();
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 2);
    }

    #[test]
    fn empty_shapes() {
        let m = MatrixFp::zeros(p(7), 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().cols(), 4);
        let m = MatrixFp::zeros(p(7), 3, 0);
        assert_eq!(m.kernel_basis().cols(), 0);
    }
}
