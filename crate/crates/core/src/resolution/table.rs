use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::BiPoly;

/// How completeness of a Betti-table column was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ColumnStatus {
    /// A proven degree bound for the generators lies within the truncation.
    Proven,
    /// The last tracked degrees are generator-free by the required margin.
    Margin,
    Incomplete,
}

impl ColumnStatus {
    pub fn is_complete(self) -> bool {
        self != ColumnStatus::Incomplete
    }
}

/// Truncated graded Betti table `beta_{i,j}` for `i <= imax`, `j <= jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
    imax: usize,
    jmax: u32,
    columns: Vec<ColumnStatus>,
}

impl BettiTable {
    pub fn new(entries: BTreeMap<(usize, u32), u64>, imax: usize, jmax: u32, columns: Vec<ColumnStatus>) -> Self {
        assert_eq!(columns.len(), imax + 1);
        let entries = entries.into_iter().filter(|e| e.1 != 0).collect();
        BettiTable { entries, imax, jmax, columns }
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> u32 {
        self.jmax
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// `beta_i = sum_j beta_{i,j}` over the tracked degrees.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, u32::MAX)).map(|e| *e.1).sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.imax).map(|i| self.total(i)).collect()
    }

    pub fn column_status(&self, i: usize) -> ColumnStatus {
        self.columns[i]
    }

    pub fn complete_columns(&self) -> Vec<bool> {
        self.columns.iter().map(|c| c.is_complete()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.columns.iter().all(|c| c.is_complete())
    }

    /// Fails with the incomplete column indices, if any.
    pub fn require_complete(&self) -> Result<&Self> {
        let bad: Vec<usize> = (0..=self.imax).filter(|&i| !self.columns[i].is_complete()).collect();
        if bad.is_empty() {
            Ok(self)
        } else {
            Err(Error::TruncationTooTight(bad))
        }
    }

    /// The table of the `n`-th syzygy: `beta'_{i,j} = beta_{i+n,j}`. With
    /// `n = 1` this turns the table of `A/J` into the table of the ideal `J`.
    pub fn syzygy(&self, n: usize) -> BettiTable {
        let imax = self.imax.saturating_sub(n);
        let entries = self.entries.iter().filter(|e| e.0 .0 >= n).map(|(&(i, j), &c)| ((i - n, j), c)).collect();
        let columns = self.columns[n.min(self.imax)..].to_vec();
        let columns = if columns.len() == imax + 1 { columns } else { vec![ColumnStatus::Incomplete; imax + 1] };
        BettiTable { entries, imax, jmax: self.jmax, columns }
    }

    /// `sum beta_{i,j} y^j z^i` with the completeness flags attached.
    pub fn poincare_truncated(&self) -> TruncatedSeries {
        let series = BiPoly::from_terms(self.entries().map(|(i, j, c)| (j, i as u32, BigInt::from(c))));
        TruncatedSeries { series, imax: self.imax, jmax: self.jmax, complete_columns: self.complete_columns() }
    }
}

/// A Betti table read as a bivariate polynomial, valid for `z^i` with
/// `i <= imax` and `y^j` with `j <= jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub series: BiPoly,
    pub imax: usize,
    pub jmax: u32,
    pub complete_columns: Vec<bool>,
}

impl TruncatedSeries {
    /// `beta_i` as plain integers (`y = 1`).
    pub fn totals(&self) -> Vec<BigInt> {
        let mut v = self.series.eval_y(&BigInt::from(1)).to_z_coeffs();
        v.resize(self.imax + 1, BigInt::from(0));
        v
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: u32,
            count: u64,
        }
        let entries: Vec<Entry> = self.entries().map(|(i, j, count)| Entry { i, j, count }).collect();
        let mut st = s.serialize_struct("BettiTable", 5)?;
        st.serialize_field("columnStatus", &self.columns)?;
        st.serialize_field("completeColumns", &self.complete_columns())?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("imax", &self.imax)?;
        st.serialize_field("jmax", &self.jmax)?;
        st.end()
    }
}

/// Macaulay-style display: column `i`, row `j - i`, `.` for zero, and a
/// trailing note listing incomplete columns.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top_row = self.entries().map(|(i, j, _)| j as i64 - i as i64).max().unwrap_or(0).max(0);
        let low_row = self.entries().map(|(i, j, _)| j as i64 - i as i64).min().unwrap_or(0).min(0);
        let ncols = self.entries().map(|e| e.0).max().map_or(1, |m| m + 1);
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push((0..ncols).map(|i| i.to_string()).collect());
        cells.push((0..ncols).map(|i| self.total(i).to_string()).collect());
        for r in low_row..=top_row {
            cells.push(
                (0..ncols)
                    .map(|i| {
                        let j = r + i as i64;
                        match if j >= 0 { self.get(i, j as u32) } else { 0 } {
                            0 => ".".to_string(),
                            c => c.to_string(),
                        }
                    })
                    .collect(),
            );
        }
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let labels: Vec<String> = std::iter::once(String::new())
            .chain(std::iter::once("total:".to_string()))
            .chain((low_row..=top_row).map(|r| format!("{r}:")))
            .collect();
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        for (label, row) in labels.iter().zip(&cells) {
            let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{label:>lw$} {}", body.join(" "))?;
        }
        let bad: Vec<String> =
            (0..=self.imax).filter(|&i| !self.columns[i].is_complete()).map(|i| i.to_string()).collect();
        if !bad.is_empty() {
            writeln!(f, "incomplete columns: {}", bad.join(", "))?;
        }
        Ok(())
    }
}
