//! Labeled diagrams as packed nonnegative integer matrices.
//!
//! Row `i` is black spot `i`, column `j` is white spot `j`, and entry
//! `(i, j)` counts the lines between them. A matrix is *packed* when it
//! has no zero row and no zero column; the empty `0 x 0` matrix is the
//! unit diagram.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{DiagramCode, Monomial, MonomialWord};

/// Finite multi-index `k -> count`, e.g. the number of spots of degree `k`.
pub type MultiIndex = BTreeMap<u32, u32>;

/// A packed matrix.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledDiagram {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

/// Black and white spot degree statistics of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotTypes {
    /// `alpha[k]` = number of white spots (columns) of degree `k`.
    pub alpha: MultiIndex,
    /// `beta[k]` = number of black spots (rows) of degree `k`.
    pub beta: MultiIndex,
    /// Total number of lines.
    pub lines: u32,
}

impl LabeledDiagram {
    /// The unit diagram with no spots.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a diagram from its rows, checking shape and packedness.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Parse(format!(
                "ragged matrix: row {} has {} entries, expected {cols}",
                i + 1,
                r.len()
            )));
        }
        let d = LabeledDiagram {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        };
        d.check_packed()?;
        Ok(d)
    }

    fn check_packed(&self) -> Result<()> {
        if let Some(i) = (0..self.rows).find(|&i| self.row(i).iter().all(|&x| x == 0)) {
            return Err(Error::NotPacked(format!("row {} is zero", i + 1)));
        }
        if let Some(j) = (0..self.cols).find(|&j| (0..self.rows).all(|i| self.get(i, j) == 0)) {
            return Err(Error::NotPacked(format!("column {} is zero", j + 1)));
        }
        Ok(())
    }

    /// Parses the plain-text matrix format: one row per line,
    /// whitespace-separated nonnegative integers, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| {
                            Error::Parse(format!("matrix entry `{t}` is not a nonnegative integer"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Number of black spots.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of white spots.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Number of lines `|d|`.
    pub fn lines(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// The code `[m_1, ..., m_p]` with `m_i = prod_j x_j^{d(i,j)}`.
    pub fn code(&self) -> DiagramCode {
        let word: Vec<Monomial> = (0..self.rows)
            .map(|i| {
                Monomial::new(
                    self.row(i)
                        .iter()
                        .enumerate()
                        .map(|(j, &e)| (j as u32 + 1, e)),
                )
                .expect("packed rows are non-zero")
            })
            .collect();
        DiagramCode::new(MonomialWord::new(word)).expect("packed columns give a compact code")
    }

    /// Inverse of [`LabeledDiagram::code`].
    pub fn from_code(code: &DiagramCode) -> Self {
        let cols = code.columns() as usize;
        let mut entries = vec![0; code.len() * cols];
        for (i, m) in code.entries().iter().enumerate() {
            for &(j, e) in m.factors() {
                entries[i * cols + j as usize - 1] = e;
            }
        }
        LabeledDiagram {
            rows: code.len(),
            cols,
            entries,
        }
    }

    /// Block-diagonal juxtaposition `[d1 | d2]`.
    pub fn concat(&self, other: &LabeledDiagram) -> LabeledDiagram {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![0; rows * cols];
        for i in 0..self.rows {
            entries[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            let start = (self.rows + i) * cols + self.cols;
            entries[start..start + other.cols].copy_from_slice(other.row(i));
        }
        LabeledDiagram {
            rows,
            cols,
            entries,
        }
    }

    /// Restriction to the selected black spots (0-based rows), with the
    /// columns that become zero deleted.
    pub fn restrict_rows(&self, rows: &[usize]) -> Result<LabeledDiagram> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::OutOfRange {
                position: r,
                len: self.rows,
            });
        }
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| rows.iter().any(|&i| self.get(i, j) > 0))
            .collect();
        Ok(LabeledDiagram {
            rows: rows.len(),
            cols: keep.len(),
            entries: rows
                .iter()
                .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect(),
        })
    }

    /// Applies independent row and column permutations:
    /// new row `i` is old row `row_perm[i]`, likewise for columns.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> LabeledDiagram {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        LabeledDiagram {
            rows: self.rows,
            cols: self.cols,
            entries: row_perm
                .iter()
                .flat_map(|&i| col_perm.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect(),
        }
    }

    /// Forgets the labels of the spots.
    pub fn forget_labels(&self) -> UnlabeledDiagram {
        UnlabeledDiagram::canonical(self)
    }

    pub fn spot_types(&self) -> SpotTypes {
        let tally = |sums: Vec<u32>| {
            let mut m = MultiIndex::new();
            for s in sums {
                *m.entry(s).or_insert(0) += 1;
            }
            m
        };
        SpotTypes {
            alpha: tally(self.col_sums()),
            beta: tally(self.row_sums()),
            lines: self.lines(),
        }
    }

    /// Maximal white-spot in-degree.
    pub fn level(&self) -> u32 {
        self.col_sums().into_iter().max().unwrap_or(0)
    }

    /// Rows joined by `;`, entries by spaces.
    pub fn to_row_string(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_row_string().replace(';', " / "))
    }
}

/// A diagram up to independent permutations of rows and of columns,
/// stored as the canonical representative of its orbit.
///
/// The representative is the row-major lexicographically *largest*
/// matrix of the orbit; for a fixed row order the best column order
/// sorts the columns as vectors in decreasing order, so only row
/// permutations are enumerated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnlabeledDiagram(LabeledDiagram);

impl UnlabeledDiagram {
    fn canonical(d: &LabeledDiagram) -> Self {
        let mut perm: Vec<usize> = (0..d.rows).collect();
        let mut best: Option<LabeledDiagram> = None;
        loop {
            let candidate = sort_columns_desc(&d.permute(&perm, &(0..d.cols).collect::<Vec<_>>()));
            if best.as_ref().is_none_or(|b| candidate.entries > b.entries) {
                best = Some(candidate);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        UnlabeledDiagram(best.unwrap_or_default())
    }

    pub fn matrix(&self) -> &LabeledDiagram {
        &self.0
    }
}

impl fmt::Debug for UnlabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn sort_columns_desc(d: &LabeledDiagram) -> LabeledDiagram {
    let mut cols: Vec<Vec<u32>> = (0..d.cols)
        .map(|j| (0..d.rows).map(|i| d.get(i, j)).collect())
        .collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut entries = vec![0; d.rows * d.cols];
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            entries[i * d.cols + j] = x;
        }
    }
    LabeledDiagram {
        rows: d.rows,
        cols: d.cols,
        entries,
    }
}

/// Lexicographic successor; false when `v` was the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All packed matrices with exactly `lines` lines, as codes, in
/// canonical word order.
pub fn codes_with_lines(lines: u32) -> Vec<DiagramCode> {
    if lines == 0 {
        return vec![DiagramCode::unit()];
    }
    let n = lines as usize;
    let mut out = Vec::new();
    for rows in 1..=n {
        for cols in 1..=n {
            let mut entries = vec![0u32; rows * cols];
            fill(&mut entries, rows, cols, 0, lines, &mut out);
        }
    }
    out.sort();
    out
}

/// All codes with at most `max_lines` lines, unit included.
pub fn codes_up_to(max_lines: u32) -> Vec<DiagramCode> {
    (0..=max_lines).flat_map(codes_with_lines).collect()
}

fn fill(
    entries: &mut [u32],
    rows: usize,
    cols: usize,
    cell: usize,
    remaining: u32,
    out: &mut Vec<DiagramCode>,
) {
    let (i, j) = (cell / cols, cell % cols);
    if cell == entries.len() {
        if remaining == 0 {
            let d = LabeledDiagram {
                rows,
                cols,
                entries: entries.to_vec(),
            };
            if d.check_packed().is_ok() {
                out.push(d.code());
            }
        }
        return;
    }
    // a finished row must be non-zero
    if j == 0 && i > 0 && entries[(i - 1) * cols..i * cols].iter().all(|&x| x == 0) {
        return;
    }
    // every row not yet hit needs a line, so does every empty column
    let row_hit = entries[i * cols..cell].iter().any(|&x| x > 0);
    let rows_left = (rows - i) as u32 - u32::from(row_hit);
    let empty_cols = (0..cols)
        .filter(|&c| {
            entries[..cell]
                .iter()
                .skip(c)
                .step_by(cols)
                .all(|&x| x == 0)
        })
        .count() as u32;
    if remaining < rows_left.max(empty_cols) {
        return;
    }
    for v in 0..=remaining {
        entries[cell] = v;
        fill(entries, rows, cols, cell + 1, remaining - v, out);
    }
    entries[cell] = 0;
}
