//! Unit×feature data matrices, binarization and the bipartite embedding.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix has no columns")]
    NoColumns,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{axis} labels: expected {expected}, got {found}")]
    LabelCount {
        axis: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("duplicate {axis} label {label:?}")]
    DuplicateLabel { axis: &'static str, label: String },
    #[error("entry ({row}, {col}) = {value} is not binary")]
    NonBinary { row: usize, col: usize, value: u64 },
}

/// Non-negative integer counts, one row per unit and one column per feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    row_labels: Vec<Label>,
    col_labels: Vec<String>,
}

impl AbundanceMatrix {
    /// Builds a matrix from rows, with labels `1..=n` and `1..=m`.
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let m = rows[0].as_ref().len();
        if m == 0 {
            return Err(MatrixError::NoColumns);
        }
        let mut entries = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(MatrixError::Ragged {
                    row: i + 1,
                    expected: m,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self::with_default_labels(n, m, entries))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_flat(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self, MatrixError> {
        if rows == 0 {
            return Err(MatrixError::Empty);
        }
        if cols == 0 {
            return Err(MatrixError::NoColumns);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Ragged {
                row: entries.len() / cols + 1,
                expected: cols,
                found: entries.len() % cols,
            });
        }
        Ok(Self::with_default_labels(rows, cols, entries))
    }

    fn with_default_labels(rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        Self {
            rows,
            cols,
            entries,
            row_labels: (1..=rows as Label).collect(),
            col_labels: (1..=cols).map(|j| j.to_string()).collect(),
        }
    }

    pub fn with_row_labels(mut self, labels: Vec<Label>) -> Result<Self, MatrixError> {
        check_labels("row", self.rows, labels.iter().map(|l| l.to_string()))?;
        self.row_labels = labels;
        Ok(self)
    }

    pub fn with_col_labels(mut self, labels: Vec<String>) -> Result<Self, MatrixError> {
        check_labels("column", self.cols, labels.iter().cloned())?;
        self.col_labels = labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&v| v <= 1)
    }
}

fn check_labels(
    axis: &'static str,
    expected: usize,
    labels: impl ExactSizeIterator<Item = String>,
) -> Result<(), MatrixError> {
    if labels.len() != expected {
        return Err(MatrixError::LabelCount {
            axis,
            expected,
            found: labels.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for label in labels {
        if !seen.insert(label.clone()) {
            return Err(MatrixError::DuplicateLabel { axis, label });
        }
    }
    Ok(())
}

/// A {0,1} matrix: the biadjacency matrix of the unit/feature bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    inner: AbundanceMatrix,
}

impl BinaryMatrix {
    /// Accepts `m` only if it is already binary.
    pub fn try_from_abundance(m: AbundanceMatrix) -> Result<Self, MatrixError> {
        if let Some(pos) = m.entries.iter().position(|&v| v > 1) {
            return Err(MatrixError::NonBinary {
                row: pos / m.cols + 1,
                col: pos % m.cols + 1,
                value: m.entries[pos],
            });
        }
        Ok(Self { inner: m })
    }

    pub fn rows(&self) -> usize {
        self.inner.rows
    }

    pub fn cols(&self) -> usize {
        self.inner.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.inner.get(row, col) == 1
    }

    pub fn row(&self, row: usize) -> &[u64] {
        self.inner.row(row)
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.inner.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.inner.col_labels
    }

    pub fn as_abundance(&self) -> &AbundanceMatrix {
        &self.inner
    }

    pub fn into_abundance(self) -> AbundanceMatrix {
        self.inner
    }
}

/// Replaces every non-zero entry by 1. Labels are kept.
pub fn binarize(m: &AbundanceMatrix) -> BinaryMatrix {
    let mut inner = m.clone();
    for v in &mut inner.entries {
        *v = u64::from(*v > 0);
    }
    BinaryMatrix { inner }
}

/// Adjacency matrix `[[0, B], [Bᵀ, 0]]` of the bipartite graph whose
/// biadjacency is `b`. Units come first, then features; labels are `1..=n+m`.
pub fn bipartite_block(b: &BinaryMatrix) -> BinaryMatrix {
    let (n, m) = (b.rows(), b.cols());
    let order = n + m;
    let mut entries = alloc::vec![0u64; order * order];
    for i in 0..n {
        for j in 0..m {
            let v = b.inner.get(i, j);
            entries[i * order + n + j] = v;
            entries[(n + j) * order + i] = v;
        }
    }
    BinaryMatrix {
        inner: AbundanceMatrix::with_default_labels(order, order, entries),
    }
}
