//! Similarity, Laplacian, eigen-analysis and the recursive spectral seriation.

mod eigen;
mod seriate;

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::matrix::{AbundanceMatrix, BinaryMatrix};
use crate::Label;

pub use eigen::{fiedler_info, smallest_eigenpairs, EigenPair, FiedlerInfo};
pub use seriate::{
    seriate, seriate_similarity, BlockReport, ComponentReport, ComponentSpectrum, IllPosedPolicy,
    IllPosedReason, SeriationOptions, SeriationResult, Warning,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not 0/1; binarize the data first")]
    NotBinary { row: usize, col: usize },
    #[error("label count {found} does not match order {expected}")]
    LabelCount { expected: usize, found: usize },
    #[error("requested {requested} eigenpairs of an order-{order} matrix")]
    TooManyEigenpairs { requested: usize, order: usize },
    #[error("Fiedler analysis needs order at least 2, got {0}")]
    TooSmall(usize),
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("eigenpair residual {residual:e} exceeds bound {bound:e}")]
    Residual { residual: f64, bound: f64 },
    #[error("second eigenvalue {value:e} is zero: the graph is disconnected, split it into components first")]
    Disconnected { value: f64 },
    #[error("tolerances must be positive and finite")]
    InvalidTolerance,
    #[error("component {units:?}: {source}")]
    Component {
        units: Vec<Label>,
        source: Box<SpectralError>,
    },
}

/// Numeric thresholds for eigen-analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenpair residual bound, relative to `max(1, ‖L‖∞)`.
    pub eig_tol: f64,
    /// Relative gap under which eigenvalues count as equal.
    pub mult_tol: f64,
    /// Fiedler entries closer than `tie_tol·‖v‖∞` are tied.
    pub tie_tol: f64,
}

impl Tolerances {
    pub const DEFAULT_EIG_TOL: f64 = 1e-8;
    pub const DEFAULT_MULT_TOL: f64 = 1e-8;
    pub const DEFAULT_TIE_TOL: f64 = 1e-8;

    pub fn new(eig_tol: f64, mult_tol: f64, tie_tol: f64) -> Result<Self, SpectralError> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(eig_tol) && ok(mult_tol) && ok(tie_tol) {
            Ok(Self {
                eig_tol,
                mult_tol,
                tie_tol,
            })
        } else {
            Err(SpectralError::InvalidTolerance)
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_tol: Self::DEFAULT_EIG_TOL,
            mult_tol: Self::DEFAULT_MULT_TOL,
            tie_tol: Self::DEFAULT_TIE_TOL,
        }
    }
}

/// Symmetric non-negative integer unit×unit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityMatrix {
    order: usize,
    entries: Vec<u64>,
    labels: Vec<Label>,
}

impl SimilarityMatrix {
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, SpectralError> {
        let n = rows.len();
        if n == 0 {
            return Err(SpectralError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(SpectralError::NotSquare {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(SpectralError::Asymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self {
            order: n,
            entries,
            labels: (1..=n as Label).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self, SpectralError> {
        if labels.len() != self.order {
            return Err(SpectralError::LabelCount {
                expected: self.order,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Principal submatrix on zero-based `indices`, labels carried along.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j));
            }
        }
        Self {
            order: k,
            entries,
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Rows and columns rearranged so that position `p` holds unit `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.order, "permutation length");
        self.submatrix(order)
    }

    /// Rearranged so that units appear in the given label order.
    pub fn reordered_by_labels(&self, labels: &[Label]) -> Option<Self> {
        if labels.len() != self.order {
            return None;
        }
        let mut order = Vec::with_capacity(labels.len());
        for l in labels {
            order.push(self.labels.iter().position(|x| x == l)?);
        }
        let mut seen = order.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == self.order).then(|| self.submatrix(&order))
    }
}

/// `S = B·Bᵀ`: entry `(i, j)` counts the features units `i` and `j` share.
pub fn similarity(b: &BinaryMatrix) -> SimilarityMatrix {
    let n = b.rows();
    let mut entries = alloc::vec![0u64; n * n];
    for i in 0..n {
        for j in i..n {
            let shared = b.row(i).iter().zip(b.row(j)).map(|(x, y)| x * y).sum();
            entries[i * n + j] = shared;
            entries[j * n + i] = shared;
        }
    }
    SimilarityMatrix {
        order: n,
        entries,
        labels: b.row_labels().to_vec(),
    }
}

/// Like [`similarity`] but for unchecked input, rejecting non-binary entries.
pub fn similarity_of(m: &AbundanceMatrix) -> Result<SimilarityMatrix, SpectralError> {
    for i in 0..m.rows() {
        if let Some(j) = m.row(i).iter().position(|&v| v > 1) {
            return Err(SpectralError::NotBinary {
                row: i + 1,
                col: j + 1,
            });
        }
    }
    let b = BinaryMatrix::try_from_abundance(m.clone()).expect("entries checked above");
    Ok(similarity(&b))
}

/// Combinatorial Laplacian `D − S`, `D = diag(S·1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl LaplacianMatrix {
    /// Wraps a dense row-major symmetric matrix.
    pub fn from_dense(order: usize, entries: Vec<f64>) -> Result<Self, SpectralError> {
        if order == 0 {
            return Err(SpectralError::Empty);
        }
        if entries.len() != order * order {
            return Err(SpectralError::NotSquare {
                row: entries.len() / order + 1,
                expected: order,
                found: entries.len() % order,
            });
        }
        for i in 0..order {
            for j in i + 1..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(SpectralError::Asymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| {
                self.entries[i * self.order..(i + 1) * self.order]
                    .iter()
                    .map(|x| x.abs())
                    .sum()
            })
            .fold(0.0, f64::max)
    }
}

pub fn laplacian(s: &SimilarityMatrix) -> LaplacianMatrix {
    let n = s.order;
    let mut entries = alloc::vec![0.0; n * n];
    for i in 0..n {
        // Integer degree so rows sum to exactly zero; the diagonal of S cancels.
        let degree: u64 = (0..n).filter(|&j| j != i).map(|j| s.get(i, j)).sum();
        for j in 0..n {
            entries[i * n + j] = if i == j {
                degree as f64
            } else {
                -(s.get(i, j) as f64)
            };
        }
    }
    LaplacianMatrix { order: n, entries }
}

/// Connected components of the graph with an edge wherever an off-diagonal
/// entry is positive. Zero-based indices, each sorted, ordered by smallest member.
pub fn connected_components(s: &SimilarityMatrix) -> Vec<Vec<usize>> {
    let n = s.order;
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = alloc::vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (v, done) in seen.iter_mut().enumerate() {
                if v != u && !*done && s.get(u, v) > 0 {
                    *done = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// True iff entries never increase moving away from the diagonal, along
/// every row and every column.
pub fn robinson_check(s: &SimilarityMatrix) -> bool {
    let n = s.order;
    for i in 0..n {
        for j in i..n.saturating_sub(1) {
            if s.get(i, j) < s.get(i, j + 1) || s.get(j, i) < s.get(j + 1, i) {
                return false;
            }
        }
        for j in 1..=i {
            if s.get(i, j - 1) > s.get(i, j) || s.get(j - 1, i) > s.get(j, i) {
                return false;
            }
        }
    }
    true
}
