//! Spectral seriation of unit–feature interaction data.
//!
//! The pipeline takes a non-negative unit×feature matrix, binarizes it, forms
//! the unit similarity `S = B·Bᵀ`, and recursively orders units with the
//! Fiedler vector of the Laplacian `D − S`. Every admissible ordering is
//! returned at once, encoded as a [`PQTree`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON and the
//! command-line tool live in the companion `seriation` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod fixtures;
pub mod matrix;
pub mod pqtree;
pub mod spectral;

pub use fixtures::{fixture, FixtureError, FIXTURE_NAMES};
pub use matrix::{binarize, bipartite_block, AbundanceMatrix, BinaryMatrix, MatrixError};
pub use pqtree::{FrontierCount, NodeKind, PQNode, PQTree, TreeError, DEFAULT_ENUMERATION_CAP};
pub use spectral::{
    connected_components, fiedler_info, laplacian, robinson_check, seriate, seriate_similarity,
    similarity, similarity_of, smallest_eigenpairs, BlockReport, ComponentReport,
    ComponentSpectrum, EigenPair, FiedlerInfo, IllPosedPolicy, IllPosedReason, LaplacianMatrix,
    SeriationOptions, SeriationResult, SimilarityMatrix, SpectralError, Tolerances, Warning,
};

/// Identifier of a unit (a row of the data matrix). Defaults to the 1-based row index.
pub type Label = u32;
