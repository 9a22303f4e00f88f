use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{
    connected_components, fiedler_info, laplacian, similarity, FiedlerInfo, SimilarityMatrix,
    SpectralError, Tolerances,
};
use crate::matrix::{binarize, AbundanceMatrix};
use crate::pqtree::{PQNode, PQTree};
use crate::Label;

/// What to emit for a component without a unique spectral order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IllPosedPolicy {
    /// A P-node over the component's units.
    #[default]
    PCollapse,
    /// Order by the representative eigenvector as if the Fiedler value were simple.
    FirstVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeriationOptions {
    pub tolerances: Tolerances,
    pub policy: IllPosedPolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IllPosedReason {
    /// The Fiedler value is multiple; `basis` spans its eigenspace.
    MultipleFiedler {
        value: f64,
        multiplicity: usize,
        basis: Vec<Vec<f64>>,
    },
    /// Every Fiedler entry fell into a single tie block.
    TiedFiedler,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Non-binary input was binarized before building the similarity.
    Binarized,
    IllPosed {
        units: Vec<Label>,
        reason: IllPosedReason,
        policy: IllPosedPolicy,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComponentSpectrum {
    /// One or two units; no eigen-analysis needed.
    Trivial {
        size: usize,
    },
    Fiedler(FiedlerInfo),
}

/// A top-level connected component. Together they partition the units.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    pub units: Vec<Label>,
    pub spectrum: ComponentSpectrum,
}

/// One eigen-analysis step. Depth 0 is a top-level component, deeper entries
/// are tie blocks (or their components) analyzed recursively.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport {
    pub depth: usize,
    pub units: Vec<Label>,
    pub fiedler: FiedlerInfo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriationResult {
    pub tree: PQTree,
    pub components: Vec<ComponentReport>,
    pub blocks: Vec<BlockReport>,
    pub warnings: Vec<Warning>,
}

impl SeriationResult {
    pub fn is_ill_posed(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| matches!(w, Warning::IllPosed { .. }))
    }
}

/// Seriates the rows of a data matrix. Non-binary data is binarized first,
/// with a [`Warning::Binarized`].
pub fn seriate(
    m: &AbundanceMatrix,
    opts: &SeriationOptions,
) -> Result<SeriationResult, SpectralError> {
    let b = binarize(m);
    let mut result = seriate_similarity(&similarity(&b), opts)?;
    if !m.is_binary() {
        result.warnings.insert(0, Warning::Binarized);
    }
    Ok(result)
}

/// Seriates the units of a similarity matrix.
///
/// Components go under a P-node; a component of one or two units is a leaf
/// or a pair. Larger components are sorted by their Fiedler vector into a
/// Q-node, and each run of tied entries is seriated again on its principal
/// submatrix.
pub fn seriate_similarity(
    s: &SimilarityMatrix,
    opts: &SeriationOptions,
) -> Result<SeriationResult, SpectralError> {
    if s.order() == 0 {
        return Err(SpectralError::Empty);
    }
    let mut run = Run {
        s,
        opts,
        blocks: Vec::new(),
        warnings: Vec::new(),
    };
    let all: Vec<usize> = (0..s.order()).collect();
    let mut components = Vec::new();
    let mut children = Vec::new();
    for comp in run.components_of(&all) {
        let (node, info) = run.connected(&comp, 0)?;
        let spectrum = match info {
            Some(info) => ComponentSpectrum::Fiedler(info),
            None => ComponentSpectrum::Trivial { size: comp.len() },
        };
        components.push(ComponentReport {
            units: run.labels(&comp),
            spectrum,
        });
        children.push(node);
    }
    let root = if children.len() == 1 {
        children.pop().expect("one component")
    } else {
        PQNode::P(children)
    };
    let tree = PQTree::new(root).expect("seriation leaves are the distinct unit labels");
    Ok(SeriationResult {
        tree: tree.canonicalize(),
        components,
        blocks: run.blocks,
        warnings: run.warnings,
    })
}

struct Run<'a> {
    s: &'a SimilarityMatrix,
    opts: &'a SeriationOptions,
    blocks: Vec<BlockReport>,
    warnings: Vec<Warning>,
}

impl Run<'_> {
    fn labels(&self, units: &[usize]) -> Vec<Label> {
        units.iter().map(|&i| self.s.labels()[i]).collect()
    }

    fn leaves(&self, units: &[usize]) -> PQNode {
        PQNode::P(
            units
                .iter()
                .map(|&i| PQNode::Leaf(self.s.labels()[i]))
                .collect(),
        )
    }

    /// Components of the principal submatrix on `units`, as global indices.
    fn components_of(&self, units: &[usize]) -> Vec<Vec<usize>> {
        connected_components(&self.s.submatrix(units))
            .into_iter()
            .map(|c| c.into_iter().map(|i| units[i]).collect())
            .collect()
    }

    fn any(&mut self, units: &[usize], depth: usize) -> Result<PQNode, SpectralError> {
        let comps = self.components_of(units);
        if comps.len() == 1 {
            return Ok(self.connected(units, depth)?.0);
        }
        let mut children = Vec::with_capacity(comps.len());
        for comp in comps {
            children.push(self.connected(&comp, depth)?.0);
        }
        Ok(PQNode::P(children))
    }

    fn connected(
        &mut self,
        units: &[usize],
        depth: usize,
    ) -> Result<(PQNode, Option<FiedlerInfo>), SpectralError> {
        match units.len() {
            1 => return Ok((PQNode::Leaf(self.s.labels()[units[0]]), None)),
            2 => return Ok((self.leaves(units), None)),
            _ => {}
        }
        let tol = self.opts.tolerances;
        let l = laplacian(&self.s.submatrix(units));
        let info = fiedler_info(&l, &tol).map_err(|e| SpectralError::Component {
            units: self.labels(units),
            source: Box::new(e),
        })?;
        self.blocks.push(BlockReport {
            depth,
            units: self.labels(units),
            fiedler: info.clone(),
        });

        if info.multiplicity > 1 {
            self.warnings.push(Warning::IllPosed {
                units: self.labels(units),
                reason: IllPosedReason::MultipleFiedler {
                    value: info.value,
                    multiplicity: info.multiplicity,
                    basis: info.basis.clone(),
                },
                policy: self.opts.policy,
            });
            if self.opts.policy == IllPosedPolicy::PCollapse {
                return Ok((self.leaves(units), Some(info)));
            }
        }

        let blocks = tie_blocks(&info.vector, tol.tie_tol);
        if blocks.len() == 1 {
            self.warnings.push(Warning::IllPosed {
                units: self.labels(units),
                reason: IllPosedReason::TiedFiedler,
                policy: self.opts.policy,
            });
            return Ok((self.leaves(units), Some(info)));
        }
        let mut children = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut members: Vec<usize> = block.into_iter().map(|i| units[i]).collect();
            if members.len() == 1 {
                children.push(PQNode::Leaf(self.s.labels()[members[0]]));
            } else {
                members.sort_unstable();
                children.push(self.any(&members, depth + 1)?);
            }
        }
        Ok((PQNode::Q(children), Some(info)))
    }
}

/// Local indices sorted by Fiedler entry, split wherever consecutive entries
/// differ by more than `tie_tol·‖v‖∞`.
fn tie_blocks(v: &[f64], tie_tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let gap = tie_tol * scale;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<f64> = None;
    for i in order {
        match prev {
            Some(p) if v[i] - p <= gap => blocks.last_mut().expect("open block").push(i),
            _ => blocks.push(alloc::vec![i]),
        }
        prev = Some(v[i]);
    }
    blocks
}
