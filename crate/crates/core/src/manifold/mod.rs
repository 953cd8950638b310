//! Decorated multigraphs presenting graph manifolds: product blocks
//! Σ × S¹ glued along boundary tori by unimodular matrices. This module
//! owns the data model, structural validation, and first homology.

mod homology;

pub use homology::{
    CharacterModD, ClassError, CohClass, GeneratorKind, Homology,
};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusId(pub u32);

impl std::fmt::Display for BlockId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for TorusId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One product block Σ × S¹, where Σ has the given genus and number of
/// boundary circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: BlockId,
    pub genus: u32,
    pub boundary_count: u32,
}

impl Block {
    /// χ(Σ) = 2 − 2g − b; never stored, always recomputed.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count as i64
    }
}

/// A specific boundary circle of a specific block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundaryRef {
    pub block: BlockId,
    pub index: u32,
}

/// A gluing torus between two boundary circles. The matrix columns express
/// the minus side's (fibre, section) basis of H₁ of the torus in the plus
/// side's (fibre, section) basis, so the fibre-intersection number is the
/// lower-left entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGluing {
    pub id: TorusId,
    pub plus_end: BoundaryRef,
    pub minus_end: BoundaryRef,
    /// row-major [[a, b], [c, d]] with |ad − bc| = 1
    pub gluing: [[i64; 2]; 2],
}

impl TorusGluing {
    pub fn det(&self) -> i64 {
        self.gluing[0][0] * self.gluing[1][1] - self.gluing[0][1] * self.gluing[1][0]
    }

    /// The pairing of the two fibre directions inside the torus.
    pub fn fibre_intersection(&self) -> i64 {
        self.gluing[1][0]
    }

    pub fn is_self_pasting(&self) -> bool {
        self.plus_end.block == self.minus_end.block
    }

    /// The same torus with the roles of the two sides exchanged, which
    /// inverts the gluing matrix. The fibre intersection becomes
    /// −det(G)·c(T).
    pub fn reversed(&self) -> TorusGluing {
        let [[a, b], [c, d]] = self.gluing;
        let det = self.det();
        // integer inverse: adjugate divided by det, and det ∈ {±1}
        let inv = [[d * det, -b * det], [-c * det, a * det]];
        TorusGluing {
            id: self.id,
            plus_end: self.minus_end,
            minus_end: self.plus_end,
            gluing: inv,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no blocks")]
    Empty,
    #[error("duplicate block id {0}")]
    DuplicateBlockId(BlockId),
    #[error("duplicate torus id {0}")]
    DuplicateTorusId(TorusId),
    #[error("block {0} has no boundary circles")]
    NoBoundary(BlockId),
    #[error("torus {torus} references unknown block {block}")]
    UnknownBlock { torus: TorusId, block: BlockId },
    #[error("torus {torus} uses boundary index {index} of block {block}, which has only {count} circles")]
    BoundaryIndexOutOfRange {
        torus: TorusId,
        block: BlockId,
        index: u32,
        count: u32,
    },
    #[error("gluing matrix of torus {torus} has determinant {det}, expected ±1")]
    NotUnimodular { torus: TorusId, det: i64 },
    #[error("boundary circle {index} of block {block} is used by {count} torus ends, expected exactly 1")]
    UnmatchedBoundary {
        block: BlockId,
        index: u32,
        count: u32,
    },
}

/// Structure flags of a decorated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// every fibre-intersection number is nonzero
    pub reduced: bool,
    /// reduced, connected, and every block has χ < 0
    pub composite: bool,
    pub connected: bool,
    pub self_pastings: Vec<TorusId>,
    pub zero_intersection_tori: Vec<TorusId>,
    pub nonnegative_chi_blocks: Vec<BlockId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NotCompositeReason {
    NotReduced,
    NonnegativeChi,
    Disconnected,
}

/// Classification outcome: either the graph presents a composite manifold,
/// or the reasons it does not. Non-composite presentations (circle type,
/// torus type) have identically zero Thurston norm, recorded as a hint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub composite: bool,
    pub reasons: Vec<NotCompositeReason>,
    /// set on non-composite graphs: their norm vanishes identically
    pub norm_identically_zero: bool,
}

#[derive(Clone, Debug)]
pub struct DecoratedGraph {
    blocks: Vec<Block>,
    tori: Vec<TorusGluing>,
}

impl DecoratedGraph {
    /// Validates well-formedness: ids unique, ends resolve, matrices
    /// unimodular, and the boundary matching perfect. Blocks are kept
    /// sorted by id, tori likewise.
    pub fn new(mut blocks: Vec<Block>, mut tori: Vec<TorusGluing>) -> Result<Self, GraphError> {
        if blocks.is_empty() {
            return Err(GraphError::Empty);
        }
        blocks.sort_by_key(|b| b.id);
        tori.sort_by_key(|t| t.id);
        for w in blocks.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateBlockId(w[0].id));
            }
        }
        for w in tori.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateTorusId(w[0].id));
            }
        }
        let by_id: BTreeMap<BlockId, &Block> = blocks.iter().map(|b| (b.id, b)).collect();
        for b in &blocks {
            if b.boundary_count == 0 {
                return Err(GraphError::NoBoundary(b.id));
            }
        }
        let mut usage: BTreeMap<BoundaryRef, u32> = BTreeMap::new();
        for t in &tori {
            let det = t.det();
            if det.abs() != 1 {
                return Err(GraphError::NotUnimodular { torus: t.id, det });
            }
            for end in [t.plus_end, t.minus_end] {
                let Some(block) = by_id.get(&end.block) else {
                    return Err(GraphError::UnknownBlock {
                        torus: t.id,
                        block: end.block,
                    });
                };
                if end.index >= block.boundary_count {
                    return Err(GraphError::BoundaryIndexOutOfRange {
                        torus: t.id,
                        block: end.block,
                        index: end.index,
                        count: block.boundary_count,
                    });
                }
                *usage.entry(end).or_insert(0) += 1;
            }
        }
        for b in &blocks {
            for index in 0..b.boundary_count {
                let key = BoundaryRef {
                    block: b.id,
                    index,
                };
                let count = usage.get(&key).copied().unwrap_or(0);
                if count != 1 {
                    return Err(GraphError::UnmatchedBoundary {
                        block: b.id,
                        index,
                        count,
                    });
                }
            }
        }
        Ok(DecoratedGraph { blocks, tori })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tori(&self) -> &[TorusGluing] {
        &self.tori
    }

    pub fn block(&self, id: BlockId) -> Option<&Block> {
        self.blocks.iter().find(|b| b.id == id)
    }

    pub fn torus(&self, id: TorusId) -> Option<&TorusGluing> {
        self.tori.iter().find(|t| t.id == id)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn component_count(&self) -> usize {
        let mut seen: BTreeSet<BlockId> = BTreeSet::new();
        let mut components = 0;
        for start in &self.blocks {
            if seen.contains(&start.id) {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start.id]);
            seen.insert(start.id);
            while let Some(b) = queue.pop_front() {
                for t in &self.tori {
                    for (from, to) in [
                        (t.plus_end.block, t.minus_end.block),
                        (t.minus_end.block, t.plus_end.block),
                    ] {
                        if from == b && seen.insert(to) {
                            queue.push_back(to);
                        }
                    }
                }
            }
        }
        components
    }

    /// Cycle rank of the underlying multigraph: |E| − |V| + #components.
    pub fn cycle_rank(&self) -> usize {
        self.tori.len() + self.component_count() - self.blocks.len()
    }

    /// Edges of the spanning forest: breadth-first from the lowest block
    /// id, visiting tori in ascending id order; self-pastings are never
    /// tree edges.
    pub fn spanning_forest(&self) -> BTreeSet<TorusId> {
        let mut tree = BTreeSet::new();
        let mut seen: BTreeSet<BlockId> = BTreeSet::new();
        for start in &self.blocks {
            if seen.contains(&start.id) {
                continue;
            }
            seen.insert(start.id);
            let mut queue = VecDeque::from([start.id]);
            while let Some(b) = queue.pop_front() {
                for t in &self.tori {
                    if t.is_self_pasting() {
                        continue;
                    }
                    for (from, to) in [
                        (t.plus_end.block, t.minus_end.block),
                        (t.minus_end.block, t.plus_end.block),
                    ] {
                        if from == b && seen.insert(to) {
                            tree.insert(t.id);
                            queue.push_back(to);
                        }
                    }
                }
            }
        }
        tree
    }

    pub fn validate_structure(&self) -> StructureReport {
        let zero_intersection_tori: Vec<TorusId> = self
            .tori
            .iter()
            .filter(|t| t.fibre_intersection() == 0)
            .map(|t| t.id)
            .collect();
        let nonnegative_chi_blocks: Vec<BlockId> = self
            .blocks
            .iter()
            .filter(|b| b.euler_characteristic() >= 0)
            .map(|b| b.id)
            .collect();
        let self_pastings: Vec<TorusId> = self
            .tori
            .iter()
            .filter(|t| t.is_self_pasting())
            .map(|t| t.id)
            .collect();
        let connected = self.is_connected();
        let reduced = zero_intersection_tori.is_empty();
        let composite = reduced && connected && nonnegative_chi_blocks.is_empty();
        StructureReport {
            reduced,
            composite,
            connected,
            self_pastings,
            zero_intersection_tori,
            nonnegative_chi_blocks,
        }
    }

    pub fn classify(&self) -> TypeReport {
        let s = self.validate_structure();
        let mut reasons = Vec::new();
        if !s.reduced {
            reasons.push(NotCompositeReason::NotReduced);
        }
        if !s.nonnegative_chi_blocks.is_empty() {
            reasons.push(NotCompositeReason::NonnegativeChi);
        }
        if !s.connected {
            reasons.push(NotCompositeReason::Disconnected);
        }
        TypeReport {
            composite: s.composite,
            norm_identically_zero: !s.composite,
            reasons,
        }
    }

    pub fn homology_h1(&self) -> Homology {
        Homology::compute(self)
    }
}
