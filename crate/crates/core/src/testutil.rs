//! Shared graph fixtures for unit tests across modules.

use crate::manifold::{Block, BlockId, BoundaryRef, DecoratedGraph, TorusGluing, TorusId};

/// Two genus-0 blocks with three boundary circles each, joined by
/// three tori with lower-triangular gluings; the c values are the
/// fibre intersections.
pub(crate) fn pants_pair(c: [i64; 3]) -> DecoratedGraph {
    let blocks = vec![
        Block { id: BlockId(0), genus: 0, boundary_count: 3 },
        Block { id: BlockId(1), genus: 0, boundary_count: 3 },
    ];
    let tori = (0..3)
        .map(|i| TorusGluing {
            id: TorusId(i as u32),
            plus_end: BoundaryRef { block: BlockId(0), index: i as u32 },
            minus_end: BoundaryRef { block: BlockId(1), index: i as u32 },
            gluing: [[1, 0], [c[i], 1]],
        })
        .collect();
    DecoratedGraph::new(blocks, tori).unwrap()
}

/// A single genus-1 block with two boundary circles pasted to each other.
pub(crate) fn self_pasted_block() -> DecoratedGraph {
    DecoratedGraph::new(
        vec![Block { id: BlockId(0), genus: 1, boundary_count: 2 }],
        vec![TorusGluing {
            id: TorusId(0),
            plus_end: BoundaryRef { block: BlockId(0), index: 0 },
            minus_end: BoundaryRef { block: BlockId(0), index: 1 },
            gluing: [[1, 0], [1, 1]],
        }],
    )
    .unwrap()
}

/// Two genus-1 one-boundary blocks joined by a single torus.
pub(crate) fn joined_pair(gluing: [[i64; 2]; 2]) -> DecoratedGraph {
    DecoratedGraph::new(
        vec![
            Block { id: BlockId(0), genus: 1, boundary_count: 1 },
            Block { id: BlockId(1), genus: 1, boundary_count: 1 },
        ],
        vec![TorusGluing {
            id: TorusId(0),
            plus_end: BoundaryRef { block: BlockId(0), index: 0 },
            minus_end: BoundaryRef { block: BlockId(1), index: 0 },
            gluing,
        }],
    )
    .unwrap()
}
