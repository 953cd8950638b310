//! Pseudo-random composite decorated graphs for tests and the corpus
//! subcommand. Construction guarantees compositeness: a spanning tree keeps
//! the graph connected, every block gets χ < 0, every gluing is unimodular
//! with nonzero fibre intersection.

use crate::manifold::{Block, BlockId, BoundaryRef, DecoratedGraph, TorusGluing, TorusId};
use num_integer::Integer;
use rand::Rng;

/// Random unimodular matrix with nonzero lower-left entry: pick coprime
/// (a, c), complete to determinant ±1 with the extended gcd, shear randomly.
pub fn random_gluing(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let c = loop {
        let c = rng.gen_range(-3..=3i64);
        if c != 0 {
            break c;
        }
    };
    let a = loop {
        let a = rng.gen_range(-3..=3i64);
        if a.gcd(&c) == 1 {
            break a;
        }
    };
    let sign: i64 = if rng.gen() { 1 } else { -1 };
    // a*x + c*y = 1, so d = x*sign, b = -y*sign gives a*d - b*c = sign
    let e = a.extended_gcd(&c);
    let mut b = -e.y * sign;
    let mut d = e.x * sign;
    let m = rng.gen_range(-2..=2i64);
    b += m * a;
    d += m * c;
    debug_assert_eq!(a * d - b * c, sign);
    [[a, b], [c, d]]
}

/// One random composite graph with the given number of blocks (≥ 1).
/// Identical rng state reproduces an identical graph.
pub fn random_composite_graph(rng: &mut impl Rng, block_count: usize) -> DecoratedGraph {
    assert!(block_count >= 1, "need at least one block");
    let n = block_count;
    let genus: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();

    // random tree on the blocks; deg tracks tree-edge ends per block
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let mut deg = vec![0u32; n];
    for i in 1..n {
        let p = rng.gen_range(0..i);
        tree.push((p, i));
        deg[p] += 1;
        deg[i] += 1;
    }

    // boundary counts: enough circles for the tree, χ < 0, even total
    let mut boundary: Vec<u32> = (0..n)
        .map(|i| {
            let min_b = if genus[i] == 0 { 3 } else { 1 };
            min_b.max(deg[i]) + rng.gen_range(0..=2)
        })
        .collect();
    if boundary.iter().sum::<u32>() % 2 == 1 {
        let i = rng.gen_range(0..n);
        boundary[i] += 1;
    }

    let blocks: Vec<Block> = (0..n)
        .map(|i| Block {
            id: BlockId(i as u32),
            genus: genus[i],
            boundary_count: boundary[i],
        })
        .collect();

    // hand out boundary circles: tree edges first, leftovers paired randomly
    let mut next_free = vec![0u32; n];
    let take = |i: usize, next_free: &mut Vec<u32>| {
        let r = BoundaryRef {
            block: BlockId(i as u32),
            index: next_free[i],
        };
        next_free[i] += 1;
        r
    };
    let mut tori: Vec<TorusGluing> = Vec::new();
    for &(p, i) in &tree {
        let plus = take(p, &mut next_free);
        let minus = take(i, &mut next_free);
        tori.push(TorusGluing {
            id: TorusId(tori.len() as u32),
            plus_end: plus,
            minus_end: minus,
            gluing: random_gluing(rng),
        });
    }
    let mut loose: Vec<BoundaryRef> = Vec::new();
    for i in 0..n {
        while next_free[i] < boundary[i] {
            loose.push(take(i, &mut next_free));
        }
    }
    // Fisher-Yates so the pairing is uniform yet seed-reproducible
    for i in (1..loose.len()).rev() {
        let j = rng.gen_range(0..=i);
        loose.swap(i, j);
    }
    for pair in loose.chunks(2) {
        tori.push(TorusGluing {
            id: TorusId(tori.len() as u32),
            plus_end: pair[0],
            minus_end: pair[1],
            gluing: random_gluing(rng),
        });
    }

    let g = DecoratedGraph::new(blocks, tori).expect("generated graph is well-formed");
    debug_assert!(g.classify().composite);
    g
}
