//! Mod-d characters on decorated graphs and finite covers of them.
//!
//! A torus gluing with fibre intersection c coprime to d carries a unique
//! mod-d character evaluating to 1 on both adjacent fibre images; gluing
//! these across the graph into a global character α with α(θ_B) = 1 is
//! obstructed per block by the sum of the boundary residues. The cover
//! constructions (self-pasting elimination, cyclic covers of a character)
//! return both the covering graph and an explicit bookkeeping pattern
//! recording sheet counts, covering degrees, and circle attachments.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{solve_mod, IntMatrix};
use crate::manifold::{
    Block, BlockId, BoundaryRef, CharacterModD, ClassError, DecoratedGraph, GeneratorKind,
    NotCompositeReason, TorusGluing, TorusId,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("graph is not composite: {reasons:?}")]
    NotComposite { reasons: Vec<NotCompositeReason> },
    #[error("fibre intersection {c} of torus {torus} shares a factor with the modulus {modulus}")]
    NotCoprime { torus: TorusId, c: i64, modulus: i64 },
    #[error("torus {torus} has fibre intersection zero")]
    ZeroIntersection { torus: TorusId },
    #[error("modulus {0} is not admissible, expected at least 2")]
    BadModulus(i64),
    #[error("boundary degree {circle_degree} does not divide the total degree {degree}")]
    NotDivisible { degree: i64, circle_degree: i64 },
    #[error("cover bookkeeping is not realizable: {0}")]
    NotRealizable(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// The character of a single gluing torus, stored by its residues on the
/// plus side's (fibre, section) basis. It is the unique mod-d functional
/// taking the value 1 on the fibre images of both adjacent blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorusCharacter {
    torus: TorusId,
    modulus: i64,
    /// residues on (fibre_+, section_+)
    residues: [i64; 2],
}

impl TorusCharacter {
    pub fn torus(&self) -> TorusId {
        self.torus
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn residues(&self) -> [i64; 2] {
        self.residues
    }

    /// Value on a curve with the given plus-basis coordinates, in [0, d).
    pub fn eval(&self, coords: [i64; 2]) -> i64 {
        let acc = coords[0] as i128 * self.residues[0] as i128
            + coords[1] as i128 * self.residues[1] as i128;
        acc.rem_euclid(self.modulus as i128) as i64
    }

    /// Value on the plus block's section direction.
    pub fn plus_section_value(&self) -> i64 {
        self.residues[1]
    }

    /// Value on the minus block's section direction, read through the
    /// gluing matrix (its second column).
    pub fn minus_section_value(&self, t: &TorusGluing) -> i64 {
        self.eval([t.gluing[0][1], t.gluing[1][1]])
    }
}

fn mod_inverse_i64(a: i64, d: i64) -> Option<i64> {
    let a = a.rem_euclid(d);
    let e = a.extended_gcd(&d);
    if e.gcd == 1 {
        Some(e.x.rem_euclid(d))
    } else {
        None
    }
}

/// The character of one gluing torus: value 1 on the fibre coming from
/// either side, section residue c⁻¹(1 − a) with c⁻¹ the inverse mod d.
pub fn alpha_on_torus(t: &TorusGluing, d: i64) -> Result<TorusCharacter, CoverError> {
    if d < 2 {
        return Err(CoverError::BadModulus(d));
    }
    let c = t.fibre_intersection();
    if c == 0 {
        return Err(CoverError::ZeroIntersection { torus: t.id });
    }
    let inv = mod_inverse_i64(c, d).ok_or(CoverError::NotCoprime {
        torus: t.id,
        c,
        modulus: d,
    })?;
    let a = t.gluing[0][0];
    let section = (inv as i128 * (1 - a as i128)).rem_euclid(d as i128) as i64;
    let tc = TorusCharacter {
        torus: t.id,
        modulus: d,
        residues: [1, section],
    };
    assert_eq!(tc.eval([1, 0]), 1, "plus fibre must evaluate to 1");
    assert_eq!(
        tc.eval([t.gluing[0][0], t.gluing[1][0]]),
        1,
        "minus fibre must evaluate to 1"
    );
    Ok(tc)
}

/// The pairing of a surface-direction boundary class against the relative
/// fundamental class: the sum of the per-circle residues mod d. Zero means
/// the class extends over the block as it stands.
pub fn extension_obstruction(block: &Block, residues: &[i64], d: i64) -> i64 {
    assert_eq!(
        residues.len(),
        block.boundary_count as usize,
        "one residue per boundary circle of block {}",
        block.id
    );
    assert!(d >= 1, "modulus must be positive");
    let sum: i128 = residues.iter().map(|&r| r as i128).sum();
    sum.rem_euclid(d as i128) as i64
}

/// One block whose boundary residues do not sum to zero, together with the
/// order of the surface cover that kills the obstruction: d^(2g + b − 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockObstruction {
    pub block: BlockId,
    pub residue: i64,
    pub cover_order: BigInt,
}

impl Serialize for BlockObstruction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockObstruction", 3)?;
        st.serialize_field("block", &self.block)?;
        st.serialize_field("residue", &self.residue)?;
        st.serialize_field("cover_order", &self.cover_order.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub modulus: i64,
    pub blocks: Vec<BlockObstruction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueOutcome {
    Character(CharacterModD),
    Obstructed(ObstructionReport),
}

fn power(base: i64, exp: u32) -> BigInt {
    let b = BigInt::from(base);
    (0..exp).fold(BigInt::one(), |acc, _| acc * &b)
}

/// Glues the per-torus characters into a single character on the graph's
/// first homology with value 1 on every block fibre. Per block, the
/// boundary residues (plus-side section values, minus-side values read
/// through the gluing) must sum to zero mod d; otherwise the obstructed
/// blocks are reported together with the surface-cover order that would
/// remove the obstruction.
pub fn glue_character(g: &DecoratedGraph, d: i64) -> Result<GlueOutcome, CoverError> {
    let ty = g.classify();
    if !ty.composite {
        return Err(CoverError::NotComposite {
            reasons: ty.reasons,
        });
    }
    if d < 2 {
        return Err(CoverError::BadModulus(d));
    }

    // surface-direction residue at every boundary circle
    let mut circle_residue: BTreeMap<BoundaryRef, i64> = BTreeMap::new();
    for t in g.tori() {
        let tc = alpha_on_torus(t, d)?;
        circle_residue.insert(t.plus_end, tc.plus_section_value());
        circle_residue.insert(t.minus_end, tc.minus_section_value(t));
    }

    let mut obstructed = Vec::new();
    for b in g.blocks() {
        let residues: Vec<i64> = (0..b.boundary_count)
            .map(|index| circle_residue[&BoundaryRef { block: b.id, index }])
            .collect();
        let r = extension_obstruction(b, &residues, d);
        if r != 0 {
            obstructed.push(BlockObstruction {
                block: b.id,
                residue: r,
                cover_order: power(d, 2 * b.genus + b.boundary_count - 1),
            });
        }
    }
    if !obstructed.is_empty() {
        return Ok(GlueOutcome::Obstructed(ObstructionReport {
            modulus: d,
            blocks: obstructed,
        }));
    }

    // mod-d system: gluing relations, fibres pinned to 1, free boundary
    // generators pinned to the per-circle residues
    let h = g.homology_h1();
    let n = h.generator_count();
    let relations = h.relation_matrix();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(relations.rows() + n);
    let mut rhs: Vec<BigInt> = Vec::with_capacity(relations.rows() + n);
    for r in 0..relations.rows() {
        rows.push(
            relations
                .row(r)
                .iter()
                .map(|x| x.to_i64().expect("relation coefficients fit in i64"))
                .collect(),
        );
        rhs.push(BigInt::zero());
    }
    for (i, kind) in h.generator_kinds().iter().enumerate() {
        let target = match kind {
            GeneratorKind::Fibre { .. } => 1,
            GeneratorKind::Boundary { block, index } => circle_residue[&BoundaryRef {
                block: *block,
                index: *index,
            }],
            _ => continue,
        };
        let mut row = vec![0i64; n];
        row[i] = 1;
        rows.push(row);
        rhs.push(BigInt::from(target));
    }
    let sol = solve_mod(&IntMatrix::from_rows(&rows), &rhs, &BigInt::from(d))
        .expect("vanishing obstructions make the gluing system solvable");
    let residues: Vec<i64> = sol
        .particular
        .iter()
        .map(|x| x.to_i64().expect("residues fit in i64"))
        .collect();
    let alpha = h.character_mod(d, &residues)?;
    for b in g.blocks() {
        let fibre = h.fibre_class(b.id).expect("every block has a fibre class");
        let value = alpha.eval(&h, &fibre).expect("character matches homology");
        assert!(value.is_one(), "glued character must send every fibre to 1");
    }
    Ok(GlueOutcome::Character(alpha))
}

/// One covering block: its id in the covering graph and the two covering
/// degrees, along the fibre and along the base surface. The lifted
/// surface satisfies χ(Σ̃) = base_degree · χ(Σ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLift {
    pub block: BlockId,
    pub fibre_degree: i64,
    pub base_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCoverFamily {
    pub base: BlockId,
    pub lifts: Vec<BlockLift>,
}

/// One covering torus with the covering degrees of the boundary circles it
/// glues and the circles it attaches to in the covering graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorusLift {
    pub torus: TorusId,
    pub plus_circle_degree: i64,
    pub minus_circle_degree: i64,
    pub plus_end: BoundaryRef,
    pub minus_end: BoundaryRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusCoverFamily {
    pub base: TorusId,
    pub lifts: Vec<TorusLift>,
}

/// Bookkeeping for a finite cover of a decorated graph: the total degree
/// and, for every base block and torus, the list of lifts with their
/// covering degrees and attachments. Deterministic: lifts are listed by
/// ascending sheet label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverPattern {
    pub degree: i64,
    pub blocks: Vec<BlockCoverFamily>,
    pub tori: Vec<TorusCoverFamily>,
}

impl CoverPattern {
    /// The degree-1 pattern mapping a graph to itself.
    pub fn identity(g: &DecoratedGraph) -> CoverPattern {
        CoverPattern {
            degree: 1,
            blocks: g
                .blocks()
                .iter()
                .map(|b| BlockCoverFamily {
                    base: b.id,
                    lifts: vec![BlockLift {
                        block: b.id,
                        fibre_degree: 1,
                        base_degree: 1,
                    }],
                })
                .collect(),
            tori: g
                .tori()
                .iter()
                .map(|t| TorusCoverFamily {
                    base: t.id,
                    lifts: vec![TorusLift {
                        torus: t.id,
                        plus_circle_degree: 1,
                        minus_circle_degree: 1,
                        plus_end: t.plus_end,
                        minus_end: t.minus_end,
                    }],
                })
                .collect(),
        }
    }
}

/// Genus of a covering surface from the Euler characteristic bookkeeping
/// 2 − 2g̃ − b̃ = degree · χ.
fn genus_from_euler(chi: i64, surface_degree: i64, lifted_boundary: i64) -> Result<u32, CoverError> {
    let twice = 2 - surface_degree * chi - lifted_boundary;
    if twice < 0 || twice % 2 != 0 {
        return Err(CoverError::NotRealizable(format!(
            "no non-negative integral genus with 2 − 2g = {twice}"
        )));
    }
    Ok((twice / 2) as u32)
}

/// Genus of the surface in a cover of total degree n whose restriction to
/// each of the b0 boundary circles is a disjoint union of d-fold circle
/// covers.
pub fn cover_genus(
    genus: u32,
    boundary: u32,
    total_degree: i64,
    circle_degree: i64,
) -> Result<u32, CoverError> {
    if total_degree < 1 || circle_degree < 1 {
        return Err(CoverError::NotRealizable(format!(
            "covering degrees must be positive, got {total_degree} and {circle_degree}"
        )));
    }
    if total_degree % circle_degree != 0 {
        return Err(CoverError::NotDivisible {
            degree: total_degree,
            circle_degree,
        });
    }
    let chi = 2 - 2 * genus as i64 - boundary as i64;
    let lifted_boundary = (total_degree / circle_degree) * boundary as i64;
    genus_from_euler(chi, total_degree, lifted_boundary)
}

/// The double cover swapping two copies of every block across each
/// self-pasted torus. The result has no self-pastings; a graph without
/// self-pastings comes back untouched with the identity pattern.
pub fn eliminate_self_pastings(g: &DecoratedGraph) -> (DecoratedGraph, CoverPattern) {
    if g.tori().iter().all(|t| !t.is_self_pasting()) {
        return (g.clone(), CoverPattern::identity(g));
    }
    let position: BTreeMap<BlockId, usize> = g
        .blocks()
        .iter()
        .enumerate()
        .map(|(p, b)| (b.id, p))
        .collect();
    let copy_id = |base_pos: usize, copy: u32| BlockId(2 * base_pos as u32 + copy);

    let mut blocks = Vec::with_capacity(2 * g.blocks().len());
    let mut families = Vec::with_capacity(g.blocks().len());
    for (p, b) in g.blocks().iter().enumerate() {
        let mut lifts = Vec::with_capacity(2);
        for copy in 0..2 {
            blocks.push(Block {
                id: copy_id(p, copy),
                genus: b.genus,
                boundary_count: b.boundary_count,
            });
            lifts.push(BlockLift {
                block: copy_id(p, copy),
                fibre_degree: 1,
                base_degree: 1,
            });
        }
        families.push(BlockCoverFamily { base: b.id, lifts });
    }

    let mut tori = Vec::with_capacity(2 * g.tori().len());
    let mut torus_families = Vec::with_capacity(g.tori().len());
    for (q, t) in g.tori().iter().enumerate() {
        let mut lifts = Vec::with_capacity(2);
        for copy in 0..2 {
            let minus_copy = if t.is_self_pasting() { 1 - copy } else { copy };
            let plus_end = BoundaryRef {
                block: copy_id(position[&t.plus_end.block], copy),
                index: t.plus_end.index,
            };
            let minus_end = BoundaryRef {
                block: copy_id(position[&t.minus_end.block], minus_copy),
                index: t.minus_end.index,
            };
            let id = TorusId(2 * q as u32 + copy);
            tori.push(TorusGluing {
                id,
                plus_end,
                minus_end,
                gluing: t.gluing,
            });
            lifts.push(TorusLift {
                torus: id,
                plus_circle_degree: 1,
                minus_circle_degree: 1,
                plus_end,
                minus_end,
            });
        }
        torus_families.push(TorusCoverFamily { base: t.id, lifts });
    }

    let cover = DecoratedGraph::new(blocks, tori).expect("doubled graph is structurally valid");
    debug_assert!(cover.tori().iter().all(|t| !t.is_self_pasting()));
    (
        cover,
        CoverPattern {
            degree: 2,
            blocks: families,
            tori: torus_families,
        },
    )
}

/// Smallest non-negative k with k·a ≡ b (mod d); the congruence must be
/// solvable.
fn solve_congruence(a: i64, b: i64, d: i64) -> i64 {
    let a = a.rem_euclid(d);
    let b = b.rem_euclid(d);
    let g = a.gcd(&d).max(1);
    assert_eq!(b % g, 0, "congruence {a}·k ≡ {b} (mod {d}) must be solvable");
    if a == 0 {
        return 0;
    }
    let m = d / g;
    let inv = mod_inverse_i64(a / g, m).expect("reduced coefficient is invertible");
    ((b / g) as i128 * inv as i128).rem_euclid(m as i128) as i64
}

/// Hermite basis [[f, k], [0, a]] of the index-e sublattice of Z² on which
/// x·r_fibre + y·r_circle vanishes mod d.
fn kernel_lattice(d: i64, r_fibre: i64, r_circle: i64) -> [[i64; 2]; 2] {
    let f = d / r_fibre.gcd(&d);
    let a = {
        let joint = d / gcd3(d, r_fibre, r_circle);
        assert_eq!(joint % f, 0);
        joint / f
    };
    let k = solve_congruence(r_fibre, (-(a as i128 * r_circle as i128)).rem_euclid(d as i128) as i64, d);
    [[f, k], [0, a]]
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// W₊⁻¹ · G · W₋ for the two kernel-lattice bases; always integral with
/// determinant ±1.
fn lifted_gluing(g: [[i64; 2]; 2], w_plus: [[i64; 2]; 2], w_minus: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let e = w_plus[0][0] as i128 * w_plus[1][1] as i128;
    // adj(W₊) · G · W₋, then divide by det(W₊) = e
    let adj = [
        [w_plus[1][1] as i128, -(w_plus[0][1] as i128)],
        [0, w_plus[0][0] as i128],
    ];
    let gm = [
        [g[0][0] as i128, g[0][1] as i128],
        [g[1][0] as i128, g[1][1] as i128],
    ];
    let wm = [
        [w_minus[0][0] as i128, w_minus[0][1] as i128],
        [w_minus[1][0] as i128, w_minus[1][1] as i128],
    ];
    let mut out = [[0i64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = 0i128;
            for i in 0..2 {
                for j in 0..2 {
                    acc += adj[r][i] * gm[i][j] * wm[j][c];
                }
            }
            assert_eq!(acc % e, 0, "lifted gluing must be integral");
            out[r][c] = i64::try_from(acc / e).expect("lifted gluing entry fits in i64");
        }
    }
    out
}

/// The degree-d cover determined by a mod-d character: block components
/// are labeled by cosets of the image of α on the block's classes, fibres
/// unwrap by the order of α(θ_B), boundary circles by the order of their
/// residues past the fibre, and torus lifts attach sheets through the
/// crossing voltages. Always has total degree d; disconnected when α is
/// not surjective.
pub fn cyclic_cover(
    g: &DecoratedGraph,
    alpha: &CharacterModD,
) -> Result<(DecoratedGraph, CoverPattern), CoverError> {
    let h = g.homology_h1();
    h.check_length(alpha.residues().len())?;
    let d = alpha
        .modulus()
        .to_i64()
        .ok_or_else(|| CoverError::NotRealizable("modulus does not fit in i64".into()))?;

    let value = |cls| -> i64 {
        alpha
            .eval(&h, &cls)
            .expect("class comes from the same homology")
            .to_i64()
            .expect("residues fit in i64")
    };

    struct BlockSheets {
        base: Block,
        fibre_residue: i64,
        circle_residues: Vec<i64>,
        /// component labels run over 0..coset_modulus
        coset_modulus: i64,
        fibre_degree: i64,
        base_degree: i64,
        /// circle labels over circle i run over 0..circle_moduli[i]
        circle_moduli: Vec<i64>,
        circle_degrees: Vec<i64>,
        lifted_genus: u32,
        lifted_boundary: u32,
    }

    let mut sheets = Vec::with_capacity(g.blocks().len());
    for b in g.blocks() {
        let fibre_residue = value(h.fibre_class(b.id).expect("fibre class exists"));
        let circle_residues: Vec<i64> = (0..b.boundary_count)
            .map(|i| value(h.boundary_circle_class(b.id, i).expect("circle class exists")))
            .collect();
        let mut coset_modulus = d.gcd(&fibre_residue);
        for index in 0..2 * b.genus {
            let i = h
                .generator_index(&GeneratorKind::Surface { block: b.id, index })
                .expect("surface generator exists");
            coset_modulus = coset_modulus.gcd(
                &alpha
                    .residue_on_generator(i)
                    .to_i64()
                    .expect("residues fit in i64"),
            );
        }
        for r in &circle_residues {
            coset_modulus = coset_modulus.gcd(r);
        }
        let fibre_degree = d / d.gcd(&fibre_residue);
        let block_degree = d / coset_modulus;
        assert_eq!(block_degree % fibre_degree, 0);
        let base_degree = block_degree / fibre_degree;
        let circle_moduli: Vec<i64> = circle_residues
            .iter()
            .map(|&r| gcd3(d, fibre_residue, r))
            .collect();
        let circle_degrees: Vec<i64> = circle_moduli
            .iter()
            .map(|&m| {
                let torus_degree = d / m;
                assert_eq!(torus_degree % fibre_degree, 0);
                torus_degree / fibre_degree
            })
            .collect();
        let lifted_boundary: i64 = circle_moduli.iter().map(|&m| m / coset_modulus).sum();
        let lifted_genus =
            genus_from_euler(b.euler_characteristic(), base_degree, lifted_boundary)?;
        sheets.push(BlockSheets {
            base: b.clone(),
            fibre_residue,
            circle_residues,
            coset_modulus,
            fibre_degree,
            base_degree,
            circle_moduli,
            circle_degrees,
            lifted_genus,
            lifted_boundary: u32::try_from(lifted_boundary)
                .map_err(|_| CoverError::NotRealizable("boundary count overflow".into()))?,
        });
    }

    // covering blocks, one per coset label, and the circle attachment map
    let position: BTreeMap<BlockId, usize> = g
        .blocks()
        .iter()
        .enumerate()
        .map(|(p, b)| (b.id, p))
        .collect();
    let mut blocks = Vec::new();
    let mut families = Vec::with_capacity(sheets.len());
    let mut circle_refs: BTreeMap<(usize, u32, i64), BoundaryRef> = BTreeMap::new();
    let mut next_block = 0u32;
    for (p, s) in sheets.iter().enumerate() {
        let mut lifts = Vec::new();
        for coset in 0..s.coset_modulus {
            let id = BlockId(next_block);
            next_block += 1;
            blocks.push(Block {
                id,
                genus: s.lifted_genus,
                boundary_count: s.lifted_boundary,
            });
            lifts.push(BlockLift {
                block: id,
                fibre_degree: s.fibre_degree,
                base_degree: s.base_degree,
            });
            let mut index = 0u32;
            for (i, &m) in s.circle_moduli.iter().enumerate() {
                for label in 0..m {
                    if label % s.coset_modulus == coset {
                        circle_refs.insert((p, i as u32, label), BoundaryRef { block: id, index });
                        index += 1;
                    }
                }
            }
            assert_eq!(index, s.lifted_boundary);
        }
        families.push(BlockCoverFamily {
            base: s.base.id,
            lifts,
        });
    }

    let forest = h.spanning_forest().clone();
    let mut tori = Vec::new();
    let mut torus_families = Vec::with_capacity(g.tori().len());
    let mut next_torus = 0u32;
    for t in g.tori() {
        let p_plus = position[&t.plus_end.block];
        let p_minus = position[&t.minus_end.block];
        let i_plus = t.plus_end.index;
        let i_minus = t.minus_end.index;
        let plus = &sheets[p_plus];
        let minus = &sheets[p_minus];
        let coset_modulus = plus.circle_moduli[i_plus as usize];
        assert_eq!(
            coset_modulus, minus.circle_moduli[i_minus as usize],
            "both sides of a torus see the same sheet subgroup"
        );
        let voltage = if forest.contains(&t.id) {
            0
        } else {
            value(h.crossing_class(t.id).expect("crossing class exists"))
        };
        let w_plus = kernel_lattice(d, plus.fibre_residue, plus.circle_residues[i_plus as usize]);
        let w_minus = kernel_lattice(
            d,
            minus.fibre_residue,
            minus.circle_residues[i_minus as usize],
        );
        assert_eq!(w_plus[0][0] * w_plus[1][1], w_minus[0][0] * w_minus[1][1]);
        assert_eq!(w_plus[1][1], plus.circle_degrees[i_plus as usize]);
        assert_eq!(w_minus[1][1], minus.circle_degrees[i_minus as usize]);
        let gluing = lifted_gluing(t.gluing, w_plus, w_minus);
        let mut lifts = Vec::new();
        for label in 0..coset_modulus {
            let id = TorusId(next_torus);
            next_torus += 1;
            let minus_label = (label - voltage).rem_euclid(coset_modulus);
            let plus_end = circle_refs[&(p_plus, i_plus, label)];
            let minus_end = circle_refs[&(p_minus, i_minus, minus_label)];
            tori.push(TorusGluing {
                id,
                plus_end,
                minus_end,
                gluing,
            });
            lifts.push(TorusLift {
                torus: id,
                plus_circle_degree: w_plus[1][1],
                minus_circle_degree: w_minus[1][1],
                plus_end,
                minus_end,
            });
        }
        torus_families.push(TorusCoverFamily { base: t.id, lifts });
    }

    let cover = DecoratedGraph::new(blocks, tori).expect("cover graph is structurally valid");
    Ok((
        cover,
        CoverPattern {
            degree: d,
            blocks: families,
            tori: torus_families,
        },
    ))
}
