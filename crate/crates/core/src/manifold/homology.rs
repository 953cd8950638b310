//! First homology of a decorated graph, presented by generators and
//! relations: per block the surface classes, independent boundary classes,
//! and the fibre class; plus one crossing loop per torus outside a spanning
//! forest. Each torus contributes two relations transporting its basis
//! through the gluing matrix.

use super::{Block, BlockId, DecoratedGraph, TorusId};
use crate::abelian::{cokernel, CokernelMap, FgAbelianGroup, GroupElement, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// What a homology generator is, in manifold terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// one of the 2g surface classes of a block
    Surface { block: BlockId, index: u32 },
    /// boundary circle class δ_index, index < boundary_count − 1 (the last
    /// circle is minus the sum of the others)
    Boundary { block: BlockId, index: u32 },
    /// the S¹ direction of a block
    Fibre { block: BlockId },
    /// loop crossing a torus that is not in the spanning forest
    Crossing { torus: TorusId },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("expected {expected} generator values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("values are inconsistent with gluing relation {relation}")]
    Inconsistent { relation: usize },
    #[error("element does not belong to this homology group")]
    GroupMismatch,
    #[error("modulus must be at least 2")]
    BadModulus,
}

/// An integral cohomology class, stored by its values on the homology
/// generators. Consistency with every gluing relation is checked on
/// construction, which makes evaluation well-defined and kills torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    values: Vec<BigInt>,
}

impl CohClass {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value_on_generator(&self, i: usize) -> &BigInt {
        &self.values[i]
    }

    /// ⟨σ, x⟩ for x in the parent homology group.
    pub fn eval(&self, h: &Homology, x: &GroupElement) -> Result<BigInt, ClassError> {
        h.check_membership(x)?;
        h.check_length(self.values.len())?;
        Ok(h.cokernel.evaluate_functional(&self.values, x))
    }
}

/// A homomorphism H₁ → Z/d, stored by residues on the generators and
/// checked against the relations mod d on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterModD {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl CharacterModD {
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn residue_on_generator(&self, i: usize) -> &BigInt {
        &self.residues[i]
    }

    /// ⟨α, x⟩ ∈ [0, d).
    pub fn eval(&self, h: &Homology, x: &GroupElement) -> Result<BigInt, ClassError> {
        h.check_membership(x)?;
        h.check_length(self.residues.len())?;
        Ok(h
            .cokernel
            .evaluate_functional(&self.residues, x)
            .mod_floor(&self.modulus))
    }
}

#[derive(Clone, Debug)]
pub struct Homology {
    cokernel: CokernelMap,
    generators: Vec<GeneratorKind>,
    index: BTreeMap<GeneratorKind, usize>,
    relations: IntMatrix,
    forest: BTreeSet<TorusId>,
    blocks: Vec<Block>,
}

impl Homology {
    pub(super) fn compute(g: &DecoratedGraph) -> Homology {
        let forest = g.spanning_forest();
        let mut generators = Vec::new();
        for b in g.blocks() {
            for index in 0..2 * b.genus {
                generators.push(GeneratorKind::Surface { block: b.id, index });
            }
            for index in 0..b.boundary_count.saturating_sub(1) {
                generators.push(GeneratorKind::Boundary { block: b.id, index });
            }
            generators.push(GeneratorKind::Fibre { block: b.id });
        }
        for t in g.tori() {
            if !forest.contains(&t.id) {
                generators.push(GeneratorKind::Crossing { torus: t.id });
            }
        }
        let index: BTreeMap<GeneratorKind, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, k)| (*k, i))
            .collect();

        let blocks: Vec<Block> = g.blocks().to_vec();
        let boundary_count = |id: BlockId| -> u32 {
            blocks.iter().find(|b| b.id == id).unwrap().boundary_count
        };
        // adds coeff times the class of the given boundary circle, writing
        // the last circle as minus the sum of the preceding ones
        let add_boundary = |row: &mut [i64], block: BlockId, circle: u32, coeff: i64| {
            let b = boundary_count(block);
            if circle + 1 < b {
                row[index[&GeneratorKind::Boundary { block, index: circle }]] += coeff;
            } else {
                for j in 0..b - 1 {
                    row[index[&GeneratorKind::Boundary { block, index: j }]] -= coeff;
                }
            }
        };

        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(2 * g.tori().len());
        for t in g.tori() {
            let [[a, b_], [c, d]] = t.gluing;
            let plus_fibre = index[&GeneratorKind::Fibre { block: t.plus_end.block }];
            let minus_fibre = index[&GeneratorKind::Fibre { block: t.minus_end.block }];
            // image of the minus-side fibre: a·fibre_+ + c·section_+
            let mut fibre_row = vec![0i64; generators.len()];
            fibre_row[plus_fibre] += a;
            add_boundary(&mut fibre_row, t.plus_end.block, t.plus_end.index, c);
            fibre_row[minus_fibre] -= 1;
            rows.push(fibre_row);
            // image of the minus-side section: b·fibre_+ + d·section_+
            let mut section_row = vec![0i64; generators.len()];
            section_row[plus_fibre] += b_;
            add_boundary(&mut section_row, t.plus_end.block, t.plus_end.index, d);
            add_boundary(&mut section_row, t.minus_end.block, t.minus_end.index, -1);
            rows.push(section_row);
        }
        // every closed graph has at least one torus, so `rows` is nonempty
        // and the column count below is always generators.len()
        let relations = IntMatrix::from_rows(&rows);
        let cokernel = cokernel(&relations);
        Homology {
            cokernel,
            generators,
            index,
            relations,
            forest,
            blocks,
        }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.cokernel.group()
    }

    pub fn generator_kinds(&self) -> &[GeneratorKind] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, kind: &GeneratorKind) -> Option<usize> {
        self.index.get(kind).copied()
    }

    pub fn generator_class(&self, i: usize) -> GroupElement {
        self.cokernel.generator_image(i)
    }

    /// Class of an integer combination of generators.
    pub fn class_of(&self, combination: &[i64]) -> GroupElement {
        self.cokernel.class_of_i64(combination)
    }

    pub fn fibre_class(&self, block: BlockId) -> Option<GroupElement> {
        let i = self.generator_index(&GeneratorKind::Fibre { block })?;
        Some(self.generator_class(i))
    }

    /// Class of any boundary circle, including the dependent last one.
    pub fn boundary_circle_class(&self, block: BlockId, circle: u32) -> Option<GroupElement> {
        let b = self.blocks.iter().find(|x| x.id == block)?;
        if circle >= b.boundary_count {
            return None;
        }
        let mut combo = vec![0i64; self.generators.len()];
        if circle + 1 < b.boundary_count {
            combo[self.generator_index(&GeneratorKind::Boundary { block, index: circle })?] = 1;
        } else {
            for j in 0..b.boundary_count - 1 {
                combo[self.generator_index(&GeneratorKind::Boundary { block, index: j })?] = -1;
            }
        }
        Some(self.class_of(&combo))
    }

    pub fn crossing_class(&self, torus: TorusId) -> Option<GroupElement> {
        let i = self.generator_index(&GeneratorKind::Crossing { torus })?;
        Some(self.generator_class(i))
    }

    pub fn spanning_forest(&self) -> &BTreeSet<TorusId> {
        &self.forest
    }

    pub fn relation_count(&self) -> usize {
        self.relations.rows()
    }

    /// Gluing relations as a matrix, one row per relation, one column per
    /// generator. A value vector defines a cohomology class exactly when it
    /// lies in this matrix's kernel.
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relations
    }

    fn check_membership(&self, x: &GroupElement) -> Result<(), ClassError> {
        let g = self.group();
        if x.free().len() == g.free_rank() && x.torsion().len() == g.torsion_factors().len() {
            Ok(())
        } else {
            Err(ClassError::GroupMismatch)
        }
    }

    pub(crate) fn check_length(&self, n: usize) -> Result<(), ClassError> {
        if n == self.generators.len() {
            Ok(())
        } else {
            Err(ClassError::WrongLength {
                expected: self.generators.len(),
                got: n,
            })
        }
    }

    fn relation_dot(&self, r: usize, values: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for c in 0..self.relations.cols() {
            let coeff = &self.relations[(r, c)];
            if !coeff.is_zero() {
                acc += coeff * &values[c];
            }
        }
        acc
    }

    /// An integral class from generator values; every gluing relation must
    /// evaluate to zero.
    pub fn cohomology_class(&self, values: &[i64]) -> Result<CohClass, ClassError> {
        self.check_length(values.len())?;
        let values: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        for r in 0..self.relations.rows() {
            if !self.relation_dot(r, &values).is_zero() {
                return Err(ClassError::Inconsistent { relation: r });
            }
        }
        Ok(CohClass { values })
    }

    /// A mod-d character from generator residues; relations must vanish
    /// mod d.
    pub fn character_mod(&self, d: i64, residues: &[i64]) -> Result<CharacterModD, ClassError> {
        if d < 2 {
            return Err(ClassError::BadModulus);
        }
        self.check_length(residues.len())?;
        let modulus = BigInt::from(d);
        let residues: Vec<BigInt> = residues
            .iter()
            .map(|&v| BigInt::from(v).mod_floor(&modulus))
            .collect();
        for r in 0..self.relations.rows() {
            if !self.relation_dot(r, &residues).mod_floor(&modulus).is_zero() {
                return Err(ClassError::Inconsistent { relation: r });
            }
        }
        Ok(CharacterModD { modulus, residues })
    }
}
