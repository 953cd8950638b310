//! Integer linear algebra: matrices, Smith normal form, finitely generated
//! abelian groups, modular solvers, and homomorphism lattices.

mod group;
mod matrix;

pub use group::{
    cokernel, hom_lattice, mod_inverse, solve_mod, CokernelMap, FgAbelianGroup, GroupElement,
    GroupHom, HomTarget, ModularSolution,
};
pub use matrix::{smith_normal_form, IntMatrix, SmithDecomposition};
