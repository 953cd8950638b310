//! Torsion of based acyclic chain complexes over the rational function
//! field, with constructors for the standard complexes this project
//! actually feeds it: wedges of circles and products with a circle.

mod complex;
mod rf_matrix;

pub use complex::{
    apply_base_change, circle_product, direct_sum, torsion, torsion_exact,
    torsion_exact_randomized, wedge_complex, BaseChange, BasedChainComplex, TorsionError,
};
pub use rf_matrix::{Elimination, RfMatrix};
