//! Exact invariants of graph manifolds presented as decorated multigraphs.
//!
//! A graph manifold is described here by blocks `Σ_{g,b} × S¹` and gluing
//! tori carrying matrices in GL(2, Z). On top of that combinatorial data the
//! crate computes first homology, mod-d characters, twisted Reidemeister
//! torsion through an exact chain-complex engine, the Thurston norm of
//! fibre-supported classes, and the lower bounds for minimal genus in circle
//! bundles over such manifolds. All arithmetic is exact: arbitrary-precision
//! integers and rationals, cyclotomic coefficients reduced modulo Φ_k, and
//! Laurent rational functions in one variable.

pub mod abelian;
pub mod bundle;
pub mod covers;
pub mod field;
pub mod corpus;
pub mod document;
pub mod manifold;
pub mod norms;
pub mod torsion;

#[cfg(test)]
pub(crate) mod testutil;
