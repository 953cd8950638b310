//! Based chain complexes over the rational function field and their
//! torsion: the alternating product of transition determinants between the
//! given bases and bases assembled from chosen image bases and sections.

use super::rf_matrix::RfMatrix;
use crate::field::{RatFunc, TorsionValue};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorsionError {
    #[error("complex is not acyclic")]
    NotAcyclic,
    #[error("base change matrix in degree {degree} is singular")]
    SingularChange { degree: usize },
}

/// A finite based chain complex C_n → … → C_1 → C_0 with free modules of
/// known rank in each degree.
#[derive(Clone, Debug)]
pub struct BasedChainComplex {
    /// rank of C_i at index i
    dims: Vec<usize>,
    /// boundaries[i-1] is ∂_i : C_i → C_{i-1}, for i = 1..=n
    boundaries: Vec<RfMatrix>,
}

impl BasedChainComplex {
    /// dims[i] is the rank in degree i; boundaries[i-1] maps degree i to
    /// degree i-1. Panics unless shapes match and ∂∘∂ = 0 exactly.
    pub fn new(dims: Vec<usize>, boundaries: Vec<RfMatrix>) -> Self {
        assert!(!dims.is_empty(), "complex needs at least degree 0");
        assert_eq!(boundaries.len() + 1, dims.len(), "one boundary per adjacent pair");
        for (i, b) in boundaries.iter().enumerate() {
            assert_eq!(b.rows(), dims[i], "∂_{} row count", i + 1);
            assert_eq!(b.cols(), dims[i + 1], "∂_{} column count", i + 1);
        }
        for w in boundaries.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero(), "∂∘∂ must vanish");
        }
        BasedChainComplex { dims, boundaries }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// ∂_i for i in 1..=top_degree.
    pub fn boundary(&self, i: usize) -> &RfMatrix {
        &self.boundaries[i - 1]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    fn ranks(&self) -> Vec<usize> {
        (1..=self.top_degree())
            .map(|i| self.boundary(i).rank())
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        let ranks = self.ranks();
        let rank_at = |i: usize| -> usize {
            // rank of ∂_i, with ∂_0 and ∂_{n+1} zero
            if i >= 1 && i <= ranks.len() {
                ranks[i - 1]
            } else {
                0
            }
        };
        (0..self.dims.len()).all(|i| rank_at(i) + rank_at(i + 1) == self.dims[i])
    }
}

/// Per-degree invertible matrices describing a re-basing: the degree-i
/// matrix converts old coordinates to new ones, so its column j holds the
/// new-basis coordinates of the j-th old basis vector. Scaling a degree-i
/// matrix by λ therefore multiplies the torsion by λ^{(-1)^{i+1}}.
#[derive(Clone, Debug)]
pub struct BaseChange {
    mats: Vec<RfMatrix>,
}

impl BaseChange {
    pub fn new(mats: Vec<RfMatrix>) -> Self {
        BaseChange { mats }
    }

    pub fn identity(dims: &[usize]) -> Self {
        BaseChange {
            mats: dims.iter().map(|&d| RfMatrix::identity(d)).collect(),
        }
    }

    pub fn degree(&self, i: usize) -> &RfMatrix {
        &self.mats[i]
    }

    /// ∏ det(B_i)^{(-1)^{i+1}}: the factor relating torsion in the old
    /// basis to torsion in the new one.
    pub fn determinant_factor(&self) -> Result<RatFunc, TorsionError> {
        let mut acc = RatFunc::one();
        for (i, b) in self.mats.iter().enumerate() {
            let d = b.det();
            if d.is_zero() {
                return Err(TorsionError::SingularChange { degree: i });
            }
            acc = if i % 2 == 1 { acc.mul(&d) } else { acc.mul(&d.inverse()) };
        }
        Ok(acc)
    }
}

/// Rewrites the complex in the new bases. Torsion transforms by exactly
/// the determinant factor of the change.
pub fn apply_base_change(
    c: &BasedChainComplex,
    change: &BaseChange,
) -> Result<BasedChainComplex, TorsionError> {
    assert_eq!(change.mats.len(), c.dims.len(), "one change per degree");
    let mut inverses = Vec::with_capacity(change.mats.len());
    for (i, b) in change.mats.iter().enumerate() {
        assert!(b.is_square() && b.rows() == c.dims[i], "shape mismatch in degree {i}");
        match b.inverse() {
            Some(inv) => inverses.push(inv),
            None => return Err(TorsionError::SingularChange { degree: i }),
        }
    }
    let boundaries = (1..=c.top_degree())
        .map(|i| {
            // new coordinates convert back to old, the old boundary applies,
            // and the result converts forward to new coordinates
            change.degree(i - 1).mul(&c.boundary(i).mul(&inverses[i]))
        })
        .collect();
    Ok(BasedChainComplex::new(c.dims.clone(), boundaries))
}

/// The data chosen per degree when evaluating the defining product: a basis
/// of Im ∂_i written as columns in C_{i-1}, and its preimage under ∂_i
/// written as columns in C_i.
struct ImageChoice {
    image: RfMatrix,
    section: RfMatrix,
}

fn canonical_choices(c: &BasedChainComplex) -> Result<Vec<ImageChoice>, TorsionError> {
    let mut choices = Vec::new();
    for i in 1..=c.top_degree() {
        let b = c.boundary(i);
        let elim = b.eliminate();
        let image = b.select_columns(&elim.pivot_cols);
        let mut section = RfMatrix::zero(c.dims[i], elim.pivot_cols.len());
        for (k, &j) in elim.pivot_cols.iter().enumerate() {
            section[(j, k)] = RatFunc::one();
        }
        choices.push(ImageChoice { image, section });
    }
    Ok(choices)
}

/// Randomly perturbed but still valid choices: the image basis is mixed by
/// a random unimodular integer matrix and the section is offset by random
/// kernel elements. Any such choice must produce the same torsion.
fn randomized_choices(
    c: &BasedChainComplex,
    rng: &mut impl Rng,
) -> Result<Vec<ImageChoice>, TorsionError> {
    let mut choices = canonical_choices(c)?;
    for (idx, choice) in choices.iter_mut().enumerate() {
        let i = idx + 1;
        let r = choice.image.cols();
        let mix = random_unimodular(r, rng);
        let kernel = c.boundary(i).eliminate().kernel;
        let offsets = RfMatrix::from_fn(kernel.cols(), r, |_, _| {
            RatFunc::from_integer(rng.gen_range(-2..=2))
        });
        choice.image = choice.image.mul(&mix);
        choice.section = choice.section.add(&kernel.mul(&offsets)).mul(&mix);
    }
    Ok(choices)
}

/// A determinant ±1 integer matrix, as a product of a unit lower and unit
/// upper triangular matrix with small entries and random signs.
fn random_unimodular(n: usize, rng: &mut impl Rng) -> RfMatrix {
    let mut lower = RfMatrix::identity(n);
    let mut upper = RfMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = RatFunc::from_integer(rng.gen_range(-2..=2));
            upper[(j, i)] = RatFunc::from_integer(rng.gen_range(-2..=2));
        }
        if rng.gen_bool(0.5) {
            upper[(i, i)] = RatFunc::from_integer(-1);
        }
    }
    lower.mul(&upper)
}

fn torsion_from_choices(
    c: &BasedChainComplex,
    choices: &[ImageChoice],
) -> Result<RatFunc, TorsionError> {
    let n = c.top_degree();
    let mut acc = RatFunc::one();
    for i in 0..=n {
        // columns: chosen basis of Im ∂_{i+1}, then the section lift of the
        // chosen basis of Im ∂_i; acyclicity makes this square
        let incoming = if i < n {
            choices[i].image.clone()
        } else {
            RfMatrix::zero(c.dims[n], 0)
        };
        let lifted = if i >= 1 {
            choices[i - 1].section.clone()
        } else {
            RfMatrix::zero(c.dims[0], 0)
        };
        let t = incoming.hcat(&lifted);
        if !t.is_square() {
            return Err(TorsionError::NotAcyclic);
        }
        let d = t.det();
        if d.is_zero() {
            return Err(TorsionError::NotAcyclic);
        }
        acc = if i % 2 == 1 { acc.mul(&d) } else { acc.mul(&d.inverse()) };
    }
    Ok(acc)
}

/// The torsion as an exact field element, for the deterministic canonical
/// choice of image bases and sections.
pub fn torsion_exact(c: &BasedChainComplex) -> Result<RatFunc, TorsionError> {
    if !c.is_acyclic() {
        return Err(TorsionError::NotAcyclic);
    }
    torsion_from_choices(c, &canonical_choices(c)?)
}

/// The torsion computed with randomized valid choices; equal to
/// torsion_exact for every seed.
pub fn torsion_exact_randomized(
    c: &BasedChainComplex,
    rng: &mut impl Rng,
) -> Result<RatFunc, TorsionError> {
    if !c.is_acyclic() {
        return Err(TorsionError::NotAcyclic);
    }
    torsion_from_choices(c, &randomized_choices(c, rng)?)
}

/// The torsion up to units ±ζ^a t^b, at the given root-of-unity order.
pub fn torsion(c: &BasedChainComplex, unit_order: u32) -> Result<TorsionValue, TorsionError> {
    Ok(TorsionValue::new(torsion_exact(c)?, unit_order))
}

/// Two-term complex 0 → K^n → K → 0 of a wedge of n circles with the j-th
/// circle generator acting by scalars[j]: boundary row (1 - s_1, …, 1 - s_n).
pub fn wedge_complex(scalars: &[RatFunc]) -> BasedChainComplex {
    assert!(!scalars.is_empty(), "need at least one circle");
    let row: Vec<RatFunc> = scalars
        .iter()
        .map(|s| RatFunc::one().sub(s))
        .collect();
    BasedChainComplex::new(
        vec![1, scalars.len()],
        vec![RfMatrix::from_rows(vec![row])],
    )
}

/// Algebraic mapping torus of the identity: D_i = C_i ⊕ C_{i-1} with
/// boundary blocks [∂_i, (1-u)·id; 0, -∂_{i-1}], where u is the scalar of
/// the new circle direction.
pub fn circle_product(c: &BasedChainComplex, fibre_scalar: &RatFunc) -> BasedChainComplex {
    let n = c.top_degree();
    let one_minus_u = RatFunc::one().sub(fibre_scalar);
    let dim = |i: usize| -> usize {
        if i <= n {
            c.dims[i]
        } else {
            0
        }
    };
    let new_dims: Vec<usize> = (0..=n + 1).map(|i| dim(i) + if i >= 1 { dim(i - 1) } else { 0 }).collect();
    let boundaries = (1..=n + 1)
        .map(|i| {
            let top = dim(i - 1) + if i >= 2 { dim(i - 2) } else { 0 };
            RfMatrix::from_fn(top, dim(i) + dim(i - 1), |r, s| {
                let in_c_part_row = r < dim(i - 1);
                let in_c_part_col = s < dim(i);
                match (in_c_part_row, in_c_part_col) {
                    (true, true) => {
                        if i <= n {
                            c.boundary(i)[(r, s)].clone()
                        } else {
                            unreachable!("degree n+1 has no C_i part")
                        }
                    }
                    (true, false) => {
                        if r == s - dim(i) {
                            one_minus_u.clone()
                        } else {
                            RatFunc::zero()
                        }
                    }
                    (false, true) => RatFunc::zero(),
                    (false, false) => c.boundary(i - 1)[(r - dim(i - 1), s - dim(i))].neg(),
                }
            })
        })
        .collect();
    BasedChainComplex::new(new_dims, boundaries)
}

/// Block sum with the bases of `a` listed before the bases of `b` in every
/// degree. Torsion is multiplicative for this assembly, up to units.
pub fn direct_sum(a: &BasedChainComplex, b: &BasedChainComplex) -> BasedChainComplex {
    let n = a.top_degree().max(b.top_degree());
    let dim = |c: &BasedChainComplex, i: usize| if i <= c.top_degree() { c.dims[i] } else { 0 };
    let dims: Vec<usize> = (0..=n).map(|i| dim(a, i) + dim(b, i)).collect();
    let boundaries = (1..=n)
        .map(|i| {
            RfMatrix::from_fn(dims[i - 1], dims[i], |r, s| {
                let a_rows = dim(a, i - 1);
                let a_cols = dim(a, i);
                if r < a_rows && s < a_cols {
                    a.boundary(i)[(r, s)].clone()
                } else if r >= a_rows && s >= a_cols {
                    b.boundary(i)[(r - a_rows, s - a_cols)].clone()
                } else {
                    RatFunc::zero()
                }
            })
        })
        .collect();
    BasedChainComplex::new(dims, boundaries)
}
