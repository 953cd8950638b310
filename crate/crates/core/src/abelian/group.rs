//! Finitely generated abelian groups presented by integer matrices.
//!
//! A `CokernelMap` remembers the Smith transform used to read the group off a
//! presentation, so generator classes can be mapped to coordinates and
//! coordinate vectors lifted back to the generator lattice.

use super::matrix::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_m with d_1 | d_2 | … | d_m, each d_i ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for w in torsion.windows(2) {
            debug_assert!((&w[1] % &w[0]).is_zero(), "torsion factors must chain");
        }
        debug_assert!(torsion.iter().all(|d| *d >= BigInt::from(2)));
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Builds an element, reducing each torsion coordinate into [0, d_i).
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> GroupElement {
        assert_eq!(free.len(), self.free_rank, "free coordinate count");
        assert_eq!(torsion.len(), self.torsion.len(), "torsion coordinate count");
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn element_from_i64(&self, free: &[i64], torsion: &[i64]) -> GroupElement {
        self.element(
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.free.iter().zip(&b.free).map(|(x, y)| x - y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x - y).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scalar_mul(&BigInt::from(-1), a)
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        self.element(
            a.free.iter().map(|x| x * k).collect(),
            a.torsion.iter().map(|x| x * k).collect(),
        )
    }

    /// Order of `a` as an element: None means infinite.
    pub fn element_order(&self, a: &GroupElement) -> Option<BigInt> {
        if !a.is_torsion() {
            return None;
        }
        let mut ord = BigInt::one();
        for (x, d) in a.torsion.iter().zip(&self.torsion) {
            if x.is_zero() {
                continue;
            }
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }
}

/// Coordinates of an element: integers on the free part, residues on torsion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }
}

/// Cokernel of a presentation: rows of the matrix are relations imposed on
/// one generator per column.
#[derive(Clone, Debug)]
pub struct CokernelMap {
    group: FgAbelianGroup,
    /// Diagonal factor attached to each column of `v` (1 = killed, 0 = free).
    col_factors: Vec<BigInt>,
    free_cols: Vec<usize>,
    torsion_cols: Vec<usize>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl CokernelMap {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> usize {
        self.v.rows()
    }

    /// Class of the i-th generator.
    pub fn generator_image(&self, i: usize) -> GroupElement {
        let coords: Vec<BigInt> = (0..self.v.cols()).map(|j| self.v[(i, j)].clone()).collect();
        self.coords_to_element(&coords)
    }

    /// Class of an arbitrary integer combination of generators.
    pub fn class_of(&self, combination: &[BigInt]) -> GroupElement {
        assert_eq!(combination.len(), self.generators());
        let coords: Vec<BigInt> = (0..self.v.cols())
            .map(|j| {
                combination
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x * &self.v[(i, j)])
                    .sum()
            })
            .collect();
        self.coords_to_element(&coords)
    }

    pub fn class_of_i64(&self, combination: &[i64]) -> GroupElement {
        let c: Vec<BigInt> = combination.iter().map(|&x| BigInt::from(x)).collect();
        self.class_of(&c)
    }

    fn coords_to_element(&self, coords: &[BigInt]) -> GroupElement {
        let free = self.free_cols.iter().map(|&j| coords[j].clone()).collect();
        let torsion = self
            .torsion_cols
            .iter()
            .map(|&j| coords[j].mod_floor(&self.col_factors[j]))
            .collect();
        self.group.element(free, torsion)
    }

    /// A representative of `e` in the generator lattice.
    pub fn lift(&self, e: &GroupElement) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); self.v.cols()];
        for (k, &j) in self.free_cols.iter().enumerate() {
            full[j] = e.free()[k].clone();
        }
        for (k, &j) in self.torsion_cols.iter().enumerate() {
            full[j] = e.torsion()[k].clone();
        }
        (0..self.v_inv.cols())
            .map(|j| {
                full.iter()
                    .enumerate()
                    .map(|(i, x)| x * &self.v_inv[(i, j)])
                    .sum()
            })
            .collect()
    }

    /// Evaluates a linear functional given by generator values on an element.
    /// Well-defined only when the values vanish on every relation (mod the
    /// functional's modulus); callers are responsible for that check.
    pub fn evaluate_functional(&self, values: &[BigInt], e: &GroupElement) -> BigInt {
        let lift = self.lift(e);
        lift.iter().zip(values).map(|(x, s)| x * s).sum()
    }
}

pub fn cokernel(m: &IntMatrix) -> CokernelMap {
    let s = smith_normal_form(m);
    let n = m.cols();
    let bound = m.rows().min(n);
    let col_factors: Vec<BigInt> = (0..n)
        .map(|j| if j < bound { s.d[(j, j)].clone() } else { BigInt::zero() })
        .collect();
    let torsion_cols: Vec<usize> = (0..n)
        .filter(|&j| col_factors[j] >= BigInt::from(2))
        .collect();
    let free_cols: Vec<usize> = (0..n).filter(|&j| col_factors[j].is_zero()).collect();
    let torsion = torsion_cols.iter().map(|&j| col_factors[j].clone()).collect();
    let group = FgAbelianGroup::new(free_cols.len(), torsion);
    CokernelMap {
        group,
        col_factors,
        free_cols,
        torsion_cols,
        v: s.v,
        v_inv: s.v_inv,
    }
}

/// Particular solution plus generators of the homogeneous solutions of
/// `M·x ≡ b (mod d)`.
#[derive(Clone, Debug)]
pub struct ModularSolution {
    pub particular: Vec<BigInt>,
    pub homogeneous: Vec<Vec<BigInt>>,
}

pub fn solve_mod(m: &IntMatrix, b: &[BigInt], d: &BigInt) -> Option<ModularSolution> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    assert!(*d >= BigInt::from(2), "modulus must be at least 2");
    let s = smith_normal_form(m);
    let n = m.cols();
    let bound = m.rows().min(n);

    // c = U·b
    let c: Vec<BigInt> = (0..m.rows())
        .map(|i| {
            b.iter()
                .enumerate()
                .map(|(k, x)| &s.u[(i, k)] * x)
                .sum::<BigInt>()
                .mod_floor(d)
        })
        .collect();

    // Equations with no matching unknown must vanish.
    if c.iter().skip(n).any(|x| !x.is_zero()) {
        return None;
    }

    let mut y = vec![BigInt::zero(); n];
    let mut hom_y: Vec<Vec<BigInt>> = Vec::new();
    for k in 0..n {
        let a = if k < bound {
            s.d[(k, k)].mod_floor(d)
        } else {
            BigInt::zero()
        };
        let ck = if k < bound { c[k].clone() } else { BigInt::zero() };
        let g = a.gcd(d);
        if !(&ck % &g).is_zero() {
            return None;
        }
        if g == *d {
            // a ≡ 0: unknown is unconstrained (ck already checked divisible).
            y[k] = BigInt::zero();
        } else {
            let dg = d / &g;
            let inv = mod_inverse(&(&a / &g), &dg).expect("unit after dividing by gcd");
            y[k] = ((&ck / &g) * inv).mod_floor(&dg);
        }
        if g > BigInt::one() {
            let mut h = vec![BigInt::zero(); n];
            h[k] = d / &g;
            hom_y.push(h);
        }
    }

    let transport = |y: &[BigInt]| -> Vec<BigInt> {
        (0..n)
            .map(|i| {
                y.iter()
                    .enumerate()
                    .map(|(k, val)| &s.v[(i, k)] * val)
                    .sum::<BigInt>()
                    .mod_floor(d)
            })
            .collect()
    };

    Some(ModularSolution {
        particular: transport(&y),
        homogeneous: hom_y.iter().map(|h| transport(h)).collect(),
    })
}

/// Inverse of `a` modulo `m`, if gcd(a, m) = 1. `m` = 1 maps everything to 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Target of a homomorphism lattice computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomTarget {
    Integers,
    Modular(BigInt),
}

/// A homomorphism out of an `FgAbelianGroup`, stored by its values on the
/// group's free and torsion coordinates. `order` is None for infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub free_values: Vec<BigInt>,
    pub torsion_values: Vec<BigInt>,
    pub modulus: Option<BigInt>,
    pub order: Option<BigInt>,
}

impl GroupHom {
    pub fn eval(&self, e: &GroupElement) -> BigInt {
        let raw: BigInt = e
            .free()
            .iter()
            .zip(&self.free_values)
            .map(|(x, s)| x * s)
            .sum::<BigInt>()
            + e.torsion()
                .iter()
                .zip(&self.torsion_values)
                .map(|(x, s)| x * s)
                .sum::<BigInt>();
        match &self.modulus {
            Some(d) => raw.mod_floor(d),
            None => raw,
        }
    }
}

/// Basis of Hom(G, target). Homs to Z kill torsion; homs to Z/d pair with
/// both parts, the torsion pairing having order gcd(d_i, d).
pub fn hom_lattice(g: &FgAbelianGroup, target: &HomTarget) -> Vec<GroupHom> {
    let mut out = Vec::new();
    match target {
        HomTarget::Integers => {
            for i in 0..g.free_rank() {
                let mut free_values = vec![BigInt::zero(); g.free_rank()];
                free_values[i] = BigInt::one();
                out.push(GroupHom {
                    free_values,
                    torsion_values: vec![BigInt::zero(); g.torsion_factors().len()],
                    modulus: None,
                    order: None,
                });
            }
        }
        HomTarget::Modular(d) => {
            assert!(*d >= BigInt::from(2));
            for i in 0..g.free_rank() {
                let mut free_values = vec![BigInt::zero(); g.free_rank()];
                free_values[i] = BigInt::one();
                out.push(GroupHom {
                    free_values,
                    torsion_values: vec![BigInt::zero(); g.torsion_factors().len()],
                    modulus: Some(d.clone()),
                    order: Some(d.clone()),
                });
            }
            for (i, di) in g.torsion_factors().iter().enumerate() {
                let gi = di.gcd(d);
                if gi.is_one() {
                    continue;
                }
                let mut torsion_values = vec![BigInt::zero(); g.torsion_factors().len()];
                torsion_values[i] = d / &gi;
                out.push(GroupHom {
                    free_values: vec![BigInt::zero(); g.free_rank()],
                    torsion_values,
                    modulus: Some(d.clone()),
                    order: Some(gi),
                });
            }
        }
    }
    out
}
