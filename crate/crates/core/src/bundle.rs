//! Bookkeeping for circle bundles over a graph manifold: orbit sums of a
//! finitely supported function under the Euler-class action, twisting the
//! Euler class along a loop, and evaluation/certification of the
//! minimal-genus lower bound |σ·σ| + ∥p_*σ∥.
//!
//! Spin^c structures are modeled as elements of H₁ after a basepoint
//! identification at 0; only differences and the affine Euler-class action
//! are ever used, so the choice is harmless. The support data is supplied
//! by the caller (or derived from pairing maxima) — nothing here computes
//! gauge-theoretic invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{FgAbelianGroup, GroupElement};
use crate::manifold::{CharacterModD, CohClass, DecoratedGraph};
use crate::norms::{thurston_norm, torsion_norm, AlphaSpec, NormError, SigmaSpec};

/// Default search bound for [`separating_k`].
pub const DEFAULT_SEPARATING_CAP: i64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BundleError {
    #[error("euler class is torsion, the orbit sum does not terminate")]
    TorsionEuler,
    #[error("loop class is torsion, twisting along it cannot separate the support")]
    TorsionLoop,
    #[error("no separating twist up to {cap}; largest multiple collision {largest_multiple}")]
    CapExceeded { cap: i64, largest_multiple: i64 },
    #[error("algebraic intersection number must be zero, got {0}")]
    NonzeroAlgebraic(i64),
    #[error("bad support data: {0}")]
    Support(String),
    #[error(transparent)]
    Norm(#[from] NormError),
}

/// A finitely supported integer-valued function on a finitely generated
/// abelian group; lookups outside the support return 0. Support values are
/// nonzero by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWFunction {
    group: FgAbelianGroup,
    support: BTreeMap<GroupElement, i64>,
}

impl SWFunction {
    pub fn new(
        group: FgAbelianGroup,
        pairs: Vec<(GroupElement, i64)>,
    ) -> Result<SWFunction, BundleError> {
        let mut support = BTreeMap::new();
        for (point, value) in pairs {
            check_shape(&group, &point)?;
            if value == 0 {
                return Err(BundleError::Support(
                    "support values must be nonzero".into(),
                ));
            }
            if support.insert(point, value).is_some() {
                return Err(BundleError::Support("duplicate support point".into()));
            }
        }
        Ok(SWFunction { group, support })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn support(&self) -> impl Iterator<Item = (&GroupElement, i64)> {
        self.support.iter().map(|(p, &v)| (p, v))
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    /// Value at a point, 0 outside the support.
    pub fn value(&self, point: &GroupElement) -> i64 {
        self.support.get(point).copied().unwrap_or(0)
    }
}

fn check_shape(group: &FgAbelianGroup, e: &GroupElement) -> Result<(), BundleError> {
    if e.free().len() != group.free_rank() || e.torsion().len() != group.torsion_factors().len() {
        return Err(BundleError::Support(format!(
            "element shape ({}, {}) does not match the group ({}, {})",
            e.free().len(),
            e.torsion().len(),
            group.free_rank(),
            group.torsion_factors().len()
        )));
    }
    Ok(())
}

/// The integer l with diff = l·e, if any. Covers torsion e by scanning its
/// finite multiple orbit.
fn multiple_of(group: &FgAbelianGroup, diff: &GroupElement, e: &GroupElement) -> Option<BigInt> {
    if e.is_torsion() {
        let order = group
            .element_order(e)
            .expect("torsion element has finite order");
        let mut l = BigInt::zero();
        while l < order {
            if &group.scalar_mul(&l, e) == diff {
                return Some(l);
            }
            l += 1;
        }
        return None;
    }
    let pivot = e
        .free()
        .iter()
        .position(|x| !x.is_zero())
        .expect("non-torsion element has a nonzero free coordinate");
    let (q, r) = diff.free()[pivot].div_rem(&e.free()[pivot]);
    if !r.is_zero() {
        return None;
    }
    if &group.scalar_mul(&q, e) == diff {
        Some(q)
    } else {
        None
    }
}

/// Sum of the support values on the orbit ξ + Z·e. Finite because e is
/// non-torsion and the support is finite; invariant under ξ → ξ + e.
pub fn baldridge_sum(
    sw: &SWFunction,
    e: &GroupElement,
    xi: &GroupElement,
) -> Result<i64, BundleError> {
    let group = sw.group();
    check_shape(group, e)?;
    check_shape(group, xi)?;
    if e.is_torsion() {
        return Err(BundleError::TorsionEuler);
    }
    let mut total = 0i64;
    for (point, value) in sw.support() {
        let diff = group.sub(point, xi);
        if multiple_of(group, &diff, e).is_some() {
            total += value;
        }
    }
    Ok(total)
}

/// The Euler class twisted k times along a loop: e + k·γ.
pub fn twist_euler(
    group: &FgAbelianGroup,
    e: &GroupElement,
    gamma: &GroupElement,
    k: i64,
) -> GroupElement {
    group.add(e, &group.scalar_mul(&BigInt::from(k), gamma))
}

/// Smallest k in [1, cap] whose twisted Euler class e + k·γ separates the
/// support: the twisted class is non-torsion (so orbit sums apply to it)
/// and no difference of two support points is an integer multiple of it.
/// At such k every orbit sum hits at most one support point, so no
/// cancellation is possible. Since γ is non-torsion, at most one k yields
/// a torsion twist.
pub fn separating_k(
    sw: &SWFunction,
    e: &GroupElement,
    gamma: &GroupElement,
    cap: i64,
) -> Result<i64, BundleError> {
    let group = sw.group();
    check_shape(group, e)?;
    check_shape(group, gamma)?;
    if gamma.is_torsion() {
        return Err(BundleError::TorsionLoop);
    }
    assert!(cap >= 1, "search cap must be at least 1");
    let points: Vec<&GroupElement> = sw.support().map(|(p, _)| p).collect();
    let mut largest = BigInt::zero();
    for k in 1..=cap {
        let twisted = twist_euler(group, e, gamma, k);
        let mut separated = !twisted.is_torsion();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let diff = group.sub(points[i], points[j]);
                if let Some(l) = multiple_of(group, &diff, &twisted) {
                    separated = false;
                    if l.abs() > largest {
                        largest = l.abs();
                    }
                }
            }
        }
        if separated {
            return Ok(k);
        }
    }
    Err(BundleError::CapExceeded {
        cap,
        largest_multiple: largest.to_i64().unwrap_or(i64::MAX),
    })
}

/// The bundle data entering the lower bound: the self-intersection number
/// of the class upstairs and its pushforward to the base graph.
#[derive(Clone, Debug)]
pub struct BundleClass {
    pub self_intersection: i64,
    pub pushforward: CohClass,
}

/// Right-hand side of the minimal-genus bound: |σ·σ| + ∥p_*σ∥.
pub fn bound_rhs(g: &DecoratedGraph, cls: &BundleClass) -> Result<i64, BundleError> {
    let norm = thurston_norm(g, &SigmaSpec::Class(cls.pushforward.clone()))?;
    Ok(cls.self_intersection.abs() + norm)
}

/// Complexity budget after piping off m geometric intersections with a
/// loop of vanishing algebraic intersection number. Pipes cancel in pairs
/// of opposite signs, so an odd m leaves the bound uncertified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PipingBound {
    pub bound: i64,
    pub certified: bool,
}

pub fn piping_bound(
    chi_minus: i64,
    m: i64,
    algebraic_intersection: i64,
) -> Result<PipingBound, BundleError> {
    if algebraic_intersection != 0 {
        return Err(BundleError::NonzeroAlgebraic(algebraic_intersection));
    }
    assert!(m >= 0, "intersection count must be non-negative");
    Ok(PipingBound {
        bound: chi_minus + m,
        certified: m % 2 == 0,
    })
}

/// One row of the limit trace: χ + m/k ≥ rhs compared with both sides
/// scaled by k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LimitStep {
    pub k: i64,
    pub scaled_lhs: i64,
    pub scaled_rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Certification {
    #[serde(rename = "CERTIFIED")]
    Certified,
    #[serde(rename = "REFUTED")]
    Refuted { witness_k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCertificate {
    #[serde(flatten)]
    pub verdict: Certification,
    pub trace: Vec<LimitStep>,
}

/// Decides whether χ + m/k ≥ rhs for all k ≥ 1 with m fixed. For k > m the
/// fractional term drops below 1, so integrality forces χ ≥ rhs; the
/// refutation witness is always k = m + 1. The trace lists the scaled
/// inequality for k = 1..min(m+1, 50).
pub fn limit_certificate(chi_candidate: i64, m: i64, rhs: i64) -> LimitCertificate {
    assert!(m >= 0, "intersection count must be non-negative");
    assert!(rhs >= 0, "bound must be non-negative");
    let trace = (1..=(m + 1).min(50))
        .map(|k| {
            let scaled_lhs = chi_candidate * k + m;
            let scaled_rhs = rhs * k;
            LimitStep {
                k,
                scaled_lhs,
                scaled_rhs,
                holds: scaled_lhs >= scaled_rhs,
            }
        })
        .collect();
    let verdict = if chi_candidate >= rhs {
        Certification::Certified
    } else {
        Certification::Refuted { witness_k: m + 1 }
    };
    LimitCertificate { verdict, trace }
}

/// Maximal pairing of σ against the basic classes, which for these graph
/// manifolds is the width of the twisted torsion.
pub fn basic_pairing_max(
    g: &DecoratedGraph,
    sigma: &CohClass,
    alpha: &CharacterModD,
) -> Result<i64, BundleError> {
    Ok(torsion_norm(
        g,
        &SigmaSpec::Class(sigma.clone()),
        &AlphaSpec::Character(alpha.clone()),
    )?)
}

/// Whether the gauge-theoretic input is meaningful for this base: requires
/// first Betti number at least 3. Surfaced as a warning flag, never an
/// error.
pub fn sw_gate_satisfied(g: &DecoratedGraph) -> bool {
    g.homology_h1().group().free_rank() >= 3
}

/// JSON form of an [`SWFunction`]: a group descriptor plus (coordinates,
/// value) pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SWFunctionDoc {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub support: Vec<SWSupportDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SWSupportDoc {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
    pub value: i64,
}

impl SWFunctionDoc {
    pub fn to_function(&self) -> Result<SWFunction, BundleError> {
        if self.torsion.iter().any(|&d| d < 2) {
            return Err(BundleError::Support(
                "torsion factors must be at least 2".into(),
            ));
        }
        if self.torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(BundleError::Support(
                "torsion factors must form a divisibility chain".into(),
            ));
        }
        let group = FgAbelianGroup::new(
            self.free_rank,
            self.torsion.iter().map(|&d| BigInt::from(d)).collect(),
        );
        let mut pairs = Vec::with_capacity(self.support.len());
        for entry in &self.support {
            if entry.free.len() != self.free_rank || entry.torsion.len() != self.torsion.len() {
                return Err(BundleError::Support(format!(
                    "support coordinates ({}, {}) do not match the group descriptor ({}, {})",
                    entry.free.len(),
                    entry.torsion.len(),
                    self.free_rank,
                    self.torsion.len()
                )));
            }
            pairs.push((
                group.element_from_i64(&entry.free, &entry.torsion),
                entry.value,
            ));
        }
        SWFunction::new(group, pairs)
    }

    pub fn from_function(sw: &SWFunction) -> SWFunctionDoc {
        SWFunctionDoc {
            free_rank: sw.group().free_rank(),
            torsion: sw
                .group()
                .torsion_factors()
                .iter()
                .map(|d| d.to_i64().expect("torsion factors fit in i64"))
                .collect(),
            support: sw
                .support()
                .map(|(p, value)| SWSupportDoc {
                    free: p
                        .free()
                        .iter()
                        .map(|x| x.to_i64().expect("coordinates fit in i64"))
                        .collect(),
                    torsion: p
                        .torsion()
                        .iter()
                        .map(|x| x.to_i64().expect("coordinates fit in i64"))
                        .collect(),
                    value,
                })
                .collect(),
        }
    }
}
