//! Thurston norm, twisted torsion, and the torsion norm of a composite
//! decorated graph, together with the report tying them together.
//!
//! For a class σ and a mod-d character α the twisted torsion is the product
//! over the blocks of (1 − ζ_d^{α(θ_B)} t^{σ(θ_B)})^{−χ_B}; its exponent
//! spread (width) recovers Σ_B (−χ_B)·|σ(θ_B)|, which is also the Thurston
//! norm of σ. Both a closed-form evaluation and an assembly through the
//! chain-complex engine are provided; the engine run is the oracle for the
//! closed form.

use crate::field::{Cyclotomic, LaurentPoly, RatFunc, TorsionValue, Width};
use crate::manifold::{
    BlockId, CharacterModD, ClassError, CohClass, DecoratedGraph, GeneratorKind, Homology,
    NotCompositeReason,
};
use crate::torsion::{circle_product, torsion_exact, wedge_complex};
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use thiserror::Error;

/// How σ is supplied: a validated cohomology class, or a raw list of fibre
/// values (one per block, in ascending block-id order). The raw form skips
/// homology and the gluing-relation consistency check; callers surfacing it
/// should mark such runs as unvalidated.
#[derive(Clone, Debug)]
pub enum SigmaSpec {
    Class(CohClass),
    FibreValues(Vec<i64>),
}

/// How α is supplied: a validated mod-d character, or raw fibre residues
/// with an explicit modulus (same caveats as [`SigmaSpec::FibreValues`]).
#[derive(Clone, Debug)]
pub enum AlphaSpec {
    Character(CharacterModD),
    FibreValues { modulus: i64, values: Vec<i64> },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormError {
    #[error("graph is not composite: {reasons:?}")]
    NotComposite { reasons: Vec<NotCompositeReason> },
    #[error("twisted complex is not acyclic: block {block} has zero fibre class value and trivial fibre character value")]
    NotAcyclic { block: BlockId },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("expected one fibre value per block ({expected}), got {got}")]
    FibreValueCount { expected: usize, got: usize },
    #[error("modulus {0} must be at least 2 and fit in 32 bits")]
    BadModulus(i64),
}

/// Norm comparison outcome. `torsion_value`/`torsion_width` describe the
/// twisted torsion when the complex is acyclic; a failed acyclicity guard is
/// recorded (`acyclic: false`, width −∞, no value) rather than raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    pub thurston: i64,
    pub torsion_width: Width,
    pub torsion_value: Option<TorsionValue>,
    pub equal: bool,
    pub acyclic: bool,
}

impl serde::Serialize for NormReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormReport", 5)?;
        st.serialize_field("thurston", &self.thurston)?;
        st.serialize_field("torsion_width", &self.torsion_width)?;
        let rendered = self
            .torsion_value
            .as_ref()
            .map(crate::field::render_torsion_value);
        st.serialize_field("torsion_value", &rendered)?;
        st.serialize_field("equal", &self.equal)?;
        st.serialize_field("acyclic", &self.acyclic)?;
        st.end()
    }
}

/// Per-block twisting data: Euler characteristic, σ and α on the fibre, and
/// both values on each of the 2g + b − 1 wedge generators of the base.
struct BlockTwist {
    id: BlockId,
    chi: i64,
    sigma_theta: i64,
    alpha_theta: i64,
    wedge: Vec<(i64, i64)>,
}

/// Resolved twisting of a whole graph. `sections[k]` carries (σ, α) on the
/// plus-side section circle of the k-th torus, used by the engine assembly.
struct Twist {
    order: u32,
    blocks: Vec<BlockTwist>,
    /// per torus: position of the plus-side block and the section values
    sections: Vec<(usize, (i64, i64))>,
}

fn require_composite(g: &DecoratedGraph) -> Result<(), NormError> {
    let t = g.classify();
    if t.composite {
        Ok(())
    } else {
        Err(NormError::NotComposite { reasons: t.reasons })
    }
}

fn to_exponent(v: &num_bigint::BigInt) -> i64 {
    v.to_i64().expect("class value fits in 64 bits")
}

/// σ on every generator the torsion assembly needs, in one pass.
struct SigmaData {
    theta: Vec<i64>,
    wedge: Vec<Vec<i64>>,
    section: Vec<i64>,
}

fn resolve_sigma(
    g: &DecoratedGraph,
    spec: &SigmaSpec,
    h: Option<&Homology>,
) -> Result<SigmaData, NormError> {
    let n = g.blocks().len();
    match spec {
        SigmaSpec::FibreValues(values) => {
            if values.len() != n {
                return Err(NormError::FibreValueCount { expected: n, got: values.len() });
            }
            Ok(SigmaData {
                theta: values.clone(),
                wedge: g
                    .blocks()
                    .iter()
                    .map(|b| vec![0; (2 * b.genus + b.boundary_count - 1) as usize])
                    .collect(),
                section: vec![0; g.tori().len()],
            })
        }
        SigmaSpec::Class(class) => {
            let h = h.expect("homology computed for class resolution");
            h.check_length(class.values().len())?;
            let mut theta = Vec::with_capacity(n);
            let mut wedge = Vec::with_capacity(n);
            for b in g.blocks() {
                let fi = h
                    .generator_index(&GeneratorKind::Fibre { block: b.id })
                    .expect("fibre generator exists");
                theta.push(to_exponent(class.value_on_generator(fi)));
                let mut w = Vec::new();
                for k in 0..2 * b.genus {
                    let gi = h
                        .generator_index(&GeneratorKind::Surface { block: b.id, index: k })
                        .expect("surface generator exists");
                    w.push(to_exponent(class.value_on_generator(gi)));
                }
                for k in 0..b.boundary_count - 1 {
                    let gi = h
                        .generator_index(&GeneratorKind::Boundary { block: b.id, index: k })
                        .expect("boundary generator exists");
                    w.push(to_exponent(class.value_on_generator(gi)));
                }
                wedge.push(w);
            }
            let mut section = Vec::with_capacity(g.tori().len());
            for t in g.tori() {
                let circle = h
                    .boundary_circle_class(t.plus_end.block, t.plus_end.index)
                    .expect("plus end names a boundary circle");
                section.push(to_exponent(&class.eval(h, &circle)?));
            }
            Ok(SigmaData { theta, wedge, section })
        }
    }
}

struct AlphaData {
    order: u32,
    theta: Vec<i64>,
    wedge: Vec<Vec<i64>>,
    section: Vec<i64>,
}

fn check_modulus(d: i64) -> Result<u32, NormError> {
    if d < 2 {
        return Err(NormError::BadModulus(d));
    }
    u32::try_from(d).map_err(|_| NormError::BadModulus(d))
}

fn resolve_alpha(
    g: &DecoratedGraph,
    spec: &AlphaSpec,
    h: Option<&Homology>,
) -> Result<AlphaData, NormError> {
    let n = g.blocks().len();
    match spec {
        AlphaSpec::FibreValues { modulus, values } => {
            let order = check_modulus(*modulus)?;
            if values.len() != n {
                return Err(NormError::FibreValueCount { expected: n, got: values.len() });
            }
            Ok(AlphaData {
                order,
                theta: values.iter().map(|v| v.rem_euclid(*modulus)).collect(),
                wedge: g
                    .blocks()
                    .iter()
                    .map(|b| vec![0; (2 * b.genus + b.boundary_count - 1) as usize])
                    .collect(),
                section: vec![0; g.tori().len()],
            })
        }
        AlphaSpec::Character(chi) => {
            let h = h.expect("homology computed for character resolution");
            h.check_length(chi.residues().len())?;
            let d = chi
                .modulus()
                .to_i64()
                .ok_or_else(|| NormError::BadModulus(i64::MAX))?;
            let order = check_modulus(d)?;
            let mut theta = Vec::with_capacity(n);
            let mut wedge = Vec::with_capacity(n);
            for b in g.blocks() {
                let fi = h
                    .generator_index(&GeneratorKind::Fibre { block: b.id })
                    .expect("fibre generator exists");
                theta.push(to_exponent(chi.residue_on_generator(fi)));
                let mut w = Vec::new();
                for k in 0..2 * b.genus {
                    let gi = h
                        .generator_index(&GeneratorKind::Surface { block: b.id, index: k })
                        .expect("surface generator exists");
                    w.push(to_exponent(chi.residue_on_generator(gi)));
                }
                for k in 0..b.boundary_count - 1 {
                    let gi = h
                        .generator_index(&GeneratorKind::Boundary { block: b.id, index: k })
                        .expect("boundary generator exists");
                    w.push(to_exponent(chi.residue_on_generator(gi)));
                }
                wedge.push(w);
            }
            let mut section = Vec::with_capacity(g.tori().len());
            for t in g.tori() {
                let circle = h
                    .boundary_circle_class(t.plus_end.block, t.plus_end.index)
                    .expect("plus end names a boundary circle");
                section.push(to_exponent(&chi.eval(h, &circle)?));
            }
            Ok(AlphaData { order, theta, wedge, section })
        }
    }
}

fn resolve(
    g: &DecoratedGraph,
    sigma: &SigmaSpec,
    alpha: &AlphaSpec,
) -> Result<Twist, NormError> {
    require_composite(g)?;
    let need_h = matches!(sigma, SigmaSpec::Class(_)) || matches!(alpha, AlphaSpec::Character(_));
    let h = if need_h { Some(g.homology_h1()) } else { None };
    let s = resolve_sigma(g, sigma, h.as_ref())?;
    let a = resolve_alpha(g, alpha, h.as_ref())?;
    let blocks = g
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| BlockTwist {
            id: b.id,
            chi: b.euler_characteristic(),
            sigma_theta: s.theta[i],
            alpha_theta: a.theta[i],
            wedge: s.wedge[i].iter().copied().zip(a.wedge[i].iter().copied()).collect(),
        })
        .collect();
    let sections = g
        .tori()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let pos = g
                .blocks()
                .iter()
                .position(|b| b.id == t.plus_end.block)
                .expect("plus end names a block");
            (pos, (s.section[k], a.section[k]))
        })
        .collect();
    Ok(Twist { order: a.order, blocks, sections })
}

impl Twist {
    /// Errors on the first block where the twisted coefficient is trivial,
    /// i.e. σ(θ_B) = 0 and α(θ_B) ≡ 0: exactly the non-acyclic case.
    fn acyclicity_guard(&self) -> Result<(), NormError> {
        for b in &self.blocks {
            if b.sigma_theta == 0 && b.alpha_theta == 0 {
                return Err(NormError::NotAcyclic { block: b.id });
            }
        }
        Ok(())
    }
}

/// ζ_d^a · t^s as a rational function.
fn monomial_scalar(d: u32, s: i64, a: i64) -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::term(Cyclotomic::zeta_pow(d, a), s))
}

/// The closed-form torsion of a disjoint union of blocks given as
/// (χ_B, σ(θ_B), α(θ_B)) triples: ∏ (1 − ζ_d^a t^s)^{−χ}.
pub(crate) fn product_from_block_data(d: u32, data: &[(i64, i64, i64)]) -> RatFunc {
    let mut out = RatFunc::one();
    for &(chi, s, a) in data {
        let factor = RatFunc::one().sub(&monomial_scalar(d, s, a));
        out = out.mul(&factor.pow(-chi));
    }
    out
}

/// Σ (−χ_B)·|σ(θ_B)| over (χ_B, σ(θ_B)) pairs.
pub(crate) fn thurston_from_block_data(data: &[(i64, i64)]) -> i64 {
    data.iter().map(|&(chi, s)| -chi * s.abs()).sum()
}

/// Thurston norm of σ on a composite graph: Σ_B (−χ_B)·|σ(θ_B)|.
pub fn thurston_norm(g: &DecoratedGraph, sigma: &SigmaSpec) -> Result<i64, NormError> {
    require_composite(g)?;
    let h = matches!(sigma, SigmaSpec::Class(_)).then(|| g.homology_h1());
    let s = resolve_sigma(g, sigma, h.as_ref())?;
    let data: Vec<(i64, i64)> = g
        .blocks()
        .iter()
        .zip(&s.theta)
        .map(|(b, &v)| (b.euler_characteristic(), v))
        .collect();
    Ok(thurston_from_block_data(&data))
}

/// Closed-form twisted torsion ∏_B (1 − ζ_d^{α(θ_B)} t^{σ(θ_B)})^{−χ_B}.
pub fn torsion_product(
    g: &DecoratedGraph,
    sigma: &SigmaSpec,
    alpha: &AlphaSpec,
) -> Result<RatFunc, NormError> {
    let tw = resolve(g, sigma, alpha)?;
    tw.acyclicity_guard()?;
    let data: Vec<(i64, i64, i64)> = tw
        .blocks
        .iter()
        .map(|b| (b.chi, b.sigma_theta, b.alpha_theta))
        .collect();
    Ok(product_from_block_data(tw.order, &data))
}

/// Twisted torsion assembled through the chain-complex engine: one wedge ×
/// circle complex per block, divided by one torus complex per gluing, all
/// with exact arithmetic. Agrees with [`torsion_product`] up to units; the
/// returned class normalizes that away.
pub fn torsion_via_engine(
    g: &DecoratedGraph,
    sigma: &SigmaSpec,
    alpha: &AlphaSpec,
) -> Result<TorsionValue, NormError> {
    let tw = resolve(g, sigma, alpha)?;
    tw.acyclicity_guard()?;
    let d = tw.order;
    let mut num = RatFunc::one();
    for b in &tw.blocks {
        let scalars: Vec<RatFunc> =
            b.wedge.iter().map(|&(s, a)| monomial_scalar(d, s, a)).collect();
        let fibre = monomial_scalar(d, b.sigma_theta, b.alpha_theta);
        let complex = circle_product(&wedge_complex(&scalars), &fibre);
        let tau =
            torsion_exact(&complex).map_err(|_| NormError::NotAcyclic { block: b.id })?;
        num = num.mul(&tau);
    }
    let mut den = RatFunc::one();
    for &(pos, (s, a)) in &tw.sections {
        let b = &tw.blocks[pos];
        let fibre = monomial_scalar(d, b.sigma_theta, b.alpha_theta);
        let complex = circle_product(&wedge_complex(&[monomial_scalar(d, s, a)]), &fibre);
        let tau =
            torsion_exact(&complex).map_err(|_| NormError::NotAcyclic { block: b.id })?;
        den = den.mul(&tau);
    }
    Ok(TorsionValue::new(num.div(&den), d))
}

/// Width of the twisted torsion; equals the Thurston norm on composite
/// graphs.
pub fn torsion_norm(
    g: &DecoratedGraph,
    sigma: &SigmaSpec,
    alpha: &AlphaSpec,
) -> Result<i64, NormError> {
    let tau = torsion_product(g, sigma, alpha)?;
    Ok(tau
        .width()
        .as_finite()
        .expect("guarded torsion product is nonzero"))
}

/// Full comparison report. Acyclicity failure is recorded in the report,
/// not raised; structural and validation errors are still errors.
pub fn verify_norm_equality(
    g: &DecoratedGraph,
    sigma: &SigmaSpec,
    alpha: &AlphaSpec,
) -> Result<NormReport, NormError> {
    let tw = resolve(g, sigma, alpha)?;
    let data: Vec<(i64, i64)> = tw.blocks.iter().map(|b| (b.chi, b.sigma_theta)).collect();
    let thurston = thurston_from_block_data(&data);
    if tw.acyclicity_guard().is_err() {
        return Ok(NormReport {
            thurston,
            torsion_width: Width::NegInfinity,
            torsion_value: None,
            equal: false,
            acyclic: false,
        });
    }
    let triples: Vec<(i64, i64, i64)> = tw
        .blocks
        .iter()
        .map(|b| (b.chi, b.sigma_theta, b.alpha_theta))
        .collect();
    let tau = product_from_block_data(tw.order, &triples);
    let width = tau.width();
    Ok(NormReport {
        thurston,
        torsion_width: width,
        torsion_value: Some(TorsionValue::new(tau, tw.order)),
        equal: width == Width::Finite(thurston),
        acyclic: true,
    })
}

/// Smallest d ≥ 2 coprime to every fibre-intersection number, the default
/// modulus for characters. None when some intersection number is 0 (then no
/// d is coprime to it).
pub fn smallest_admissible_modulus(g: &DecoratedGraph) -> Option<i64> {
    let cs: Vec<i64> = g.tori().iter().map(|t| t.fibre_intersection().abs()).collect();
    if cs.iter().any(|&c| c == 0) {
        return None;
    }
    (2..).find(|&d| cs.iter().all(|&c| num_integer::gcd(d, c) == 1))
}
