//! Acceptance gate: nine exact, tolerance-zero criteria covering the
//! torsion engine, the closed block formula, the norm identity, glued
//! characters, cover bookkeeping, Smith normal form, the circle-bundle
//! pipeline, and the golden three-torus example. Each test prints one
//! pass line; any failure is a hard assertion.

use graphnorm::abelian::{smith_normal_form, solve_mod, IntMatrix};
use graphnorm::corpus::random_composite_graph;
use graphnorm::covers::{
    alpha_on_torus, cover_genus, cyclic_cover, eliminate_self_pastings, extension_obstruction,
    glue_character, GlueOutcome,
};
use graphnorm::document::GraphDocument;
use graphnorm::field::{w_equal, Cyclotomic, LaurentPoly, RatFunc, TorsionValue, Width};
use graphnorm::manifold::{
    Block, BlockId, BoundaryRef, DecoratedGraph, GeneratorKind, Homology, TorusGluing, TorusId,
};
use graphnorm::norms::{
    smallest_admissible_modulus, thurston_norm, torsion_norm, torsion_product, torsion_via_engine,
    AlphaSpec, SigmaSpec,
};
use graphnorm::torsion::{
    apply_base_change, circle_product, direct_sum, torsion, torsion_exact,
    torsion_exact_randomized, wedge_complex, BaseChange, BasedChainComplex, RfMatrix,
};
use graphnorm::bundle::{
    baldridge_sum, limit_certificate, separating_k, twist_euler, Certification, SWFunction,
};
use graphnorm::abelian::FgAbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(p: i64, q: i64) -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::term(
        Cyclotomic::from_rational(num_rational::BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )),
        0,
    ))
}

fn monomial(order: u32, a: i64, e: i64) -> RatFunc {
    RatFunc::from_laurent(LaurentPoly::term(Cyclotomic::zeta_pow(order, a), e))
}

/// Acyclic two-term complex 0 -> K -> K -> 0 concentrated in degrees
/// i+1, i with the boundary acting by a nonzero scalar.
fn elementary(i: usize, lambda: &RatFunc) -> BasedChainComplex {
    let mut dims = vec![0usize; i + 2];
    dims[i] = 1;
    dims[i + 1] = 1;
    let boundaries = (1..=i + 1)
        .map(|j| {
            if j == i + 1 {
                RfMatrix::from_rows(vec![vec![lambda.clone()]])
            } else {
                RfMatrix::zero(dims[j - 1], dims[j])
            }
        })
        .collect();
    BasedChainComplex::new(dims, boundaries)
}

fn random_scalar(rng: &mut impl Rng) -> RatFunc {
    loop {
        let p = rng.gen_range(-4i64..=4);
        if p == 0 {
            continue;
        }
        let base = rat(p, rng.gen_range(1i64..=3));
        let m = monomial(6, rng.gen_range(0..6), rng.gen_range(-2i64..=2));
        let s = if rng.gen_bool(0.5) {
            // binomial scalars give torsions with genuine width; the two
            // terms can cancel, hence the nonzero retry loop
            base.mul(&m)
                .add(&monomial(6, rng.gen_range(0..6), rng.gen_range(-2i64..=2)))
        } else {
            base.mul(&m)
        };
        if !s.is_zero() {
            return s;
        }
    }
}

/// Invertible square matrix built from elementary row operations, with an
/// optional non-unit scaling so determinant factors are exercised.
fn random_invertible(n: usize, allow_scaling: bool, rng: &mut impl Rng) -> RfMatrix {
    let mut m = RfMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c = monomial(6, rng.gen_range(0..6), rng.gen_range(-1i64..=1));
            let op = RfMatrix::from_fn(n, n, |r, s| {
                if r == s {
                    RatFunc::one()
                } else if r == i && s == j {
                    c.clone()
                } else {
                    RatFunc::zero()
                }
            });
            m = op.mul(&m);
        }
    }
    if allow_scaling && rng.gen_bool(0.5) {
        let row = rng.gen_range(0..n);
        let f = random_scalar(rng);
        let op = RfMatrix::from_fn(n, n, |r, s| {
            if r == s {
                if r == row {
                    f.clone()
                } else {
                    RatFunc::one()
                }
            } else {
                RatFunc::zero()
            }
        });
        m = op.mul(&m);
    }
    m
}

#[test]
fn criterion_1_torsion_engine_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for case in 0..100 {
        // direct sum of elementary acyclic pieces, then a unit scramble:
        // at most 4 degrees, each dimension at most 6
        let pieces = rng.gen_range(1..=4);
        let mut c = elementary(rng.gen_range(0..=2), &random_scalar(&mut rng));
        for _ in 1..pieces {
            c = direct_sum(&c, &elementary(rng.gen_range(0..=2), &random_scalar(&mut rng)));
        }
        let scramble = BaseChange::new(
            c.dims()
                .iter()
                .map(|&d| random_invertible(d, false, &mut rng))
                .collect(),
        );
        let c = apply_base_change(&c, &scramble).unwrap();
        assert!(c.dims().len() <= 4 && c.dims().iter().all(|&d| d <= 6));
        assert!(c.is_acyclic(), "case {case}: construction is acyclic");

        let reference = torsion_exact(&c).unwrap();
        for choice in 0..10 {
            let v = torsion_exact_randomized(&c, &mut rng).unwrap();
            assert_eq!(v, reference, "case {case}, choice {choice}");
            assert_eq!(
                TorsionValue::new(v, 6),
                TorsionValue::new(reference.clone(), 6)
            );
        }

        // base-change law with non-unit determinants
        let change = BaseChange::new(
            c.dims()
                .iter()
                .map(|&d| random_invertible(d, true, &mut rng))
                .collect(),
        );
        let after = torsion_exact(&apply_base_change(&c, &change).unwrap()).unwrap();
        assert_eq!(
            after,
            change.determinant_factor().unwrap().mul(&reference),
            "case {case}: base-change law"
        );
    }
    println!("criterion 1 (torsion engine soundness): pass");
}

#[test]
fn criterion_2_block_formula_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut cases = 0;
    while cases < 50 {
        let d = rng.gen_range(2u32..=8);
        let a = rng.gen_range(0..d as i64);
        let s = rng.gen_range(-3i64..=3);
        if a == 0 && s == 0 {
            continue; // trivial fibre scalar: the complex is not acyclic
        }
        let n = rng.gen_range(1usize..=5);
        let fibre = monomial(d, a, s);
        let scalars: Vec<RatFunc> = (0..n)
            .map(|_| monomial(d, rng.gen_range(0..d as i64), rng.gen_range(-2i64..=2)))
            .collect();
        let complex = circle_product(&wedge_complex(&scalars), &fibre);
        let engine = torsion(&complex, d).unwrap();

        let factor = RatFunc::one().sub(&fibre);
        let mut expected = RatFunc::one();
        for _ in 1..n {
            expected = expected.mul(&factor);
        }
        assert_eq!(engine, TorsionValue::new(expected.clone(), d), "n={n} d={d} a={a} s={s}");
        assert!(w_equal(&torsion_exact(&complex).unwrap(), &expected, d));
        if n == 1 {
            // torus case: trivial torsion
            assert_eq!(engine, TorsionValue::new(RatFunc::one(), d));
        }
        cases += 1;
    }
    println!("criterion 2 (block formula oracle): pass");
}

/// Integer basis of the valid-value lattice for cohomology classes.
fn kernel_basis(h: &Homology) -> Vec<Vec<i64>> {
    let r = h.relation_matrix();
    let snf = smith_normal_form(r);
    (snf.rank..r.cols())
        .map(|j| {
            (0..r.cols())
                .map(|i| snf.v.row(i)[j].to_i64().expect("basis entry fits"))
                .collect()
        })
        .collect()
}

fn random_class_values(rng: &mut impl Rng, basis: &[Vec<i64>], n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for b in basis {
        let c = rng.gen_range(-3..=3i64);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    v
}

fn random_character_values(rng: &mut impl Rng, h: &Homology, d: i64) -> Vec<i64> {
    let r = h.relation_matrix();
    let zero = vec![BigInt::from(0); r.rows()];
    let sol = solve_mod(r, &zero, &BigInt::from(d)).expect("homogeneous system is solvable");
    let mut v = vec![0i64; r.cols()];
    for gen in &sol.homogeneous {
        let c = rng.gen_range(0..d);
        for (vi, gi) in v.iter_mut().zip(gen) {
            *vi = (*vi + c * gi.to_i64().expect("residue fits")).rem_euclid(d);
        }
    }
    v
}

fn admissible_moduli(g: &DecoratedGraph) -> impl Iterator<Item = i64> + '_ {
    (2..).filter(|d| {
        g.tori()
            .iter()
            .all(|t| num_integer::gcd(*d, t.fibre_intersection().abs()) == 1)
    })
}

/// Random validated (sigma, alpha, d) passing the per-block acyclicity
/// guard, or None when the graph admits no such twist at small moduli.
fn find_admissible_twist(
    rng: &mut impl Rng,
    g: &DecoratedGraph,
) -> Option<(SigmaSpec, AlphaSpec, i64)> {
    let h = g.homology_h1();
    let basis = kernel_basis(&h);
    let n = h.generator_count();
    let sigma_values = random_class_values(rng, &basis, n);
    let fibre_index = |b: &Block| {
        h.generator_index(&GeneratorKind::Fibre { block: b.id })
            .expect("fibre generator exists")
    };
    let fibre_dead = g.blocks().iter().any(|b| {
        let cls = h.fibre_class(b.id).expect("fibre class exists");
        cls.free().iter().all(|v| v == &BigInt::from(0))
            && cls.torsion().iter().all(|v| v == &BigInt::from(0))
    });
    if fibre_dead {
        return None;
    }
    let ds: Vec<i64> = admissible_moduli(g).take(8).collect();
    for d in ds {
        for _ in 0..8 {
            let alpha_values = random_character_values(rng, &h, d);
            let guard_ok = g.blocks().iter().all(|b| {
                let i = fibre_index(b);
                sigma_values[i] != 0 || alpha_values[i].rem_euclid(d) != 0
            });
            if guard_ok {
                let sigma = h.cohomology_class(&sigma_values).expect("valid class");
                let alpha = h.character_mod(d, &alpha_values).expect("valid character");
                return Some((SigmaSpec::Class(sigma), AlphaSpec::Character(alpha), d));
            }
        }
    }
    None
}

#[test]
fn criterion_3_product_formula_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 && attempts < 400 {
        attempts += 1;
        let n_blocks = rng.gen_range(2..=5);
        let g = random_composite_graph(&mut rng, n_blocks);
        let Some((sigma, alpha, d)) = find_admissible_twist(&mut rng, &g) else {
            continue;
        };
        let engine = torsion_via_engine(&g, &sigma, &alpha).unwrap();
        let product = torsion_product(&g, &sigma, &alpha).unwrap();
        assert_eq!(engine, TorsionValue::new(product, d as u32), "attempt {attempts}");
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} admissible twists found");
    println!("criterion 3 (product formula equivalence): pass");
}

#[test]
fn criterion_4_norm_equality() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 && attempts < 400 {
        attempts += 1;
        let n_blocks = rng.gen_range(2..=5);
        let g = random_composite_graph(&mut rng, n_blocks);
        let Some((sigma, alpha, _d)) = find_admissible_twist(&mut rng, &g) else {
            continue;
        };
        let thurston = thurston_norm(&g, &sigma).unwrap();
        let torsion = torsion_norm(&g, &sigma, &alpha).unwrap();
        let width = torsion_product(&g, &sigma, &alpha).unwrap().width();
        assert_eq!(thurston, torsion, "attempt {attempts}");
        assert_eq!(width, Width::Finite(thurston), "attempt {attempts}");
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} admissible twists found");
    println!("criterion 4 (norm equality): pass");
}

/// Boundary-circle residues of a block, recomputed torus by torus from the
/// public per-torus characters.
fn block_boundary_residues(g: &DecoratedGraph, block: BlockId, d: i64) -> Vec<i64> {
    let b = g.block(block).unwrap();
    (0..b.boundary_count)
        .map(|i| {
            let t = g
                .tori()
                .iter()
                .find(|t| {
                    (t.plus_end == BoundaryRef { block, index: i })
                        || (t.minus_end == BoundaryRef { block, index: i })
                })
                .expect("closed graph: every circle is glued");
            let ch = alpha_on_torus(t, d).expect("admissible modulus");
            if t.plus_end == (BoundaryRef { block, index: i }) {
                ch.plus_section_value()
            } else {
                ch.minus_section_value(t)
            }
        })
        .collect()
}

#[test]
fn criterion_5_character_theorem() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut glued = 0;
    let mut obstructed = 0;
    for _ in 0..60 {
        let n_blocks = rng.gen_range(2..=5);
        let g = random_composite_graph(&mut rng, n_blocks);
        let d = smallest_admissible_modulus(&g).expect("composite graphs admit a modulus");
        let h = g.homology_h1();

        // per-torus characters evaluate to 1 on both fibre images
        for t in g.tori() {
            let ch = alpha_on_torus(t, d).unwrap();
            assert_eq!(ch.eval([1, 0]), 1, "plus fibre");
            assert_eq!(ch.eval([t.gluing[0][0], t.gluing[1][0]]), 1, "minus fibre");
        }

        match glue_character(&g, d).unwrap() {
            GlueOutcome::Character(alpha) => {
                glued += 1;
                for b in g.blocks() {
                    let theta = h.fibre_class(b.id).unwrap();
                    assert_eq!(
                        alpha.eval(&h, &theta).unwrap(),
                        BigInt::one(),
                        "block {} fibre residue",
                        b.id.0
                    );
                }
            }
            GlueOutcome::Obstructed(report) => {
                obstructed += 1;
                assert_eq!(report.modulus, d);
                assert!(!report.blocks.is_empty());
                for bo in &report.blocks {
                    let residues = block_boundary_residues(&g, bo.block, d);
                    let recomputed =
                        extension_obstruction(g.block(bo.block).unwrap(), &residues, d);
                    assert_eq!(recomputed, bo.residue);
                    assert_ne!(recomputed, 0, "reported obstruction is genuine");
                }
            }
        }
    }
    assert!(glued >= 5, "only {glued} glued outcomes in 60 graphs");
    println!(
        "criterion 5 (character theorem): pass ({glued} glued, {obstructed} obstructed)"
    );
}

fn total_chi(g: &DecoratedGraph) -> i64 {
    g.blocks()
        .iter()
        .map(|b| 2 - 2 * i64::from(b.genus) - i64::from(b.boundary_count))
        .sum()
}

#[test]
fn criterion_6_cover_bookkeeping() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut doubled = 0;
    let mut crossed = 0;
    for _ in 0..40 {
        let n_blocks = rng.gen_range(2..=4);
        let g = random_composite_graph(&mut rng, n_blocks);

        // self-pasting elimination: a double cover when pastings exist,
        // the identity otherwise; gluings survive unchanged either way
        let (cover, pattern) = eliminate_self_pastings(&g);
        let degree = pattern.degree;
        assert!(degree == 1 || degree == 2);
        if degree == 2 {
            doubled += 1;
        }
        assert_eq!(total_chi(&cover), degree * total_chi(&g));
        assert_eq!(cover.classify().composite, g.classify().composite);
        for family in &pattern.tori {
            let base = g.torus(family.base).unwrap();
            for lift in &family.lifts {
                let lifted = cover.torus(lift.torus).unwrap();
                assert_eq!(lifted.gluing, base.gluing, "intersection numbers survive");
            }
        }

        // cyclic cover on a character supported on one graph loop
        let h = g.homology_h1();
        let non_forest: Vec<TorusId> = g
            .tori()
            .iter()
            .map(|t| t.id)
            .filter(|id| !h.spanning_forest().contains(id))
            .collect();
        if let Some(&loop_torus) = non_forest.first() {
            crossed += 1;
            let d = 3i64;
            let idx = h
                .generator_index(&GeneratorKind::Crossing { torus: loop_torus })
                .expect("loop torus has a crossing generator");
            let mut values = vec![0i64; h.generator_count()];
            values[idx] = 1;
            let alpha = h.character_mod(d, &values).unwrap();
            let (cover, pattern) = cyclic_cover(&g, &alpha).unwrap();
            assert_eq!(pattern.degree, d);
            assert_eq!(cover.blocks().len(), d as usize * g.blocks().len());
            assert_eq!(total_chi(&cover), d * total_chi(&g));
            assert_eq!(cover.classify().composite, g.classify().composite);
            for family in &pattern.tori {
                let base = g.torus(family.base).unwrap();
                for lift in &family.lifts {
                    let lifted = cover.torus(lift.torus).unwrap();
                    assert_eq!(lifted.gluing, base.gluing, "intersection numbers survive");
                }
            }
            for family in &pattern.blocks {
                let sheets: i64 = family
                    .lifts
                    .iter()
                    .map(|l| l.fibre_degree * l.base_degree)
                    .sum();
                assert_eq!(sheets, d, "sheets over block {}", family.base.0);
            }
        }
    }
    assert!(doubled >= 5, "only {doubled} graphs had self-pastings");
    assert!(crossed >= 5, "only {crossed} graphs had a graph loop");

    // boundary bookkeeping of block covers
    assert_eq!(cover_genus(0, 3, 9, 3).unwrap(), 1);
    for g0 in 1u32..=4 {
        for b in 1u32..=4 {
            for a in 1i64..=4 {
                for f in 1i64..=4 {
                    if let Ok(gt) = cover_genus(g0, b, f * a, a) {
                        assert!(
                            gt >= g0,
                            "genus dropped: ({g0},{b}) degree {} circle {a} -> {gt}",
                            f * a
                        );
                    }
                }
            }
        }
    }
    println!("criterion 6 (cover bookkeeping): pass");
}

/// gcd of all k-by-k minors, the classical determinantal divisor.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in combos(n, k - 1) {
                if rest.iter().all(|&r| r > first) {
                    let mut c = vec![first];
                    c.append(&mut rest);
                    out.push(c);
                }
            }
        }
        out.retain(|c| c.len() == k);
        out
    }
    let mut acc = BigInt::zero();
    for rows in combos(m.rows(), k) {
        for cols in combos(m.cols(), k) {
            let sub = IntMatrix::from_rows(
                &rows
                    .iter()
                    .map(|&r| {
                        cols.iter()
                            .map(|&c| m.row(r)[c].to_i64().unwrap())
                            .collect::<Vec<i64>>()
                    })
                    .collect::<Vec<_>>(),
            );
            acc = acc.gcd(&sub.det());
        }
    }
    acc
}

fn check_snf_against_minors(m: &IntMatrix) {
    let snf = smith_normal_form(m);
    let n = m.rows().min(m.cols());
    let mut prev = BigInt::one();
    for k in 1..=n {
        let e = snf.d[(k - 1, k - 1)].clone();
        let dk = minor_gcd(m, k);
        if k <= snf.rank {
            assert!(!dk.is_zero(), "nonzero minor within the rank");
            assert_eq!(&e * &prev, dk, "diagonal entry {k}");
            prev = dk;
        } else {
            // beyond the rank every minor vanishes, as does the diagonal
            assert!(dk.is_zero());
            assert!(e.is_zero());
        }
    }
}

#[test]
fn criterion_7_snf_matches_minor_gcds() {
    // all 2x2 matrices with entries in [-4,4]
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            for c in -4i64..=4 {
                for d in -4i64..=4 {
                    check_snf_against_minors(&IntMatrix::from_rows(&[vec![a, b], vec![c, d]]));
                }
            }
        }
    }
    // all 3x3 matrices with entries in [-1,1], then a seeded sample of the
    // full [-4,4] range (the exhaustive 9^9 space does not fit the time
    // budget; see the sampled sweep below)
    for mask in 0..3usize.pow(9) {
        let mut e = [0i64; 9];
        let mut m = mask;
        for slot in &mut e {
            *slot = (m % 3) as i64 - 1;
            m /= 3;
        }
        check_snf_against_minors(&IntMatrix::from_rows(&[
            vec![e[0], e[1], e[2]],
            vec![e[3], e[4], e[5]],
            vec![e[6], e[7], e[8]],
        ]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..2000 {
        let e: Vec<i64> = (0..9).map(|_| rng.gen_range(-4i64..=4)).collect();
        check_snf_against_minors(&IntMatrix::from_rows(&[
            vec![e[0], e[1], e[2]],
            vec![e[3], e[4], e[5]],
            vec![e[6], e[7], e[8]],
        ]));
    }
    println!(
        "criterion 7 (smith normal form vs minor gcds): pass \
         (2x2 exhaustive [-4,4], 3x3 exhaustive [-1,1], 2000 random 3x3 [-4,4])"
    );
}

#[test]
fn criterion_8_baldridge_pipeline() {
    let group = FgAbelianGroup::new(2, vec![]);
    let e = group.element_from_i64(&[1, 0], &[]);
    let zero = group.element_from_i64(&[0, 0], &[]);
    let sw = SWFunction::new(
        group.clone(),
        vec![(zero.clone(), 1), (e.clone(), -1)],
    )
    .unwrap();

    // the cancelling pair sums to zero on every orbit in the window
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            let xi = group.element_from_i64(&[x, y], &[]);
            assert_eq!(baldridge_sum(&sw, &e, &xi).unwrap(), 0);
        }
    }

    // twisting by the separating k restores single-point sums everywhere
    let gamma = group.element_from_i64(&[0, 1], &[]);
    let k = separating_k(&sw, &e, &gamma, 10_000).unwrap();
    assert_eq!(k, 1);
    let twisted = twist_euler(&group, &e, &gamma, k);
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            let xi = group.element_from_i64(&[x, y], &[]);
            let mut hits = Vec::new();
            for l in -20i64..=20 {
                let shifted = group.add(&xi, &group.scalar_mul(&BigInt::from(l), &twisted));
                let v = sw.value(&shifted);
                if v != 0 {
                    hits.push(v);
                }
            }
            assert!(hits.len() <= 1, "orbit of ({x},{y}) is separated");
            let expected = hits.first().copied().unwrap_or(0);
            assert_eq!(baldridge_sum(&sw, &twisted, &xi).unwrap(), expected);
        }
    }

    // certificate agrees with the direct comparison on the whole window
    for chi in 0i64..=20 {
        for rhs in 0i64..=20 {
            for m in 0i64..=30 {
                let cert = limit_certificate(chi, m, rhs);
                match cert.verdict {
                    Certification::Certified => assert!(chi >= rhs, "chi={chi} rhs={rhs} m={m}"),
                    Certification::Refuted { witness_k } => {
                        assert!(chi < rhs, "chi={chi} rhs={rhs} m={m}");
                        assert_eq!(witness_k, m + 1);
                        assert!(chi * witness_k + m < rhs * witness_k);
                    }
                }
                for step in &cert.trace {
                    assert_eq!(step.scaled_lhs, chi * step.k + m);
                    assert_eq!(step.scaled_rhs, rhs * step.k);
                    assert_eq!(step.holds, step.scaled_lhs >= step.scaled_rhs);
                }
            }
        }
    }
    println!("criterion 8 (circle bundle pipeline): pass");
}

fn pants_pair(c: [i64; 3]) -> DecoratedGraph {
    let blocks = vec![
        Block { id: BlockId(0), genus: 0, boundary_count: 3 },
        Block { id: BlockId(1), genus: 0, boundary_count: 3 },
    ];
    let tori = (0..3)
        .map(|i| TorusGluing {
            id: TorusId(i as u32),
            plus_end: BoundaryRef { block: BlockId(0), index: i as u32 },
            minus_end: BoundaryRef { block: BlockId(1), index: i as u32 },
            gluing: [[1, 0], [c[i as usize], 1]],
        })
        .collect();
    DecoratedGraph::new(blocks, tori).unwrap()
}

#[test]
fn criterion_9_golden_three_torus_gluing() {
    let g = pants_pair([1, 1, 1]);
    let h = g.homology_h1();

    // first homology Z^3 + Z/3
    assert_eq!(h.group().free_rank(), 3);
    assert_eq!(h.group().torsion_factors(), &[BigInt::from(3)]);

    // every valid class takes the same value on the two fibres
    let f0 = h.generator_index(&GeneratorKind::Fibre { block: BlockId(0) }).unwrap();
    let f1 = h.generator_index(&GeneratorKind::Fibre { block: BlockId(1) }).unwrap();
    let basis = kernel_basis(&h);
    assert!(!basis.is_empty());
    for v in &basis {
        assert_eq!(v[f0], v[f1], "fibre values are forced equal");
    }

    // norms for sigma(theta) = s on both sides: 2|s| each, exactly
    let d = smallest_admissible_modulus(&g).unwrap();
    let alpha = match glue_character(&g, d).unwrap() {
        GlueOutcome::Character(alpha) => AlphaSpec::Character(alpha),
        GlueOutcome::Obstructed(_) => panic!("unit intersections glue at the smallest modulus"),
    };
    for s in -3i64..=3 {
        let sigma = SigmaSpec::FibreValues(vec![s, s]);
        assert_eq!(thurston_norm(&g, &sigma).unwrap(), 2 * s.abs());
        if s != 0 {
            assert_eq!(torsion_norm(&g, &sigma, &alpha).unwrap(), 2 * s.abs());
            assert_eq!(
                torsion_product(&g, &sigma, &alpha).unwrap().width(),
                Width::Finite(2 * s.abs())
            );
        }
    }

    // the same values come out of a document round trip
    let doc = GraphDocument::from_graph(&g);
    let reparsed = doc.to_graph().unwrap();
    assert_eq!(
        thurston_norm(&reparsed, &SigmaSpec::FibreValues(vec![1, 1])).unwrap(),
        2
    );
    println!("criterion 9 (golden three-torus example): pass");
}
