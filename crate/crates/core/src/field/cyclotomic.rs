//! The field Q(ζ_k), represented as Q[x] modulo the k-th cyclotomic
//! polynomial Φ_k. Reducing modulo Φ_k rather than x^k − 1 keeps the
//! representation a field, so division is total on nonzero values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub(crate) fn euler_phi(k: u32) -> u32 {
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(k: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=k).filter(|i| k % i == 0).collect();
    d.sort_unstable();
    d
}

/// Exact division by a monic divisor; integer dense polynomials, index = degree.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert!(rem.len() > dn);
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, d) in den.iter().enumerate() {
            rem[i - dn + j] -= &c * d;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division not exact");
    quot
}

fn cyclotomic_poly_int(k: u32) -> Vec<BigInt> {
    assert!(k >= 1);
    let mut table: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(k) {
        // x^d - 1 divided by Φ_e for every proper divisor e of d.
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e == d {
                continue;
            }
            p = int_poly_div_exact(&p, &table[&e]);
        }
        table.insert(d, p);
    }
    table.remove(&k).unwrap()
}

/// Φ_k as a polynomial over Q, ascending degree.
pub fn cyclotomic_poly(k: u32) -> Vec<BigRational> {
    cyclotomic_poly_int(k)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}

/// Rational dense polynomial helpers.
fn trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn rat_poly_rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    let lead = &den[dn];
    while rem.len() > dn {
        let deg = rem.len() - 1;
        let c = &rem[deg] / lead;
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[deg - dn + j] -= t;
        }
        trim(&mut rem);
    }
    rem
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Extended gcd in Q[x]: returns (g, s, t) with s·a + t·b = g.
fn rat_poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_poly_divmod(&r0, &r1);
        let next_s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        let next_t = rat_poly_sub(&t0, &rat_poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = next_s;
        t0 = t1;
        t1 = next_t;
    }
    (r0, s0, t0)
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn rat_poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let dn = b.len() - 1;
    let lead = &b[dn];
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dn)];
    while rem.len() > dn {
        let deg = rem.len() - 1;
        let c = &rem[deg] / lead;
        quot[deg - dn] = c.clone();
        for (j, d) in b.iter().enumerate() {
            let t = &c * d;
            rem[deg - dn + j] -= t;
        }
        trim(&mut rem);
    }
    (quot, rem)
}

/// An element of Q(ζ_k): a polynomial in ζ_k of degree < φ(k).
///
/// Values of different orders mix by promotion into Q(ζ_lcm), under the
/// embedding ζ_k ↦ ζ_l^{l/k}.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// length φ(order); coefficient of ζ^i at index i.
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds from coefficients of powers ζ^0, ζ^1, …, reducing mod Φ_k.
    pub fn new(order: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1);
        let phi = cyclotomic_poly(order);
        let mut c = rat_poly_rem(&coeffs, &phi);
        let deg = phi.len() - 1;
        c.resize(deg, BigRational::zero());
        Cyclotomic { order, coeffs: c }
    }

    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// ζ_order^a, with a taken mod order.
    pub fn zeta_pow(order: u32, a: i64) -> Self {
        let a = a.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); a + 1];
        coeffs[a] = BigRational::one();
        Cyclotomic::new(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            let c = self.coeffs[0].clone();
            // ζ_1 = 1 and ζ_2 = -1 are the only rational roots of unity, and
            // both have φ = 1, so a length-1 vector is already rational.
            Some(c)
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_target); current order must divide target.
    pub fn promote(&self, target: u32) -> Cyclotomic {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target % self.order == 0,
            "promotion target {target} not a multiple of {}",
            self.order
        );
        let step = (target / self.order) as usize;
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() * step.max(1)];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = e * step;
                if idx >= coeffs.len() {
                    coeffs.resize(idx + 1, BigRational::zero());
                }
                coeffs[idx] += c;
            }
        }
        Cyclotomic::new(target, coeffs)
    }

    fn common_order(&self, other: &Cyclotomic) -> u32 {
        num_integer::lcm(self.order, other.order)
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let k = self.common_order(other);
        let a = self.promote(k);
        let b = other.promote(k);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic { order: k, coeffs }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let k = self.common_order(other);
        let a = self.promote(k);
        let b = other.promote(k);
        let prod = rat_poly_mul(&a.coeffs, &b.coeffs);
        Cyclotomic::new(k, prod)
    }

    pub fn inverse(&self) -> Cyclotomic {
        assert!(!self.is_zero(), "inverse of zero");
        let phi = cyclotomic_poly(self.order);
        let mut rep = self.coeffs.clone();
        trim(&mut rep);
        let (g, s, _) = rat_poly_ext_gcd(&rep, &phi);
        // Φ_k is irreducible over Q, so the gcd is a nonzero constant.
        assert_eq!(g.len(), 1, "gcd with Φ_k must be constant");
        let scale = g[0].recip();
        let inv: Vec<BigRational> = s.iter().map(|c| c * &scale).collect();
        Cyclotomic::new(self.order, inv)
    }

    pub fn div(&self, other: &Cyclotomic) -> Cyclotomic {
        self.mul(&other.inverse())
    }

    /// Coefficient vector at a fixed order, for canonical comparisons.
    pub fn coeff_vector_at(&self, order: u32) -> Vec<BigRational> {
        let target = num_integer::lcm(self.order, order);
        self.promote(target).coeffs
    }

    /// Rewrites the value in Q(ζ_k) if it lies in that subfield; None
    /// otherwise. k need not divide or be divisible by the current order.
    pub fn demote_to(&self, k: u32) -> Option<Cyclotomic> {
        if k == self.order {
            return Some(self.clone());
        }
        let l = num_integer::lcm(self.order, k);
        let target = self.promote(l).coeffs;
        let n = target.len();
        let m = euler_phi(k) as usize;
        let step = (l / k) as i64;
        // columns = images of the power basis of Q(ζ_k) inside Q(ζ_l)
        let cols: Vec<Vec<BigRational>> = (0..m)
            .map(|j| Cyclotomic::zeta_pow(l, step * j as i64).promote(l).coeffs)
            .collect();
        // solve cols · x = target by Gaussian elimination on the n×(m+1)
        // augmented system
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    cols.iter().map(|c| c[i].clone()).collect();
                row.push(target[i].clone());
                row
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
                pivot_rows.push(None);
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].recip();
            for x in aug[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..=m {
                        let t = &f * &aug[r][j];
                        aug[i][j] -= t;
                    }
                }
            }
            pivot_rows.push(Some(r));
            r += 1;
        }
        // consistency: rows past the pivots must have zero RHS
        if aug[r..].iter().any(|row| !row[m].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); m];
        for (c, pr) in pivot_rows.iter().enumerate() {
            if let Some(i) = pr {
                x[c] = aug[*i][m].clone();
            }
        }
        Some(Cyclotomic { order: k, coeffs: x })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let k = self.common_order(other);
        self.promote(k).coeffs == other.promote(k).coeffs
    }
}

impl Eq for Cyclotomic {}
