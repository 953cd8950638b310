//! Laurent polynomials over Q(ζ), the coefficient ring for twisted chain
//! complexes of circle bundles. Terms are kept sparse with no zero
//! coefficients stored.

use super::cyclotomic::Cyclotomic;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<i64, Cyclotomic>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(Cyclotomic::one(), 0)
    }

    /// Single term c·t^e (zero if c is zero).
    pub fn term(c: Cyclotomic, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn variable() -> Self {
        Self::term(Cyclotomic::one(), 1)
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Cyclotomic)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclotomic)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Cyclotomic {
        self.terms.get(&e).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// highest − lowest exponent; None for the zero polynomial.
    pub fn exponent_spread(&self) -> Option<i64> {
        Some(self.highest_exponent()? - self.lowest_exponent()?)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    /// Multiplies by t^n.
    pub fn shift(&self, n: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + n, c.clone())).collect(),
        }
    }

    /// True when every exponent is ≥ 0 (an ordinary polynomial in t).
    pub fn is_polynomial(&self) -> bool {
        self.lowest_exponent().map(|e| e >= 0).unwrap_or(true)
    }

    /// Quotient and remainder as polynomials in t. Both inputs must have
    /// lowest exponent ≥ 0 and the divisor must be nonzero.
    pub fn divmod(&self, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!den.is_zero(), "division by zero polynomial");
        assert!(self.is_polynomial() && den.is_polynomial());
        let dd = den.highest_exponent().unwrap();
        let dlead = den.coeff(dd);
        let dlead_inv = dlead.inverse();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rd) = rem.highest_exponent() {
            if rd < dd {
                break;
            }
            let factor = LaurentPoly::term(rem.coeff(rd).mul(&dlead_inv), rd - dd);
            quot = quot.add(&factor);
            rem = rem.sub(&factor.mul(den));
        }
        (quot, rem)
    }

    /// A gcd of the two polynomial parts, made monic in its leading
    /// coefficient. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        match a.highest_exponent() {
            None => a,
            Some(h) => {
                let lead_inv = a.coeff(h).inverse();
                a.scale(&lead_inv)
            }
        }
    }

    /// Substitutes t ↦ c, evaluating in Q(ζ). Requires all exponents ≥ 0
    /// unless c is invertible.
    pub fn evaluate(&self, c: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        let c_inv = if self.lowest_exponent().map(|e| e < 0).unwrap_or(false) {
            Some(c.inverse())
        } else {
            None
        };
        for (e, coeff) in &self.terms {
            let mut p = Cyclotomic::one();
            if *e >= 0 {
                for _ in 0..*e {
                    p = p.mul(c);
                }
            } else {
                let ci = c_inv.as_ref().unwrap();
                for _ in 0..e.unsigned_abs() {
                    p = p.mul(ci);
                }
            }
            acc = acc.add(&coeff.mul(&p));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn cancelling_terms_disappear() {
        let a = p(&[(0, 1), (2, 3)]);
        let b = p(&[(2, -3), (5, 1)]);
        let s = a.add(&b);
        assert_eq!(s, p(&[(0, 1), (5, 1)]));
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn exponent_spread_examples() {
        assert_eq!(p(&[(-2, 3), (5, 1)]).exponent_spread(), Some(7));
        assert_eq!(p(&[(4, 2)]).exponent_spread(), Some(0));
        assert_eq!(LaurentPoly::zero().exponent_spread(), None);
    }

    #[test]
    fn product_of_binomials() {
        // (1 - t)(1 + t) = 1 - t^2
        let a = p(&[(0, 1), (1, -1)]);
        let b = p(&[(0, 1), (1, 1)]);
        assert_eq!(a.mul(&b), p(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn divmod_recovers_factors() {
        let a = p(&[(0, 2), (1, -3), (3, 1)]);
        let b = p(&[(0, -1), (1, 1)]);
        let (q, r) = a.mul(&b).divmod(&b);
        assert!(r.is_zero());
        assert_eq!(q, a);
        let (q2, r2) = a.divmod(&b);
        assert_eq!(q2.mul(&b).add(&r2), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let g = p(&[(0, 1), (1, 1)]);
        let a = g.mul(&p(&[(0, 1), (1, -1)]));
        let b = g.mul(&p(&[(0, 3), (2, 1)]));
        assert_eq!(a.gcd(&b), g);
        assert_eq!(LaurentPoly::zero().gcd(&LaurentPoly::zero()), LaurentPoly::zero());
    }

    #[test]
    fn evaluate_at_root_of_unity() {
        // 1 + t + t^2 at t = ζ_3 vanishes.
        let a = p(&[(0, 1), (1, 1), (2, 1)]);
        assert!(a.evaluate(&Cyclotomic::zeta(3)).is_zero());
        // negative exponents use the inverse.
        let b = p(&[(-1, 1)]);
        let v = b.evaluate(&Cyclotomic::from_rational(BigRational::new(
            BigInt::from(2),
            BigInt::from(1),
        )));
        assert_eq!(
            v,
            Cyclotomic::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
    }
}
